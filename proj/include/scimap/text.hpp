// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

namespace scimap::text {

// Minimal UTF-8 decoding. Invalid bytes decode as U+FFFD and advance one byte.
inline char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += len;
    return cp;
}

inline void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Compatibility-decomposition fold for the Latin ranges that occur in
// bibliographic keyword data: strips combining marks from precomposed
// Latin-1 Supplement / Latin Extended-A letters and maps a few ligatures.
// Codepoints outside these ranges pass through unchanged.
inline std::u32string fold_marks(char32_t cp) {
    switch (cp) {
        case U'ß': return U"ss";
        case U'Æ': case U'æ': return U"ae";
        case U'Œ': case U'œ': return U"oe";
        case U'Ð': case U'ð': return U"d";
        case U'Þ': case U'þ': return U"th";
        case U'ı': return U"i";
        case U'ﬁ': return U"fi";
        case U'ﬂ': return U"fl";
        default: break;
    }
    static constexpr std::u32string_view from =
        U"ÀÁÂÃÄÅàáâãäåĀāĂăĄąÇçĆćĈĉĊċČčĎďĐđÈÉÊËèéêëĒēĔĕĖėĘęĚěĜĝĞğĠġĢģĤĥĦħ"
        U"ÌÍÎÏìíîïĨĩĪīĬĭĮįİĴĵĶķĹĺĻļĽľĿŀŁłÑñŃńŅņŇňÒÓÔÕÖØòóôõöøŌōŎŏŐő"
        U"ŔŕŖŗŘřŚśŜŝŞşŠšŢţŤťŦŧÙÚÛÜùúûüŨũŪūŬŭŮůŰűŲųŴŵÝýÿŶŷŸŹźŻżŽž";
    static constexpr std::u32string_view to =
        U"AAAAAAaaaaaaAaAaAaCcCcCcCcCcDdDdEEEEeeeeEeEeEeEeEeGgGgGgGgHhHh"
        U"IIIIiiiiIiIiIiIiIJjKkLlLlLlLlLlNnNnNnNnOOOOOOooooooOoOoOo"
        U"RrRrRrSsSsSsSsTtTtTtUUUUuuuuUuUuUuUuUuUuWwYyyYyYZzZzZz";
    static_assert(from.size() == to.size());
    const auto pos = from.find(cp);
    if (pos != std::u32string_view::npos) return std::u32string(1, to[pos]);
    return std::u32string(1, cp);
}

inline char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 32;
    return cp;
}

inline bool is_alnum(char32_t cp) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') ||
           (cp >= U'A' && cp <= U'Z');
}

inline std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        if (c >= 'A' && c <= 'Z') c += 32;
    return out;
}

/// Lowercase, fold diacritics, turn runs of whitespace and hyphens into one
/// space, strip leading/trailing non-alphanumeric characters.
inline std::string fold(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    bool pending_space = false;
    while (i < raw.size()) {
        char32_t cp = decode_utf8(raw, i);
        for (char32_t f : fold_marks(cp)) {
            f = to_lower(f);
            if (f == U' ' || f == U'\t' || f == U'\n' || f == U'\r' ||
                f == U'-' || f == 0x2010 || f == 0x2011 || f == 0x2013 ||
                f == 0x2014 || f == 0x00A0) {
                if (!out.empty()) pending_space = true;
                continue;
            }
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            encode_utf8(f, out);
        }
    }
    // strip surrounding punctuation (non-alphanumeric ASCII at the edges)
    auto edge_strippable = [](char c) {
        const auto u = static_cast<unsigned char>(c);
        return u < 0x80 && !(std::isalnum(u));
    };
    std::size_t b = 0, e = out.size();
    while (b < e && edge_strippable(out[b])) ++b;
    while (e > b && edge_strippable(out[e - 1])) --e;
    return out.substr(b, e - b);
}

inline bool has_alnum(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size())
        if (is_alnum(decode_utf8(s, i))) return true;
    return false;
}

/// Title key for record linkage: fold, then drop every character that is not
/// a letter or digit.
inline std::string title_key(std::string_view title) {
    std::string folded = fold(title);
    std::string out;
    out.reserve(folded.size());
    std::size_t i = 0;
    while (i < folded.size()) {
        const char32_t cp = decode_utf8(folded, i);
        if (is_alnum(cp))
            encode_utf8(cp, out);
        else if (cp >= 0x80)
            encode_utf8(cp, out);  // non-Latin letters kept verbatim
    }
    return out;
}

// FNV-1a, used for config hashes and input digests in run manifests.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (const char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace scimap::text
