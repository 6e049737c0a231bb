// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scimap/record.hpp"
#include "scimap/text.hpp"

namespace scimap::keywords {

/// Pass-1 normalization: lowercase, fold diacritics, collapse whitespace and
/// hyphens, strip surrounding punctuation. Returns nothing when the result
/// carries no letter or digit (a false keyword).
inline std::optional<std::string> normalize_keyword(std::string_view raw) {
    std::string canon = text::fold(raw);
    if (canon.empty() || !text::has_alnum(canon)) return std::nullopt;
    return canon;
}

/// Two-pass vocabulary-gated plural merging: a terminal "s"/"es" is stripped
/// when the stem is at least 4 characters long and itself occurs in the
/// corpus vocabulary. Stripping repeats to a fixed point so that chained
/// variants all land on one canonical form.
class Vocabulary {
  public:
    static Vocabulary build(const std::vector<std::vector<std::string>>& keyword_lists) {
        Vocabulary v;
        for (const auto& list : keyword_lists)
            for (const auto& raw : list)
                if (auto canon = normalize_keyword(raw)) ++v.counts_[*canon];
        return v;
    }

    bool contains(const std::string& canon) const { return counts_.count(canon) != 0; }

    std::string singularize(std::string canon) const {
        for (;;) {
            std::string stem;
            if (canon.size() >= 5 && canon.ends_with("s")) {
                std::string s1 = canon.substr(0, canon.size() - 1);
                if (s1.size() >= 4 && contains(s1)) stem = std::move(s1);
            }
            if (stem.empty() && canon.size() >= 6 && canon.ends_with("es")) {
                std::string s2 = canon.substr(0, canon.size() - 2);
                if (s2.size() >= 4 && contains(s2)) stem = std::move(s2);
            }
            if (stem.empty()) return canon;
            canon = std::move(stem);
        }
    }

    /// Full normalization: pass-1 fold plus vocabulary-gated plural merge.
    std::optional<std::string> normalize(std::string_view raw) const {
        auto canon = normalize_keyword(raw);
        if (!canon) return std::nullopt;
        return singularize(std::move(*canon));
    }

    const std::map<std::string, std::size_t>& counts() const { return counts_; }

  private:
    std::map<std::string, std::size_t> counts_;
};

/// Distinct normalized keywords of one record, in first-appearance order.
inline std::vector<std::string> normalized_keywords(const BibRecord& r, const Vocabulary& vocab) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& raw : r.author_keywords)
        if (auto canon = vocab.normalize(raw))
            if (seen.insert(*canon).second) out.push_back(*canon);
    return out;
}

struct CleanResult {
    std::vector<BibRecord> records;
    std::size_t removed = 0;
    Vocabulary vocabulary;
};

/// Drops records whose keyword list is empty after normalization;
/// kept + removed = input size.
inline CleanResult clean_corpus(const std::vector<BibRecord>& corpus) {
    CleanResult res;
    std::vector<std::vector<std::string>> lists;
    lists.reserve(corpus.size());
    for (const auto& r : corpus) lists.push_back(r.author_keywords);
    res.vocabulary = Vocabulary::build(lists);
    for (const auto& r : corpus) {
        if (normalized_keywords(r, res.vocabulary).empty())
            ++res.removed;
        else
            res.records.push_back(r);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Covid sub-corpus pattern filter

struct PatternMap {
    struct Entry {
        std::string pattern;    // normalized, may contain '%'
        std::string canonical;  // one of the closed canonical terms
    };
    std::vector<Entry> entries;
};

/// SQL-LIKE matching: '%' matches any possibly empty character sequence,
/// anywhere in the pattern. Inputs are canon strings, so matching is already
/// case-insensitive.
inline bool like_match(std::string_view pattern, std::string_view s) {
    // iterative two-pointer LIKE matcher with backtracking on the last '%'
    std::size_t p = 0, i = 0;
    std::size_t star = std::string_view::npos, mark = 0;
    while (i < s.size()) {
        if (p < pattern.size() && (pattern[p] == s[i])) {
            ++p;
            ++i;
        } else if (p < pattern.size() && pattern[p] == '%') {
            star = p++;
            mark = i;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            i = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '%') ++p;
    return p == pattern.size();
}

/// Normalizes a pattern the same way keywords are normalized, segment by
/// segment around '%', so patterns written in source spelling match canon
/// strings.
inline std::string normalize_pattern(std::string_view raw) {
    std::string out;
    std::size_t start = 0;
    for (;;) {
        const auto pct = raw.find('%', start);
        const auto seg = raw.substr(start, pct == std::string_view::npos ? raw.size() - start
                                                                         : pct - start);
        if (!seg.empty()) out += text::fold(seg);
        if (pct == std::string_view::npos) break;
        out += '%';
        start = pct + 1;
    }
    return out;
}

inline PatternMap load_pattern_map(std::istream& in) {
    PatternMap map;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("pattern map line " + std::to_string(line_no) +
                                     ": expected two tab-separated columns");
        PatternMap::Entry e;
        e.pattern = normalize_pattern(line.substr(0, tab));
        e.canonical = text::fold(line.substr(tab + 1));
        if (!seen.insert(e.pattern).second) continue;  // patterns unique
        map.entries.push_back(std::move(e));
    }
    return map;
}

struct CovidFilterResult {
    std::vector<BibRecord> records;             // selected sub-corpus
    std::vector<std::vector<std::string>> keywords;  // per record, matched terms canonicalized
};

/// Selects records in the year range with at least one keyword matching a
/// pattern; matched keywords are rewritten to the pattern's canonical term.
inline CovidFilterResult covid_filter(const std::vector<BibRecord>& corpus,
                                      const Vocabulary& vocab, const PatternMap& map,
                                      int from_year, int to_year) {
    if (map.entries.empty())
        throw std::invalid_argument("covid filter: empty pattern map");
    CovidFilterResult res;
    for (const auto& r : corpus) {
        if (r.year < from_year || r.year > to_year) continue;
        bool selected = false;
        std::vector<std::string> rewritten;
        std::set<std::string> seen;
        for (const auto& canon : normalized_keywords(r, vocab)) {
            const PatternMap::Entry* hit = nullptr;
            for (const auto& e : map.entries)
                if (like_match(e.pattern, canon)) {
                    hit = &e;
                    break;
                }
            const std::string& out = hit ? hit->canonical : canon;
            if (hit) selected = true;
            if (seen.insert(out).second) rewritten.push_back(out);
        }
        if (!selected) continue;
        res.records.push_back(r);
        res.keywords.push_back(std::move(rewritten));
    }
    return res;
}

}  // namespace scimap::keywords
