// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scimap/text.hpp"

namespace scimap {

enum class DocType { Article, ProceedingsPaper, Review, Letter, Other };

inline std::string to_string(DocType t) {
    switch (t) {
        case DocType::Article: return "Article";
        case DocType::ProceedingsPaper: return "ProceedingsPaper";
        case DocType::Review: return "Review";
        case DocType::Letter: return "Letter";
        case DocType::Other: return "Other";
    }
    return "Other";
}

inline DocType doc_type_from_string(const std::string& s) {
    if (s == "Article") return DocType::Article;
    if (s == "ProceedingsPaper") return DocType::ProceedingsPaper;
    if (s == "Review") return DocType::Review;
    if (s == "Letter") return DocType::Letter;
    if (s == "Other") return DocType::Other;
    throw std::invalid_argument("unknown doc_type: " + s);
}

enum class SourceTag { MedlineLike, CitationIndexLike };

struct MeshAssignment {
    std::string descriptor;
    bool major = false;

    friend bool operator==(const MeshAssignment&, const MeshAssignment&) = default;
};

/// One publication from either source.
struct BibRecord {
    std::optional<std::string> pmid;
    std::optional<std::string> wos_id;
    std::optional<std::string> doi;  // lowercase, resolver prefix stripped
    std::string title;
    int year = 0;
    DocType doc_type = DocType::Other;
    std::set<std::string> countries;   // ISO 3166 alpha-2
    std::set<std::string> categories;  // journal-category labels
    std::vector<MeshAssignment> mesh_terms;
    std::vector<std::string> author_keywords;
    std::vector<int> citations;  // one citing-year per citation event
    bool retracted = false;

    friend bool operator==(const BibRecord&, const BibRecord&) = default;
};

struct YearRange {
    int min_year = 1900;
    int max_year = 2100;
};

inline std::string normalize_doi(std::string doi) {
    doi = text::to_lower_ascii(doi);
    for (std::string_view prefix :
         {"https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "http://dx.doi.org/", "doi:"}) {
        if (doi.starts_with(prefix)) {
            doi.erase(0, prefix.size());
            break;
        }
    }
    return doi;
}

/// Labels for each violated record invariant; empty means valid.
inline std::vector<std::string> validate_record(const BibRecord& r, const YearRange& range = {}) {
    std::vector<std::string> violations;
    if (!r.pmid && !r.wos_id) violations.emplace_back("missing_identifier");
    if (r.year < range.min_year || r.year > range.max_year)
        violations.emplace_back("year_out_of_range");
    if (std::any_of(r.citations.begin(), r.citations.end(),
                    [&](int cy) { return cy < r.year; }))
        violations.emplace_back("citation_before_publication");
    return violations;
}

inline nlohmann::ordered_json record_to_json(const BibRecord& r) {
    nlohmann::ordered_json j;
    if (r.pmid) j["pmid"] = *r.pmid;
    if (r.wos_id) j["wos_id"] = *r.wos_id;
    if (r.doi) j["doi"] = *r.doi;
    j["title"] = r.title;
    j["year"] = r.year;
    j["doc_type"] = to_string(r.doc_type);
    if (!r.countries.empty()) j["countries"] = r.countries;
    if (!r.categories.empty()) j["categories"] = r.categories;
    if (!r.mesh_terms.empty()) {
        auto& arr = j["mesh"] = nlohmann::ordered_json::array();
        for (const auto& m : r.mesh_terms) arr.push_back({{"d", m.descriptor}, {"maj", m.major}});
    }
    if (!r.author_keywords.empty()) j["keywords"] = r.author_keywords;
    if (!r.citations.empty()) j["cites"] = r.citations;
    if (r.retracted) j["retracted"] = true;
    return j;
}

inline BibRecord record_from_json(const nlohmann::json& j) {
    BibRecord r;
    if (j.contains("pmid")) r.pmid = j.at("pmid").get<std::string>();
    if (j.contains("wos_id")) r.wos_id = j.at("wos_id").get<std::string>();
    if (j.contains("doi")) r.doi = normalize_doi(j.at("doi").get<std::string>());
    r.title = j.value("title", std::string{});
    r.year = j.at("year").get<int>();
    r.doc_type = doc_type_from_string(j.value("doc_type", std::string{"Other"}));
    if (j.contains("countries"))
        r.countries = j.at("countries").get<std::set<std::string>>();
    if (j.contains("categories"))
        r.categories = j.at("categories").get<std::set<std::string>>();
    if (j.contains("mesh"))
        for (const auto& m : j.at("mesh"))
            r.mesh_terms.push_back({m.at("d").get<std::string>(), m.value("maj", false)});
    if (j.contains("keywords"))
        r.author_keywords = j.at("keywords").get<std::vector<std::string>>();
    if (j.contains("cites")) r.citations = j.at("cites").get<std::vector<int>>();
    r.retracted = j.value("retracted", false);
    return r;
}

inline std::string serialize_record(const BibRecord& r) { return record_to_json(r).dump(); }

struct LineDiagnostic {
    std::size_t line_no = 0;  // 1-based
    std::string message;
};

struct ParseResult {
    std::vector<BibRecord> records;
    std::size_t malformed = 0;  // lines that failed to parse
    std::size_t rejected = 0;   // parsed but invariant-violating
    std::size_t lines = 0;      // total non-empty input lines
    std::vector<LineDiagnostic> diagnostics;
};

/// Parses a line-delimited record stream. Malformed lines are skipped and
/// counted; invariant-violating records are rejected and counted. Order of
/// accepted records follows file order.
inline ParseResult parse_records(std::istream& in, SourceTag /*source*/,
                                 const YearRange& range = {}) {
    ParseResult res;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++res.lines;
        BibRecord rec;
        try {
            rec = record_from_json(nlohmann::json::parse(line));
        } catch (const std::exception& e) {
            ++res.malformed;
            res.diagnostics.push_back({line_no, std::string("malformed line: ") + e.what()});
            continue;
        }
        if (auto violations = validate_record(rec, range); !violations.empty()) {
            ++res.rejected;
            std::string msg = "rejected:";
            for (const auto& v : violations) msg += " " + v;
            res.diagnostics.push_back({line_no, msg});
            continue;
        }
        res.records.push_back(std::move(rec));
    }
    return res;
}

inline void write_records(std::ostream& out, const std::vector<BibRecord>& records) {
    for (const auto& r : records) out << serialize_record(r) << '\n';
}

}  // namespace scimap
