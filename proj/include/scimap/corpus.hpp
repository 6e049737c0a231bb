// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "scimap/record.hpp"
#include "scimap/text.hpp"

namespace scimap::corpus {

enum class MatchKey { Pmid, Doi, Title, None };

inline std::string to_string(MatchKey k) {
    switch (k) {
        case MatchKey::Pmid: return "pmid";
        case MatchKey::Doi: return "doi";
        case MatchKey::Title: return "title";
        case MatchKey::None: return "none";
    }
    return "none";
}

struct Provenance {
    bool in_source_a = false;
    bool in_source_b = false;
    MatchKey matched_by = MatchKey::None;
};

struct MatchPolicy {
    bool by_pmid = true;
    bool by_doi = true;
    bool by_title = true;
};

/// Auditable counters for every corpus-construction stage.
struct CountsLedger {
    std::size_t query_hits_a = 0;     // deduplicated source-A records entering linkage
    std::size_t duplicates_a = 0;     // dropped duplicate pmids within source A
    std::size_t duplicates_b = 0;
    std::size_t matched_ab = 0;       // merged A+B records
    std::size_t ambiguous = 0;        // A records left unmatched because of multiple candidates
    std::size_t a_only = 0;           // A records with no B counterpart
    std::size_t a_category_hits = 0;  // merged records carrying a selected category
    std::size_t b_category_hits = 0;  // B records carrying a selected category
    std::size_t b_only = 0;           // category B records absent from the linked set
    std::size_t union_total = 0;
    std::size_t after_filters = 0;

    void check() const {
        if (matched_ab + a_only != query_hits_a)
            throw std::logic_error("ledger: matched_ab + a_only != query_hits_a");
        if (union_total != matched_ab + a_only + b_only)
            throw std::logic_error("ledger: union_total != matched_ab + a_only + b_only");
        if (after_filters > union_total)
            throw std::logic_error("ledger: after_filters > union_total");
    }
};

struct LinkedCorpus {
    std::vector<BibRecord> records;
    std::vector<Provenance> provenance;  // parallel to records
    CountsLedger ledger;
};

namespace detail {

/// Keep-first pmid deduplication within one source.
inline std::vector<BibRecord> dedupe_by_pmid(const std::vector<BibRecord>& in,
                                             std::size_t& duplicates) {
    std::set<std::string> seen;
    std::vector<BibRecord> out;
    out.reserve(in.size());
    for (const auto& r : in) {
        if (r.pmid && !seen.insert(*r.pmid).second) {
            ++duplicates;
            continue;
        }
        out.push_back(r);
    }
    return out;
}

inline BibRecord merge(const BibRecord& a, const BibRecord& b) {
    BibRecord m = a;
    if (!m.pmid) m.pmid = b.pmid;
    m.wos_id = b.wos_id ? b.wos_id : a.wos_id;
    if (!m.doi) m.doi = b.doi;
    m.doc_type = b.doc_type;       // publication-type filters follow source B
    m.categories = b.categories;   // B supplies journal categories
    m.citations = b.citations;     // B supplies citation events
    for (const auto& c : b.countries) m.countries.insert(c);
    for (const auto& k : b.author_keywords)
        if (std::find(m.author_keywords.begin(), m.author_keywords.end(), k) ==
            m.author_keywords.end())
            m.author_keywords.push_back(k);
    m.retracted = a.retracted || b.retracted;
    return m;
}

}  // namespace detail

/// Pairs A and B records tier by tier: exact pmid, then normalized doi, then
/// normalized title + year. A key matching two candidates on either side
/// leaves all involved records unmatched (counted as ambiguous). Unmatched
/// B records are not carried; they enter only through the category union.
inline LinkedCorpus link(const std::vector<BibRecord>& a_records,
                         const std::vector<BibRecord>& b_records,
                         const MatchPolicy& policy = {}) {
    LinkedCorpus out;
    auto a = detail::dedupe_by_pmid(a_records, out.ledger.duplicates_a);
    auto b = detail::dedupe_by_pmid(b_records, out.ledger.duplicates_b);
    out.ledger.query_hits_a = a.size();

    std::vector<int> a_match(a.size(), -1);          // index into b
    std::vector<MatchKey> a_key(a.size(), MatchKey::None);
    std::vector<bool> b_used(b.size(), false);
    std::vector<bool> a_ambiguous(a.size(), false);

    auto run_tier = [&](MatchKey key, auto&& key_of) {
        std::map<std::string, std::vector<std::size_t>> a_idx, b_idx;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a_match[i] >= 0) continue;
            if (auto k = key_of(a[i])) a_idx[*k].push_back(i);
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b_used[j]) continue;
            if (auto k = key_of(b[j])) b_idx[*k].push_back(j);
        }
        for (const auto& [k, ais] : a_idx) {
            const auto bit = b_idx.find(k);
            if (bit == b_idx.end()) continue;
            if (ais.size() == 1 && bit->second.size() == 1) {
                a_match[ais.front()] = static_cast<int>(bit->second.front());
                a_key[ais.front()] = key;
                b_used[bit->second.front()] = true;
            } else {
                for (auto i : ais) a_ambiguous[i] = true;
            }
        }
    };

    if (policy.by_pmid)
        run_tier(MatchKey::Pmid, [](const BibRecord& r) -> std::optional<std::string> {
            return r.pmid;
        });
    if (policy.by_doi)
        run_tier(MatchKey::Doi, [](const BibRecord& r) -> std::optional<std::string> {
            return r.doi;
        });
    if (policy.by_title)
        run_tier(MatchKey::Title, [](const BibRecord& r) -> std::optional<std::string> {
            if (r.title.empty()) return std::nullopt;
            return text::title_key(r.title) + "|" + std::to_string(r.year);
        });

    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a_match[i] >= 0) {
            out.records.push_back(detail::merge(a[i], b[static_cast<std::size_t>(a_match[i])]));
            out.provenance.push_back({true, true, a_key[i]});
            ++out.ledger.matched_ab;
        } else {
            out.records.push_back(a[i]);
            out.provenance.push_back({true, false, MatchKey::None});
            ++out.ledger.a_only;
            if (a_ambiguous[i]) ++out.ledger.ambiguous;
        }
    }
    out.ledger.union_total = out.records.size();
    out.ledger.check();
    return out;
}

inline bool has_any_category(const BibRecord& r, const std::set<std::string>& categories) {
    for (const auto& c : r.categories)
        if (categories.count(c)) return true;
    return false;
}

/// Adds every B record carrying a selected journal category that is not
/// already present (by wos_id). Idempotent.
inline LinkedCorpus union_with_categories(LinkedCorpus linked,
                                          const std::vector<BibRecord>& b_records,
                                          const std::set<std::string>& categories) {
    if (categories.empty()) throw std::invalid_argument("category list must be nonempty");
    std::set<std::string> present;
    for (const auto& r : linked.records)
        if (r.wos_id) present.insert(*r.wos_id);

    linked.ledger.a_category_hits = 0;
    for (std::size_t i = 0; i < linked.records.size(); ++i)
        if (linked.provenance[i].in_source_b &&
            has_any_category(linked.records[i], categories))
            ++linked.ledger.a_category_hits;

    linked.ledger.b_category_hits = 0;
    for (const auto& r : b_records) {
        if (!has_any_category(r, categories)) continue;
        ++linked.ledger.b_category_hits;
        if (r.wos_id && present.count(*r.wos_id)) continue;
        if (r.wos_id) present.insert(*r.wos_id);
        linked.records.push_back(r);
        linked.provenance.push_back({false, true, MatchKey::None});
        ++linked.ledger.b_only;
    }
    linked.ledger.union_total = linked.records.size();
    linked.ledger.check();
    return linked;
}

/// Retains scientific contributions only: kept document types, complete
/// address and category metadata, not retracted, present in source B.
inline LinkedCorpus apply_filters(LinkedCorpus corpus, const std::set<DocType>& keep_types) {
    LinkedCorpus out;
    out.ledger = corpus.ledger;
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        const auto& r = corpus.records[i];
        if (!keep_types.count(r.doc_type)) continue;
        if (r.countries.empty() || r.categories.empty()) continue;
        if (r.retracted) continue;
        if (!corpus.provenance[i].in_source_b) continue;
        out.records.push_back(r);
        out.provenance.push_back(corpus.provenance[i]);
    }
    out.ledger.after_filters = out.records.size();
    out.ledger.check();
    return out;
}

struct ReportRow {
    std::string name;
    std::optional<double> value;  // nullopt -> "NA"
};

inline std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

inline std::vector<ReportRow> coverage_report(const CountsLedger& l) {
    std::vector<ReportRow> rows;
    auto count = [&](const std::string& n, std::size_t v) {
        rows.push_back({n, static_cast<double>(v)});
    };
    count("query_hits_a", l.query_hits_a);
    count("duplicates_a", l.duplicates_a);
    count("duplicates_b", l.duplicates_b);
    count("matched_ab", l.matched_ab);
    count("ambiguous", l.ambiguous);
    count("a_only", l.a_only);
    count("a_category_hits", l.a_category_hits);
    count("b_category_hits", l.b_category_hits);
    count("b_only", l.b_only);
    count("union_total", l.union_total);
    count("after_filters", l.after_filters);
    rows.push_back({"a_absent_share", ratio(l.a_only, l.query_hits_a)});
    rows.push_back({"a_category_share", ratio(l.a_category_hits, l.query_hits_a)});
    rows.push_back({"b_only_share", ratio(l.b_only, l.b_category_hits)});
    if (auto absent = ratio(l.a_only, l.query_hits_a))
        rows.push_back({"overlap", 1.0 - *absent});
    else
        rows.push_back({"overlap", std::nullopt});
    return rows;
}

inline nlohmann::ordered_json ledger_to_json(const CountsLedger& l) {
    nlohmann::ordered_json j;
    j["query_hits_a"] = l.query_hits_a;
    j["duplicates_a"] = l.duplicates_a;
    j["duplicates_b"] = l.duplicates_b;
    j["matched_ab"] = l.matched_ab;
    j["ambiguous"] = l.ambiguous;
    j["a_only"] = l.a_only;
    j["a_category_hits"] = l.a_category_hits;
    j["b_category_hits"] = l.b_category_hits;
    j["b_only"] = l.b_only;
    j["union_total"] = l.union_total;
    j["after_filters"] = l.after_filters;
    return j;
}

inline CountsLedger ledger_from_json(const nlohmann::json& j) {
    CountsLedger l;
    auto get = [&](const char* k) { return j.value(k, nlohmann::json(0)).get<std::size_t>(); };
    l.query_hits_a = get("query_hits_a");
    l.duplicates_a = get("duplicates_a");
    l.duplicates_b = get("duplicates_b");
    l.matched_ab = get("matched_ab");
    l.ambiguous = get("ambiguous");
    l.a_only = get("a_only");
    l.a_category_hits = get("a_category_hits");
    l.b_category_hits = get("b_category_hits");
    l.b_only = get("b_only");
    l.union_total = get("union_total");
    l.after_filters = get("after_filters");
    return l;
}

}  // namespace scimap::corpus
