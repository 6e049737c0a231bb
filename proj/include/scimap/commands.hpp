// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scimap/cluster.hpp"
#include "scimap/config.hpp"
#include "scimap/corpus.hpp"
#include "scimap/indicators.hpp"
#include "scimap/keywords.hpp"
#include "scimap/layout.hpp"
#include "scimap/manifest.hpp"
#include "scimap/mesh.hpp"
#include "scimap/network.hpp"
#include "scimap/query.hpp"
#include "scimap/record.hpp"

namespace scimap::commands {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string record_id(const BibRecord& r) {
    if (r.pmid) return "pmid:" + *r.pmid;
    return "wos:" + r.wos_id.value_or("?");
}

inline std::vector<BibRecord> load_records(const std::string& path, SourceTag tag,
                                           bool quiet, std::ostream& log) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read record file: " + path);
    auto res = parse_records(in, tag);
    if (!quiet)
        for (const auto& d : res.diagnostics)
            log << path << ":" << d.line_no << ": " << d.message << '\n';
    return std::move(res.records);
}

inline mesh::MeshThesaurus load_thesaurus_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read thesaurus file: " + path);
    return mesh::load_thesaurus(in);
}

inline std::string query_text(const RunConfig& cfg) {
    if (cfg.query) {
        if (cfg.query->empty()) throw UsageError("query string is empty");
        return *cfg.query;
    }
    if (cfg.query_file) {
        std::string text = read_file(*cfg.query_file);
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
        if (text.empty()) throw UsageError("query file is empty: " + *cfg.query_file);
        return text;
    }
    throw UsageError("no query configured (set query or query_file)");
}

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << content;
}

inline std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out);
    return (std::filesystem::path(cfg.out) / name).string();
}

inline std::string corpus_path(const RunConfig& cfg) {
    if (cfg.corpus) return *cfg.corpus;
    return (std::filesystem::path(cfg.out) / "corpus.jsonl").string();
}

inline std::string report_tsv(const std::vector<corpus::ReportRow>& rows) {
    std::ostringstream out;
    out << "stage\tvalue\n";
    for (const auto& r : rows) {
        out << r.name << '\t';
        if (!r.value)
            out << "NA";
        else if (*r.value == static_cast<double>(static_cast<long long>(*r.value)) &&
                 r.name.find("share") == std::string::npos && r.name != "overlap")
            out << static_cast<long long>(*r.value);
        else
            out << topicmap::fmt_double(*r.value);
        out << '\n';
    }
    return out.str();
}

}  // namespace detail

/// query: evaluate the configured query over source A, write the selected ids.
inline int cmd_query(const RunConfig& cfg, std::ostream& log = std::cerr) {
    if (!cfg.source_a) throw UsageError("query: source_a is required");
    if (!cfg.thesaurus) throw UsageError("query: thesaurus is required");
    const std::string text = detail::query_text(cfg);
    const auto expr = query::parse_query(text);
    const auto th = detail::load_thesaurus_file(*cfg.thesaurus);
    query::validate_query(expr, th);
    const auto records = detail::load_records(*cfg.source_a, SourceTag::MedlineLike, cfg.quiet, log);
    const auto hits = query::run_query(records, expr, th);

    std::ostringstream sel;
    sel << "id\n";
    for (const auto& r : hits) sel << detail::record_id(r) << '\n';
    detail::write_text(detail::out_path(cfg, "selection.tsv"), sel.str());

    auto manifest = make_manifest("query", cfg.canonical);
    manifest.add_input(*cfg.source_a);
    manifest.add_input(*cfg.thesaurus);
    manifest.settings["query"] = query::print_query(expr);
    manifest.outputs = {"selection.tsv"};
    manifest.write(detail::out_path(cfg, "query_manifest.json"));

    if (!cfg.quiet) log << "hits: " << hits.size() << '\n';
    return 0;
}

/// query --explain: per-clause trace of one record against the query.
inline int cmd_query_explain(const RunConfig& cfg, const std::string& record_id,
                             std::ostream& out = std::cout, std::ostream& log = std::cerr) {
    if (!cfg.source_a) throw UsageError("query: source_a is required");
    if (!cfg.thesaurus) throw UsageError("query: thesaurus is required");
    const auto expr = query::parse_query(detail::query_text(cfg));
    const auto th = detail::load_thesaurus_file(*cfg.thesaurus);
    query::validate_query(expr, th);
    const auto records = detail::load_records(*cfg.source_a, SourceTag::MedlineLike, cfg.quiet, log);
    for (const auto& r : records) {
        if (detail::record_id(r) != record_id) continue;
        for (const auto& line : query::explain_query(r, expr, th)) out << line << '\n';
        return 0;
    }
    throw UsageError("record not found: " + record_id);
}

/// build: link sources, union the category selection, filter, write the
/// corpus and its counts ledger.
inline int cmd_build(const RunConfig& cfg, std::ostream& log = std::cerr) {
    if (!cfg.source_a) throw UsageError("build: source_a is required");
    if (!cfg.source_b) throw UsageError("build: source_b is required");
    if (cfg.categories.empty()) throw UsageError("build: categories must be nonempty");

    auto a = detail::load_records(*cfg.source_a, SourceTag::MedlineLike, cfg.quiet, log);
    const auto b = detail::load_records(*cfg.source_b, SourceTag::CitationIndexLike, cfg.quiet, log);

    auto manifest = make_manifest("build", cfg.canonical);
    manifest.add_input(*cfg.source_a);
    manifest.add_input(*cfg.source_b);

    if (cfg.query || cfg.query_file) {
        if (!cfg.thesaurus) throw UsageError("build: thesaurus is required to run the query");
        const auto expr = query::parse_query(detail::query_text(cfg));
        const auto th = detail::load_thesaurus_file(*cfg.thesaurus);
        manifest.add_input(*cfg.thesaurus);
        manifest.settings["query"] = query::print_query(expr);
        a = query::run_query(a, expr, th);
    }

    auto linked = corpus::link(a, b);
    linked = corpus::union_with_categories(std::move(linked), b, cfg.categories);
    const auto filtered = corpus::apply_filters(linked, cfg.keep_types);

    std::ostringstream corpus_out;
    for (const auto& r : filtered.records) corpus_out << serialize_record(r) << '\n';
    detail::write_text(detail::out_path(cfg, "corpus.jsonl"), corpus_out.str());
    detail::write_text(detail::out_path(cfg, "ledger.json"),
                       corpus::ledger_to_json(filtered.ledger).dump(2) + "\n");
    detail::write_text(detail::out_path(cfg, "coverage.tsv"),
                       detail::report_tsv(corpus::coverage_report(filtered.ledger)));

    manifest.settings["categories"] = cfg.categories;
    manifest.outputs = {"corpus.jsonl", "ledger.json", "coverage.tsv"};
    manifest.write(detail::out_path(cfg, "build_manifest.json"));

    if (!cfg.quiet)
        log << "corpus: " << filtered.records.size() << " records after filters (union "
            << filtered.ledger.union_total << ")\n";
    return 0;
}

/// map: keyword cleaning, co-occurrence network, clustering, layout,
/// overlays; deterministic under the configured seed.
inline int cmd_map(const RunConfig& cfg, std::ostream& log = std::cerr) {
    const std::string in_path = detail::corpus_path(cfg);
    const auto records = detail::load_records(in_path, SourceTag::CitationIndexLike, cfg.quiet, log);
    auto cleaned = keywords::clean_corpus(records);
    const auto docs = topicmap::to_map_docs(cleaned.records, cleaned.vocabulary);
    auto net = topicmap::build_network(docs, cfg.map.min_occ);
    if (net.nodes.empty())
        throw std::runtime_error("map: no terms reach min_occ=" + std::to_string(cfg.map.min_occ));
    topicmap::association_strength(net);
    net.cluster = topicmap::cluster_network(net, cfg.map.resolution, cfg.map.seed);
    topicmap::LayoutParams lp;
    lp.seed = cfg.map.seed;
    lp.max_iter = cfg.map.max_iter;
    lp.tol = cfg.map.tol;
    net.coords = topicmap::layout_network(net, lp);

    std::vector<std::string> overlay_countries;
    for (const auto& c : cfg.indicators.countries) {
        try {
            topicmap::country_activity_overlay(net, c);
            overlay_countries.push_back(c);
        } catch (const std::invalid_argument&) {
            if (!cfg.quiet) log << "map: no occurrences for country " << c << ", overlay skipped\n";
        }
    }

    std::ostringstream nodes_out, edges_out;
    topicmap::export_nodes(nodes_out, net, overlay_countries);
    topicmap::export_edges(edges_out, net);
    detail::write_text(detail::out_path(cfg, "map_nodes.tsv"), nodes_out.str());
    detail::write_text(detail::out_path(cfg, "map_edges.tsv"), edges_out.str());

    auto manifest = make_manifest("map", cfg.canonical);
    manifest.add_input(in_path);
    manifest.settings["min_occ"] = cfg.map.min_occ;
    manifest.settings["resolution"] = cfg.map.resolution;
    manifest.settings["seed"] = cfg.map.seed;
    manifest.settings["max_iter"] = cfg.map.max_iter;
    manifest.settings["tol"] = cfg.map.tol;
    manifest.settings["removed_in_cleaning"] = cleaned.removed;
    manifest.outputs = {"map_nodes.tsv", "map_edges.tsv"};
    manifest.write(detail::out_path(cfg, "map_manifest.json"));

    if (!cfg.quiet)
        log << "map: " << net.nodes.size() << " terms, " << net.edges.size() << " edges, "
            << (net.cluster.empty() ? 0 : *std::max_element(net.cluster.begin(), net.cluster.end()) + 1)
            << " clusters\n";
    return 0;
}

/// covid: select the pattern-filtered sub-corpus, rewriting matched keywords
/// to their canonical terms.
inline int cmd_covid(const RunConfig& cfg, std::ostream& log = std::cerr) {
    if (!cfg.pattern_map) throw UsageError("covid: pattern_map is required");
    const std::string in_path = detail::corpus_path(cfg);
    const auto records = detail::load_records(in_path, SourceTag::CitationIndexLike, cfg.quiet, log);
    auto cleaned = keywords::clean_corpus(records);
    std::ifstream pm_in(*cfg.pattern_map, std::ios::binary);
    if (!pm_in) throw std::runtime_error("cannot read pattern map: " + *cfg.pattern_map);
    const auto pmap = keywords::load_pattern_map(pm_in);
    const auto sub = keywords::covid_filter(cleaned.records, cleaned.vocabulary, pmap,
                                            cfg.covid.from_year, cfg.covid.to_year);

    std::ostringstream out;
    for (std::size_t i = 0; i < sub.records.size(); ++i) {
        BibRecord r = sub.records[i];
        r.author_keywords = sub.keywords[i];  // canonicalized for downstream mapping
        out << serialize_record(r) << '\n';
    }
    detail::write_text(detail::out_path(cfg, "covid.jsonl"), out.str());

    auto manifest = make_manifest("covid", cfg.canonical);
    manifest.add_input(in_path);
    manifest.add_input(*cfg.pattern_map);
    manifest.settings["from_year"] = cfg.covid.from_year;
    manifest.settings["to_year"] = cfg.covid.to_year;
    manifest.outputs = {"covid.jsonl"};
    manifest.write(detail::out_path(cfg, "covid_manifest.json"));

    if (!cfg.quiet) log << "covid sub-corpus: " << sub.records.size() << " records\n";
    return 0;
}

inline std::string indicators_tsv(const std::vector<indicators::IndicatorRow>& rows) {
    std::ostringstream out;
    out << "country\tperiod\ttheme\tpub_count\tspec_index\timpact_index\n";
    for (const auto& r : rows) {
        out << r.country << '\t' << r.period << '\t' << r.theme << '\t' << r.pub_count << '\t';
        out << (r.spec_index ? topicmap::fmt_double(*r.spec_index) : "NA") << '\t';
        out << (r.impact_index ? topicmap::fmt_double(*r.impact_index) : "NA") << '\n';
    }
    return out.str();
}

/// indicators: count series, specialization and impact per configured
/// country and period; refuses when the citation window is not covered.
inline int cmd_indicators(const RunConfig& cfg, std::ostream& log = std::cerr) {
    const std::string in_path = detail::corpus_path(cfg);
    const auto records = detail::load_records(in_path, SourceTag::CitationIndexLike, cfg.quiet, log);
    if (cfg.indicators.periods.empty()) throw UsageError("indicators: periods must be configured");
    if (cfg.indicators.countries.empty())
        throw UsageError("indicators: countries must be configured");

    std::vector<indicators::Period> periods;
    for (const auto& p : cfg.indicators.periods) periods.push_back(indicators::Period::parse(p));

    auto manifest = make_manifest("indicators", cfg.canonical);
    manifest.add_input(in_path);

    if (cfg.indicators.with_impact) {
        std::vector<int> bad;
        for (const auto& p : periods)
            for (const int y : indicators::incomplete_window_years(p, cfg.indicators.window,
                                                                   cfg.indicators.data_through))
                bad.push_back(y);
        if (!bad.empty()) {
            std::sort(bad.begin(), bad.end());
            bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
            std::ostringstream msg;
            msg << "indicators: citation data incomplete for window=" << cfg.indicators.window
                << " in years:";
            for (const int y : bad) msg << ' ' << y;
            throw UsageError(msg.str());
        }
    }

    indicators::ReferenceBase ref;
    if (cfg.indicators.reference) {
        ref = indicators::ReferenceBase::from_records(
            detail::load_records(*cfg.indicators.reference, SourceTag::CitationIndexLike,
                                 cfg.quiet, log));
        manifest.add_input(*cfg.indicators.reference);
    } else {
        ref = indicators::ReferenceBase::from_records(records);
    }

    auto rows = indicators::indicator_table(records, ref, cfg.indicators.countries, periods,
                                            "domain", cfg.indicators.window,
                                            cfg.indicators.with_impact);

    // counts series over all observed (country, year) pairs
    std::ostringstream counts_out;
    counts_out << "country\tyear\tpub_count\n";
    for (const auto& [key, n] : indicators::count_series(records))
        counts_out << key.first << '\t' << key.second << '\t' << n << '\n';

    if (cfg.pattern_map) {
        auto cleaned = keywords::clean_corpus(records);
        std::ifstream pm_in(*cfg.pattern_map, std::ios::binary);
        if (!pm_in) throw std::runtime_error("cannot read pattern map: " + *cfg.pattern_map);
        const auto pmap = keywords::load_pattern_map(pm_in);
        const auto sub = keywords::covid_filter(cleaned.records, cleaned.vocabulary, pmap,
                                                cfg.covid.from_year, cfg.covid.to_year);
        // covid-theme specialization shares the reference base; no impact
        // (citation windows cannot be complete for an emerging theme)
        auto covid_rows = indicators::indicator_table(sub.records, ref, cfg.indicators.countries,
                                                      periods, "covid", cfg.indicators.window,
                                                      /*with_impact=*/false);
        rows.insert(rows.end(), covid_rows.begin(), covid_rows.end());
        manifest.add_input(*cfg.pattern_map);
    }

    detail::write_text(detail::out_path(cfg, "indicators.tsv"), indicators_tsv(rows));
    detail::write_text(detail::out_path(cfg, "counts.tsv"), counts_out.str());

    manifest.settings["window"] = cfg.indicators.window;
    manifest.settings["counting"] = "whole";
    manifest.settings["cell_weighting"] = "publication-fraction";
    manifest.settings["periods"] = cfg.indicators.periods;
    manifest.settings["data_through"] = cfg.indicators.data_through;
    manifest.outputs = {"indicators.tsv", "counts.tsv"};
    manifest.write(detail::out_path(cfg, "indicators_manifest.json"));

    if (!cfg.quiet) log << "indicators: " << rows.size() << " rows\n";
    return 0;
}

/// report: re-emit the coverage report from a build's ledger.
inline int cmd_report(const RunConfig& cfg, std::ostream& out = std::cout) {
    const std::string ledger_path = (std::filesystem::path(cfg.out) / "ledger.json").string();
    const auto ledger = corpus::ledger_from_json(nlohmann::json::parse(read_file(ledger_path)));
    const std::string tsv = detail::report_tsv(corpus::coverage_report(ledger));
    detail::write_text(detail::out_path(cfg, "coverage.tsv"), tsv);
    out << tsv;
    return 0;
}

}  // namespace scimap::commands
