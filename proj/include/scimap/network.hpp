// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <iterator>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scimap/keywords.hpp"
#include "scimap/record.hpp"

namespace scimap::topicmap {

/// One document entering the map: its distinct canon terms plus overlay
/// metadata.
struct MapDoc {
    std::vector<std::string> terms;
    int year = 0;
    std::set<std::string> countries;
};

inline std::vector<MapDoc> to_map_docs(const std::vector<BibRecord>& corpus,
                                       const keywords::Vocabulary& vocab) {
    std::vector<MapDoc> docs;
    docs.reserve(corpus.size());
    for (const auto& r : corpus)
        docs.push_back({keywords::normalized_keywords(r, vocab), r.year, r.countries});
    return docs;
}

struct TermNode {
    std::string term;
    std::size_t occ = 0;
    std::map<int, std::size_t> occ_by_year;
    std::map<std::string, std::size_t> occ_by_country;
};

struct CoocEdge {
    std::size_t i = 0, j = 0;  // node indices, i < j, nodes in lexicographic term order
    std::size_t cooc = 0;
    double sim = 0.0;
};

struct TermNetwork {
    std::vector<TermNode> nodes;  // sorted by term
    std::vector<CoocEdge> edges;  // sorted by (i, j)
    std::vector<int> cluster;     // per node; empty until clustered
    std::vector<std::array<double, 2>> coords;  // per node; empty until laid out
    std::size_t doc_count = 0;    // T, documents in the mapped corpus

    std::size_t index_of(const std::string& term) const {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), term,
                                   [](const TermNode& n, const std::string& t) { return n.term < t; });
        if (it == nodes.end() || it->term != term)
            throw std::out_of_range("unknown term: " + term);
        return static_cast<std::size_t>(it - nodes.begin());
    }
};

/// Builds occurrence and co-occurrence counts under full counting: one
/// document adds 1 to each of its distinct terms and to each unordered pair
/// of its distinct retained terms.
inline TermNetwork build_network(const std::vector<MapDoc>& docs, std::size_t min_occ) {
    if (min_occ < 1) throw std::invalid_argument("min_occ must be >= 1");
    std::map<std::string, std::size_t> occ;
    for (const auto& d : docs) {
        std::set<std::string> distinct(d.terms.begin(), d.terms.end());
        for (const auto& t : distinct) ++occ[t];
    }

    TermNetwork net;
    net.doc_count = docs.size();
    std::map<std::string, std::size_t> index;
    for (const auto& [term, n] : occ) {
        if (n < min_occ) continue;
        index.emplace(term, net.nodes.size());
        net.nodes.push_back({term, n, {}, {}});
    }

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> cooc;
    for (const auto& d : docs) {
        std::set<std::size_t> retained;
        for (const auto& t : d.terms) {
            auto it = index.find(t);
            if (it != index.end()) retained.insert(it->second);
        }
        for (auto idx : retained) {
            auto& node = net.nodes[idx];
            ++node.occ_by_year[d.year];
            for (const auto& c : d.countries) ++node.occ_by_country[c];
        }
        for (auto it = retained.begin(); it != retained.end(); ++it)
            for (auto jt = std::next(it); jt != retained.end(); ++jt)
                ++cooc[{*it, *jt}];
    }
    for (const auto& [ij, n] : cooc) net.edges.push_back({ij.first, ij.second, n, 0.0});
    return net;
}

/// sim_ij = 2 T cooc_ij / (occ_i occ_j).
inline void association_strength(TermNetwork& net) {
    const double t2 = 2.0 * static_cast<double>(net.doc_count);
    for (auto& e : net.edges)
        e.sim = t2 * static_cast<double>(e.cooc) /
                (static_cast<double>(net.nodes[e.i].occ) * static_cast<double>(net.nodes[e.j].occ));
}

// ---------------------------------------------------------------------------
// Overlays

struct TemporalProfile {
    double mean_year = 0.0;
    std::map<int, double> concentration;  // year -> share, sums to 1
};

inline std::map<std::string, TemporalProfile> temporal_overlay(const TermNetwork& net) {
    std::map<std::string, TemporalProfile> out;
    for (const auto& n : net.nodes) {
        TemporalProfile p;
        for (const auto& [year, count] : n.occ_by_year) {
            const double share = static_cast<double>(count) / static_cast<double>(n.occ);
            p.concentration[year] = share;
            p.mean_year += year * share;
        }
        out.emplace(n.term, std::move(p));
    }
    return out;
}

/// index(t) = weight_country(t) / weight_world(t) with weights the term's
/// share of the country's (resp. world's) total term occurrences.
inline std::map<std::string, double> country_activity_overlay(const TermNetwork& net,
                                                              const std::string& country) {
    std::size_t country_total = 0, world_total = 0;
    for (const auto& n : net.nodes) {
        world_total += n.occ;
        const auto it = n.occ_by_country.find(country);
        if (it != n.occ_by_country.end()) country_total += it->second;
    }
    if (country_total == 0)
        throw std::invalid_argument("country not present in network: " + country);
    std::map<std::string, double> out;
    for (const auto& n : net.nodes) {
        const auto it = n.occ_by_country.find(country);
        const std::size_t c = it == n.occ_by_country.end() ? 0 : it->second;
        if (c == 0) {
            out.emplace(n.term, 0.0);
            continue;
        }
        const double wc = static_cast<double>(c) / static_cast<double>(country_total);
        const double ww = static_cast<double>(n.occ) / static_cast<double>(world_total);
        out.emplace(n.term, wc / ww);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tab-separated export / import

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void export_nodes(std::ostream& out, const TermNetwork& net,
                         const std::vector<std::string>& overlay_countries = {}) {
    const auto temporal = temporal_overlay(net);
    std::vector<std::map<std::string, double>> activity;
    for (const auto& c : overlay_countries) activity.push_back(country_activity_overlay(net, c));

    out << "term\tocc\tcluster\tx\ty\tmean_year";
    for (const auto& c : overlay_countries) out << "\tactivity_" << c;
    out << '\n';
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        const auto& n = net.nodes[i];
        out << n.term << '\t' << n.occ << '\t'
            << (i < net.cluster.size() ? net.cluster[i] : -1) << '\t'
            << fmt_double(i < net.coords.size() ? net.coords[i][0] : 0.0) << '\t'
            << fmt_double(i < net.coords.size() ? net.coords[i][1] : 0.0) << '\t'
            << fmt_double(temporal.at(n.term).mean_year);
        for (const auto& a : activity) out << '\t' << fmt_double(a.at(n.term));
        out << '\n';
    }
}

inline void export_edges(std::ostream& out, const TermNetwork& net) {
    out << "term_i\tterm_j\tcooc\tsim\n";
    for (const auto& e : net.edges)
        out << net.nodes[e.i].term << '\t' << net.nodes[e.j].term << '\t' << e.cooc << '\t'
            << fmt_double(e.sim) << '\n';
}

namespace detail {
inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        if (tab == std::string::npos) {
            cols.push_back(line.substr(start));
            return cols;
        }
        cols.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}
}  // namespace detail

/// Re-reads an exported node/edge table pair for re-analysis. Occurrence
/// breakdowns by year/country are not part of the export and stay empty.
inline TermNetwork import_network(std::istream& nodes_in, std::istream& edges_in) {
    TermNetwork net;
    std::string line;
    std::getline(nodes_in, line);  // header
    while (std::getline(nodes_in, line)) {
        if (line.empty()) continue;
        auto cols = detail::split_tabs(line);
        if (cols.size() < 6) throw std::runtime_error("node table: expected >= 6 columns");
        TermNode n;
        n.term = cols[0];
        n.occ = std::stoull(cols[1]);
        net.cluster.push_back(std::stoi(cols[2]));
        net.coords.push_back({std::stod(cols[3]), std::stod(cols[4])});
        net.nodes.push_back(std::move(n));
    }
    std::getline(edges_in, line);  // header
    while (std::getline(edges_in, line)) {
        if (line.empty()) continue;
        auto cols = detail::split_tabs(line);
        if (cols.size() != 4) throw std::runtime_error("edge table: expected 4 columns");
        CoocEdge e;
        e.i = net.index_of(cols[0]);
        e.j = net.index_of(cols[1]);
        e.cooc = std::stoull(cols[2]);
        e.sim = std::stod(cols[3]);
        net.edges.push_back(e);
    }
    return net;
}

}  // namespace scimap::topicmap
