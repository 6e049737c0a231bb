// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scimap/record.hpp"

namespace scimap::indicators {

inline constexpr const char* kWorld = "WORLD";

/// Inclusive year window; single years are from == to.
struct Period {
    int from = 0;
    int to = 0;

    bool contains(int year) const { return from <= year && year <= to; }
    std::string label() const {
        if (from == to) return std::to_string(from);
        return std::to_string(from) + "-" + std::to_string(to);
    }

    static Period parse(const std::string& s) {
        const auto dash = s.find('-');
        Period p;
        if (dash == std::string::npos) {
            p.from = p.to = std::stoi(s);
        } else {
            p.from = std::stoi(s.substr(0, dash));
            p.to = std::stoi(s.substr(dash + 1));
        }
        if (p.to < p.from) throw std::invalid_argument("period end before start: " + s);
        return p;
    }
};

// ---------------------------------------------------------------------------
// Count series

/// Whole-counting publication counts per (country, year); the WORLD row
/// counts each publication once.
inline std::map<std::pair<std::string, int>, std::size_t> count_series(
    const std::vector<BibRecord>& corpus) {
    std::map<std::pair<std::string, int>, std::size_t> counts;
    for (const auto& r : corpus) {
        ++counts[{kWorld, r.year}];
        for (const auto& c : r.countries) ++counts[{c, r.year}];
    }
    return counts;
}

inline std::size_t count_in_period(const std::vector<BibRecord>& corpus,
                                   const std::string& country, const Period& period) {
    std::size_t n = 0;
    for (const auto& r : corpus) {
        if (!period.contains(r.year)) continue;
        if (country == kWorld || r.countries.count(country)) ++n;
    }
    return n;
}

/// (count_to - count_from) / count_from; undefined on a zero baseline.
inline std::optional<double> growth_rate(std::size_t count_from, std::size_t count_to) {
    if (count_from == 0) return std::nullopt;
    return (static_cast<double>(count_to) - static_cast<double>(count_from)) /
           static_cast<double>(count_from);
}

// ---------------------------------------------------------------------------
// Reference base (all-domain totals and citation baselines)

/// Citations counted in [pub_year, pub_year + window - 1].
inline std::int64_t windowed_citations(const BibRecord& r, int window) {
    std::int64_t n = 0;
    for (const int cy : r.citations)
        if (cy >= r.year && cy <= r.year + window - 1) ++n;
    return n;
}

/// All-domain publication data used as normalization denominators: whole
/// counts per (country, year) for the specialization index and per-cell
/// citation baselines for the impact index.
class ReferenceBase {
  public:
    static ReferenceBase from_records(const std::vector<BibRecord>& records) {
        ReferenceBase ref;
        ref.pubs_ = records;
        return ref;
    }

    std::size_t total(const std::string& country, const Period& period) const {
        return count_in_period(pubs_, country, period);
    }

    const std::vector<BibRecord>& records() const { return pubs_; }

  private:
    std::vector<BibRecord> pubs_;
};

// ---------------------------------------------------------------------------
// Specialization index

/// IS = (D_c / T_c) / (D_w / T_w); neutral value 1. Undefined when a
/// denominator is zero.
inline std::optional<double> specialization_index(const std::vector<BibRecord>& domain,
                                                  const ReferenceBase& reference,
                                                  const std::string& country,
                                                  const Period& period) {
    const auto d_c = count_in_period(domain, country, period);
    const auto t_c = reference.total(country, period);
    const auto d_w = count_in_period(domain, kWorld, period);
    const auto t_w = reference.total(kWorld, period);
    if (t_c == 0 || d_w == 0 || t_w == 0) return std::nullopt;
    const double country_share = static_cast<double>(d_c) / static_cast<double>(t_c);
    const double world_share = static_cast<double>(d_w) / static_cast<double>(t_w);
    return country_share / world_share;
}

// ---------------------------------------------------------------------------
// Normalized impact index

namespace detail {

/// Per-cell accumulator grouped by the publication's category multiplicity k,
/// so fractionated sums are reproducible integer arithmetic until the final
/// division.
struct CellStat {
    // k -> (publication count, windowed citation sum)
    std::map<std::size_t, std::pair<std::int64_t, std::int64_t>> by_k;

    void add(std::size_t k, std::int64_t cites) {
        auto& [n, c] = by_k[k];
        ++n;
        c += cites;
    }
    double frac_count() const {
        double w = 0.0;
        for (const auto& [k, nc] : by_k)
            w += static_cast<double>(nc.first) / static_cast<double>(k);
        return w;
    }
    double frac_cites() const {
        double w = 0.0;
        for (const auto& [k, nc] : by_k)
            w += static_cast<double>(nc.second) / static_cast<double>(k);
        return w;
    }
    std::optional<double> mean() const {
        const double n = frac_count();
        if (n <= 0.0) return std::nullopt;
        return frac_cites() / n;
    }
};

using CellKey = std::pair<std::string, int>;  // (category, year)

inline std::map<CellKey, CellStat> cell_stats(const std::vector<BibRecord>& pubs,
                                              const std::string& country, const Period& period,
                                              int window) {
    std::map<CellKey, CellStat> cells;
    for (const auto& r : pubs) {
        if (!period.contains(r.year)) continue;
        if (country != kWorld && !r.countries.count(country)) continue;
        if (r.categories.empty()) continue;
        const std::size_t k = r.categories.size();
        const std::int64_t wc = windowed_citations(r, window);
        for (const auto& cat : r.categories) cells[{cat, r.year}].add(k, wc);
    }
    return cells;
}

}  // namespace detail

/// Country index: over (category, year) cells, the ratio of the country's
/// mean windowed citations to the world baseline, weighted by the country's
/// fractionated publication count per cell. Multi-category publications are
/// fractionated 1/k. Cells with a zero world baseline are excluded from both
/// numerator and weight.
inline std::optional<double> impact_index(const std::vector<BibRecord>& corpus,
                                          const ReferenceBase& reference,
                                          const std::string& country, const Period& period,
                                          int window) {
    const auto world = detail::cell_stats(reference.records(), kWorld, period, window);
    const auto mine = detail::cell_stats(corpus, country, period, window);
    double num = 0.0, weight = 0.0;
    for (const auto& [key, stat] : mine) {
        const auto wit = world.find(key);
        if (wit == world.end()) continue;
        const auto baseline = wit->second.mean();
        if (!baseline || *baseline <= 0.0) continue;  // undefined cell
        const auto cmean = stat.mean();
        if (!cmean) continue;
        const double w = stat.frac_count();
        num += (*cmean / *baseline) * w;
        weight += w;
    }
    if (weight <= 0.0) return std::nullopt;
    return num / weight;
}

/// Years in `period` whose citation window extends past the last complete
/// citation year. A nonempty result means the computation must refuse.
inline std::vector<int> incomplete_window_years(const Period& period, int window,
                                                int citations_complete_through) {
    std::vector<int> bad;
    for (int y = period.from; y <= period.to; ++y)
        if (y + window - 1 > citations_complete_through) bad.push_back(y);
    return bad;
}

// ---------------------------------------------------------------------------
// Indicator table

struct IndicatorRow {
    std::string country;
    std::string period;
    std::string theme;
    std::size_t pub_count = 0;
    std::optional<double> spec_index;
    std::optional<double> impact_index;
};

inline std::vector<IndicatorRow> indicator_table(const std::vector<BibRecord>& domain,
                                                 const ReferenceBase& reference,
                                                 const std::vector<std::string>& countries,
                                                 const std::vector<Period>& periods,
                                                 const std::string& theme, int window,
                                                 bool with_impact = true) {
    std::vector<IndicatorRow> rows;
    for (const auto& period : periods) {
        for (const auto& country : countries) {
            IndicatorRow row;
            row.country = country;
            row.period = period.label();
            row.theme = theme;
            row.pub_count = count_in_period(domain, country, period);
            row.spec_index = specialization_index(domain, reference, country, period);
            if (with_impact)
                row.impact_index = impact_index(domain, reference, country, period, window);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace scimap::indicators
