// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scimap/indicators.hpp"
#include "scimap/record.hpp"

namespace scimap {

struct MapSettings {
    std::size_t min_occ = 10;
    double resolution = 1.0;
    std::uint64_t seed = 0;
    int max_iter = 1000;
    double tol = 1e-10;
};

struct CovidSettings {
    int from_year = 2019;
    int to_year = 2020;
};

struct IndicatorSettings {
    int window = 2;
    std::vector<std::string> periods;  // "2000" or "2015-2019"
    std::vector<std::string> countries;
    int data_through = 2100;  // last year with complete citation data
    bool with_impact = true;
    std::optional<std::string> reference;  // all-domain record file; defaults to the corpus
};

/// Declarative run configuration; CLI flags override file values.
struct RunConfig {
    std::optional<std::string> source_a;
    std::optional<std::string> source_b;
    std::optional<std::string> thesaurus;
    std::optional<std::string> pattern_map;
    std::optional<std::string> query;       // inline query string
    std::optional<std::string> query_file;  // or a file holding it
    std::optional<std::string> corpus;      // a previous build's output
    std::set<std::string> categories;
    std::set<DocType> keep_types = {DocType::Article, DocType::ProceedingsPaper, DocType::Review,
                                    DocType::Letter};
    MapSettings map;
    CovidSettings covid;
    IndicatorSettings indicators;
    std::string out = "out";
    bool quiet = false;

    /// Raw config document, hashed into run manifests.
    std::string canonical;
};

inline RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    auto opt_str = [&](const char* key) -> std::optional<std::string> {
        if (j.contains(key)) return j.at(key).get<std::string>();
        return std::nullopt;
    };
    c.source_a = opt_str("source_a");
    c.source_b = opt_str("source_b");
    c.thesaurus = opt_str("thesaurus");
    c.pattern_map = opt_str("pattern_map");
    c.query = opt_str("query");
    c.query_file = opt_str("query_file");
    c.corpus = opt_str("corpus");
    if (j.contains("categories"))
        c.categories = j.at("categories").get<std::set<std::string>>();
    if (j.contains("keep_types")) {
        c.keep_types.clear();
        for (const auto& t : j.at("keep_types"))
            c.keep_types.insert(doc_type_from_string(t.get<std::string>()));
    }
    if (j.contains("map")) {
        const auto& m = j.at("map");
        c.map.min_occ = m.value("min_occ", c.map.min_occ);
        c.map.resolution = m.value("resolution", c.map.resolution);
        c.map.seed = m.value("seed", c.map.seed);
        c.map.max_iter = m.value("max_iter", c.map.max_iter);
        c.map.tol = m.value("tol", c.map.tol);
    }
    if (j.contains("covid")) {
        const auto& v = j.at("covid");
        c.covid.from_year = v.value("from_year", c.covid.from_year);
        c.covid.to_year = v.value("to_year", c.covid.to_year);
    }
    if (j.contains("indicators")) {
        const auto& v = j.at("indicators");
        c.indicators.window = v.value("window", c.indicators.window);
        if (v.contains("periods"))
            c.indicators.periods = v.at("periods").get<std::vector<std::string>>();
        if (v.contains("countries"))
            c.indicators.countries = v.at("countries").get<std::vector<std::string>>();
        c.indicators.data_through = v.value("data_through", c.indicators.data_through);
        c.indicators.with_impact = v.value("with_impact", c.indicators.with_impact);
        if (v.contains("reference"))
            c.indicators.reference = v.at("reference").get<std::string>();
    }
    c.out = j.value("out", c.out);
    c.canonical = j.dump();
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

inline void validate_config(const RunConfig& c) {
    if (c.map.min_occ < 1) throw std::invalid_argument("map.min_occ must be >= 1");
    if (c.map.resolution <= 0.0) throw std::invalid_argument("map.resolution must be positive");
    if (c.map.max_iter < 1) throw std::invalid_argument("map.max_iter must be >= 1");
    if (!(c.map.tol > 0.0)) throw std::invalid_argument("map.tol must be positive");
    if (c.indicators.window < 1) throw std::invalid_argument("indicators.window must be >= 1");
    for (const auto& p : c.indicators.periods) indicators::Period::parse(p);
}

}  // namespace scimap
