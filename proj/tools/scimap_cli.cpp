// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scimap/commands.hpp"
#include "scimap/config.hpp"

namespace {

struct GlobalFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool quiet = false;
};

scimap::RunConfig resolve_config(const GlobalFlags& g) {
    scimap::RunConfig cfg;
    if (!g.config_path.empty()) cfg = scimap::load_config(g.config_path);
    if (g.seed) cfg.map.seed = *g.seed;  // all randomness flows from one seed
    if (g.out) cfg.out = *g.out;
    if (g.quiet) cfg.quiet = true;
    scimap::validate_config(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scimap: corpus construction, topic mapping, and country indicators "
                 "for bibliographic record files"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--config", g.config_path, "Run configuration file (JSON)");
    app.add_option("--seed", [&g](const std::vector<std::string>& v) {
        g.seed = std::stoull(v.front());
        return true;
    }, "Override the configured seed");
    app.add_option("--out", [&g](const std::vector<std::string>& v) {
        g.out = v.front();
        return true;
    }, "Override the output directory");
    app.add_flag("--quiet", g.quiet, "Suppress progress output");

    auto* query = app.add_subcommand("query", "Evaluate the thesaurus query over source A");
    std::string query_override, explain_id;
    query->add_option("--query", query_override, "Query string (overrides config)");
    query->add_option("--explain", explain_id,
                      "Print a per-clause trace for one record id (pmid:<id> or wos:<id>)");

    auto* build = app.add_subcommand("build", "Link sources, union categories, apply filters");
    auto* map = app.add_subcommand("map", "Build the keyword co-occurrence map");
    auto* covid = app.add_subcommand("covid", "Select the Covid sub-corpus by pattern map");
    auto* indicators = app.add_subcommand("indicators", "Compute count/specialization/impact tables");
    auto* report = app.add_subcommand("report", "Re-emit the coverage report from a ledger");

    CLI11_PARSE(app, argc, argv);

    try {
        scimap::RunConfig cfg = resolve_config(g);
        if (!query_override.empty()) cfg.query = query_override;

        if (query->parsed()) {
            if (!explain_id.empty())
                return scimap::commands::cmd_query_explain(cfg, explain_id);
            return scimap::commands::cmd_query(cfg);
        }
        if (build->parsed()) return scimap::commands::cmd_build(cfg);
        if (map->parsed()) return scimap::commands::cmd_map(cfg);
        if (covid->parsed()) return scimap::commands::cmd_covid(cfg);
        if (indicators->parsed()) return scimap::commands::cmd_indicators(cfg);
        if (report->parsed()) return scimap::commands::cmd_report(cfg);
    } catch (const scimap::query::SyntaxError& e) {
        std::cerr << "query syntax error: " << e.what() << '\n';
        return 2;
    } catch (const scimap::commands::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
