// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scimap/text.hpp"

namespace scimap {

inline constexpr const char* kVersion = "0.1.0";

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Records what a subcommand ran with: config hash, input digests, settings.
/// Contains nothing volatile, so reruns with identical inputs produce
/// byte-identical manifests.
struct Manifest {
    std::string command;
    std::string config_hash;
    std::map<std::string, std::string> input_digests;  // path -> fnv1a hex
    nlohmann::ordered_json settings = nlohmann::ordered_json::object();
    std::vector<std::string> outputs;

    void add_input(const std::string& path) {
        input_digests[path] = hex64(text::fnv1a(read_file(path)));
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["tool"] = "scimap";
        j["version"] = kVersion;
        j["command"] = command;
        j["config_hash"] = config_hash;
        j["inputs"] = input_digests;
        j["settings"] = settings;
        j["outputs"] = outputs;
        return j;
    }

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write manifest: " + path);
        out << to_json().dump(2) << '\n';
    }
};

inline Manifest make_manifest(const std::string& command, const std::string& canonical_config) {
    Manifest m;
    m.command = command;
    m.config_hash = hex64(text::fnv1a(canonical_config));
    return m;
}

}  // namespace scimap
