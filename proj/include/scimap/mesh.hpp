// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <istream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace scimap::mesh {

/// Thesaurus position code, e.g. "C01.221.500".
inline bool valid_tree_number(const std::string& tn, int max_depth = 13) {
    if (tn.empty() || tn.front() < 'A' || tn.front() > 'Z') return false;
    int depth = 1;
    bool digit_seen = false;
    for (std::size_t i = 1; i < tn.size(); ++i) {
        const char c = tn[i];
        if (c >= '0' && c <= '9') {
            digit_seen = true;
        } else if (c == '.') {
            if (!digit_seen) return false;
            digit_seen = false;
            ++depth;
        } else {
            return false;
        }
    }
    if (!digit_seen) return false;  // must end in digits (also catches "C")
    return max_depth <= 0 || depth <= max_depth;
}

/// True when `ancestor` is a strict dot-boundary prefix of `descendant`
/// ("C01.22" is not an ancestor of "C01.221.500").
inline bool tree_ancestor(const std::string& ancestor, const std::string& descendant) {
    return descendant.size() > ancestor.size() &&
           descendant.compare(0, ancestor.size(), ancestor) == 0 &&
           descendant[ancestor.size()] == '.';
}

struct MeshDescriptor {
    std::string name;
    std::set<std::string> tree_numbers;
};

struct ThesaurusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class MeshThesaurus {
  public:
    void add(const std::string& name, const std::string& tree_number) {
        const auto it = index_.find(tree_number);
        if (it != index_.end() && it->second != name)
            throw ThesaurusError("tree number " + tree_number + " assigned to both '" +
                                 it->second + "' and '" + name + "'");
        descriptors_[name].name = name;
        descriptors_[name].tree_numbers.insert(tree_number);
        index_[tree_number] = name;
    }

    bool contains(const std::string& name) const { return descriptors_.count(name) != 0; }

    const MeshDescriptor& descriptor(const std::string& name) const {
        const auto it = descriptors_.find(name);
        if (it == descriptors_.end()) throw ThesaurusError("unknown descriptor: " + name);
        return it->second;
    }

    const std::map<std::string, MeshDescriptor>& descriptors() const { return descriptors_; }
    const std::map<std::string, std::string>& index() const { return index_; }
    std::size_t size() const { return descriptors_.size(); }

    /// The descriptor itself plus every descriptor occupying a position
    /// strictly below any of its tree numbers.
    std::set<std::string> explode(const std::string& name) const {
        const MeshDescriptor& d = descriptor(name);
        std::set<std::string> out{name};
        for (const auto& tn : d.tree_numbers) {
            // ordered index: all descendants sort within ["<tn>.", "<tn>/")
            // since '/' is the successor of '.' in ASCII
            auto lo = index_.lower_bound(tn + ".");
            auto hi = index_.lower_bound(tn + "/");
            for (auto it = lo; it != hi; ++it)
                if (tree_ancestor(tn, it->first)) out.insert(it->second);
        }
        return out;
    }

  private:
    std::map<std::string, MeshDescriptor> descriptors_;
    std::map<std::string, std::string> index_;  // tree number -> name
};

struct ThesaurusLoadStats {
    std::size_t pairs = 0;
    std::size_t duplicates = 0;
};

/// Loads a two-column tab-separated (name, tree number) stream.
/// Duplicate pairs are deduplicated with a count; a malformed tree number is
/// fatal and names the offending line.
inline MeshThesaurus load_thesaurus(std::istream& in, ThesaurusLoadStats* stats = nullptr,
                                    int max_depth = 13) {
    MeshThesaurus th;
    ThesaurusLoadStats local;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ThesaurusError("line " + std::to_string(line_no) + ": expected two tab-separated columns");
        const std::string name = line.substr(0, tab);
        const std::string tn = line.substr(tab + 1);
        if (name.empty() || !valid_tree_number(tn, max_depth))
            throw ThesaurusError("line " + std::to_string(line_no) + ": malformed tree number '" + tn + "'");
        if (th.contains(name) && th.descriptor(name).tree_numbers.count(tn)) {
            ++local.duplicates;
            continue;
        }
        th.add(name, tn);
        ++local.pairs;
    }
    if (stats) *stats = local;
    return th;
}

}  // namespace scimap::mesh
