// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "scimap/network.hpp"

namespace scimap::topicmap {

/// Quality of a partition: Q = sum over same-cluster pairs of
/// (sim_ij - resolution * n_i * n_j), with node weights n_i the node's share
/// of total similarity strength.
inline double partition_quality(const TermNetwork& net, const std::vector<int>& cluster,
                                double resolution) {
    const std::size_t n = net.nodes.size();
    std::vector<double> strength(n, 0.0);
    double total = 0.0;
    for (const auto& e : net.edges) {
        strength[e.i] += e.sim;
        strength[e.j] += e.sim;
        total += 2.0 * e.sim;
    }
    std::vector<double> w(n, 0.0);
    if (total > 0.0)
        for (std::size_t i = 0; i < n; ++i) w[i] = strength[i] / total;

    double q = 0.0;
    for (const auto& e : net.edges)
        if (cluster[e.i] == cluster[e.j]) q += e.sim;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (cluster[i] == cluster[j]) q -= resolution * w[i] * w[j];
    return q;
}

/// Greedy local moving: seeded random visit order, repeated single-node moves
/// to the best-gain cluster (ties to the lowest cluster id) until a full pass
/// makes no move, followed by whole-cluster merges when a merge improves the
/// quality, alternating until neither phase changes anything. Deterministic
/// given (network, resolution, seed).
inline std::vector<int> cluster_network(const TermNetwork& net, double resolution,
                                        std::uint64_t seed) {
    const std::size_t n = net.nodes.size();
    std::vector<int> cluster(n);
    std::iota(cluster.begin(), cluster.end(), 0);
    if (n <= 1) return cluster;

    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    std::vector<double> strength(n, 0.0);
    double total = 0.0;
    for (const auto& e : net.edges) {
        if (e.sim <= 0.0) continue;
        adj[e.i].push_back({e.j, e.sim});
        adj[e.j].push_back({e.i, e.sim});
        strength[e.i] += e.sim;
        strength[e.j] += e.sim;
        total += 2.0 * e.sim;
    }
    std::vector<double> w(n, 0.0);
    if (total > 0.0)
        for (std::size_t i = 0; i < n; ++i) w[i] = strength[i] / total;

    std::vector<double> cluster_weight(n);   // sum of w over members
    std::vector<std::size_t> cluster_size(n, 1);
    for (std::size_t i = 0; i < n; ++i) cluster_weight[i] = w[i];

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> links(n, 0.0);  // scratch: similarity into each cluster

    const auto local_moving = [&] {
        bool moved = true;
        while (moved) {
            moved = false;
            std::shuffle(order.begin(), order.end(), rng);
            for (const std::size_t v : order) {
                const int cur = cluster[v];
                std::vector<int> touched;
                for (const auto& [u, s] : adj[v]) {
                    const int c = cluster[u];
                    if (links[static_cast<std::size_t>(c)] == 0.0) touched.push_back(c);
                    links[static_cast<std::size_t>(c)] += s;
                }
                std::sort(touched.begin(), touched.end());

                const double base =
                    links[static_cast<std::size_t>(cur)] -
                    resolution * w[v] * (cluster_weight[static_cast<std::size_t>(cur)] - w[v]);
                int best = cur;
                double best_gain = 0.0;
                // leaving for an empty cluster: candidate value 0
                if (cluster_size[static_cast<std::size_t>(cur)] > 1) {
                    int empty = -1;
                    for (std::size_t c = 0; c < n; ++c)
                        if (cluster_size[c] == 0) {
                            empty = static_cast<int>(c);
                            break;
                        }
                    if (empty >= 0 && 0.0 - base > best_gain) {
                        best = empty;
                        best_gain = -base;
                    }
                }
                for (const int c : touched) {
                    if (c == cur) continue;
                    const double gain =
                        links[static_cast<std::size_t>(c)] -
                        resolution * w[v] * cluster_weight[static_cast<std::size_t>(c)] - base;
                    if (gain > best_gain) {
                        best = c;
                        best_gain = gain;
                    }
                }
                for (const auto& [u, s] : adj[v]) links[static_cast<std::size_t>(cluster[u])] = 0.0;

                if (best != cur && best_gain > 1e-12) {
                    cluster_weight[static_cast<std::size_t>(cur)] -= w[v];
                    --cluster_size[static_cast<std::size_t>(cur)];
                    cluster_weight[static_cast<std::size_t>(best)] += w[v];
                    ++cluster_size[static_cast<std::size_t>(best)];
                    cluster[v] = best;
                    moved = true;
                }
            }
        }
    };

    // Merges the best-gain cluster pair (ties to the lowest pair of ids) as
    // long as a merge improves quality. Returns whether anything merged.
    const auto merge_clusters = [&] {
        bool merged_any = false;
        for (;;) {
            std::map<std::pair<int, int>, double> between;
            for (const auto& e : net.edges) {
                if (e.sim <= 0.0) continue;
                const int a = cluster[e.i], b = cluster[e.j];
                if (a != b) between[{std::min(a, b), std::max(a, b)}] += e.sim;
            }
            int best_a = -1, best_b = -1;
            double best_gain = 1e-12;
            for (const auto& [pair, sim] : between) {
                const double gain =
                    sim - resolution * cluster_weight[static_cast<std::size_t>(pair.first)] *
                              cluster_weight[static_cast<std::size_t>(pair.second)];
                if (gain > best_gain) {
                    best_a = pair.first;
                    best_b = pair.second;
                    best_gain = gain;
                }
            }
            if (best_a < 0) return merged_any;
            for (std::size_t i = 0; i < n; ++i)
                if (cluster[i] == best_b) cluster[i] = best_a;
            cluster_weight[static_cast<std::size_t>(best_a)] +=
                cluster_weight[static_cast<std::size_t>(best_b)];
            cluster_weight[static_cast<std::size_t>(best_b)] = 0.0;
            cluster_size[static_cast<std::size_t>(best_a)] +=
                cluster_size[static_cast<std::size_t>(best_b)];
            cluster_size[static_cast<std::size_t>(best_b)] = 0;
            merged_any = true;
        }
    };

    local_moving();
    while (merge_clusters()) local_moving();

    // relabel to consecutive ids, ordered by size descending then by the
    // smallest member index
    std::vector<std::vector<std::size_t>> members(n);
    for (std::size_t i = 0; i < n; ++i)
        members[static_cast<std::size_t>(cluster[i])].push_back(i);
    std::vector<std::size_t> labels;
    for (std::size_t c = 0; c < n; ++c)
        if (!members[c].empty()) labels.push_back(c);
    std::stable_sort(labels.begin(), labels.end(), [&](std::size_t a, std::size_t b) {
        if (members[a].size() != members[b].size()) return members[a].size() > members[b].size();
        return members[a].front() < members[b].front();
    });
    std::vector<int> relabeled(n);
    for (std::size_t newid = 0; newid < labels.size(); ++newid)
        for (const std::size_t i : members[labels[newid]])
            relabeled[i] = static_cast<int>(newid);
    return relabeled;
}

}  // namespace scimap::topicmap
