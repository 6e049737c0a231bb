// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "scimap/network.hpp"

namespace scimap::topicmap {

struct LayoutParams {
    std::uint64_t seed = 0;
    int max_iter = 1000;
    double tol = 1e-10;
    /// Optional per-iteration hook; receives the feasible objective value.
    std::function<void(int, double)> on_iteration;
};

namespace detail {

struct Component {
    std::vector<std::size_t> nodes;                       // global indices
    std::vector<std::array<std::size_t, 2>> edges;        // local indices
    std::vector<double> sims;
};

inline std::vector<Component> connected_components(const TermNetwork& net) {
    const std::size_t n = net.nodes.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
        if (net.edges[e].sim <= 0.0) continue;
        adj[net.edges[e].i].push_back(e);
        adj[net.edges[e].j].push_back(e);
    }
    int ncomp = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (const std::size_t e : adj[v]) {
                const std::size_t u = net.edges[e].i == v ? net.edges[e].j : net.edges[e].i;
                if (comp[u] < 0) {
                    comp[u] = ncomp;
                    stack.push_back(u);
                }
            }
        }
        ++ncomp;
    }
    std::vector<Component> comps(static_cast<std::size_t>(ncomp));
    std::vector<std::size_t> local(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& c = comps[static_cast<std::size_t>(comp[i])];
        local[i] = c.nodes.size();
        c.nodes.push_back(i);
    }
    for (const auto& e : net.edges) {
        if (e.sim <= 0.0) continue;
        auto& c = comps[static_cast<std::size_t>(comp[e.i])];
        c.edges.push_back({local[e.i], local[e.j]});
        c.sims.push_back(e.sim);
    }
    return comps;
}

inline double avg_pair_distance(const Eigen::MatrixX2d& x) {
    const auto m = x.rows();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j) sum += (x.row(i) - x.row(j)).norm();
    return sum / (static_cast<double>(m) * static_cast<double>(m - 1) / 2.0);
}

inline double weighted_sq_stress(const Component& c, const Eigen::MatrixX2d& x) {
    double v = 0.0;
    for (std::size_t e = 0; e < c.edges.size(); ++e)
        v += c.sims[e] * (x.row(static_cast<Eigen::Index>(c.edges[e][0])) -
                          x.row(static_cast<Eigen::Index>(c.edges[e][1])))
                             .squaredNorm();
    return v;
}

/// Minimizes sum_e sim_e d_e^2 under the constraint that the average pairwise
/// distance within the component equals 1. Majorization of the Lagrangian;
/// each accepted iterate is rescaled onto the constraint, which keeps the
/// feasible objective non-increasing.
inline Eigen::MatrixX2d layout_component(const Component& c, const LayoutParams& params,
                                         std::uint64_t comp_seed) {
    const auto m = static_cast<Eigen::Index>(c.nodes.size());
    Eigen::MatrixX2d x(m, 2);
    if (m == 1) {
        x.setZero();
        return x;
    }
    if (m == 2) {
        // the constraint pins a single pair at distance exactly 1
        x << -0.5, 0.0, 0.5, 0.0;
        if (params.on_iteration) params.on_iteration(0, weighted_sq_stress(c, x));
        return x;
    }
    std::mt19937_64 rng(comp_seed);
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    for (Eigen::Index i = 0; i < m; ++i)
        for (int d = 0; d < 2; ++d) x(i, d) = uni(rng);
    x.rowwise() -= x.colwise().mean();

    const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
    {
        const double d0 = avg_pair_distance(x);
        if (d0 <= 0.0) throw std::runtime_error("layout: degenerate start");
        x /= d0;
    }

    // weighted Laplacian, regularized to pin the translation mode
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        const auto i = static_cast<Eigen::Index>(c.edges[e][0]);
        const auto j = static_cast<Eigen::Index>(c.edges[e][1]);
        lap(i, i) += c.sims[e];
        lap(j, j) += c.sims[e];
        lap(i, j) -= c.sims[e];
        lap(j, i) -= c.sims[e];
    }
    Eigen::MatrixXd reg = 2.0 * lap;
    reg.array() += 2.0 / static_cast<double>(m);
    const Eigen::LDLT<Eigen::MatrixXd> solver(reg);
    if (solver.info() != Eigen::Success) throw std::runtime_error("layout: factorization failed");

    double v = weighted_sq_stress(c, x);
    for (int iter = 0; iter < params.max_iter; ++iter) {
        if (!std::isfinite(v))
            throw std::runtime_error("layout: non-finite objective at iteration " +
                                     std::to_string(iter));
        if (params.on_iteration) params.on_iteration(iter, v);
        if (v <= 0.0) break;
        const double mu = 2.0 * v / pairs;

        // linear term of the majorizer: unit directions of all current pairs
        Eigen::MatrixX2d b = Eigen::MatrixX2d::Zero(m, 2);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = i + 1; j < m; ++j) {
                Eigen::RowVector2d diff = x.row(i) - x.row(j);
                const double d = diff.norm();
                if (d <= std::numeric_limits<double>::min()) continue;
                diff /= d;
                b.row(i) += diff;
                b.row(j) -= diff;
            }

        Eigen::MatrixX2d y = solver.solve(mu * b);
        if (!y.allFinite())
            throw std::runtime_error("layout: non-finite solve at iteration " +
                                     std::to_string(iter));
        y.rowwise() -= y.colwise().mean();
        const double dy = avg_pair_distance(y);
        if (dy <= 0.0) break;
        y /= dy;
        const double vy = weighted_sq_stress(c, y);
        if (!(vy < v * (1.0 - params.tol))) {
            if (vy <= v) {
                x = y;
                v = vy;
            }
            break;
        }
        x = y;
        v = vy;
    }
    return x;
}

}  // namespace detail

/// Deterministic 2-D layout. Components are laid out independently on the
/// unit average-distance scale, packed side by side by decreasing size, then
/// the whole map is centered, rotated to principal axes, and reflected so the
/// lexicographically smallest term has nonnegative coordinates.
inline std::vector<std::array<double, 2>> layout_network(const TermNetwork& net,
                                                         const LayoutParams& params = {}) {
    const std::size_t n = net.nodes.size();
    std::vector<std::array<double, 2>> coords(n, {0.0, 0.0});
    if (n == 0) return coords;

    auto comps = detail::connected_components(net);
    std::vector<std::size_t> order(comps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (comps[a].nodes.size() != comps[b].nodes.size())
            return comps[a].nodes.size() > comps[b].nodes.size();
        return comps[a].nodes.front() < comps[b].nodes.front();
    });

    constexpr double kGap = 1.0;  // one node diameter on the unit-distance scale
    double offset = 0.0;
    bool first = true;
    for (const std::size_t ci : order) {
        const auto& c = comps[ci];
        Eigen::MatrixX2d x = detail::layout_component(c, params, params.seed + ci);
        const double xmin = x.col(0).minCoeff();
        const double xmax = x.col(0).maxCoeff();
        if (first) {
            offset -= xmin;
            first = false;
        } else {
            offset += kGap - xmin;
        }
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            coords[c.nodes[static_cast<std::size_t>(i)]] = {x(i, 0) + offset, x(i, 1)};
        }
        offset += xmax;
    }

    // center
    double mx = 0.0, my = 0.0;
    for (const auto& p : coords) {
        mx += p[0];
        my += p[1];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    for (auto& p : coords) {
        p[0] -= mx;
        p[1] -= my;
    }

    // rotate to principal axes
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : coords) {
        sxx += p[0] * p[0];
        sxy += p[0] * p[1];
        syy += p[1] * p[1];
    }
    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    const double ct = std::cos(theta), st = std::sin(theta);
    for (auto& p : coords) {
        const double px = ct * p[0] + st * p[1];
        const double py = -st * p[0] + ct * p[1];
        p[0] = px;
        p[1] = py;
    }

    // reflect: nodes are in lexicographic term order, so scan from node 0 for
    // the first nonzero coordinate on each axis and make it nonnegative
    for (int axis = 0; axis < 2; ++axis) {
        for (std::size_t i = 0; i < n; ++i) {
            if (coords[i][axis] == 0.0) continue;
            if (coords[i][axis] < 0.0)
                for (auto& p : coords) p[axis] = -p[axis];
            break;
        }
    }
    return coords;
}

}  // namespace scimap::topicmap
