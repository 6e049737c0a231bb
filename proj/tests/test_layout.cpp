// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include "scimap/layout.hpp"

using namespace scimap::topicmap;

namespace {

TermNetwork make_net(std::size_t n,
                     const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
    TermNetwork net;
    for (std::size_t i = 0; i < n; ++i)
        net.nodes.push_back({"t" + std::string(1, static_cast<char>('a' + i)), 1, {}, {}});
    for (const auto& [i, j, s] : edges) net.edges.push_back({i, j, 1, s});
    net.doc_count = n;
    return net;
}

double dist(const std::array<double, 2>& p, const std::array<double, 2>& q) {
    return std::hypot(p[0] - q[0], p[1] - q[1]);
}

std::vector<double> pair_distances(const std::vector<std::array<double, 2>>& coords) {
    std::vector<double> d;
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = i + 1; j < coords.size(); ++j) d.push_back(dist(coords[i], coords[j]));
    std::sort(d.begin(), d.end());
    return d;
}

TermNetwork random_connected_net(std::mt19937_64& rng, std::size_t n, double extra_p) {
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    for (std::size_t i = 1; i < n; ++i)  // spanning tree first
        edges.push_back({std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), i,
                         std::uniform_real_distribution<double>(0.2, 2.0)(rng)});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::uniform_real_distribution<double>(0, 1)(rng) < extra_p)
                edges.push_back({i, j, std::uniform_real_distribution<double>(0.2, 2.0)(rng)});
    return make_net(n, edges);
}

}  // namespace

TEST_CASE("two connected nodes sit at distance one") {
    const auto net = make_net(2, {{0, 1, 1.0}});
    const auto coords = layout_network(net);
    CHECK_THAT(dist(coords[0], coords[1]), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("degenerate maps") {
    CHECK(layout_network(make_net(0, {})).empty());
    const auto one = layout_network(make_net(1, {}));
    CHECK(one[0][0] == 0.0);
    CHECK(one[0][1] == 0.0);
}

TEST_CASE("objective is monotone non-increasing across iterations") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 5; ++t) {
        const auto net = random_connected_net(rng, 12, 0.2);
        std::vector<double> values;
        LayoutParams params;
        params.seed = static_cast<std::uint64_t>(t);
        params.on_iteration = [&](int, double v) { values.push_back(v); };
        layout_network(net, params);
        REQUIRE(values.size() >= 2);
        for (std::size_t k = 0; k + 1 < values.size(); ++k) CHECK(values[k + 1] <= values[k]);
    }
}

TEST_CASE("the layout satisfies the unit average-distance constraint") {
    std::mt19937_64 rng(103);
    const auto net = random_connected_net(rng, 15, 0.3);
    const auto coords = layout_network(net);
    const auto d = pair_distances(coords);
    double sum = 0.0;
    for (const double v : d) sum += v;
    CHECK_THAT(sum / static_cast<double>(d.size()), Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("a uniform 4-cycle converges to the analytic square") {
    // all 4 edges equal: optimum is a square with side 3(2-sqrt(2))/2
    const auto net = make_net(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
    const double side = 3.0 * (2.0 - std::sqrt(2.0)) / 2.0;
    const std::vector<double> expected{side, side, side, side, side * std::sqrt(2.0),
                                       side * std::sqrt(2.0)};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        LayoutParams params;
        params.seed = seed;
        params.tol = 1e-15;  // converge well past the 1e-6 comparison
        params.max_iter = 5000;
        auto d = pair_distances(layout_network(net, params));
        auto want = expected;
        std::sort(want.begin(), want.end());
        REQUIRE(d.size() == want.size());
        for (std::size_t k = 0; k < d.size(); ++k)
            CHECK_THAT(d[k], Catch::Matchers::WithinAbs(want[k], 1e-6));
    }
}

TEST_CASE("layout is deterministic for a fixed seed") {
    std::mt19937_64 rng(107);
    const auto net = random_connected_net(rng, 20, 0.15);
    LayoutParams params;
    params.seed = 11;
    const auto a = layout_network(net, params);
    const auto b = layout_network(net, params);
    CHECK(a == b);
}

TEST_CASE("the map is centered, axis-aligned, and reflection-normalized") {
    std::mt19937_64 rng(109);
    const auto net = random_connected_net(rng, 18, 0.2);
    const auto coords = layout_network(net);
    double mx = 0.0, my = 0.0;
    for (const auto& p : coords) {
        mx += p[0];
        my += p[1];
    }
    CHECK_THAT(mx, Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_THAT(my, Catch::Matchers::WithinAbs(0.0, 1e-9));

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : coords) {
        sxx += p[0] * p[0];
        sxy += p[0] * p[1];
        syy += p[1] * p[1];
    }
    CHECK_THAT(sxy, Catch::Matchers::WithinAbs(0.0, 1e-9));  // principal axes
    CHECK(sxx >= syy - 1e-12);                               // major axis horizontal

    for (int axis = 0; axis < 2; ++axis)
        for (const auto& p : coords) {
            if (p[axis] == 0.0) continue;
            CHECK(p[axis] > 0.0);  // first nonzero coordinate made positive
            break;
        }
}

TEST_CASE("disconnected components are packed left to right with a unit gap") {
    const auto net = make_net(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    const auto coords = layout_network(net);
    // two 2-node segments on one axis: centered positions +-0.5, +-1.5
    std::vector<double> xs;
    for (const auto& p : coords) {
        xs.push_back(p[0]);
        CHECK_THAT(p[1], Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
    std::sort(xs.begin(), xs.end());
    const std::vector<double> want{-1.5, -0.5, 0.5, 1.5};
    for (std::size_t k = 0; k < 4; ++k) CHECK_THAT(xs[k], Catch::Matchers::WithinAbs(want[k], 1e-12));
    CHECK(coords[0][0] > 0.0);  // reflection puts the first node on the positive side
}

TEST_CASE("an isolated node joins the packing without disturbing the pair") {
    const auto net = make_net(3, {{0, 1, 1.0}});
    const auto coords = layout_network(net);
    CHECK_THAT(dist(coords[0], coords[1]), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("non-finite similarities are reported as a layout failure") {
    auto net = make_net(3, {{0, 1, std::numeric_limits<double>::infinity()}, {1, 2, 1.0}});
    CHECK_THROWS_WITH(layout_network(net), Catch::Matchers::ContainsSubstring("layout"));
}
