// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "scimap/indicators.hpp"

using namespace scimap;
using namespace scimap::indicators;

namespace {

BibRecord pub(std::set<std::string> countries, int year, std::set<std::string> categories = {"C"},
              std::vector<int> citations = {}) {
    BibRecord r;
    r.pmid = "1";
    r.year = year;
    r.countries = std::move(countries);
    r.categories = std::move(categories);
    r.citations = std::move(citations);
    return r;
}

std::vector<BibRecord> n_pubs(std::size_t n, std::set<std::string> countries, int year) {
    return std::vector<BibRecord>(n, pub(std::move(countries), year));
}

void append(std::vector<BibRecord>& dst, const std::vector<BibRecord>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

/// Independent per-publication recomputation of the impact index with plain
/// double fractional accumulation.
std::optional<double> impact_oracle(const std::vector<BibRecord>& corpus,
                                    const std::vector<BibRecord>& ref_records,
                                    const std::string& country, const Period& period,
                                    int window) {
    using Key = std::pair<std::string, int>;
    std::map<Key, std::pair<double, double>> world, mine;  // (frac count, frac cites)
    auto scan = [&](const std::vector<BibRecord>& pubs, const std::string& c,
                    std::map<Key, std::pair<double, double>>& out) {
        for (const auto& r : pubs) {
            if (!period.contains(r.year)) continue;
            if (c != kWorld && !r.countries.count(c)) continue;
            if (r.categories.empty()) continue;
            const double k = static_cast<double>(r.categories.size());
            double wc = 0.0;
            for (const int cy : r.citations)
                if (cy >= r.year && cy <= r.year + window - 1) wc += 1.0;
            for (const auto& cat : r.categories) {
                out[{cat, r.year}].first += 1.0 / k;
                out[{cat, r.year}].second += wc / k;
            }
        }
    };
    scan(ref_records, kWorld, world);
    scan(corpus, country, mine);
    double num = 0.0, weight = 0.0;
    for (const auto& [key, cw] : mine) {
        const auto wit = world.find(key);
        if (wit == world.end() || wit->second.first <= 0.0) continue;
        const double baseline = wit->second.second / wit->second.first;
        if (baseline <= 0.0) continue;
        if (cw.first <= 0.0) continue;
        const double cmean = cw.second / cw.first;
        num += (cmean / baseline) * cw.first;
        weight += cw.first;
    }
    if (weight <= 0.0) return std::nullopt;
    return num / weight;
}

std::vector<BibRecord> random_pubs(std::mt19937_64& rng, std::size_t n) {
    const std::vector<std::string> cats{"C1", "C2", "C3", "C4"};
    const std::vector<std::string> countries{"FR", "US", "CN"};
    std::vector<BibRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        BibRecord r;
        r.pmid = std::to_string(i);
        r.year = std::uniform_int_distribution<int>(2008, 2012)(rng);
        const int nc = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int k = 0; k < nc; ++k)
            r.categories.insert(cats[std::uniform_int_distribution<std::size_t>(0, 3)(rng)]);
        const int ncy = std::uniform_int_distribution<int>(1, 2)(rng);
        for (int k = 0; k < ncy; ++k)
            r.countries.insert(countries[std::uniform_int_distribution<std::size_t>(0, 2)(rng)]);
        const int ncit = std::uniform_int_distribution<int>(0, 6)(rng);
        for (int k = 0; k < ncit; ++k)
            r.citations.push_back(r.year + std::uniform_int_distribution<int>(0, 3)(rng));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

TEST_CASE("period parsing and labels") {
    CHECK(Period::parse("2005").from == 2005);
    CHECK(Period::parse("2005").to == 2005);
    CHECK(Period::parse("2000-2004").label() == "2000-2004");
    CHECK(Period{2010, 2010}.label() == "2010");
    CHECK_THROWS_AS(Period::parse("2010-2005"), std::invalid_argument);
}

TEST_CASE("whole counting credits every address country in full") {
    const std::vector<BibRecord> corpus{pub({"FR", "US"}, 2010), pub({"FR"}, 2010)};
    const auto series = count_series(corpus);
    CHECK(series.at({"FR", 2010}) == 2);
    CHECK(series.at({"US", 2010}) == 1);
    CHECK(series.at({kWorld, 2010}) == 2);  // world counts each publication once
    CHECK(count_in_period(corpus, "FR", {2010, 2010}) == 2);
    CHECK(count_in_period(corpus, "US", {2005, 2015}) == 1);
    CHECK(count_in_period(corpus, "US", {2011, 2015}) == 0);
}

TEST_CASE("growth rate") {
    CHECK_THAT(*growth_rate(100, 140), Catch::Matchers::WithinAbs(0.40, 1e-15));
    CHECK(*growth_rate(50, 50) == 0.0);
    CHECK_FALSE(growth_rate(0, 10).has_value());
}

TEST_CASE("citation window is inclusive on both ends") {
    const auto r = pub({"FR"}, 2010, {"C"}, {2009, 2010, 2011, 2012, 2013});
    CHECK(windowed_citations(r, 2) == 2);  // 2010, 2011
    CHECK(windowed_citations(r, 1) == 1);
    CHECK(windowed_citations(r, 4) == 4);
}

TEST_CASE("specialization is one when the domain is the reference") {
    std::vector<BibRecord> all;
    append(all, n_pubs(40, {"FR"}, 2010));
    append(all, n_pubs(60, {"US"}, 2010));
    const auto ref = ReferenceBase::from_records(all);
    CHECK(*specialization_index(all, ref, "FR", {2010, 2010}) == 1.0);
    CHECK(*specialization_index(all, ref, kWorld, {2010, 2010}) == 1.0);
}

TEST_CASE("specialization on a hand-checked share ratio") {
    // domain: 30 FR of 100; reference: 100 FR of 1000 -> (30/100)/(100/1000) = 3
    std::vector<BibRecord> domain, all;
    append(domain, n_pubs(30, {"FR"}, 2010));
    append(domain, n_pubs(70, {"US"}, 2010));
    append(all, n_pubs(100, {"FR"}, 2010));
    append(all, n_pubs(900, {"US"}, 2010));
    const auto ref = ReferenceBase::from_records(all);
    CHECK_THAT(*specialization_index(domain, ref, "FR", {2010, 2010}),
               Catch::Matchers::WithinRel(3.0, 1e-12));
}

TEST_CASE("specialization is exact on power-of-two shares") {
    // (32/64)/(128/1024) = 4, every intermediate a power of two
    std::vector<BibRecord> domain, all;
    append(domain, n_pubs(32, {"FR"}, 2010));
    append(domain, n_pubs(96, {"US"}, 2010));
    append(all, n_pubs(64, {"FR"}, 2010));
    append(all, n_pubs(960, {"US"}, 2010));
    const auto ref = ReferenceBase::from_records(all);
    CHECK(*specialization_index(domain, ref, "FR", {2010, 2010}) == 4.0);
}

TEST_CASE("a country absent from the domain has specialization zero") {
    const auto domain = n_pubs(10, {"US"}, 2010);
    std::vector<BibRecord> all = domain;
    append(all, n_pubs(10, {"FR"}, 2010));
    const auto ref = ReferenceBase::from_records(all);
    CHECK(*specialization_index(domain, ref, "FR", {2010, 2010}) == 0.0);
}

TEST_CASE("specialization is undefined without reference activity") {
    const auto domain = n_pubs(5, {"FR"}, 2010);
    const auto ref = ReferenceBase::from_records(n_pubs(5, {"US"}, 2010));
    CHECK_FALSE(specialization_index(domain, ref, "FR", {2010, 2010}).has_value());
}

TEST_CASE("duplicating all records leaves specialization unchanged") {
    std::vector<BibRecord> domain, all;
    append(domain, n_pubs(30, {"FR"}, 2010));
    append(domain, n_pubs(70, {"US"}, 2010));
    append(all, n_pubs(100, {"FR"}, 2010));
    append(all, n_pubs(900, {"US"}, 2010));
    auto domain2 = domain, all2 = all;
    append(domain2, domain);
    append(all2, all);
    const auto a = specialization_index(domain, ReferenceBase::from_records(all), "FR",
                                        {2010, 2010});
    const auto b = specialization_index(domain2, ReferenceBase::from_records(all2), "FR",
                                        {2010, 2010});
    CHECK(*a == *b);
}

TEST_CASE("world impact against its own reference is exactly one") {
    std::mt19937_64 rng(113);
    const auto corpus = random_pubs(rng, 200);
    const auto ref = ReferenceBase::from_records(corpus);
    const auto v = impact_index(corpus, ref, kWorld, {2008, 2012}, 2);
    REQUIRE(v.has_value());
    CHECK(*v == 1.0);
}

TEST_CASE("a single-country corpus has impact exactly one") {
    std::mt19937_64 rng(127);
    auto corpus = random_pubs(rng, 150);
    for (auto& r : corpus) r.countries = {"FR"};
    const auto ref = ReferenceBase::from_records(corpus);
    const auto v = impact_index(corpus, ref, "FR", {2008, 2012}, 2);
    REQUIRE(v.has_value());
    CHECK(*v == 1.0);
}

TEST_CASE("impact on a hand-checked two-cell fixture") {
    // cell (C, 2010): FR pub cited 4 in-window, US pub cited 0 -> baseline 2, FR ratio 2
    // cell (D, 2011): FR pub cited 2, US pub cited 2 -> baseline 2, FR ratio 1
    // FR weight 1 in each cell -> impact (2 + 1) / 2 = 1.5
    const std::vector<BibRecord> corpus{
        pub({"FR"}, 2010, {"C"}, {2010, 2010, 2010, 2010}),
        pub({"US"}, 2010, {"C"}, {}),
        pub({"FR"}, 2011, {"D"}, {2011, 2011}),
        pub({"US"}, 2011, {"D"}, {2011, 2012}),
    };
    const auto ref = ReferenceBase::from_records(corpus);
    CHECK(*impact_index(corpus, ref, "FR", {2010, 2011}, 2) == 1.5);
    CHECK(*impact_index(corpus, ref, "US", {2010, 2010}, 2) == 0.0);
}

TEST_CASE("multi-category publications are fractionated") {
    // one FR pub in {C, D}: weight 1/2 per cell; baselines per cell differ
    const std::vector<BibRecord> corpus{
        pub({"FR"}, 2010, {"C", "D"}, {2010, 2010}),  // 2 cites
        pub({"US"}, 2010, {"C"}, {}),                 // C baseline (2/2 + 0)/1.5 = 2/3... see below
        pub({"US"}, 2010, {"D"}, {2010, 2010, 2010, 2010}),
    };
    const auto ref = ReferenceBase::from_records(corpus);
    // cell C: world frac count 1/2 + 1 = 1.5, frac cites 1 + 0 = 1, baseline 2/3
    //         FR mean 2, ratio 3, weight 1/2
    // cell D: world frac count 1.5, frac cites 1 + 4 = 5, baseline 10/3
    //         FR mean 2, ratio 3/5, weight 1/2
    // impact = (3 + 3/5) / 2 = 1.8
    CHECK_THAT(*impact_index(corpus, ref, "FR", {2010, 2010}, 2),
               Catch::Matchers::WithinRel(1.8, 1e-12));
}

TEST_CASE("cells without a world baseline are excluded") {
    const std::vector<BibRecord> corpus{
        pub({"FR"}, 2010, {"C"}, {2010}),  // cell C: baseline 1, ratio 1
        pub({"FR"}, 2010, {"Z"}, {}),      // cell Z: baseline 0 -> excluded
        pub({"US"}, 2010, {"C"}, {2010}),
    };
    const auto ref = ReferenceBase::from_records(corpus);
    CHECK(*impact_index(corpus, ref, "FR", {2010, 2010}, 2) == 1.0);
}

TEST_CASE("impact equals the per-publication oracle on random fixtures") {
    std::mt19937_64 rng(131);
    for (int t = 0; t < 50; ++t) {
        const auto corpus = random_pubs(rng, 120);
        const auto ref = ReferenceBase::from_records(corpus);
        for (const char* country : {"FR", "US", "CN"}) {
            const Period period{2008, 2012};
            const auto got = impact_index(corpus, ref, country, period, 2);
            const auto want = impact_oracle(corpus, corpus, country, period, 2);
            REQUIRE(got.has_value() == want.has_value());
            if (got) CHECK_THAT(*got, Catch::Matchers::WithinRel(*want, 1e-9));
        }
    }
}

TEST_CASE("duplicating every record leaves the impact bitwise unchanged") {
    std::mt19937_64 rng(137);
    const auto corpus = random_pubs(rng, 100);
    auto doubled = corpus;
    append(doubled, corpus);
    const auto a = impact_index(corpus, ReferenceBase::from_records(corpus), "FR", {2008, 2012}, 2);
    const auto b =
        impact_index(doubled, ReferenceBase::from_records(doubled), "FR", {2008, 2012}, 2);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == *b);
}

TEST_CASE("incomplete citation windows are detected") {
    CHECK(incomplete_window_years({2019, 2020}, 2, 2020) == std::vector<int>{2020});
    CHECK(incomplete_window_years({2019, 2020}, 2, 2021).empty());
    CHECK(incomplete_window_years({2018, 2020}, 3, 2020) == std::vector<int>{2019, 2020});
}

TEST_CASE("the indicator table is a country-by-period grid") {
    std::mt19937_64 rng(139);
    const auto corpus = random_pubs(rng, 80);
    const auto ref = ReferenceBase::from_records(corpus);
    const std::vector<Period> periods{{2008, 2009}, {2010, 2012}};
    const auto rows = indicator_table(corpus, ref, {"FR", "US"}, periods, "domain", 2);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].country == "FR");
    CHECK(rows[0].period == "2008-2009");
    CHECK(rows[0].theme == "domain");
    CHECK(rows[3].country == "US");
    CHECK(rows[3].period == "2010-2012");
    for (const auto& row : rows) {
        CHECK(row.spec_index.has_value());
        CHECK(row.impact_index.has_value());
    }

    SECTION("impact can be left out") {
        const auto lean = indicator_table(corpus, ref, {"FR"}, periods, "covid", 2, false);
        for (const auto& row : lean) CHECK_FALSE(row.impact_index.has_value());
    }
}
