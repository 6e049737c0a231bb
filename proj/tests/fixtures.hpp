// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <random>
#include <string>
#include <vector>

#include "scimap/record.hpp"

namespace fixtures {

using scimap::BibRecord;
using scimap::DocType;

inline std::vector<std::string> kCountryPool = {"FR", "US", "GB", "DE", "CN", "IT", "ZA", "BR"};
inline std::vector<std::string> kCategoryPool = {"INFECTIOUS DISEASES", "TROPICAL MEDICINE",
                                                 "IMMUNOLOGY", "MICROBIOLOGY", "VIROLOGY"};

inline BibRecord random_record(std::mt19937_64& rng, int id) {
    std::uniform_int_distribution<int> year_d(2000, 2020);
    std::uniform_int_distribution<int> small(0, 3);
    std::uniform_int_distribution<std::size_t> country_d(0, kCountryPool.size() - 1);
    std::uniform_int_distribution<std::size_t> cat_d(0, kCategoryPool.size() - 1);
    BibRecord r;
    r.pmid = std::to_string(1000000 + id);
    r.title = "study number " + std::to_string(id);
    r.year = year_d(rng);
    r.doc_type = static_cast<DocType>(std::uniform_int_distribution<int>(0, 4)(rng));
    for (int i = small(rng); i > 0; --i) r.countries.insert(kCountryPool[country_d(rng)]);
    for (int i = small(rng); i > 0; --i) r.categories.insert(kCategoryPool[cat_d(rng)]);
    for (int i = small(rng); i > 0; --i) {
        const int cy = r.year + std::uniform_int_distribution<int>(0, 5)(rng);
        r.citations.push_back(cy);
    }
    r.retracted = std::uniform_int_distribution<int>(0, 19)(rng) == 0;
    return r;
}

}  // namespace fixtures
