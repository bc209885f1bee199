#pragma once

// Random categorical tables and a direct value-tuple grouping used as the
// independent reference for partition structure. Test-only.

#include <softsel/tabular.hpp>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// |U| in [1, max_objects], |A| in [1, max_attributes], |V_a| in [1, max_values].
inline softsel::tabular::CategoricalTable random_table(std::uint64_t seed, int max_objects = 10,
                                                       int max_attributes = 6, int max_values = 4) {
    std::mt19937_64 rng(seed);
    const int n = std::uniform_int_distribution<int>(1, max_objects)(rng);
    const int m = std::uniform_int_distribution<int>(1, max_attributes)(rng);
    std::vector<int> values(static_cast<std::size_t>(m));
    for (auto& v : values) v = std::uniform_int_distribution<int>(1, max_values)(rng);
    std::vector<std::string> objects, attributes;
    for (int u = 0; u < n; ++u) objects.push_back("o" + std::to_string(u));
    for (int a = 0; a < m; ++a) attributes.push_back("c" + std::to_string(a));
    std::vector<std::vector<std::string>> rows;
    for (int u = 0; u < n; ++u) {
        std::vector<std::string> row;
        for (int a = 0; a < m; ++a) {
            row.push_back("v" + std::to_string(std::uniform_int_distribution<int>(0, values[a] - 1)(rng)));
        }
        rows.push_back(row);
    }
    return softsel::tabular::categorical_from_labels(objects, attributes, rows);
}

// Blocks of objects sharing a label tuple on `attrs`, ordered by first member.
inline std::vector<std::vector<std::size_t>> group_by_tuple(const softsel::tabular::CategoricalTable& t,
                                                            const std::vector<std::size_t>& attrs) {
    std::map<std::vector<std::string>, std::size_t> index;
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t u = 0; u < t.object_count(); ++u) {
        std::vector<std::string> key;
        for (auto a : attrs) key.push_back(t.label(u, a));
        auto [it, fresh] = index.try_emplace(key, blocks.size());
        if (fresh) blocks.emplace_back();
        blocks[it->second].push_back(u);
    }
    return blocks;
}

}  // namespace oracle
