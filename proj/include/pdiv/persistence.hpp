#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "pdiv/diagram.hpp"
#include "pdiv/filtration.hpp"

namespace pdiv {

namespace detail {

// Z/2 column addition: symmetric difference of sorted index lists.
inline std::vector<std::size_t> xor_columns(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace detail

/// Persistence diagrams of a filtration in dimensions 0..max_homology_dim,
/// by plain Z/2 column reduction of the boundary matrix in filtration order.
/// Classes alive at the end get death = infinity; zero-persistence pairs are
/// omitted. The tie-break is the canonical simplex order, so the output is
/// deterministic and independent of the input file's ordering of
/// same-(value, dimension) simplices.
inline std::vector<PersistenceDiagram> compute_persistence(const Filtration& F, int max_homology_dim) {
    if (max_homology_dim < 0) throw std::invalid_argument("compute_persistence: max_homology_dim must be >= 0");
    const auto& simplices = F.simplices();
    const std::size_t m = simplices.size();

    std::map<std::vector<int>, std::size_t> position;
    for (std::size_t i = 0; i < m; ++i) position.emplace(simplices[i].vertices, i);

    std::vector<std::vector<std::size_t>> columns(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Simplex& s = simplices[i];
        if (s.dimension() == 0) continue;
        std::vector<int> facet(s.vertices.size() - 1);
        for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
            std::size_t w = 0;
            for (std::size_t r = 0; r < s.vertices.size(); ++r)
                if (r != skip) facet[w++] = s.vertices[r];
            columns[i].push_back(position.at(facet));
        }
        std::sort(columns[i].begin(), columns[i].end());
    }

    constexpr std::size_t unpaired = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner_of_low(m, unpaired);   // pivot row -> owning column
    std::vector<std::size_t> killed_by(m, unpaired);      // creator -> destroyer
    for (std::size_t j = 0; j < m; ++j) {
        auto& col = columns[j];
        while (!col.empty() && owner_of_low[col.back()] != unpaired)
            col = detail::xor_columns(col, columns[owner_of_low[col.back()]]);
        if (!col.empty()) {
            owner_of_low[col.back()] = j;
            killed_by[col.back()] = j;
        }
    }

    std::vector<std::vector<DiagramPoint>> bars(static_cast<std::size_t>(max_homology_dim) + 1);
    for (std::size_t i = 0; i < m; ++i) {
        if (!columns[i].empty()) continue;  // destroyer, not a creator
        const int dim = simplices[i].dimension();
        if (dim > max_homology_dim) continue;
        const double birth = simplices[i].filtration_value;
        const double death = killed_by[i] == unpaired ? std::numeric_limits<double>::infinity()
                                                      : simplices[killed_by[i]].filtration_value;
        if (death == birth) continue;
        bars[static_cast<std::size_t>(dim)].emplace_back(birth, death, 1);
    }

    std::vector<PersistenceDiagram> diagrams;
    diagrams.reserve(bars.size());
    for (std::size_t d = 0; d < bars.size(); ++d)
        diagrams.emplace_back(std::move(bars[d]), static_cast<int>(d));
    return diagrams;
}

}  // namespace pdiv
