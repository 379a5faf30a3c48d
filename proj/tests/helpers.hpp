#pragma once

// Shared generators and independent oracles for the test suites. Coordinates
// are drawn from continuous distributions so exact cost ties only arise from
// genuinely duplicated points, which recompute identically by construction.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "pdiv/pdiv.hpp"

namespace testutil {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline pdiv::PersistenceDiagram random_diagram(std::mt19937_64& rng, int max_points, double infinite_prob,
                                               double duplicate_prob = 0.1, int min_points = 0) {
    std::uniform_int_distribution<int> count(min_points, max_points);
    std::uniform_real_distribution<double> birth(0.0, 10.0);
    std::uniform_real_distribution<double> persistence(0.05, 5.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<pdiv::DiagramPoint> points;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        const double b = birth(rng);
        const double d = coin(rng) < infinite_prob ? kInf : b + persistence(rng);
        points.emplace_back(b, d, 1);
        if (static_cast<int>(points.size()) < n && coin(rng) < duplicate_prob) {
            points.emplace_back(b, d, 1);
            ++i;
        }
    }
    return pdiv::PersistenceDiagram(std::move(points));
}

// A pair with the same number of infinite points (so classical distances
// stay finite).
inline std::pair<pdiv::PersistenceDiagram, pdiv::PersistenceDiagram> random_equal_infinite_pair(
    std::mt19937_64& rng, int max_points) {
    std::uniform_int_distribution<int> extra(0, 2);
    std::uniform_real_distribution<double> birth(0.0, 10.0);
    auto a_points = random_diagram(rng, max_points, 0.0).points();
    auto b_points = random_diagram(rng, max_points, 0.0).points();
    const int infinite = extra(rng);
    for (int i = 0; i < infinite; ++i) {
        a_points.emplace_back(birth(rng), kInf, 1);
        b_points.emplace_back(birth(rng), kInf, 1);
    }
    return {pdiv::PersistenceDiagram(std::move(a_points)), pdiv::PersistenceDiagram(std::move(b_points))};
}

inline pdiv::CostMatrix random_cost_matrix(std::mt19937_64& rng, std::size_t n, double forbidden_prob = 0.0) {
    std::uniform_real_distribution<double> value(0.0, 100.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    pdiv::CostMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = coin(rng) < forbidden_prob ? pdiv::ExtendedValue::infinity() : pdiv::ExtendedValue(value(rng));
    return m;
}

// ---- independent homology oracles -------------------------------------

// Rank of a Z/2 matrix given as a list of columns (row-index lists).
inline int gf2_rank(std::vector<std::vector<int>> columns) {
    int rank = 0;
    std::vector<std::vector<int>> basis;  // reduced columns, distinct lows
    for (auto& col : columns) {
        std::sort(col.begin(), col.end());
        for (const auto& b : basis) {
            if (col.empty()) break;
            if (!b.empty() && b.back() == col.back()) {
                std::vector<int> merged;
                std::set_symmetric_difference(col.begin(), col.end(), b.begin(), b.end(),
                                              std::back_inserter(merged));
                col = std::move(merged);
            }
        }
        if (!col.empty()) {
            ++rank;
            basis.push_back(std::move(col));
            std::sort(basis.begin(), basis.end(), [](const auto& x, const auto& y) {
                return x.back() > y.back();
            });
        }
    }
    return rank;
}

// Betti numbers of the subcomplex at threshold t, via boundary-matrix ranks:
// betti_k = n_k - rank d_k - rank d_(k+1).
inline std::vector<std::int64_t> betti_numbers(const pdiv::Filtration& F, double t) {
    std::vector<pdiv::Simplex> active;
    for (const auto& s : F.simplices())
        if (s.filtration_value <= t) active.push_back(s);

    const int max_dim = F.max_dimension();
    std::vector<std::vector<std::vector<int>>> boundaries(static_cast<std::size_t>(max_dim) + 2);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(max_dim) + 1, 0);

    std::map<std::vector<int>, int> index_in_dim;
    std::vector<std::map<std::vector<int>, int>> by_dim(static_cast<std::size_t>(max_dim) + 1);
    for (const auto& s : active) {
        auto& dim_map = by_dim[static_cast<std::size_t>(s.dimension())];
        dim_map.emplace(s.vertices, static_cast<int>(dim_map.size()));
        ++counts[static_cast<std::size_t>(s.dimension())];
    }
    for (const auto& s : active) {
        if (s.dimension() == 0) continue;
        std::vector<int> column;
        std::vector<int> facet(s.vertices.size() - 1);
        for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
            std::size_t w = 0;
            for (std::size_t r = 0; r < s.vertices.size(); ++r)
                if (r != skip) facet[w++] = s.vertices[r];
            column.push_back(by_dim[static_cast<std::size_t>(s.dimension() - 1)].at(facet));
        }
        boundaries[static_cast<std::size_t>(s.dimension())].push_back(std::move(column));
    }

    std::vector<std::int64_t> betti(static_cast<std::size_t>(max_dim) + 1, 0);
    for (int k = 0; k <= max_dim; ++k) {
        const int rank_k = k == 0 ? 0 : gf2_rank(boundaries[static_cast<std::size_t>(k)]);
        const int rank_k1 = gf2_rank(boundaries[static_cast<std::size_t>(k) + 1]);
        betti[static_cast<std::size_t>(k)] = counts[static_cast<std::size_t>(k)] - rank_k - rank_k1;
    }
    return betti;
}

// Connected components of the final complex (union-find over the 1-skeleton).
inline std::int64_t connected_components(const pdiv::Filtration& F) {
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (const auto& s : F.simplices())
        for (int v : s.vertices)
            if (!parent.count(v)) parent[v] = v;
    for (const auto& s : F.simplices())
        if (s.dimension() == 1) parent[find(s.vertices[0])] = find(s.vertices[1]);
    std::int64_t components = 0;
    for (const auto& [v, p] : parent)
        if (find(v) == v) ++components;
    return components;
}

// Multiplicity-weighted count of bars alive at t (born at or before, dying after).
inline std::int64_t alive_at(const pdiv::PersistenceDiagram& d, double t) {
    std::int64_t n = 0;
    for (const auto& p : d.points())
        if (p.birth <= t && p.death > t) n += p.multiplicity;
    return n;
}

}  // namespace testutil
