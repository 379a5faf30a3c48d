#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pdiv/extended_value.hpp"

namespace pdiv {

/// Semantic tag for a row or column of an augmented cost matrix.
enum class SlotKind {
    point,     // a real off-diagonal diagram point
    diagonal,  // a slot of the implicit diagonal
    penalty,   // a slot charging the f-penalty of an unmatched point
};

struct SlotLabel {
    SlotKind kind = SlotKind::point;
    std::int64_t index = 0;
};

/// A square matrix of non-negative extended costs. Infinite entries act as
/// forbidden edges in the solvers, not as big finite constants.
class CostMatrix {
public:
    CostMatrix() = default;

    explicit CostMatrix(std::size_t n) : n_(n), entries_(n * n), row_labels_(n), col_labels_(n) {
        for (std::size_t i = 0; i < n; ++i) {
            row_labels_[i] = {SlotKind::point, static_cast<std::int64_t>(i)};
            col_labels_[i] = {SlotKind::point, static_cast<std::int64_t>(i)};
        }
    }

    static CostMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        CostMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw std::invalid_argument("cost matrix must be square");
            for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t size() const { return n_; }

    ExtendedValue& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    ExtendedValue at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    std::vector<SlotLabel>& row_labels() { return row_labels_; }
    const std::vector<SlotLabel>& row_labels() const { return row_labels_; }
    std::vector<SlotLabel>& col_labels() { return col_labels_; }
    const std::vector<SlotLabel>& col_labels() const { return col_labels_; }

private:
    std::size_t n_ = 0;
    std::vector<ExtendedValue> entries_;
    std::vector<SlotLabel> row_labels_;
    std::vector<SlotLabel> col_labels_;
};

enum class ObjectiveKind {
    sum_pth_powers,  // minimize the sum of selected entries
    max,             // minimize the maximum selected entry
};

/// An assignment together with its objective value. total_cost is always
/// recomputed from the matrix entries and the assignment (never read from a
/// solver-internal accumulator), with sum terms accumulated in ascending
/// order so that tie assignments with equal term multisets recompute to the
/// same double.
struct MatchingResult {
    ExtendedValue total_cost;
    std::vector<std::pair<std::size_t, std::size_t>> assignment;  // (row, col), row-ascending
    ObjectiveKind objective = ObjectiveKind::sum_pth_powers;
};

/// Sum of cost terms, sorted ascending and accumulated in extended
/// precision with one final rounding. Assignments selecting the same term
/// multiset recompute to the same double, and near-tie multisets agree to
/// the last bit in all but measure-zero cases.
inline ExtendedValue sum_cost_terms(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    long double total = 0.0L;
    for (double t : terms) total += static_cast<long double>(t);
    return static_cast<double>(total);
}

/// Objective value of `row_to_col` on `m`; see MatchingResult for the
/// accumulation convention.
inline ExtendedValue recompute_total(const CostMatrix& m, const std::vector<std::size_t>& row_to_col,
                                     ObjectiveKind objective) {
    std::vector<double> terms;
    terms.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) terms.push_back(m.at(i, row_to_col[i]).raw());
    if (objective == ObjectiveKind::max) {
        double best = 0.0;
        for (double t : terms) best = std::max(best, t);
        return best;
    }
    return sum_cost_terms(terms);
}

namespace detail {

inline MatchingResult make_result(const CostMatrix& m, const std::vector<std::size_t>& row_to_col,
                                  ObjectiveKind objective) {
    MatchingResult result;
    result.objective = objective;
    result.total_cost = recompute_total(m, row_to_col, objective);
    result.assignment.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) result.assignment.emplace_back(i, row_to_col[i]);
    return result;
}

// Shortest augmenting path assignment with potentials on raw doubles.
// Infinite entries never relax a column, so they behave as forbidden edges;
// when some row has no finite augmenting path the instance has no perfect
// matching over finite edges and nullopt is returned.
inline std::optional<std::vector<std::size_t>> min_cost_assignment(const CostMatrix& m) {
    const std::size_t n = m.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> col_to_row(n + 1, 0);  // 1-based; 0 means free
    std::vector<std::size_t> way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        col_to_row[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = col_to_row[j0];
            std::size_t j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = m.at(i0 - 1, j - 1).raw() - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (delta == inf) return std::nullopt;
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[col_to_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (col_to_row[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            col_to_row[j0] = col_to_row[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(n);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[col_to_row[j] - 1] = j - 1;
    return row_to_col;
}

// Hopcroft-Karp maximum matching over the edges admitted by `allowed`.
// Returns row -> col (npos for unmatched rows).
inline std::vector<std::size_t> max_bipartite_matching(std::size_t n,
                                                       const std::function<bool(std::size_t, std::size_t)>& allowed) {
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> match_row(n, npos), match_col(n, npos);
    std::vector<std::size_t> layer(n);

    const auto bfs = [&]() -> bool {
        std::queue<std::size_t> queue;
        bool reachable_free_col = false;
        for (std::size_t r = 0; r < n; ++r) {
            layer[r] = npos;
            if (match_row[r] == npos) {
                layer[r] = 0;
                queue.push(r);
            }
        }
        while (!queue.empty()) {
            const std::size_t r = queue.front();
            queue.pop();
            for (std::size_t c = 0; c < n; ++c) {
                if (!allowed(r, c)) continue;
                const std::size_t next = match_col[c];
                if (next == npos) {
                    reachable_free_col = true;
                } else if (layer[next] == npos) {
                    layer[next] = layer[r] + 1;
                    queue.push(next);
                }
            }
        }
        return reachable_free_col;
    };

    const std::function<bool(std::size_t)> dfs = [&](std::size_t r) -> bool {
        for (std::size_t c = 0; c < n; ++c) {
            if (!allowed(r, c)) continue;
            const std::size_t next = match_col[c];
            if (next == npos || (layer[next] == layer[r] + 1 && dfs(next))) {
                match_row[r] = c;
                match_col[c] = r;
                return true;
            }
        }
        layer[r] = npos;
        return false;
    };

    while (bfs())
        for (std::size_t r = 0; r < n; ++r)
            if (match_row[r] == npos) dfs(r);
    return match_row;
}

}  // namespace detail

/// Minimum-cost perfect assignment. When every perfect matching crosses a
/// forbidden (infinite) edge, total_cost is infinite and the returned
/// assignment minimizes the number of forbidden edges used.
inline MatchingResult solve_min_cost(const CostMatrix& m) {
    if (auto assignment = detail::min_cost_assignment(m))
        return detail::make_result(m, *assignment, ObjectiveKind::sum_pth_powers);
    // No finite-cost perfect matching: rank assignments by forbidden-edge count.
    CostMatrix forbidden_count(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) forbidden_count.at(i, j) = m.at(i, j).is_infinite() ? 1.0 : 0.0;
    auto assignment = detail::min_cost_assignment(forbidden_count);
    return detail::make_result(m, *assignment, ObjectiveKind::sum_pth_powers);
}

/// Bottleneck assignment: minimizes the maximum selected entry. Exact
/// threshold search over the sorted distinct entry values, with a
/// Hopcroft-Karp perfect-matching feasibility test at each candidate.
inline MatchingResult solve_bottleneck(const CostMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return detail::make_result(m, {}, ObjectiveKind::max);

    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) values.push_back(m.at(i, j).raw());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    const auto feasible = [&](double threshold) {
        const auto matching = detail::max_bipartite_matching(
            n, [&](std::size_t r, std::size_t c) { return m.at(r, c).raw() <= threshold; });
        return std::none_of(matching.begin(), matching.end(), [](std::size_t c) { return c == npos; });
    };

    // The full matrix always admits a perfect matching, so values.back() is
    // feasible and the search is well defined.
    std::size_t lo = 0, hi = values.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(values[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    const double threshold = values[lo];
    auto row_to_col = detail::max_bipartite_matching(
        n, [&](std::size_t r, std::size_t c) { return m.at(r, c).raw() <= threshold; });
    return detail::make_result(m, row_to_col, ObjectiveKind::max);
}

namespace detail {

inline MatchingResult brute_force(const CostMatrix& m, ObjectiveKind objective) {
    const std::size_t n = m.size();
    if (n > 9) throw std::invalid_argument("brute force supports n <= 9");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> best = perm;
    ExtendedValue best_cost = recompute_total(m, perm, objective);
    while (std::next_permutation(perm.begin(), perm.end())) {
        const ExtendedValue cost = recompute_total(m, perm, objective);
        if (cost < best_cost) {
            best_cost = cost;
            best = perm;
        }
    }
    return make_result(m, best, objective);
}

}  // namespace detail

/// Exhaustive min-cost oracle over all n! permutations; n <= 9.
inline MatchingResult brute_force_min_cost(const CostMatrix& m) {
    return detail::brute_force(m, ObjectiveKind::sum_pth_powers);
}

/// Exhaustive bottleneck oracle over all n! permutations; n <= 9.
inline MatchingResult brute_force_bottleneck(const CostMatrix& m) {
    return detail::brute_force(m, ObjectiveKind::max);
}

}  // namespace pdiv
