#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pdiv/assignment.hpp"
#include "pdiv/diagram.hpp"
#include "pdiv/extended_value.hpp"
#include "pdiv/tame_function.hpp"

namespace pdiv {

/// A point of the second diagram left uncovered by the injection, with the
/// (un-powered) penalty it is charged: f(diagonal_gap) for divergences, the
/// raw diagonal gap for classical distances.
struct UnmatchedPenalty {
    std::int64_t index;
    ExtendedValue penalty;

    friend bool operator==(const UnmatchedPenalty&, const UnmatchedPenalty&) = default;
};

/// How an optimal injection treats each point. Indices refer to positions in
/// the diagrams' unit-multiplicity expansions (PersistenceDiagram::expanded).
struct DiagramMatching {
    std::vector<std::pair<std::int64_t, std::int64_t>> matched;  // (index in A, index in B)
    std::vector<std::int64_t> a_to_diagonal;                     // A points sent to the diagonal
    std::vector<UnmatchedPenalty> b_unmatched;
};

/// Result of a divergence or distance evaluation. `pseudo` is set when the
/// penalty function is not positive on positives (the zero function, say),
/// in which case a vanishing value no longer implies equal diagrams.
struct DivergenceReport {
    ExtendedValue value;
    DiagramMatching matching;
    std::string f_name;  // empty for the classical distances
    Order p;
    bool pseudo = false;
};

namespace detail {

// Penalty charged to an uncovered second-diagram point: f(diagonal_gap) for
// divergences, the raw diagonal gap for classical distances.
inline ExtendedValue unmatched_penalty(const DiagramPoint& b, const TameFunction* f) {
    const ExtendedValue gap = diagonal_gap(b);
    return f ? ExtendedValue((*f)(gap)) : gap;
}

// Square (|A|+|B|) matrix over the expanded point lists. Rows are A's points
// followed by |B| penalty slots; columns are B's points followed by |A|
// diagonal slots. Entries are raised to the p-th power for finite p and left
// un-powered for the bottleneck order.
inline CostMatrix build_matrix(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b,
                               const TameFunction* f, Order p) {
    const std::size_t na = a.size(), nb = b.size();
    const bool powered = !p.is_infinite();
    const auto lift = [&](ExtendedValue v) { return powered ? pow_p(v, p.value()) : v; };

    CostMatrix m(na + nb);
    for (std::size_t i = 0; i < na; ++i) m.row_labels()[i] = {SlotKind::point, static_cast<std::int64_t>(i)};
    for (std::size_t k = 0; k < nb; ++k)
        m.row_labels()[na + k] = {f ? SlotKind::penalty : SlotKind::diagonal, static_cast<std::int64_t>(k)};
    for (std::size_t j = 0; j < nb; ++j) m.col_labels()[j] = {SlotKind::point, static_cast<std::int64_t>(j)};
    for (std::size_t k = 0; k < na; ++k) m.col_labels()[nb + k] = {SlotKind::diagonal, static_cast<std::int64_t>(k)};

    for (std::size_t i = 0; i < na; ++i) {
        const ExtendedValue gap = lift(diagonal_gap(a[i]));
        for (std::size_t j = 0; j < nb; ++j) m.at(i, j) = lift(linf_distance(a[i], b[j]));
        for (std::size_t j = nb; j < nb + na; ++j) m.at(i, j) = gap;
    }
    // the penalty is keyed by the column: pairing any penalty slot with
    // point b_j charges b_j's own f-penalty, and with a diagonal slot nothing
    for (std::size_t j = 0; j < nb; ++j) {
        const ExtendedValue penalty = lift(unmatched_penalty(b[j], f));
        for (std::size_t i = na; i < na + nb; ++i) m.at(i, j) = penalty;
    }
    return m;
}

inline DiagramMatching extract_matching(const MatchingResult& solved, const std::vector<DiagramPoint>& b,
                                        std::size_t na, const TameFunction* f) {
    const std::size_t nb = b.size();
    DiagramMatching out;
    for (const auto& [r, c] : solved.assignment) {
        if (r < na && c < nb)
            out.matched.emplace_back(static_cast<std::int64_t>(r), static_cast<std::int64_t>(c));
        else if (r < na)
            out.a_to_diagonal.push_back(static_cast<std::int64_t>(r));
        else if (c < nb)
            out.b_unmatched.push_back({static_cast<std::int64_t>(c), unmatched_penalty(b[c], f)});
    }
    std::sort(out.b_unmatched.begin(), out.b_unmatched.end(),
              [](const UnmatchedPenalty& x, const UnmatchedPenalty& y) { return x.index < y.index; });
    return out;
}

// Accumulation shared by every value recomputation (sum_cost_terms sorts and
// sums in extended precision), so matchings with equal term multisets
// recompute to the same double.
inline ExtendedValue combine_terms(std::vector<double>& terms, Order p) {
    if (p.is_infinite()) {
        double best = 0.0;
        for (double t : terms) best = std::max(best, t);
        return best;
    }
    return root_p(sum_cost_terms(terms), p.value());
}

inline std::vector<double> matching_terms(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b,
                                          const TameFunction* f, Order p, const DiagramMatching& matching) {
    const bool powered = !p.is_infinite();
    const auto lift = [&](ExtendedValue v) { return powered ? pow_p(v, p.value()) : v; };
    std::vector<double> terms;
    terms.reserve(matching.matched.size() + matching.a_to_diagonal.size() + matching.b_unmatched.size());
    for (const auto& [i, j] : matching.matched)
        terms.push_back(lift(linf_distance(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)])).raw());
    for (std::int64_t i : matching.a_to_diagonal)
        terms.push_back(lift(diagonal_gap(a[static_cast<std::size_t>(i)])).raw());
    for (const UnmatchedPenalty& u : matching.b_unmatched)
        terms.push_back(lift(unmatched_penalty(b[static_cast<std::size_t>(u.index)], f)).raw());
    return terms;
}

inline DivergenceReport solve_pair(const PersistenceDiagram& A, const PersistenceDiagram& B,
                                   const TameFunction* f, Order p) {
    const auto a = A.expanded();
    const auto b = B.expanded();
    const CostMatrix m = build_matrix(a, b, f, p);
    const MatchingResult solved = p.is_infinite() ? solve_bottleneck(m) : solve_min_cost(m);

    DivergenceReport report;
    report.p = p;
    report.f_name = f ? f->name() : std::string();
    report.pseudo = f && !f->properties().positive_on_positive;
    report.matching = extract_matching(solved, b, a.size(), f);
    auto terms = matching_terms(a, b, f, p, report.matching);
    report.value = combine_terms(terms, p);
    return report;
}

}  // namespace detail

/// The augmented cost matrix encoding injections A -> B with f-penalties for
/// uncovered B points. For the bottleneck order the entries are un-powered.
inline CostMatrix build_divergence_matrix(const PersistenceDiagram& A, const PersistenceDiagram& B,
                                          const TameFunction& f, Order p) {
    return detail::build_matrix(A.expanded(), B.expanded(), &f, p);
}

/// The classical diagonal-augmented matrix for d_p; uncovered points pay
/// their full diagonal gap instead of an f-penalty.
inline CostMatrix build_distance_matrix(const PersistenceDiagram& A, const PersistenceDiagram& B, Order p) {
    return detail::build_matrix(A.expanded(), B.expanded(), nullptr, p);
}

/// Recomputes the objective value of `matching` from the diagram geometry;
/// equals the reported value of the originating report bit-for-bit.
inline ExtendedValue recompute_divergence_value(const PersistenceDiagram& A, const PersistenceDiagram& B,
                                                const TameFunction& f, Order p, const DiagramMatching& matching) {
    const auto a = A.expanded();
    const auto b = B.expanded();
    auto terms = detail::matching_terms(a, b, &f, p, matching);
    return detail::combine_terms(terms, p);
}

/// Directed Wasserstein-type divergence of order p (finite p >= 1): the
/// cheapest injection of A into B, where B points left uncovered pay
/// f(diagonal_gap)^p. Infinite exactly when A has more infinite points than
/// B; the report then carries a matching minimizing the number of infinite
/// edges, for diagnosis.
inline DivergenceReport wasserstein_divergence(const PersistenceDiagram& A, const PersistenceDiagram& B,
                                               const TameFunction& f, Order p) {
    if (p.is_infinite())
        throw std::invalid_argument("wasserstein_divergence needs finite p; use bottleneck_divergence");
    return detail::solve_pair(A, B, &f, p);
}

/// Bottleneck-type divergence: minimizes the maximum of matched distances
/// and f-penalties over injections A -> B.
inline DivergenceReport bottleneck_divergence(const PersistenceDiagram& A, const PersistenceDiagram& B,
                                              const TameFunction& f) {
    return detail::solve_pair(A, B, &f, Order::infinity());
}

/// Order-dispatching convenience: bottleneck_divergence when p is infinite.
inline DivergenceReport divergence(const PersistenceDiagram& A, const PersistenceDiagram& B,
                                   const TameFunction& f, Order p) {
    return p.is_infinite() ? bottleneck_divergence(A, B, f) : wasserstein_divergence(A, B, f, p);
}

inline DivergenceReport wasserstein_distance_report(const PersistenceDiagram& A, const PersistenceDiagram& B,
                                                    Order p) {
    if (p.is_infinite())
        throw std::invalid_argument("wasserstein_distance needs finite p; use bottleneck_distance");
    return detail::solve_pair(A, B, nullptr, p);
}

inline DivergenceReport bottleneck_distance_report(const PersistenceDiagram& A, const PersistenceDiagram& B) {
    return detail::solve_pair(A, B, nullptr, Order::infinity());
}

/// Classical p-Wasserstein distance with diagonal augmentation; infinite
/// exactly when the diagrams have different numbers of infinite points.
inline ExtendedValue wasserstein_distance(const PersistenceDiagram& A, const PersistenceDiagram& B, Order p) {
    return wasserstein_distance_report(A, B, p).value;
}

/// Classical bottleneck distance.
inline ExtendedValue bottleneck_distance(const PersistenceDiagram& A, const PersistenceDiagram& B) {
    return bottleneck_distance_report(A, B).value;
}

/// (D_p(A||B)^p + D_p(B||A)^p)^(1/p); squeezed between d_p and 2^(1/p) d_p.
inline ExtendedValue symmetrized_power_mean(const PersistenceDiagram& A, const PersistenceDiagram& B,
                                            const TameFunction& f, Order p) {
    if (p.is_infinite()) throw std::invalid_argument("symmetrized_power_mean needs finite p");
    const ExtendedValue ab = wasserstein_divergence(A, B, f, p).value;
    const ExtendedValue ba = wasserstein_divergence(B, A, f, p).value;
    return root_p(pow_p(ab, p.value()) + pow_p(ba, p.value()), p.value());
}

/// Exhaustive oracle over every injection of A's points into B's points plus
/// the diagonal. Requires |A| + |B| <= 8 (multiplicity-weighted). Accepts
/// the bottleneck order as well.
inline DivergenceReport brute_force_divergence(const PersistenceDiagram& A, const PersistenceDiagram& B,
                                               const TameFunction& f, Order p) {
    const auto a = A.expanded();
    const auto b = B.expanded();
    if (a.size() + b.size() > 8)
        throw std::invalid_argument("brute_force_divergence supports |A| + |B| <= 8");

    DiagramMatching best;
    ExtendedValue best_value = ExtendedValue::infinity();
    bool have_best = false;

    std::vector<std::int64_t> target(a.size(), -1);  // -1: diagonal, else index into b
    std::vector<char> used(b.size(), 0);

    const auto evaluate_leaf = [&]() {
        DiagramMatching matching;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (target[i] < 0)
                matching.a_to_diagonal.push_back(static_cast<std::int64_t>(i));
            else
                matching.matched.emplace_back(static_cast<std::int64_t>(i), target[i]);
        }
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!used[j])
                matching.b_unmatched.push_back({static_cast<std::int64_t>(j), detail::unmatched_penalty(b[j], &f)});
        auto terms = detail::matching_terms(a, b, &f, p, matching);
        const ExtendedValue value = detail::combine_terms(terms, p);
        if (!have_best || value < best_value) {
            have_best = true;
            best_value = value;
            best = std::move(matching);
        }
    };

    const std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
        if (i == a.size()) {
            evaluate_leaf();
            return;
        }
        target[i] = -1;
        enumerate(i + 1);
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            target[i] = static_cast<std::int64_t>(j);
            enumerate(i + 1);
            used[j] = 0;
        }
        target[i] = -1;
    };
    enumerate(0);

    DivergenceReport report;
    report.p = p;
    report.f_name = f.name();
    report.pseudo = !f.properties().positive_on_positive;
    report.matching = std::move(best);
    report.value = best_value;
    return report;
}

}  // namespace pdiv
