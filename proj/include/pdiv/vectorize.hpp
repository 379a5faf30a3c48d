#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pdiv/diagram.hpp"
#include "pdiv/divergence.hpp"
#include "pdiv/text.hpp"

namespace pdiv {

/// Projection onto the all-finite diagrams: drops every infinite point,
/// keeping finite multiplicities and the homology-dimension annotation.
/// Idempotent, and the unique divergence-minimizing finite approximation.
inline PersistenceDiagram project_finite(const PersistenceDiagram& A) {
    std::vector<DiagramPoint> finite;
    for (const DiagramPoint& p : A.points())
        if (!p.has_infinite_death()) finite.push_back(p);
    return PersistenceDiagram(std::move(finite), A.homology_dimension());
}

/// Multiset of bar lengths (death - birth) of an all-finite diagram,
/// multiplicity-expanded, in canonical point order.
inline std::vector<double> bar_lengths(const PersistenceDiagram& A) {
    if (!all_finite(A)) throw std::invalid_argument("bar_lengths: diagram has infinite points; project first");
    std::vector<double> lengths;
    lengths.reserve(static_cast<std::size_t>(A.total_multiplicity()));
    for (const DiagramPoint& p : A.points())
        for (std::int64_t k = 0; k < p.multiplicity; ++k) lengths.push_back(p.death - p.birth);
    return lengths;
}

/// Shannon entropy of the normalized bar-length distribution, in nats.
/// Zero for diagrams with at most one bar (empty included).
inline double persistent_entropy(const PersistenceDiagram& A) {
    const auto lengths = bar_lengths(A);
    if (lengths.size() <= 1) return 0.0;
    double total = 0.0;
    for (double l : lengths) total += l;
    double entropy = 0.0;
    for (double l : lengths) {
        const double q = l / total;
        entropy -= q * std::log(q);
    }
    return entropy;
}

/// Population statistics of the bar lengths; zeros for the empty diagram.
struct BarStats {
    double mean = 0.0;
    double std_dev = 0.0;
    std::int64_t count = 0;
};

inline BarStats basic_stats(const PersistenceDiagram& A) {
    const auto lengths = bar_lengths(A);
    if (lengths.empty()) return {};
    double sum = 0.0;
    for (double l : lengths) sum += l;
    const double mean = sum / static_cast<double>(lengths.size());
    double sq = 0.0;
    for (double l : lengths) sq += (l - mean) * (l - mean);
    return {mean, std::sqrt(sq / static_cast<double>(lengths.size())), static_cast<std::int64_t>(lengths.size())};
}

/// A map from all-finite diagrams into a fixed-dimension real vector.
struct Vectorization {
    std::string name;
    std::size_t output_dimension = 0;
    std::function<std::vector<double>(const PersistenceDiagram&)> map;

    std::vector<double> operator()(const PersistenceDiagram& A) const { return map(A); }
};

inline Vectorization entropy_vectorization() {
    return {"entropy", 1, [](const PersistenceDiagram& A) { return std::vector<double>{persistent_entropy(A)}; }};
}

inline Vectorization bar_stats_vectorization() {
    return {"bar_stats", 3, [](const PersistenceDiagram& A) {
                const BarStats s = basic_stats(A);
                return std::vector<double>{s.mean, s.std_dev, static_cast<double>(s.count)};
            }};
}

/// The extension of g to arbitrary diagrams: g composed with the finite
/// projection. Agrees with g on all-finite diagrams exactly.
inline Vectorization extend(Vectorization g) {
    auto inner = std::move(g.map);
    g.map = [inner](const PersistenceDiagram& A) { return inner(project_finite(A)); };
    return g;
}

/// CSV row `name,dim,values...` for a vectorization applied to a diagram.
inline std::string to_csv_row(const Vectorization& g, const PersistenceDiagram& A) {
    std::string row = g.name + ',' + std::to_string(g.output_dimension);
    for (double v : g(A)) {
        row += ',';
        row += format_double(v);
    }
    return row;
}

/// Sampled confirmation that the finite projection minimizes the divergence
/// to A over the given all-finite candidates: true iff
/// D(project_finite(A) || A) <= D(C || A) for every candidate C.
inline bool verify_projection_optimality(const PersistenceDiagram& A, const TameFunction& f, Order p,
                                         const std::vector<PersistenceDiagram>& candidates) {
    for (const PersistenceDiagram& c : candidates)
        if (!all_finite(c))
            throw std::invalid_argument("verify_projection_optimality: candidates must be all-finite");
    const ExtendedValue projected = divergence(project_finite(A), A, f, p).value;
    for (const PersistenceDiagram& c : candidates)
        if (divergence(c, A, f, p).value < projected) return false;
    return true;
}

}  // namespace pdiv
