#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdiv/extended_value.hpp"
#include "pdiv/text.hpp"

namespace pdiv {

/// A birth/death pair with multiplicity. Births are always finite; a point
/// whose death is +infinity is an infinite point (an essential class).
/// Diagonal points (birth == death) are never materialized: the diagonal is
/// implicit with infinite multiplicity and handled by matrix augmentation.
struct DiagramPoint {
    double birth;
    double death;  // > birth; may be +infinity
    std::int64_t multiplicity;

    DiagramPoint(double b, double d, std::int64_t m = 1) : birth(b), death(d), multiplicity(m) {
        if (!std::isfinite(b)) throw std::invalid_argument("DiagramPoint: birth must be finite");
        if (std::isnan(d)) throw std::invalid_argument("DiagramPoint: death is NaN");
        if (!(d > b)) throw std::invalid_argument("DiagramPoint: birth must be strictly below death");
        if (m < 1) throw std::invalid_argument("DiagramPoint: multiplicity must be positive");
    }

    bool has_infinite_death() const { return std::isinf(death); }

    friend bool operator==(const DiagramPoint& a, const DiagramPoint& b) = default;
};

/// Lexicographic (birth, death) order used for canonical diagrams.
inline bool point_less(const DiagramPoint& a, const DiagramPoint& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
}

/// A point of the extended plane. Unlike DiagramPoint this may lie on or
/// below the diagonal and may have infinite coordinates; it is the codomain
/// of the diagonal projection.
struct PlanePoint {
    double x;
    double y;

    friend bool operator==(PlanePoint, PlanePoint) = default;
};

// Coordinate-wise extended absolute difference: zero when both entries are
// infinite, infinite when exactly one is.
inline ExtendedValue ext_abs_diff(double u, double v) {
    const bool iu = std::isinf(u), iv = std::isinf(v);
    if (iu && iv) return 0.0;
    if (iu || iv) return ExtendedValue::infinity();
    return std::abs(u - v);
}

inline ExtendedValue linf_distance(PlanePoint a, PlanePoint b) {
    return max(ext_abs_diff(a.x, b.x), ext_abs_diff(a.y, b.y));
}

/// l-infinity distance with the diagram conventions: the death difference is
/// zero when both deaths are infinite, and infinite when exactly one is.
inline ExtendedValue linf_distance(const DiagramPoint& a, const DiagramPoint& b) {
    return max(ExtendedValue(std::abs(a.birth - b.birth)), ext_abs_diff(a.death, b.death));
}

inline PlanePoint diagonal_projection(PlanePoint q) {
    const double mid = 0.5 * (q.x + q.y);
    return {mid, mid};
}

/// Projection onto the diagonal: (x, y) -> ((x+y)/2, (x+y)/2). An infinite
/// death maps to (inf, inf).
inline PlanePoint diagonal_projection(const DiagramPoint& a) {
    return diagonal_projection(PlanePoint{a.birth, a.death});
}

/// Half the persistence: the l-infinity distance from a point to its
/// diagonal projection. Infinite for infinite points.
inline ExtendedValue diagonal_gap(const DiagramPoint& a) {
    if (a.has_infinite_death()) return ExtendedValue::infinity();
    return 0.5 * (a.death - a.birth);
}

/// A finite multiset of off-diagonal points, kept in canonical form: sorted
/// lexicographically by (birth, death) with equal points merged into one
/// entry whose multiplicity is the sum. Equality and serialization therefore
/// agree for equal multisets. The homology dimension is an annotation and
/// does not take part in equality.
class PersistenceDiagram {
public:
    PersistenceDiagram() = default;

    explicit PersistenceDiagram(std::vector<DiagramPoint> points,
                                std::optional<int> homology_dimension = std::nullopt)
        : points_(std::move(points)), homology_dimension_(homology_dimension) {
        std::sort(points_.begin(), points_.end(), point_less);
        std::vector<DiagramPoint> merged;
        for (const DiagramPoint& p : points_) {
            if (!merged.empty() && merged.back().birth == p.birth && merged.back().death == p.death)
                merged.back().multiplicity += p.multiplicity;
            else
                merged.push_back(p);
        }
        points_ = std::move(merged);
    }

    const std::vector<DiagramPoint>& points() const { return points_; }
    std::optional<int> homology_dimension() const { return homology_dimension_; }

    bool empty() const { return points_.empty(); }

    /// Multiplicity-weighted number of off-diagonal points.
    std::int64_t total_multiplicity() const {
        std::int64_t n = 0;
        for (const DiagramPoint& p : points_) n += p.multiplicity;
        return n;
    }

    /// The unit-multiplicity expansion, in canonical order. Matching
    /// solvers and reports index points by position in this list.
    std::vector<DiagramPoint> expanded() const {
        std::vector<DiagramPoint> out;
        out.reserve(static_cast<std::size_t>(total_multiplicity()));
        for (const DiagramPoint& p : points_)
            for (std::int64_t k = 0; k < p.multiplicity; ++k) out.emplace_back(p.birth, p.death, 1);
        return out;
    }

    friend bool operator==(const PersistenceDiagram& a, const PersistenceDiagram& b) {
        return a.points_ == b.points_;
    }

private:
    std::vector<DiagramPoint> points_;
    std::optional<int> homology_dimension_;
};

/// Multiplicity-weighted count of points with infinite death.
inline std::int64_t infinite_count(const PersistenceDiagram& d) {
    std::int64_t n = 0;
    for (const DiagramPoint& p : d.points())
        if (p.has_infinite_death()) n += p.multiplicity;
    return n;
}

inline bool all_finite(const PersistenceDiagram& d) { return infinite_count(d) == 0; }

struct DiagramParseResult {
    PersistenceDiagram diagram;
    std::size_t dropped_zero_persistence = 0;  // rows with birth == death
};

/// Parses the `.dgm` text format: one `<birth> <death> [multiplicity]` row
/// per line, `inf` (case-insensitive) for an infinite death, `#` comments,
/// blank lines ignored. Zero-persistence rows are dropped and counted;
/// death < birth, infinite births and malformed rows raise ParseError with
/// the offending line number.
inline DiagramParseResult parse_diagram(std::string_view text,
                                        std::optional<int> homology_dimension = std::nullopt) {
    std::vector<DiagramPoint> points;
    std::size_t dropped = 0;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto tokens = tokenize_line(lines[i]);
        if (tokens.empty()) continue;
        if (tokens.size() != 2 && tokens.size() != 3)
            throw ParseError(line_no, "expected '<birth> <death> [multiplicity]'");

        if (is_infinity_token(tokens[0]))
            throw ParseError(line_no, "infinite births are not supported");
        const auto birth = parse_finite_double(tokens[0]);
        if (!birth) throw ParseError(line_no, "malformed birth '" + std::string(tokens[0]) + "'");

        double death;
        if (is_infinity_token(tokens[1])) {
            death = std::numeric_limits<double>::infinity();
        } else {
            const auto d = parse_finite_double(tokens[1]);
            if (!d) throw ParseError(line_no, "malformed death '" + std::string(tokens[1]) + "'");
            death = *d;
        }

        std::int64_t multiplicity = 1;
        if (tokens.size() == 3) {
            const auto m = parse_integer(tokens[2]);
            if (!m || *m < 1) throw ParseError(line_no, "multiplicity must be a positive integer");
            multiplicity = *m;
        }

        if (death < *birth) throw ParseError(line_no, "death is below birth");
        if (death == *birth) {
            ++dropped;
            continue;
        }
        points.emplace_back(*birth, death, multiplicity);
    }
    return {PersistenceDiagram(std::move(points), homology_dimension), dropped};
}

/// Canonical `.dgm` serialization; parse_diagram(serialize_diagram(d)) == d.
inline std::string serialize_diagram(const PersistenceDiagram& d) {
    std::string out;
    for (const DiagramPoint& p : d.points()) {
        out += format_double(p.birth);
        out += ' ';
        out += p.has_infinite_death() ? "inf" : format_double(p.death);
        if (p.multiplicity != 1) {
            out += ' ';
            out += std::to_string(p.multiplicity);
        }
        out += '\n';
    }
    return out;
}

}  // namespace pdiv
