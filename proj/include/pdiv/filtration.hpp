#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pdiv/text.hpp"

namespace pdiv {

/// A simplex with its filtration entry value. Vertices are kept sorted and
/// must be distinct; the value must be finite.
struct Simplex {
    std::vector<int> vertices;
    double filtration_value;

    Simplex(std::vector<int> v, double t) : vertices(std::move(v)), filtration_value(t) {
        if (vertices.empty()) throw std::invalid_argument("Simplex: needs at least one vertex");
        std::sort(vertices.begin(), vertices.end());
        if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
            throw std::invalid_argument("Simplex: repeated vertex");
        if (vertices.front() < 0) throw std::invalid_argument("Simplex: vertex ids must be non-negative");
        if (!std::isfinite(t)) throw std::invalid_argument("Simplex: filtration value must be finite");
    }

    int dimension() const { return static_cast<int>(vertices.size()) - 1; }

    friend bool operator==(const Simplex&, const Simplex&) = default;
};

namespace detail {

inline bool simplex_order(const Simplex& a, const Simplex& b) {
    if (a.filtration_value != b.filtration_value) return a.filtration_value < b.filtration_value;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

inline std::string vertex_list(const std::vector<int>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(vs[i]);
    }
    return out;
}

}  // namespace detail

/// A face-closed list of simplices in filtration order: ascending by
/// (value, dimension, lexicographic vertices), so faces always precede
/// cofaces. Construction validates closure: every facet must be present
/// with a filtration value no larger than its coface's.
class Filtration {
public:
    Filtration() = default;

    explicit Filtration(std::vector<Simplex> simplices) : simplices_(std::move(simplices)) {
        std::sort(simplices_.begin(), simplices_.end(), detail::simplex_order);
        std::map<std::vector<int>, double> value_of;
        for (const Simplex& s : simplices_) {
            if (!value_of.emplace(s.vertices, s.filtration_value).second)
                throw std::invalid_argument("duplicate simplex {" + detail::vertex_list(s.vertices) + "}");
        }
        for (const Simplex& s : simplices_) {
            if (s.dimension() == 0) continue;
            std::vector<int> facet(s.vertices.size() - 1);
            for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
                std::size_t w = 0;
                for (std::size_t r = 0; r < s.vertices.size(); ++r)
                    if (r != skip) facet[w++] = s.vertices[r];
                const auto it = value_of.find(facet);
                if (it == value_of.end())
                    throw std::invalid_argument("missing face {" + detail::vertex_list(facet) + "} of simplex {" +
                                                detail::vertex_list(s.vertices) + "}");
                if (it->second > s.filtration_value)
                    throw std::invalid_argument("face {" + detail::vertex_list(facet) +
                                                "} enters after its coface {" + detail::vertex_list(s.vertices) +
                                                "}");
            }
        }
    }

    const std::vector<Simplex>& simplices() const { return simplices_; }
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }

    int max_dimension() const {
        int d = -1;
        for (const Simplex& s : simplices_) d = std::max(d, s.dimension());
        return d;
    }

    /// Number of simplices per dimension, indexed 0..max_dimension().
    std::vector<std::int64_t> simplex_counts() const {
        std::vector<std::int64_t> counts(static_cast<std::size_t>(std::max(0, max_dimension() + 1)), 0);
        for (const Simplex& s : simplices_) ++counts[static_cast<std::size_t>(s.dimension())];
        return counts;
    }

private:
    std::vector<Simplex> simplices_;
};

/// Parses the `.flt` format: one simplex per line as `v0 v1 ... vk;t`,
/// `#` comments, blank lines ignored. Closure violations surface as
/// std::invalid_argument naming the offending simplex.
inline Filtration parse_filtration(std::string_view text) {
    std::vector<Simplex> simplices;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = lines[i];
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r') blank = false;
        if (blank) continue;

        const std::size_t semi = line.find(';');
        if (semi == std::string_view::npos) throw ParseError(line_no, "expected 'v0 v1 ... vk;t'");
        const auto vertex_tokens = tokenize_line(line.substr(0, semi));
        if (vertex_tokens.empty()) throw ParseError(line_no, "simplex needs at least one vertex");
        std::vector<int> vertices;
        vertices.reserve(vertex_tokens.size());
        for (const auto tok : vertex_tokens) {
            const auto v = parse_integer(tok);
            if (!v || *v < 0) throw ParseError(line_no, "malformed vertex id '" + std::string(tok) + "'");
            vertices.push_back(static_cast<int>(*v));
        }
        const auto value_tokens = tokenize_line(line.substr(semi + 1));
        if (value_tokens.size() != 1) throw ParseError(line_no, "expected one filtration value after ';'");
        const auto t = parse_finite_double(value_tokens[0]);
        if (!t) throw ParseError(line_no, "malformed filtration value '" + std::string(value_tokens[0]) + "'");
        try {
            simplices.emplace_back(std::move(vertices), *t);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return Filtration(std::move(simplices));
}

/// Canonical `.flt` serialization; parse_filtration(serialize_filtration(F))
/// reproduces F.
inline std::string serialize_filtration(const Filtration& F) {
    std::string out;
    for (const Simplex& s : F.simplices()) {
        out += detail::vertex_list(s.vertices);
        out += ';';
        out += format_double(s.filtration_value);
        out += '\n';
    }
    return out;
}

/// Parses the point-cloud CSV: one point per row, comma-separated
/// coordinates, uniform dimension; `#` comments and blank lines ignored.
inline std::vector<std::vector<double>> parse_point_cloud(std::string_view text) {
    std::vector<std::vector<double>> points;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = lines[i];
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<double> coords;
        std::size_t start = 0;
        bool any = false;
        for (std::size_t j = 0; j <= line.size(); ++j) {
            if (j < line.size() && line[j] != ',') continue;
            std::string_view field = line.substr(start, j - start);
            const auto toks = tokenize_line(field);
            if (toks.size() > 1) throw ParseError(line_no, "malformed coordinate '" + std::string(field) + "'");
            if (!toks.empty()) {
                const auto v = parse_finite_double(toks[0]);
                if (!v) throw ParseError(line_no, "malformed coordinate '" + std::string(toks[0]) + "'");
                coords.push_back(*v);
                any = true;
            } else if (j < line.size() || start > 0) {
                // an empty field between commas
                throw ParseError(line_no, "empty coordinate field");
            }
            start = j + 1;
        }
        if (!any) continue;
        if (!points.empty() && coords.size() != points.front().size())
            throw ParseError(line_no, "point dimension differs from previous rows");
        points.push_back(std::move(coords));
    }
    return points;
}

/// Vietoris-Rips filtration of a Euclidean point cloud up to dimension
/// max_dim (at most 2). A simplex enters at the largest pairwise distance
/// among its vertices; simplices entering after max_eps are excluded.
/// Vertices enter at 0.
inline Filtration build_rips(const std::vector<std::vector<double>>& points, double max_eps, int max_dim) {
    if (points.empty()) throw std::invalid_argument("build_rips: empty point set");
    if (max_dim < 0 || max_dim > 2) throw std::invalid_argument("build_rips: max_dim must be 0, 1 or 2");
    if (!(max_eps >= 0.0)) throw std::invalid_argument("build_rips: max_eps must be non-negative");
    const std::size_t n = points.size();
    const std::size_t dim = points.front().size();
    if (dim == 0) throw std::invalid_argument("build_rips: points must have at least one coordinate");
    for (const auto& p : points)
        if (p.size() != dim) throw std::invalid_argument("build_rips: points must share one dimension");

    const auto dist = [&](std::size_t i, std::size_t j) {
        double sq = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double d = points[i][k] - points[j][k];
            sq += d * d;
        }
        return std::sqrt(sq);
    };

    std::vector<Simplex> simplices;
    for (std::size_t i = 0; i < n; ++i) simplices.emplace_back(std::vector<int>{static_cast<int>(i)}, 0.0);
    if (max_dim >= 1) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = dist(i, j);
                if (d <= max_eps)
                    simplices.emplace_back(std::vector<int>{static_cast<int>(i), static_cast<int>(j)}, d);
            }
    }
    if (max_dim >= 2) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dij = dist(i, j);
                if (dij > max_eps) continue;
                for (std::size_t k = j + 1; k < n; ++k) {
                    const double d = std::max({dij, dist(i, k), dist(j, k)});
                    if (d <= max_eps)
                        simplices.emplace_back(
                            std::vector<int>{static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)}, d);
                }
            }
    }
    return Filtration(std::move(simplices));
}

}  // namespace pdiv
