#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdiv/extended_value.hpp"
#include "pdiv/text.hpp"

namespace pdiv {

/// Raised when a catalog function has no finite value at the requested
/// argument (identity and scale diverge at infinity unless a clamp is set).
class EvaluationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Properties a penalty function may carry. Catalog functions declare what
/// holds analytically; tabulated functions get the knot-decidable ones
/// derived exactly and sub-additivity re-checked by sampling at load.
struct FnProperties {
    bool sub_diagonal = false;         // f(x) <= x
    bool sub_additive = false;         // f(x+y) <= f(x) + f(y)
    bool strictly_increasing = false;  // on [0, inf)
    bool positive_on_positive = false; // f(x) > 0 for x > 0
};

/// A sub-diagonal, sub-additive penalty function f : [0, inf] -> [0, inf).
/// Values are finite non-negative reals; evaluation at infinity may throw
/// EvaluationError for functions whose formula diverges there.
class TameFunction {
public:
    TameFunction(std::string name, std::function<double(ExtendedValue)> eval, FnProperties properties)
        : name_(std::move(name)), eval_(std::move(eval)), properties_(properties) {}

    const std::string& name() const { return name_; }
    const FnProperties& properties() const { return properties_; }

    double operator()(ExtendedValue x) const {
        const double v = eval_(x);
        if (std::isnan(v) || v < 0.0 || std::isinf(v))
            throw EvaluationError(name_ + ": value at " + to_string(x) + " is outside [0, inf)");
        return v;
    }

    /// operator() wrapped to return nullopt instead of throwing; used by the
    /// sampled validators, where a divergent value at infinity is vacuous.
    std::optional<double> try_evaluate(ExtendedValue x) const {
        try {
            return (*this)(x);
        } catch (const EvaluationError&) {
            return std::nullopt;
        }
    }

private:
    std::string name_;
    std::function<double(ExtendedValue)> eval_;
    FnProperties properties_;
};

/// Catalog of built-in penalty functions.
///
///   zero                 x -> 0
///   identity             x -> x                    (diverges at infinity)
///   scale                x -> c*x, 0 < c <= 1      (diverges at infinity)
///   truncate             x -> min(x, c), c > 0
///   logistic_translated  x -> (e^x - 1)/(e^x + 1), value 1 at infinity
///
/// "logistic" is accepted as a shorthand for logistic_translated. For
/// identity and scale, evaluation at infinity throws EvaluationError unless
/// `infinity_clamp` supplies an explicit finite stand-in.
inline TameFunction builtin_function(std::string_view name, std::optional<double> param = std::nullopt,
                                     std::optional<double> infinity_clamp = std::nullopt) {
    const auto require_no_param = [&] {
        if (param) throw std::invalid_argument(std::string(name) + " takes no parameter");
    };
    if (infinity_clamp && (!std::isfinite(*infinity_clamp) || *infinity_clamp < 0.0))
        throw std::invalid_argument("infinity clamp must be finite and non-negative");

    if (name == "zero") {
        require_no_param();
        return TameFunction("zero", [](ExtendedValue) { return 0.0; },
                            {.sub_diagonal = true, .sub_additive = true});
    }
    if (name == "identity") {
        require_no_param();
        return TameFunction("identity",
                            [infinity_clamp](ExtendedValue x) {
                                if (x.is_infinite()) {
                                    if (infinity_clamp) return *infinity_clamp;
                                    throw EvaluationError("identity has no finite value at infinity");
                                }
                                return x.raw();
                            },
                            {.sub_diagonal = true,
                             .sub_additive = true,
                             .strictly_increasing = true,
                             .positive_on_positive = true});
    }
    if (name == "scale") {
        if (!param) throw std::invalid_argument("scale requires a parameter c with 0 < c <= 1");
        const double c = *param;
        if (!(c > 0.0) || c > 1.0)
            throw std::invalid_argument("scale parameter must satisfy 0 < c <= 1, got " + format_double(c));
        return TameFunction("scale(" + format_double(c) + ")",
                            [c, infinity_clamp](ExtendedValue x) {
                                if (x.is_infinite()) {
                                    if (infinity_clamp) return *infinity_clamp;
                                    throw EvaluationError("scale has no finite value at infinity");
                                }
                                return c * x.raw();
                            },
                            {.sub_diagonal = true,
                             .sub_additive = true,
                             .strictly_increasing = true,
                             .positive_on_positive = true});
    }
    if (name == "truncate") {
        if (!param) throw std::invalid_argument("truncate requires a parameter c > 0");
        const double c = *param;
        if (!(c > 0.0) || !std::isfinite(c))
            throw std::invalid_argument("truncate parameter must be a finite positive real");
        return TameFunction("truncate(" + format_double(c) + ")",
                            [c](ExtendedValue x) { return x.is_infinite() ? c : std::min(x.raw(), c); },
                            {.sub_diagonal = true, .sub_additive = true, .positive_on_positive = true});
    }
    if (name == "logistic_translated" || name == "logistic") {
        require_no_param();
        // (e^x - 1)/(e^x + 1) == tanh(x/2); the tanh form stays stable for
        // large x and reaches exactly 1 at infinity.
        return TameFunction("logistic_translated",
                            [](ExtendedValue x) { return x.is_infinite() ? 1.0 : std::tanh(0.5 * x.raw()); },
                            {.sub_diagonal = true,
                             .sub_additive = true,
                             .strictly_increasing = true,
                             .positive_on_positive = true});
    }
    throw std::invalid_argument("unknown function '" + std::string(name) + "'");
}

/// Outcome of a sampled property check. `counterexample` holds the violating
/// sample when ok is false: {x} for sub-diagonality, {x, y} for
/// sub-additivity, the whole vector for the p-increasing check.
struct CheckResult {
    bool ok = true;
    std::vector<double> counterexample;
};

namespace detail {

inline constexpr double kPropertyTolerance = 1e-12;

// Deterministic evaluation grid: an even sweep of [0, range_max] followed by
// seeded uniform draws from the same interval.
inline std::vector<double> sample_grid(int samples, double range_max, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(range_max > 0.0)) throw std::invalid_argument("range_max must be positive");
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(samples));
    const int grid = std::max(1, samples / 2);
    for (int i = 0; i < grid; ++i) xs.push_back(range_max * static_cast<double>(i) / static_cast<double>(grid));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, range_max);
    while (static_cast<int>(xs.size()) < samples) xs.push_back(uniform(rng));
    return xs;
}

}  // namespace detail

/// Samples f(x) <= x on a grid plus seeded random points in
/// [0, range_max] and at infinity; reports the first violation beyond 1e-12.
inline CheckResult check_sub_diagonal(const TameFunction& f, int samples, double range_max,
                                      std::uint64_t seed = 0) {
    auto xs = detail::sample_grid(samples, range_max, seed);
    xs.push_back(std::numeric_limits<double>::infinity());
    for (double x : xs) {
        const auto fx = f.try_evaluate(x);  // no finite value can violate f(x) <= inf
        if (!fx) continue;
        if (std::isfinite(x) && *fx > x + detail::kPropertyTolerance) return {false, {x}};
    }
    return {};
}

/// Samples f(x+y) <= f(x) + f(y) over pairs from the grid and seeded random
/// pairs in [0, range_max]^2.
inline CheckResult check_sub_additive(const TameFunction& f, int samples, double range_max,
                                      std::uint64_t seed = 0) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(range_max > 0.0)) throw std::invalid_argument("range_max must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, range_max);
    const int side = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(samples) / 2.0)));
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < side && static_cast<int>(pairs.size()) < samples; ++i)
        for (int j = i; j < side && static_cast<int>(pairs.size()) < samples; ++j)
            pairs.emplace_back(range_max * static_cast<double>(i) / static_cast<double>(side),
                               range_max * static_cast<double>(j) / static_cast<double>(side));
    while (static_cast<int>(pairs.size()) < samples) pairs.emplace_back(uniform(rng), uniform(rng));

    for (const auto& [x, y] : pairs) {
        const auto fxy = f.try_evaluate(x + y);
        const auto fx = f.try_evaluate(x);
        const auto fy = f.try_evaluate(y);
        if (!fxy || !fx || !fy) continue;
        if (*fxy > *fx + *fy + detail::kPropertyTolerance) return {false, {x, y}};
    }
    return {};
}

/// Samples f(||x||_p) <= ||(f(x_i))||_p over seeded random vectors of
/// lengths 1..dimension_max with entries in (0, range_max].
inline CheckResult check_p_increasing(const TameFunction& f, Order p, int dimension_max, int samples,
                                      double range_max = 100.0, std::uint64_t seed = 0) {
    if (dimension_max < 1) throw std::invalid_argument("dimension_max must be >= 1");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, range_max);

    const auto p_norm = [&](const std::vector<double>& v) {
        if (p.is_infinite()) return *std::max_element(v.begin(), v.end());
        double sum = 0.0;
        for (double t : v) sum += std::pow(t, p.value());
        return std::pow(sum, 1.0 / p.value());
    };

    for (int s = 0; s < samples; ++s) {
        const int n = 1 + static_cast<int>(static_cast<std::uint64_t>(rng()) % static_cast<std::uint64_t>(dimension_max));
        std::vector<double> x(static_cast<std::size_t>(n));
        for (double& t : x) t = uniform(rng);
        const auto lhs = f.try_evaluate(p_norm(x));
        if (!lhs) continue;
        std::vector<double> fx(x.size());
        bool evaluable = true;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto v = f.try_evaluate(x[i]);
            if (!v) {
                evaluable = false;
                break;
            }
            fx[i] = *v;
        }
        if (!evaluable) continue;
        if (*lhs > p_norm(fx) + detail::kPropertyTolerance) return {false, x};
    }
    return {};
}

/// Parses the `.fn` tabulated-function format: `<x> <f(x)>` knot lines with
/// strictly ascending x, one `inf <value>` line, `#` comments. The function
/// is the piecewise-linear interpolation of the knots with an implicit
/// (0, 0) knot when the grid starts above zero, constant continuation right
/// of the last knot, and the declared value at infinity. Values must be
/// non-negative, finite and non-decreasing.
///
/// Knot-decidable properties (sub-diagonality, strict monotonicity on the
/// covered range, positivity on positives) are derived exactly;
/// sub-additivity is re-validated with the sampled checker.
inline TameFunction parse_tame_function(std::string_view text, std::string name = "tabulated") {
    std::vector<std::pair<double, double>> knots;
    std::optional<double> at_infinity;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto tokens = tokenize_line(lines[i]);
        if (tokens.empty()) continue;
        if (tokens.size() != 2) throw ParseError(line_no, "expected '<x> <f(x)>' or 'inf <value>'");
        const auto value = parse_finite_double(tokens[1]);
        if (!value || *value < 0.0) throw ParseError(line_no, "function value must be a finite non-negative real");
        if (is_infinity_token(tokens[0])) {
            if (at_infinity) throw ParseError(line_no, "duplicate 'inf' line");
            at_infinity = *value;
            continue;
        }
        const auto x = parse_finite_double(tokens[0]);
        if (!x || *x < 0.0) throw ParseError(line_no, "knot x must be a finite non-negative real");
        if (!knots.empty() && *x <= knots.back().first)
            throw ParseError(line_no, "knot x values must be strictly ascending");
        if (!knots.empty() && *value < knots.back().second)
            throw ParseError(line_no, "knot values must be non-decreasing");
        knots.emplace_back(*x, *value);
    }
    if (knots.empty()) throw std::invalid_argument("tabulated function needs at least one knot");
    if (!at_infinity) throw std::invalid_argument("tabulated function needs an 'inf <value>' line");
    if (*at_infinity < knots.back().second)
        throw std::invalid_argument("value at infinity must not drop below the last knot");
    if (knots.front().first > 0.0) knots.insert(knots.begin(), {0.0, 0.0});

    FnProperties props;
    props.sub_diagonal = true;  // piecewise-linear: endpoint checks decide the whole graph
    for (const auto& [x, v] : knots)
        if (v > x + detail::kPropertyTolerance) props.sub_diagonal = false;
    props.positive_on_positive = knots.front().second == 0.0 && *at_infinity > 0.0;
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (knots[i].second <= 0.0) props.positive_on_positive = false;
    // Constant continuation right of the last knot rules out strict growth.
    props.strictly_increasing = false;

    const double inf_value = *at_infinity;
    auto eval = [knots, inf_value](ExtendedValue xv) {
        if (xv.is_infinite()) return inf_value;
        const double x = xv.raw();
        if (x >= knots.back().first) return knots.back().second;
        auto it = std::upper_bound(knots.begin(), knots.end(), x,
                                   [](double value, const std::pair<double, double>& k) { return value < k.first; });
        const auto& [x1, v1] = *it;
        const auto& [x0, v0] = *(it - 1);
        const double t = (x - x0) / (x1 - x0);
        return v0 + t * (v1 - v0);
    };
    TameFunction f(std::move(name), eval, props);

    FnProperties final_props = props;
    final_props.sub_additive = check_sub_additive(f, 2000, 4.0 * knots.back().first + 1.0).ok;
    return TameFunction(f.name(), eval, final_props);
}

}  // namespace pdiv
