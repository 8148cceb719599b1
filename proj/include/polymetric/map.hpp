#ifndef POLYMETRIC_MAP_HPP
#define POLYMETRIC_MAP_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polymetric/error.hpp"
#include "polymetric/multispace.hpp"
#include "polymetric/point.hpp"

namespace polymetric {

/// Raised when a map is evaluated outside the set it is defined on.
class MapUndefined : public MathError {
public:
    using MathError::MathError;
};

/**
 * @brief One-dimensional closed form from a fixed catalog.
 *
 *   affine:   slope * x + intercept
 *   cosine:   scale * cos(x) + offset
 *   sine:     scale * sin(x) + offset
 *   rational: (a x + b) / (c x + d)
 */
class Form1D {
public:
    enum class Kind { Affine, Cosine, Sine, Rational };

    static Form1D affine(double slope, double intercept);
    static Form1D cosine(double scale = 1.0, double offset = 0.0);
    static Form1D sine(double scale = 1.0, double offset = 0.0);
    static Form1D rational(double a, double b, double c, double d);

    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& params() const noexcept { return params_; }

    /// Throws MapUndefined where a rational form's denominator vanishes.
    double operator()(double x) const;

    std::string describe() const;

private:
    Form1D(Kind kind, std::vector<double> params);

    Kind kind_;
    std::vector<double> params_;
};

/**
 * @brief Closed-form self-map rule of the ambient space.
 *
 * Affine (x -> A x + b), Coordinatewise (one Form1D per coordinate), or
 * Piecewise (a sub-rule per guard component; the lowest guard id whose
 * region contains the point wins).
 */
class Rule {
public:
    enum class Kind { Affine, Coordinatewise, Piecewise };

    static Rule affine(std::vector<std::vector<double>> matrix, Point offset);
    static Rule coordinatewise(std::vector<Form1D> forms);
    /// Guard regions are copied out of `space`; each guard id must exist and appear once.
    static Rule piecewise(const MultiMetricSpace& space,
                          std::vector<std::pair<ComponentId, Rule>> pieces);

    Kind kind() const noexcept;
    std::size_t dimension() const noexcept;

    /// Throws MapUndefined for a Piecewise point outside every guard.
    Point operator()(PointView x) const;

    std::string describe() const;

    struct Node;

private:
    explicit Rule(std::shared_ptr<const Node> node);

    std::shared_ptr<const Node> node_;
};

/// A rule plus an optional user claim about its contraction constant.
class ContractionMap {
public:
    /// Throws ValidationError if claimed_alpha is outside (0, 1).
    explicit ContractionMap(Rule rule, std::optional<double> claimed_alpha = std::nullopt);

    const Rule& rule() const noexcept { return rule_; }
    const std::optional<double>& claimed_alpha() const noexcept { return claimed_alpha_; }
    std::size_t dimension() const noexcept { return rule_.dimension(); }

    Point operator()(PointView x) const { return rule_(x); }

private:
    Rule rule_;
    std::optional<double> claimed_alpha_;
};

/// Image of `x`; throws DimensionError or MapUndefined.
Point apply_map(const ContractionMap& map, PointView x);

} // namespace polymetric

#endif
