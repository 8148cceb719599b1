#include "polymetric/map.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <variant>

namespace polymetric {

// ---------------------------------------------------------------------------
// Form1D

Form1D::Form1D(Kind kind, std::vector<double> params) : kind_(kind), params_(std::move(params))
{
    for (double p : params_) {
        if (!std::isfinite(p)) {
            throw ValidationError("form parameters must be finite");
        }
    }
}

Form1D Form1D::affine(double slope, double intercept) { return {Kind::Affine, {slope, intercept}}; }

Form1D Form1D::cosine(double scale, double offset) { return {Kind::Cosine, {scale, offset}}; }

Form1D Form1D::sine(double scale, double offset) { return {Kind::Sine, {scale, offset}}; }

Form1D Form1D::rational(double a, double b, double c, double d)
{
    if (c == 0.0 && d == 0.0) {
        throw ValidationError("rational form: denominator is identically zero");
    }
    return {Kind::Rational, {a, b, c, d}};
}

double Form1D::operator()(double x) const
{
    const auto& p = params_;
    switch (kind_) {
    case Kind::Affine:
        return p[0] * x + p[1];
    case Kind::Cosine:
        return p[0] * std::cos(x) + p[1];
    case Kind::Sine:
        return p[0] * std::sin(x) + p[1];
    case Kind::Rational: {
        const double den = p[2] * x + p[3];
        if (den == 0.0) {
            throw MapUndefined("rational form: denominator vanishes at x = " + std::to_string(x));
        }
        return (p[0] * x + p[1]) / den;
    }
    }
    return 0.0;
}

std::string Form1D::describe() const
{
    std::ostringstream os;
    const auto& p = params_;
    switch (kind_) {
    case Kind::Affine:
        os << p[0] << "*x + " << p[1];
        break;
    case Kind::Cosine:
        os << p[0] << "*cos(x) + " << p[1];
        break;
    case Kind::Sine:
        os << p[0] << "*sin(x) + " << p[1];
        break;
    case Kind::Rational:
        os << "(" << p[0] << "*x + " << p[1] << ")/(" << p[2] << "*x + " << p[3] << ")";
        break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Rule

namespace rule_body {

struct Affine {
    std::vector<std::vector<double>> matrix;
    Point offset;
};

struct Coordinatewise {
    std::vector<Form1D> forms;
};

struct Piece {
    ComponentId guard;
    Region region;
    Rule rule;
};

struct Piecewise {
    std::vector<Piece> pieces; // sorted by guard id
};

} // namespace rule_body

using namespace rule_body;

struct Rule::Node {
    std::size_t dimension;
    std::variant<Affine, Coordinatewise, Piecewise> body;
};

Rule::Rule(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Rule Rule::affine(std::vector<std::vector<double>> matrix, Point offset)
{
    const std::size_t d = offset.size();
    if (d == 0) {
        throw ValidationError("affine rule: dimension must be at least 1");
    }
    check_point(offset, d, "affine offset");
    if (matrix.size() != d) {
        throw DimensionError(d, matrix.size(), "affine matrix rows");
    }
    for (const auto& row : matrix) {
        check_point(row, d, "affine matrix row");
    }
    return Rule(std::make_shared<const Node>(Node{d, Affine{std::move(matrix), std::move(offset)}}));
}

Rule Rule::coordinatewise(std::vector<Form1D> forms)
{
    if (forms.empty()) {
        throw ValidationError("coordinatewise rule: at least one form is required");
    }
    const std::size_t d = forms.size();
    return Rule(std::make_shared<const Node>(Node{d, Coordinatewise{std::move(forms)}}));
}

Rule Rule::piecewise(const MultiMetricSpace& space,
                     std::vector<std::pair<ComponentId, Rule>> pieces)
{
    if (pieces.empty()) {
        throw ValidationError("piecewise rule: at least one piece is required");
    }
    std::set<ComponentId> seen;
    Piecewise body;
    for (auto& [guard, rule] : pieces) {
        const auto& component = space.component(guard);
        if (!seen.insert(guard).second) {
            throw ValidationError("piecewise rule: guard " + std::to_string(guard) +
                                  " appears twice");
        }
        if (rule.dimension() != space.dimension()) {
            throw DimensionError(space.dimension(), rule.dimension(),
                                 "piecewise rule for guard " + std::to_string(guard));
        }
        body.pieces.push_back({guard, component.region, std::move(rule)});
    }
    std::sort(body.pieces.begin(), body.pieces.end(),
              [](const Piece& a, const Piece& b) { return a.guard < b.guard; });
    return Rule(std::make_shared<const Node>(Node{space.dimension(), std::move(body)}));
}

Rule::Kind Rule::kind() const noexcept { return static_cast<Kind>(node_->body.index()); }

std::size_t Rule::dimension() const noexcept { return node_->dimension; }

Point Rule::operator()(PointView x) const
{
    check_point(x, node_->dimension);
    return std::visit(
        [&](const auto& body) -> Point {
            using T = std::decay_t<decltype(body)>;
            if constexpr (std::is_same_v<T, Affine>) {
                Point y = body.offset;
                for (std::size_t i = 0; i < y.size(); ++i) {
                    for (std::size_t j = 0; j < x.size(); ++j) {
                        y[i] += body.matrix[i][j] * x[j];
                    }
                }
                return y;
            } else if constexpr (std::is_same_v<T, Coordinatewise>) {
                Point y(x.size());
                for (std::size_t i = 0; i < y.size(); ++i) {
                    y[i] = body.forms[i](x[i]);
                }
                return y;
            } else {
                for (const auto& piece : body.pieces) {
                    if (piece.region.contains(x)) {
                        return piece.rule(x);
                    }
                }
                throw MapUndefined("map undefined here: point lies in no guard component");
            }
        },
        node_->body);
}

std::string Rule::describe() const
{
    return std::visit(
        [](const auto& body) -> std::string {
            using T = std::decay_t<decltype(body)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<T, Affine>) {
                os << "affine(A=[";
                for (std::size_t i = 0; i < body.matrix.size(); ++i) {
                    os << (i ? "; " : "");
                    for (std::size_t j = 0; j < body.matrix[i].size(); ++j) {
                        os << (j ? " " : "") << body.matrix[i][j];
                    }
                }
                os << "], b=[";
                for (std::size_t i = 0; i < body.offset.size(); ++i) {
                    os << (i ? " " : "") << body.offset[i];
                }
                os << "])";
            } else if constexpr (std::is_same_v<T, Coordinatewise>) {
                os << "coordinatewise(";
                for (std::size_t i = 0; i < body.forms.size(); ++i) {
                    os << (i ? ", " : "") << body.forms[i].describe();
                }
                os << ")";
            } else {
                os << "piecewise{";
                for (std::size_t i = 0; i < body.pieces.size(); ++i) {
                    os << (i ? ", " : "") << "M" << body.pieces[i].guard << ": "
                       << body.pieces[i].rule.describe();
                }
                os << "}";
            }
            return os.str();
        },
        node_->body);
}

// ---------------------------------------------------------------------------
// ContractionMap

ContractionMap::ContractionMap(Rule rule, std::optional<double> claimed_alpha)
    : rule_(std::move(rule)), claimed_alpha_(claimed_alpha)
{
    if (claimed_alpha_ && !(*claimed_alpha_ > 0.0 && *claimed_alpha_ < 1.0)) {
        throw ValidationError("claimed_alpha must lie strictly inside (0, 1)");
    }
}

Point apply_map(const ContractionMap& map, PointView x) { return map(x); }

} // namespace polymetric
