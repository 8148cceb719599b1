#include "polymetric/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <variant>

#include "polymetric/error.hpp"
#include "polymetric/random.hpp"

namespace polymetric {

namespace {

void check_weights(const std::vector<double>& weights, const char* what)
{
    if (weights.empty()) {
        throw ValidationError(std::string(what) + ": weights must be nonempty");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!std::isfinite(weights[i]) || weights[i] <= 0.0) {
            throw ValidationError(std::string(what) + ": weight " + std::to_string(i) +
                                  " must be strictly positive and finite");
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Combinator

Combinator::Combinator(Kind kind, std::vector<double> weights, std::string name,
                       std::function<double(std::span<const double>)> fn)
    : kind_(kind), weights_(std::move(weights)), name_(std::move(name)), fn_(std::move(fn))
{
}

Combinator Combinator::sum() { return Combinator(Kind::Sum, {}, "sum", {}); }

Combinator Combinator::max() { return Combinator(Kind::Max, {}, "max", {}); }

Combinator Combinator::weighted_sum(std::vector<double> weights)
{
    check_weights(weights, "weighted_sum");
    return Combinator(Kind::WeightedSum, std::move(weights), "weighted_sum", {});
}

Combinator Combinator::custom(std::string name, std::function<double(std::span<const double>)> fn)
{
    if (!fn) {
        throw ValidationError("custom combinator '" + name + "' has no function");
    }
    return Combinator(Kind::Custom, {}, std::move(name), std::move(fn));
}

std::string Combinator::name() const { return name_; }

double Combinator::operator()(std::span<const double> values) const
{
    switch (kind_) {
    case Kind::Sum:
        return std::accumulate(values.begin(), values.end(), 0.0);
    case Kind::Max:
        return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    case Kind::WeightedSum: {
        if (values.size() != weights_.size()) {
            throw ValidationError("weighted_sum: " + std::to_string(weights_.size()) +
                                  " weights for " + std::to_string(values.size()) + " values");
        }
        double total = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            total += weights_[i] * values[i];
        }
        return total;
    }
    case Kind::Custom:
        return fn_(values);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Metric

namespace metric_body {

struct Euclidean {};
struct Manhattan {};
struct Chebyshev {};
struct Discrete {};
struct WeightedEuclidean {
    std::vector<double> weights;
};
struct BoundedTransform {
    Metric inner;
};
struct Combined {
    Combinator combinator;
    std::vector<Metric> parts;
};
struct Custom {
    std::string name;
    Metric::Function fn;
};

} // namespace metric_body

using namespace metric_body;

struct Metric::Node {
    std::variant<Euclidean, Manhattan, Chebyshev, Discrete, WeightedEuclidean, BoundedTransform,
                 Combined, Custom>
        body;
};

Metric::Metric(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Metric Metric::euclidean() { return Metric(std::make_shared<const Node>(Node{Euclidean{}})); }

Metric Metric::manhattan() { return Metric(std::make_shared<const Node>(Node{Manhattan{}})); }

Metric Metric::chebyshev() { return Metric(std::make_shared<const Node>(Node{Chebyshev{}})); }

Metric Metric::discrete() { return Metric(std::make_shared<const Node>(Node{Discrete{}})); }

Metric Metric::weighted_euclidean(std::vector<double> weights)
{
    check_weights(weights, "weighted_euclidean");
    return Metric(std::make_shared<const Node>(Node{WeightedEuclidean{std::move(weights)}}));
}

Metric Metric::bounded(Metric inner)
{
    return Metric(std::make_shared<const Node>(Node{BoundedTransform{std::move(inner)}}));
}

Metric Metric::combined(Combinator combinator, std::vector<Metric> parts)
{
    return combine(std::move(combinator), std::move(parts));
}

Metric Metric::custom(std::string name, Function fn)
{
    if (!fn) {
        throw ValidationError("custom metric '" + name + "' has no function");
    }
    return Metric(std::make_shared<const Node>(Node{Custom{std::move(name), std::move(fn)}}));
}

Metric combine(Combinator combinator, std::vector<Metric> parts)
{
    if (parts.empty()) {
        throw ValidationError("combine: parts must be nonempty");
    }
    if (combinator.kind() == Combinator::Kind::WeightedSum &&
        combinator.weights().size() != parts.size()) {
        throw ValidationError("combine: weighted_sum has " +
                              std::to_string(combinator.weights().size()) + " weights for " +
                              std::to_string(parts.size()) + " parts");
    }
    std::optional<std::size_t> dim;
    for (const auto& part : parts) {
        if (auto d = part.dimension()) {
            if (dim && *dim != *d) {
                throw DimensionError(*dim, *d, "combine: part metric");
            }
            dim = d;
        }
    }
    return Metric(std::make_shared<const Metric::Node>(
        Metric::Node{Combined{std::move(combinator), std::move(parts)}}));
}

Metric::Kind Metric::kind() const noexcept
{
    return static_cast<Kind>(node_->body.index());
}

std::optional<std::size_t> Metric::dimension() const
{
    return std::visit(
        [](const auto& body) -> std::optional<std::size_t> {
            using T = std::decay_t<decltype(body)>;
            if constexpr (std::is_same_v<T, WeightedEuclidean>) {
                return body.weights.size();
            } else if constexpr (std::is_same_v<T, BoundedTransform>) {
                return body.inner.dimension();
            } else if constexpr (std::is_same_v<T, Combined>) {
                for (const auto& part : body.parts) {
                    if (auto d = part.dimension()) {
                        return d;
                    }
                }
                return std::nullopt;
            } else {
                return std::nullopt;
            }
        },
        node_->body);
}

const std::vector<double>& Metric::weights() const
{
    if (const auto* w = std::get_if<WeightedEuclidean>(&node_->body)) {
        return w->weights;
    }
    throw ValidationError("metric " + describe() + " has no weights");
}

const Metric& Metric::inner() const
{
    if (const auto* b = std::get_if<BoundedTransform>(&node_->body)) {
        return b->inner;
    }
    throw ValidationError("metric " + describe() + " is not a bounded transform");
}

const Combinator& Metric::combinator() const
{
    if (const auto* c = std::get_if<Combined>(&node_->body)) {
        return c->combinator;
    }
    throw ValidationError("metric " + describe() + " is not combined");
}

const std::vector<Metric>& Metric::parts() const
{
    if (const auto* c = std::get_if<Combined>(&node_->body)) {
        return c->parts;
    }
    throw ValidationError("metric " + describe() + " is not combined");
}

std::string Metric::describe() const
{
    return std::visit(
        [](const auto& body) -> std::string {
            using T = std::decay_t<decltype(body)>;
            if constexpr (std::is_same_v<T, Euclidean>) {
                return "euclidean";
            } else if constexpr (std::is_same_v<T, Manhattan>) {
                return "manhattan";
            } else if constexpr (std::is_same_v<T, Chebyshev>) {
                return "chebyshev";
            } else if constexpr (std::is_same_v<T, Discrete>) {
                return "discrete";
            } else if constexpr (std::is_same_v<T, WeightedEuclidean>) {
                std::string s = "weighted_euclidean[";
                for (std::size_t i = 0; i < body.weights.size(); ++i) {
                    s += (i ? "," : "") + std::to_string(body.weights[i]);
                }
                return s + "]";
            } else if constexpr (std::is_same_v<T, BoundedTransform>) {
                return "bounded(" + body.inner.describe() + ")";
            } else if constexpr (std::is_same_v<T, Combined>) {
                std::string s = body.combinator.name() + "(";
                for (std::size_t i = 0; i < body.parts.size(); ++i) {
                    s += (i ? ", " : "") + body.parts[i].describe();
                }
                return s + ")";
            } else {
                return body.name;
            }
        },
        node_->body);
}

namespace {

struct Evaluator {
    PointView x;
    PointView y;

    double operator()(const Euclidean&) const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - y[i];
            s += d * d;
        }
        return std::sqrt(s);
    }

    double operator()(const Manhattan&) const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += std::abs(x[i] - y[i]);
        }
        return s;
    }

    double operator()(const Chebyshev&) const
    {
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            m = std::max(m, std::abs(x[i] - y[i]));
        }
        return m;
    }

    double operator()(const Discrete&) const
    {
        return std::equal(x.begin(), x.end(), y.begin()) ? 0.0 : 1.0;
    }

    double operator()(const WeightedEuclidean& w) const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = w.weights[i] * (x[i] - y[i]);
            s += d * d;
        }
        return std::sqrt(s);
    }

    double operator()(const BoundedTransform& b) const
    {
        const double r = b.inner(x, y);
        return r / (1.0 + r);
    }

    double operator()(const Combined& c) const
    {
        std::vector<double> values;
        values.reserve(c.parts.size());
        for (const auto& part : c.parts) {
            values.push_back(part(x, y));
        }
        return c.combinator(values);
    }

    double operator()(const Custom& c) const { return c.fn(x, y); }
};

} // namespace

double Metric::operator()(PointView x, PointView y) const
{
    check_same_dimension(x, y);
    if (auto d = dimension(); d && *d != x.size()) {
        throw DimensionError(*d, x.size(), "metric " + describe());
    }
    return std::visit(Evaluator{x, y}, node_->body);
}

double eval_metric(const Metric& metric, PointView x, PointView y) { return metric(x, y); }

} // namespace polymetric
