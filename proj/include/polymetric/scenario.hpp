#ifndef POLYMETRIC_SCENARIO_HPP
#define POLYMETRIC_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "polymetric/error.hpp"
#include "polymetric/map.hpp"
#include "polymetric/metric.hpp"
#include "polymetric/multispace.hpp"
#include "polymetric/sequence.hpp"
#include "polymetric/solver.hpp"

namespace polymetric {

using json = nlohmann::json;

/// A scenario file that does not parse or fails validation. `field()` is a
/// JSON path such as "space.components[1].region.lower"; `line()` is 1-based
/// and 0 when unknown.
class ScenarioError : public ValidationError {
public:
    ScenarioError(std::string field, std::size_t line, const std::string& message);

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string field_;
    std::size_t line_;
};

enum class ScenarioKind { Axioms, Sequence, Cauchy, Solve, Banach, Ellipse, NestedDisks };

std::string to_string(ScenarioKind kind);

struct AxiomsPayload {
    Metric metric;
    std::size_t dimension;
    std::size_t samples = 10000;
    double tolerance = 1e-9;
};

struct SequencePayload {
    SequenceSample sequence;
    std::size_t tail_window = kDefaultTailWindow;
    double tolerance = kDefaultSequenceTolerance;
};

struct SolvePayload {
    ContractionMap map;
    SolveOptions options;
};

struct EllipsePayload {
    double a;
    double b;
    std::size_t samples = 360;
    double r = 1.0;
};

struct DisksPayload {
    std::vector<DiskSpec> disks;
};

struct Scenario {
    ScenarioKind kind;
    std::uint64_t seed = kDefaultSeed;
    std::optional<MultiMetricSpace> space;
    std::variant<AxiomsPayload, SequencePayload, SolvePayload, EllipsePayload, DisksPayload> payload;
};

/// Command-line values that replace the file's seed and tolerance.
struct ScenarioOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
};

Scenario parse_scenario(const std::string& text, const ScenarioOverrides& overrides = {});
Scenario load_scenario(const std::filesystem::path& path, const ScenarioOverrides& overrides = {});

// Building blocks, exposed for tests. `path` prefixes error field names.
Metric parse_metric(const json& j, const std::string& path = "metric");
Combinator parse_combinator(const json& j, const std::string& path = "combinator");
Region parse_region(const json& j, std::size_t dimension, const std::string& path = "region");
MultiMetricSpace parse_space(const json& j, const std::string& path = "space");
ContractionMap parse_map(const json& j, const MultiMetricSpace& space,
                         const std::string& path = "map");

} // namespace polymetric

#endif
