#ifndef POLYMETRIC_CLI_HPP
#define POLYMETRIC_CLI_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "polymetric/csv.hpp"
#include "polymetric/scenario.hpp"

namespace polymetric {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1, ///< scenario or arguments rejected before computing
    kExitMath = 2,       ///< a library computation reported a mathematical failure
};

struct EllipseSample {
    double angle;
    double x;
    double y;
    double euclidean_distance;
    double weighted_distance;
};

/**
 * Points (a cos t, b sin t) at uniform angles, measured from the origin with
 * the plain Euclidean metric and with WeightedEuclidean(r/a, r/b). Under the
 * rescaled metric the ellipse is the circle of radius r, so max_deviation =
 * max |weighted - r| is rounding noise.
 */
struct EllipseDemoResult {
    double a = 0.0;
    double b = 0.0;
    double r = 1.0;
    std::size_t sample_count = 0;
    double max_deviation = 0.0;
    std::vector<EllipseSample> rows;

    CsvTable csv() const;
};

/// Throws ValidationError for non-positive a, b, r or fewer than 4 samples.
EllipseDemoResult ellipse_demo(double a, double b, std::size_t sample_count, double r = 1.0);

/// Files produced by one scenario execution.
struct RunOutput {
    std::string report;
    std::vector<std::pair<std::string, CsvTable>> tables;
    int exit_code = kExitOk;
};

/// Executes a parsed scenario in memory. Library MathErrors are caught and
/// turned into a report with exit code 2.
RunOutput execute(const Scenario& scenario);

/**
 * Loads the scenario, executes it, and writes report.txt plus CSV files to
 * `out_dir`. Diagnostics go to `log`. Returns an ExitCode.
 */
int run(const std::filesystem::path& scenario_path, const std::filesystem::path& out_dir,
        const ScenarioOverrides& overrides, std::ostream& log);

int run_ellipse(double a, double b, std::size_t samples, double r,
                const std::filesystem::path& out_dir, std::ostream& log);

/// Argument parsing for the `polymetric` executable.
int cli_main(int argc, const char* const* argv);

} // namespace polymetric

#endif
