#include "polymetric/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

namespace polymetric {

// ---------------------------------------------------------------------------
// Ellipse rescaling

EllipseDemoResult ellipse_demo(double a, double b, std::size_t sample_count, double r)
{
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ValidationError("ellipse: semi-axes must be positive and finite");
    }
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw ValidationError("ellipse: r must be positive and finite");
    }
    if (sample_count < 4) {
        throw ValidationError("ellipse: at least 4 samples are required");
    }

    const Metric euclidean = Metric::euclidean();
    const Metric rescaled = Metric::weighted_euclidean({r / a, r / b});
    const Point origin{0.0, 0.0};

    EllipseDemoResult result;
    result.a = a;
    result.b = b;
    result.r = r;
    result.sample_count = sample_count;
    for (std::size_t k = 0; k < sample_count; ++k) {
        const double angle =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(sample_count);
        const Point p{a * std::cos(angle), b * std::sin(angle)};
        const EllipseSample row{angle, p[0], p[1], euclidean(p, origin), rescaled(p, origin)};
        result.max_deviation = std::max(result.max_deviation, std::abs(row.weighted_distance - r));
        result.rows.push_back(row);
    }
    return result;
}

CsvTable EllipseDemoResult::csv() const
{
    CsvTable table({"angle", "x", "y", "euclidean_distance", "weighted_distance"});
    for (const auto& row : rows) {
        table.add_row({format_real(row.angle), format_real(row.x), format_real(row.y),
                       format_real(row.euclidean_distance), format_real(row.weighted_distance)});
    }
    return table;
}

// ---------------------------------------------------------------------------
// Scenario execution

namespace {

std::string format_point_text(PointView p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += (i ? ", " : "") + format_real(p[i]);
    }
    return s + ")";
}

std::string join_ids(const std::vector<ComponentId>& ids)
{
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        s += (i ? ";" : "") + std::to_string(ids[i]);
    }
    return s;
}

std::string describe_space(const MultiMetricSpace& space)
{
    std::ostringstream os;
    os << "space: dimension " << space.dimension() << ", m = " << space.size() << "\n";
    for (const auto& c : space.components()) {
        os << "  M" << c.id << ": ";
        switch (c.region.kind()) {
        case Region::Kind::Box:
            os << "box " << format_point_text(c.region.lower()) << " .. "
               << format_point_text(c.region.upper());
            break;
        case Region::Kind::Ball:
            os << "ball center " << format_point_text(c.region.center()) << " radius "
               << format_real(c.region.radius()) << " under "
               << c.region.ball_metric()->describe();
            break;
        case Region::Kind::Whole:
            os << "whole space";
            break;
        }
        os << ", metric " << c.metric.describe() << "\n";
    }
    return os.str();
}

CsvTable sequence_table(const MultiMetricSpace& space, const std::vector<Point>& points)
{
    auto header = std::vector<std::string>{"index"};
    for (auto& c : coordinate_columns("x", space.dimension())) {
        header.push_back(std::move(c));
    }
    header.insert(header.end(), {"components", "step"});
    CsvTable table(std::move(header));
    for (std::size_t n = 0; n < points.size(); ++n) {
        std::vector<std::string> row{std::to_string(n)};
        for (auto& c : format_point(points[n])) {
            row.push_back(std::move(c));
        }
        row.push_back(join_ids(components_of(space, points[n])));
        if (n == 0) {
            row.emplace_back("");
        } else {
            const auto d = distance(space, points[n], points[n - 1]);
            row.push_back(d ? format_real(d.value()) : "incomparable");
        }
        table.add_row(std::move(row));
    }
    return table;
}

void run_axioms(const AxiomsPayload& p, std::uint64_t seed, RunOutput& out)
{
    std::ostringstream os;
    os << "kind: axioms\n";
    os << "metric: " << p.metric.describe() << "\n";
    os << "dimension: " << p.dimension << ", samples: " << p.samples
       << ", tolerance: " << format_real(p.tolerance) << ", seed: " << seed << "\n";

    const auto report = check_metric_axioms(p.metric, p.dimension, p.samples, seed, p.tolerance);
    CsvTable table({"samples_tested", "definiteness_failures", "symmetry_failures",
                    "triangle_failures", "worst_triangle_slack", "verdict"});
    const std::string verdict = report.passed() ? "pass" : "fail";
    table.add_row({std::to_string(report.samples_tested),
                   std::to_string(report.definiteness_failures),
                   std::to_string(report.symmetry_failures),
                   std::to_string(report.triangle_failures),
                   format_real(report.worst_triangle_slack), verdict});
    os << "samples_tested: " << report.samples_tested << "\n"
       << "definiteness_failures: " << report.definiteness_failures << "\n"
       << "symmetry_failures: " << report.symmetry_failures << "\n"
       << "triangle_failures: " << report.triangle_failures << "\n"
       << "worst_triangle_slack: " << format_real(report.worst_triangle_slack) << "\n";
    bool ok = report.passed();

    if (p.metric.kind() == Metric::Kind::Combined) {
        const auto& comb = p.metric.combinator();
        const auto cond =
            check_combinator_conditions(comb, p.metric.parts().size(), p.samples, seed, p.tolerance);
        CsvTable conditions({"combinator", "arity", "samples_tested", "monotonicity_failures",
                             "zero_failures", "subadditivity_failures", "verdict"});
        conditions.add_row({comb.name(), std::to_string(p.metric.parts().size()),
                            std::to_string(cond.samples_tested),
                            std::to_string(cond.monotonicity_failures),
                            std::to_string(cond.zero_failures),
                            std::to_string(cond.subadditivity_failures),
                            cond.passed() ? "pass" : "fail"});
        os << "combinator " << comb.name() << " conditions: "
           << (cond.passed() ? "pass" : "fail") << " (monotonicity "
           << cond.monotonicity_failures << ", zero " << cond.zero_failures << ", subadditivity "
           << cond.subadditivity_failures << ")\n";
        ok = ok && cond.passed();
        out.tables.emplace_back("conditions.csv", std::move(conditions));
    }
    os << "verdict: " << verdict << "\n";
    out.tables.emplace_back("axioms.csv", std::move(table));
    out.report = os.str();
    out.exit_code = ok ? kExitOk : kExitMath;
}

void run_sequence(const Scenario& s, const SequencePayload& p, RunOutput& out)
{
    const auto& space = *s.space;
    const auto points = p.sequence.materialize();
    std::ostringstream os;
    os << "kind: " << to_string(s.kind) << "\n" << describe_space(space);
    os << "length: " << points.size() << ", tail_window: " << p.tail_window
       << ", tolerance: " << format_real(p.tolerance) << "\n";
    if (auto w = eventual_component(space, points)) {
        os << "eventual component: M" << w->component << " from index " << w->index << "\n";
    } else {
        os << "eventual component: none\n";
    }

    if (s.kind == ScenarioKind::Sequence) {
        const auto report = classify_convergence(space, points, p.tail_window, p.tolerance);
        os << "verdict: " << (report.convergent ? "Convergent" : "NotDetected") << "\n";
        if (report.convergent) {
            os << "limit_estimate: " << format_point_text(*report.limit_estimate) << "\n"
               << "eventual_component: " << *report.eventual_component << "\n"
               << "stabilization_index: " << *report.stabilization_index << "\n"
               << "final_residual: " << format_real(*report.final_residual) << "\n";
            const auto disk = bounding_disk(space, points);
            os << "bounded: " << (disk ? "yes, radius " + format_real(disk->radius) : "no") << "\n";
        }
    } else {
        const auto report = is_cauchy(space, points, p.tail_window, p.tolerance);
        os << "verdict: " << (report.cauchy ? "Cauchy" : "NotDetected") << "\n";
        if (report.witness_component) {
            os << "witness_component: " << *report.witness_component << "\n"
               << "stabilization_index: " << *report.stabilization_index << "\n";
        }
        os << "max_tail_gap: " << format_real(report.max_tail_gap) << "\n";
    }
    os << "note: verdicts are detections on a finite prefix, not proofs\n";
    out.tables.emplace_back("sequence.csv", sequence_table(space, points));
    out.report = os.str();
}

void run_solve(const Scenario& s, const SolvePayload& p, RunOutput& out)
{
    const auto& space = *s.space;
    std::ostringstream os;
    os << "kind: " << to_string(s.kind) << "\n" << describe_space(space);
    os << "map: " << p.map.rule().describe() << "\n";
    os << "tolerance: " << format_real(p.options.tolerance)
       << ", dedup_tolerance: " << format_real(p.options.dedup_tolerance)
       << ", max_iterations: " << p.options.max_iterations << ", seed: " << p.options.seed
       << "\n";

    FixedPointReport report;
    try {
        report = solve(space, p.map, p.options);
    } catch (const NotAContraction& e) {
        os << "alpha_hat: " << format_real(e.estimate().alpha_hat)
           << ", violations: " << e.estimate().violations << "\n"
           << "error: " << e.what() << "\n";
        out.report = os.str();
        out.exit_code = kExitMath;
        return;
    }

    os << "alpha_hat: " << format_real(report.estimate.alpha_hat)
       << ", violations: " << report.estimate.violations << "\nrouting:";
    for (const auto& [from, to] : report.estimate.routing) {
        os << " " << from << "->" << to;
    }
    os << "\nfixed points:\n";

    auto header = std::vector<std::string>{"seed_component", "component"};
    for (auto& c : coordinate_columns("x", space.dimension())) {
        header.push_back(std::move(c));
    }
    header.insert(header.end(), {"residual", "iterations"});
    CsvTable points(std::move(header));
    for (const auto& fp : report.points) {
        std::vector<std::string> row{std::to_string(fp.seed_component), std::to_string(fp.component)};
        for (auto& c : format_point(fp.point)) {
            row.push_back(std::move(c));
        }
        row.push_back(format_real(fp.residual));
        row.push_back(std::to_string(fp.iterations));
        points.add_row(std::move(row));
        os << "  M" << fp.component << ": " << format_point_text(fp.point)
           << " residual " << format_real(fp.residual) << " after " << fp.iterations
           << " iterations (seed M" << fp.seed_component << ")\n";
    }
    os << "count: " << report.count() << ", m: " << report.component_count << "\n";
    os << "1 ≤ count ≤ m: " << (report.count_within_bounds() ? "OK" : "VIOLATED") << "\n";

    auto orbit_header = std::vector<std::string>{"seed_component", "iteration"};
    for (auto& c : coordinate_columns("x", space.dimension())) {
        orbit_header.push_back(std::move(c));
    }
    orbit_header.emplace_back("step");
    CsvTable orbits(std::move(orbit_header));
    for (const auto& orbit : report.orbits) {
        for (std::size_t n = 0; n < orbit.iterates.size(); ++n) {
            std::vector<std::string> row{std::to_string(orbit.seed_component), std::to_string(n)};
            for (auto& c : format_point(orbit.iterates[n])) {
                row.push_back(std::move(c));
            }
            if (n == 0) {
                row.emplace_back("");
            } else {
                const double step = orbit.steps[n - 1];
                row.push_back(std::isnan(step) ? "incomparable" : format_real(step));
            }
            orbits.add_row(std::move(row));
        }
    }
    out.tables.emplace_back("fixed_points.csv", std::move(points));
    out.tables.emplace_back("orbits.csv", std::move(orbits));
    out.report = os.str();
}

void run_ellipse_payload(const EllipsePayload& p, RunOutput& out)
{
    const auto result = ellipse_demo(p.a, p.b, p.samples, p.r);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& row : result.rows) {
        lo = std::min(lo, row.euclidean_distance);
        hi = std::max(hi, row.euclidean_distance);
    }
    std::ostringstream os;
    os << "kind: ellipse\n"
       << "a: " << format_real(result.a) << ", b: " << format_real(result.b)
       << ", r: " << format_real(result.r) << ", samples: " << result.sample_count << "\n"
       << "rescaled metric: weighted_euclidean(r/a, r/b)\n"
       << "euclidean_distance range: [" << format_real(lo) << ", " << format_real(hi) << "]\n"
       << "max_deviation: " << format_real(result.max_deviation) << "\n";
    out.tables.emplace_back("ellipse.csv", result.csv());
    out.report = os.str();
}

void run_disks(const Scenario& s, const DisksPayload& p, RunOutput& out)
{
    const auto& space = *s.space;
    const Point estimate = nested_disk_intersection(space, p.disks);
    auto header = std::vector<std::string>{"index"};
    for (auto& c : coordinate_columns("c", space.dimension())) {
        header.push_back(std::move(c));
    }
    header.insert(header.end(), {"radius", "contains_estimate"});
    CsvTable table(std::move(header));
    for (std::size_t i = 0; i < p.disks.size(); ++i) {
        std::vector<std::string> row{std::to_string(i)};
        for (auto& c : format_point(p.disks[i].center)) {
            row.push_back(std::move(c));
        }
        row.push_back(format_real(p.disks[i].radius));
        row.emplace_back(in_disk(space, p.disks[i], estimate) ? "1" : "0");
        table.add_row(std::move(row));
    }
    std::ostringstream os;
    os << "kind: nested-disks\n" << describe_space(space);
    os << "disks: " << p.disks.size() << "\n"
       << "intersection estimate: " << format_point_text(estimate) << "\n";
    out.tables.emplace_back("disks.csv", std::move(table));
    out.report = os.str();
}

} // namespace

RunOutput execute(const Scenario& scenario)
{
    RunOutput out;
    try {
        std::visit(
            [&](const auto& payload) {
                using T = std::decay_t<decltype(payload)>;
                if constexpr (std::is_same_v<T, AxiomsPayload>) {
                    run_axioms(payload, scenario.seed, out);
                } else if constexpr (std::is_same_v<T, SequencePayload>) {
                    run_sequence(scenario, payload, out);
                } else if constexpr (std::is_same_v<T, SolvePayload>) {
                    run_solve(scenario, payload, out);
                } else if constexpr (std::is_same_v<T, EllipsePayload>) {
                    run_ellipse_payload(payload, out);
                } else {
                    run_disks(scenario, payload, out);
                }
            },
            scenario.payload);
    } catch (const MathError& e) {
        out.report += "error: " + std::string(e.what()) + "\n";
        out.exit_code = kExitMath;
    }
    return out;
}

namespace {

int write_output(const RunOutput& output, const std::filesystem::path& out_dir, std::ostream& log)
{
    std::ofstream report(out_dir / "report.txt", std::ios::binary | std::ios::trunc);
    if (!report) {
        log << "error: cannot write " << (out_dir / "report.txt").string() << "\n";
        return kExitValidation;
    }
    report << output.report;
    for (const auto& [name, table] : output.tables) {
        table.write(out_dir / name);
    }
    log << output.report;
    return output.exit_code;
}

bool prepare_out_dir(const std::filesystem::path& out_dir, std::ostream& log)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        log << "error: cannot create output directory " << out_dir.string() << "\n";
        return false;
    }
    return true;
}

} // namespace

int run(const std::filesystem::path& scenario_path, const std::filesystem::path& out_dir,
        const ScenarioOverrides& overrides, std::ostream& log)
{
    std::optional<Scenario> scenario;
    try {
        scenario = load_scenario(scenario_path, overrides);
    } catch (const ValidationError& e) {
        log << "error: " << scenario_path.string() << ": " << e.what() << "\n";
        return kExitValidation;
    }
    if (!prepare_out_dir(out_dir, log)) {
        return kExitValidation;
    }
    try {
        return write_output(execute(*scenario), out_dir, log);
    } catch (const ValidationError& e) {
        log << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

int run_ellipse(double a, double b, std::size_t samples, double r,
                const std::filesystem::path& out_dir, std::ostream& log)
{
    Scenario scenario{ScenarioKind::Ellipse, kDefaultSeed, std::nullopt,
                      EllipsePayload{a, b, samples, r}};
    try {
        // Validate before touching the filesystem.
        (void)ellipse_demo(a, b, samples, r);
    } catch (const ValidationError& e) {
        log << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    if (!prepare_out_dir(out_dir, log)) {
        return kExitValidation;
    }
    return write_output(execute(scenario), out_dir, log);
}

int cli_main(int argc, const char* const* argv)
{
    CLI::App app{"polymetric: multi-metric spaces, sequence analysis and fixed points"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    double tol = 0.0;
    auto* run_cmd = app.add_subcommand("run", "Execute a scenario file");
    run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run_cmd->add_option("--out", out_dir, "Output directory")->required();
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the scenario seed");
    auto* tol_opt = run_cmd->add_option("--tol", tol, "Override the scenario tolerance");

    double a = 0.0;
    double b = 0.0;
    double r = 1.0;
    std::size_t samples = 360;
    std::string ellipse_out;
    auto* ellipse_cmd = app.add_subcommand("ellipse", "Ellipse-to-circle metric rescaling demo");
    ellipse_cmd->add_option("--a", a, "Semi-axis along x")->required();
    ellipse_cmd->add_option("--b", b, "Semi-axis along y")->required();
    ellipse_cmd->add_option("--samples", samples, "Number of sampled angles")
        ->capture_default_str();
    ellipse_cmd->add_option("--r", r, "Target circle radius")->capture_default_str();
    ellipse_cmd->add_option("--out", ellipse_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    if (run_cmd->parsed()) {
        ScenarioOverrides overrides;
        if (seed_opt->count() > 0) {
            overrides.seed = seed;
        }
        if (tol_opt->count() > 0) {
            if (!(tol > 0.0) || !std::isfinite(tol)) {
                std::cerr << "error: --tol must be > 0\n";
                return kExitValidation;
            }
            overrides.tolerance = tol;
        }
        return run(scenario_path, out_dir, overrides, std::cerr);
    }
    return run_ellipse(a, b, samples, r, ellipse_out, std::cerr);
}

} // namespace polymetric
