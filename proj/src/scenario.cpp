#include "polymetric/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace polymetric {

ScenarioError::ScenarioError(std::string field, std::size_t line, const std::string& message)
    : ValidationError((line ? "line " + std::to_string(line) + ": " : std::string()) +
                      (field.empty() ? std::string() : "field '" + field + "': ") + message),
      field_(std::move(field)),
      line_(line)
{
}

std::string to_string(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::Axioms:
        return "axioms";
    case ScenarioKind::Sequence:
        return "sequence";
    case ScenarioKind::Cauchy:
        return "cauchy";
    case ScenarioKind::Solve:
        return "solve";
    case ScenarioKind::Banach:
        return "banach";
    case ScenarioKind::Ellipse:
        return "ellipse";
    case ScenarioKind::NestedDisks:
        return "nested-disks";
    }
    return "unknown";
}

namespace {

/// Walks a parsed document, turning every failure into a ScenarioError that
/// carries the JSON path and, when the source text is known, a line number.
class Reader {
public:
    explicit Reader(std::string text = {}) : text_(std::move(text)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const
    {
        throw ScenarioError(path, line_of(path), message);
    }

    const json& require(const json& obj, const std::string& key, const std::string& path) const
    {
        if (!obj.is_object()) {
            fail(path, "expected an object");
        }
        const auto it = obj.find(key);
        if (it == obj.end()) {
            fail(join(path, key), "missing required field");
        }
        return *it;
    }

    void allow_only(const json& obj, std::initializer_list<const char*> keys,
                    const std::string& path) const
    {
        for (const auto& [key, value] : obj.items()) {
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
                fail(join(path, key), "unknown field");
            }
        }
    }

    double real(const json& j, const std::string& path) const
    {
        if (!j.is_number()) {
            fail(path, "expected a number");
        }
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            fail(path, "must be finite");
        }
        return v;
    }

    double positive(const json& j, const std::string& path) const
    {
        const double v = real(j, path);
        if (!(v > 0.0)) {
            fail(path, "must be > 0");
        }
        return v;
    }

    std::size_t count(const json& j, const std::string& path) const
    {
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
            fail(path, "expected a nonnegative integer");
        }
        return j.get<std::size_t>();
    }

    std::string string(const json& j, const std::string& path) const
    {
        if (!j.is_string()) {
            fail(path, "expected a string");
        }
        return j.get<std::string>();
    }

    std::vector<double> reals(const json& j, const std::string& path) const
    {
        if (!j.is_array()) {
            fail(path, "expected an array of numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < j.size(); ++i) {
            out.push_back(real(j[i], index(path, i)));
        }
        return out;
    }

    /// A point is an array of coordinates; a bare number is accepted in 1-d.
    Point point(const json& j, std::size_t dimension, const std::string& path) const
    {
        Point p = j.is_number() ? Point{real(j, path)} : reals(j, path);
        if (p.size() != dimension) {
            fail(path, "expected dimension " + std::to_string(dimension) + ", got " +
                           std::to_string(p.size()));
        }
        return p;
    }

    /// Runs `build`, re-labelling library validation errors with `path`.
    template <class F>
    auto guarded(const std::string& path, F&& build) const
    {
        try {
            return build();
        } catch (const ScenarioError&) {
            throw;
        } catch (const ValidationError& e) {
            fail(path, e.what());
        }
    }

    static std::string join(const std::string& path, const std::string& key)
    {
        return path.empty() ? key : path + "." + key;
    }

    static std::string index(const std::string& path, std::size_t i)
    {
        return path + "[" + std::to_string(i) + "]";
    }

    Metric metric(const json& j, const std::string& path) const;
    Combinator combinator(const json& j, const std::string& path) const;
    Region region(const json& j, std::size_t dimension, const std::string& path) const;
    MultiMetricSpace space(const json& j, const std::string& path) const;
    Form1D form(const json& j, const std::string& path) const;
    Rule rule(const json& j, const MultiMetricSpace& space, const std::string& path) const;
    ContractionMap map(const json& j, const MultiMetricSpace& space, const std::string& path) const;
    SequenceSample sequence(const json& j, const MultiMetricSpace& space,
                            const std::string& path) const;

private:
    /// Line of the first occurrence of the path's last key in the source.
    std::size_t line_of(const std::string& path) const
    {
        if (text_.empty() || path.empty()) {
            return 0;
        }
        std::string key = path.substr(path.find_last_of('.') == std::string::npos
                                          ? 0
                                          : path.find_last_of('.') + 1);
        key = key.substr(0, key.find('['));
        const auto pos = text_.find("\"" + key + "\"");
        if (pos == std::string::npos) {
            return 0;
        }
        return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + pos, '\n'));
    }

    std::string text_;
};

Combinator Reader::combinator(const json& j, const std::string& path) const
{
    if (j.is_string()) {
        return combinator(json{{"type", j}}, path);
    }
    const auto type = string(require(j, "type", path), join(path, "type"));
    if (type == "sum") {
        allow_only(j, {"type"}, path);
        return Combinator::sum();
    }
    if (type == "max") {
        allow_only(j, {"type"}, path);
        return Combinator::max();
    }
    if (type == "weighted_sum") {
        allow_only(j, {"type", "weights"}, path);
        auto weights = reals(require(j, "weights", path), join(path, "weights"));
        return guarded(join(path, "weights"),
                       [&] { return Combinator::weighted_sum(std::move(weights)); });
    }
    fail(join(path, "type"), "unknown combinator '" + type + "' (sum, max, weighted_sum)");
}

Metric Reader::metric(const json& j, const std::string& path) const
{
    if (j.is_string()) {
        return metric(json{{"type", j}}, path);
    }
    const auto type = string(require(j, "type", path), join(path, "type"));
    if (type == "euclidean" || type == "manhattan" || type == "chebyshev" || type == "discrete") {
        allow_only(j, {"type"}, path);
        if (type == "euclidean") {
            return Metric::euclidean();
        }
        if (type == "manhattan") {
            return Metric::manhattan();
        }
        if (type == "chebyshev") {
            return Metric::chebyshev();
        }
        return Metric::discrete();
    }
    if (type == "weighted_euclidean") {
        allow_only(j, {"type", "weights"}, path);
        auto weights = reals(require(j, "weights", path), join(path, "weights"));
        return guarded(join(path, "weights"),
                       [&] { return Metric::weighted_euclidean(std::move(weights)); });
    }
    if (type == "bounded") {
        allow_only(j, {"type", "inner"}, path);
        return Metric::bounded(metric(require(j, "inner", path), join(path, "inner")));
    }
    if (type == "combined") {
        allow_only(j, {"type", "combinator", "parts"}, path);
        auto comb = combinator(require(j, "combinator", path), join(path, "combinator"));
        const auto& parts_json = require(j, "parts", path);
        if (!parts_json.is_array()) {
            fail(join(path, "parts"), "expected an array of metrics");
        }
        std::vector<Metric> parts;
        for (std::size_t i = 0; i < parts_json.size(); ++i) {
            parts.push_back(metric(parts_json[i], index(join(path, "parts"), i)));
        }
        return guarded(join(path, "parts"), [&] { return combine(comb, std::move(parts)); });
    }
    fail(join(path, "type"), "unknown metric '" + type +
                                 "' (euclidean, manhattan, chebyshev, discrete, "
                                 "weighted_euclidean, bounded, combined)");
}

Region Reader::region(const json& j, std::size_t dimension, const std::string& path) const
{
    const auto type = string(require(j, "type", path), join(path, "type"));
    if (type == "box") {
        allow_only(j, {"type", "lower", "upper"}, path);
        auto lower = point(require(j, "lower", path), dimension, join(path, "lower"));
        auto upper = point(require(j, "upper", path), dimension, join(path, "upper"));
        return guarded(path, [&] { return Region::box(std::move(lower), std::move(upper)); });
    }
    if (type == "ball") {
        allow_only(j, {"type", "center", "radius", "metric"}, path);
        auto center = point(require(j, "center", path), dimension, join(path, "center"));
        const double radius = positive(require(j, "radius", path), join(path, "radius"));
        auto m = j.contains("metric") ? metric(j["metric"], join(path, "metric"))
                                      : Metric::euclidean();
        return guarded(path, [&] { return Region::ball(std::move(center), radius, std::move(m)); });
    }
    if (type == "whole") {
        allow_only(j, {"type"}, path);
        return Region::whole(dimension);
    }
    fail(join(path, "type"), "unknown region '" + type + "' (box, ball, whole)");
}

MultiMetricSpace Reader::space(const json& j, const std::string& path) const
{
    allow_only(j, {"dimension", "components"}, path);
    const std::size_t dimension = count(require(j, "dimension", path), join(path, "dimension"));
    if (dimension < 1) {
        fail(join(path, "dimension"), "must be at least 1");
    }
    const auto& list = require(j, "components", path);
    if (!list.is_array() || list.empty()) {
        fail(join(path, "components"), "expected a nonempty array");
    }
    std::vector<ComponentSpace> components;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto where = index(join(path, "components"), i);
        allow_only(list[i], {"region", "metric"}, where);
        auto r = region(require(list[i], "region", where), dimension, join(where, "region"));
        auto m = metric(require(list[i], "metric", where), join(where, "metric"));
        components.push_back({i + 1, std::move(r), std::move(m)});
    }
    return guarded(path, [&] { return MultiMetricSpace(dimension, std::move(components)); });
}

Form1D Reader::form(const json& j, const std::string& path) const
{
    const auto name = string(require(j, "form", path), join(path, "form"));
    auto param = [&](const char* key, double fallback) {
        return j.contains(key) ? real(j[key], join(path, key)) : fallback;
    };
    if (name == "affine") {
        allow_only(j, {"form", "slope", "intercept"}, path);
        return Form1D::affine(real(require(j, "slope", path), join(path, "slope")),
                              param("intercept", 0.0));
    }
    if (name == "cosine" || name == "sine") {
        allow_only(j, {"form", "scale", "offset"}, path);
        const double scale = param("scale", 1.0);
        const double offset = param("offset", 0.0);
        return name == "cosine" ? Form1D::cosine(scale, offset) : Form1D::sine(scale, offset);
    }
    if (name == "rational") {
        allow_only(j, {"form", "a", "b", "c", "d"}, path);
        return guarded(path, [&] {
            return Form1D::rational(param("a", 0.0), param("b", 0.0), param("c", 0.0),
                                    param("d", 1.0));
        });
    }
    fail(join(path, "form"), "unknown form '" + name + "' (affine, cosine, sine, rational)");
}

Rule Reader::rule(const json& j, const MultiMetricSpace& sp, const std::string& path) const
{
    const auto type = string(require(j, "type", path), join(path, "type"));
    if (type == "affine") {
        allow_only(j, {"type", "matrix", "offset"}, path);
        const auto& rows = require(j, "matrix", path);
        if (!rows.is_array()) {
            fail(join(path, "matrix"), "expected an array of rows");
        }
        std::vector<std::vector<double>> matrix;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            matrix.push_back(point(rows[i], sp.dimension(), index(join(path, "matrix"), i)));
        }
        if (matrix.size() != sp.dimension()) {
            fail(join(path, "matrix"), "expected " + std::to_string(sp.dimension()) + " rows");
        }
        auto offset = j.contains("offset")
                          ? point(j["offset"], sp.dimension(), join(path, "offset"))
                          : Point(sp.dimension(), 0.0);
        return guarded(path, [&] { return Rule::affine(std::move(matrix), std::move(offset)); });
    }
    if (type == "coordinatewise") {
        allow_only(j, {"type", "forms"}, path);
        const auto& list = require(j, "forms", path);
        if (!list.is_array() || list.size() != sp.dimension()) {
            fail(join(path, "forms"),
                 "expected an array of " + std::to_string(sp.dimension()) + " forms");
        }
        std::vector<Form1D> forms;
        for (std::size_t i = 0; i < list.size(); ++i) {
            forms.push_back(form(list[i], index(join(path, "forms"), i)));
        }
        return Rule::coordinatewise(std::move(forms));
    }
    if (type == "piecewise") {
        allow_only(j, {"type", "pieces"}, path);
        const auto& list = require(j, "pieces", path);
        if (!list.is_array() || list.empty()) {
            fail(join(path, "pieces"), "expected a nonempty array");
        }
        std::vector<std::pair<ComponentId, Rule>> pieces;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto where = index(join(path, "pieces"), i);
            allow_only(list[i], {"component", "rule"}, where);
            const auto id = count(require(list[i], "component", where), join(where, "component"));
            if (id < 1 || id > sp.size()) {
                fail(join(where, "component"), "no component with id " + std::to_string(id));
            }
            pieces.emplace_back(id, rule(require(list[i], "rule", where), sp, join(where, "rule")));
        }
        return guarded(path, [&] { return Rule::piecewise(sp, std::move(pieces)); });
    }
    fail(join(path, "type"), "unknown rule '" + type + "' (affine, coordinatewise, piecewise)");
}

ContractionMap Reader::map(const json& j, const MultiMetricSpace& sp, const std::string& path) const
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    std::optional<double> claimed;
    if (j.contains("claimed_alpha")) {
        claimed = real(j["claimed_alpha"], join(path, "claimed_alpha"));
    }
    if (j.contains("rule")) {
        allow_only(j, {"rule", "claimed_alpha"}, path);
        auto r = rule(j["rule"], sp, join(path, "rule"));
        return guarded(join(path, "claimed_alpha"), [&] { return ContractionMap(r, claimed); });
    }
    json body = j;
    body.erase("claimed_alpha");
    auto r = rule(body, sp, path);
    return guarded(join(path, "claimed_alpha"), [&] { return ContractionMap(r, claimed); });
}

SequenceSample Reader::sequence(const json& j, const MultiMetricSpace& sp,
                                const std::string& path) const
{
    if (j.contains("points")) {
        allow_only(j, {"points"}, path);
        const auto& list = j["points"];
        if (!list.is_array() || list.size() < 2) {
            fail(join(path, "points"), "expected an array of at least 2 points");
        }
        std::vector<Point> points;
        for (std::size_t i = 0; i < list.size(); ++i) {
            points.push_back(point(list[i], sp.dimension(), index(join(path, "points"), i)));
        }
        return SequenceSample::explicit_points(std::move(points));
    }
    allow_only(j, {"map", "start", "length"}, path);
    auto m = map(require(j, "map", path), sp, join(path, "map"));
    auto start = point(require(j, "start", path), sp.dimension(), join(path, "start"));
    const auto length = count(require(j, "length", path), join(path, "length"));
    if (length < 2) {
        fail(join(path, "length"), "must be at least 2");
    }
    return SequenceSample::iterated(std::move(m), std::move(start), length);
}

ScenarioKind parse_kind(const Reader& reader, const json& j)
{
    const auto name = reader.string(reader.require(j, "kind", ""), "kind");
    for (auto k : {ScenarioKind::Axioms, ScenarioKind::Sequence, ScenarioKind::Cauchy,
                   ScenarioKind::Solve, ScenarioKind::Banach, ScenarioKind::Ellipse,
                   ScenarioKind::NestedDisks}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    reader.fail("kind", "unknown kind '" + name +
                            "' (axioms, sequence, cauchy, solve, banach, ellipse, nested-disks)");
}

Scenario parse_document(const Reader& rd, const json& doc, const ScenarioOverrides& overrides)
{
    if (!doc.is_object()) {
        rd.fail("", "scenario must be a JSON object");
    }
    const ScenarioKind kind = parse_kind(rd, doc);

    auto tolerance_or = [&](const char* key, double fallback) {
        double t = doc.contains(key) ? rd.positive(doc[key], key) : fallback;
        if (overrides.tolerance) {
            t = *overrides.tolerance;
        }
        if (!(t > 0.0) || !std::isfinite(t)) {
            rd.fail(key, "tolerance must be > 0");
        }
        return t;
    };
    auto count_or = [&](const char* key, std::size_t fallback) {
        return doc.contains(key) ? rd.count(doc[key], key) : fallback;
    };

    std::uint64_t seed = doc.contains("seed") ? rd.count(doc["seed"], "seed") : kDefaultSeed;
    if (overrides.seed) {
        seed = *overrides.seed;
    }

    std::optional<MultiMetricSpace> space;
    if (doc.contains("space")) {
        space = rd.space(doc["space"], "space");
    }
    auto need_space = [&]() -> const MultiMetricSpace& {
        if (!space) {
            rd.require(doc, "space", "");
        }
        return *space;
    };

    switch (kind) {
    case ScenarioKind::Axioms: {
        rd.allow_only(doc, {"kind", "seed", "space", "metric", "dimension", "samples", "tolerance"},
                      "");
        auto metric = rd.metric(rd.require(doc, "metric", ""), "metric");
        std::size_t dimension = 0;
        if (doc.contains("dimension")) {
            dimension = rd.count(doc["dimension"], "dimension");
        } else if (space) {
            dimension = space->dimension();
        } else if (auto d = metric.dimension()) {
            dimension = *d;
        } else {
            rd.fail("dimension", "missing required field");
        }
        if (dimension < 1) {
            rd.fail("dimension", "must be at least 1");
        }
        if (auto d = metric.dimension(); d && *d != dimension) {
            rd.fail("metric", "metric has dimension " + std::to_string(*d) +
                                  ", scenario dimension is " + std::to_string(dimension));
        }
        const auto samples = count_or("samples", 10000);
        if (samples < 1) {
            rd.fail("samples", "must be at least 1");
        }
        return {kind, seed, space,
                AxiomsPayload{std::move(metric), dimension, samples, tolerance_or("tolerance", 1e-9)}};
    }
    case ScenarioKind::Sequence:
    case ScenarioKind::Cauchy: {
        rd.allow_only(doc, {"kind", "seed", "space", "sequence", "tail_window", "tolerance"}, "");
        const auto& sp = need_space();
        auto seq = rd.sequence(rd.require(doc, "sequence", ""), sp, "sequence");
        const auto window = count_or("tail_window", kDefaultTailWindow);
        if (window < 2) {
            rd.fail("tail_window", "must be at least 2");
        }
        return {kind, seed, space,
                SequencePayload{std::move(seq), window,
                                tolerance_or("tolerance", kDefaultSequenceTolerance)}};
    }
    case ScenarioKind::Solve:
    case ScenarioKind::Banach: {
        rd.allow_only(doc, {"kind", "seed", "space", "map", "tolerance", "max_iterations",
                            "dedup_tolerance", "samples_per_component"},
                      "");
        const auto& sp = need_space();
        if (kind == ScenarioKind::Banach && sp.size() != 1) {
            rd.fail("space.components", "banach scenarios take exactly one component");
        }
        auto m = rd.map(rd.require(doc, "map", ""), sp, "map");
        if (m.dimension() != sp.dimension()) {
            rd.fail("map", "map dimension does not match the space");
        }
        SolveOptions options;
        options.tolerance = tolerance_or("tolerance", options.tolerance);
        options.max_iterations = count_or("max_iterations", options.max_iterations);
        if (options.max_iterations < 1) {
            rd.fail("max_iterations", "must be at least 1");
        }
        options.dedup_tolerance = doc.contains("dedup_tolerance")
                                      ? rd.positive(doc["dedup_tolerance"], "dedup_tolerance")
                                      : options.dedup_tolerance;
        options.samples_per_component =
            count_or("samples_per_component", options.samples_per_component);
        if (options.samples_per_component < 2) {
            rd.fail("samples_per_component", "must be at least 2");
        }
        options.seed = seed;
        return {kind, seed, space, SolvePayload{std::move(m), options}};
    }
    case ScenarioKind::Ellipse: {
        rd.allow_only(doc, {"kind", "seed", "a", "b", "samples", "r"}, "");
        EllipsePayload p{rd.positive(rd.require(doc, "a", ""), "a"),
                         rd.positive(rd.require(doc, "b", ""), "b")};
        p.samples = count_or("samples", p.samples);
        if (p.samples < 4) {
            rd.fail("samples", "must be at least 4");
        }
        if (doc.contains("r")) {
            p.r = rd.positive(doc["r"], "r");
        }
        return {kind, seed, space, p};
    }
    case ScenarioKind::NestedDisks: {
        rd.allow_only(doc, {"kind", "seed", "space", "disks"}, "");
        const auto& sp = need_space();
        const auto& list = rd.require(doc, "disks", "");
        if (!list.is_array() || list.size() < 2) {
            rd.fail("disks", "expected an array of at least 2 disks");
        }
        DisksPayload p;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto where = Reader::index("disks", i);
            rd.allow_only(list[i], {"center", "radius"}, where);
            DiskSpec disk{rd.point(rd.require(list[i], "center", where), sp.dimension(),
                                   Reader::join(where, "center")),
                          rd.positive(rd.require(list[i], "radius", where),
                                      Reader::join(where, "radius"))};
            rd.guarded(where, [&] {
                check_disk(sp, disk);
                return 0;
            });
            p.disks.push_back(std::move(disk));
        }
        return {kind, seed, space, std::move(p)};
    }
    }
    rd.fail("kind", "unhandled kind");
}

} // namespace

Scenario parse_scenario(const std::string& text, const ScenarioOverrides& overrides)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto byte = std::min<std::size_t>(e.byte, text.size());
        const auto line =
            1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
        throw ScenarioError("", line, std::string("malformed JSON: ") + e.what());
    }
    return parse_document(Reader(text), doc, overrides);
}

Scenario load_scenario(const std::filesystem::path& path, const ScenarioOverrides& overrides)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ScenarioError("", 0, "cannot open scenario file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), overrides);
}

Metric parse_metric(const json& j, const std::string& path) { return Reader().metric(j, path); }

Combinator parse_combinator(const json& j, const std::string& path)
{
    return Reader().combinator(j, path);
}

Region parse_region(const json& j, std::size_t dimension, const std::string& path)
{
    return Reader().region(j, dimension, path);
}

MultiMetricSpace parse_space(const json& j, const std::string& path)
{
    return Reader().space(j, path);
}

ContractionMap parse_map(const json& j, const MultiMetricSpace& space, const std::string& path)
{
    return Reader().map(j, space, path);
}

} // namespace polymetric
