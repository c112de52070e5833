#include "bihsphere/config.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "bihsphere/report.hpp"

using namespace bihsphere;
using nlohmann::json;

namespace {

const char* kMinimalDoc = R"(
[immersion]
catalog = "legendre_torus"
)";

const char* kFullDoc = R"(
# verification run for the biharmonic product torus
[immersion]
catalog = "clifford"
params = { m1 = 1, m2 = 2, a = 0.70710678118654752 }
compact = true

[grid]
points_per_dim = 5
boundary_offset = 0.05

[checks]
bitension = true
characterization = true
parallel_identities = true
eigen_identities = true
scalar = true
spectral = true
gates = true

[tolerances]
residual = 1e-8

[output]
format = "json"
)";

// Minimal structural validator for the subset of JSON Schema the shipped
// schema uses: type, properties, required, items, enum.
bool validates(const json& value, const json& schema, std::string* why) {
    if (schema.contains("enum")) {
        for (const auto& v : schema["enum"])
            if (v == value) return true;
        *why = "enum mismatch at " + value.dump();
        return false;
    }
    if (schema.contains("type")) {
        const std::string t = schema["type"];
        const bool ok = (t == "object" && value.is_object()) ||
                        (t == "array" && value.is_array()) ||
                        (t == "string" && value.is_string()) ||
                        (t == "number" && value.is_number()) ||
                        (t == "boolean" && value.is_boolean());
        if (!ok) {
            *why = "expected " + t + ", got " + value.dump().substr(0, 60);
            return false;
        }
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) {
                *why = "missing required key " + key.get<std::string>();
                return false;
            }
    if (schema.contains("properties") && value.is_object())
        for (auto it = value.begin(); it != value.end(); ++it)
            if (schema["properties"].contains(it.key()))
                if (!validates(it.value(), schema["properties"][it.key()], why)) return false;
    if (schema.contains("items") && value.is_array())
        for (const auto& v : value)
            if (!validates(v, schema["items"], why)) return false;
    return true;
}

}  // namespace

TEST_CASE("minimal document uses defaults") {
    RunConfig cfg = load_config(kMinimalDoc);
    REQUIRE(cfg.catalog_name.has_value());
    CHECK(*cfg.catalog_name == "legendre_torus");
    CHECK(cfg.grid.points_per_dim == 9);
    CHECK(cfg.checks.bitension);
    CHECK(cfg.tol.residual == 1e-8);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(load_config("[immersion]\ncatalog = \"legendre_torus\"\n"
                                "[grid]\npoints_per_dim = 1\n"),
                    ConfigError);
    // five components against ambient_dim 6
    CHECK_THROWS_WITH_AS(
        load_config("[immersion]\nparameters = [\"u\", \"v\"]\nambient_dim = 6\n"
                    "components = [\"u\", \"v\", \"u\", \"v\", \"u\"]\n"
                    "domain = [[0, 1], [0, 1]]\n"),
        doctest::Contains("ambient_dim"), ConfigError);
    CHECK_THROWS_WITH_AS(load_config("[immersion]\ncatalog = \"legendre_torus\"\ntypo = 1\n"),
                         doctest::Contains("unknown key"), ConfigError);
    CHECK_THROWS_WITH_AS(load_config("[mystery]\nx = 1\n"), doctest::Contains("unknown section"),
                         ConfigError);
    CHECK_THROWS_AS(load_config("[immersion]\ncatalog = \"legendre_torus\"\n"
                                "[checks]\nbitension = false\ncharacterization = false\n"
                                "parallel_identities = false\neigen_identities = false\nscalar = false\n"
                                "spectral = false\ngates = false\n"),
                    ConfigError);
    CHECK_THROWS_AS(load_config("x = 1\n"), ConfigError);          // key outside a section
    CHECK_THROWS_AS(load_config("[immersion\n"), ConfigError);     // malformed header
    CHECK_THROWS_AS(load_config("[immersion]\ncatalog = \n"), ConfigError);
    // line numbers are reported
    try {
        load_config("[immersion]\ncatalog = \"legendre_torus\"\nbadkey = 3\n");
    } catch (const ConfigError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("document values: strings, bools, arrays, inline tables") {
    ConfigDocument doc = parse_config_document(kFullDoc);
    CHECK(doc.at("immersion").at("catalog").string() == "clifford");
    const ConfigTable& params = doc.at("immersion").at("params").table();
    CHECK(params.at("m1").number() == 1.0);
    CHECK(params.at("a").number() == doctest::Approx(1.0 / std::sqrt(2.0)));
    RunConfig cfg = build_run_config(doc);
    CHECK(cfg.catalog_params.at("m2") == 2.0);
    CHECK(cfg.grid.points_per_dim == 5);
}

TEST_CASE("overrides rewrite document values") {
    ConfigDocument doc = parse_config_document(kMinimalDoc);
    apply_override(doc, "grid.points_per_dim=7");
    apply_override(doc, "output.format=\"text\"");
    RunConfig cfg = build_run_config(doc);
    CHECK(cfg.grid.points_per_dim == 7);
    CHECK(cfg.output.format == OutputFormat::Text);
    CHECK_THROWS_AS(apply_override(doc, "no_dot=3"), ConfigError);
}

TEST_CASE("DSL immersion block round trip") {
    const char* doc = R"cfg(
[immersion]
parameters = ["u", "v"]
ambient_dim = 4
components = ["sin(v)*cos(u)", "sin(v)*sin(u)", "cos(v)", "0"]
domain = [[0, 6.283185307179586], [0, 3.141592653589793]]
periodic = [6.283185307179586, "none"]
)cfg";
    RunConfig cfg = load_config(doc);
    REQUIRE(cfg.dsl.has_value());
    CHECK(cfg.dsl->components.size() == 4);
    CHECK(cfg.dsl->domain[0].period.has_value());
    CHECK_FALSE(cfg.dsl->domain[1].period.has_value());
    RunResult result = run(cfg);
    CHECK(result.exit_code == 0);  // the equator is harmonic, hence biharmonic
}

TEST_CASE("runs are deterministic byte for byte") {
    RunConfig cfg = load_config(kFullDoc);
    cfg.grid.points_per_dim = 5;
    RunResult a = run(cfg);
    RunResult b = run(cfg);
    CHECK(a.rendered == b.rendered);
    CHECK(a.exit_code == 0);
}

TEST_CASE("reports validate against the shipped schema") {
    json schema = json::parse(kReportSchemaJson);

    RunConfig cfg = load_config(kFullDoc);
    cfg.grid.points_per_dim = 5;
    RunResult result = run(cfg);
    std::string why;
    CHECK_MESSAGE(validates(result.report, schema, &why), why);

    // Also a failing run: the perturbed fixture must fail and exit nonzero.
    RunConfig bad = load_config("[immersion]\ncatalog = \"perturbed_graph\"\n");
    bad.grid.points_per_dim = 5;
    RunResult rbad = run(bad);
    CHECK(rbad.exit_code == 1);
    CHECK_MESSAGE(validates(rbad.report, schema, &why), why);

    // The shipped schema file matches the embedded one.
    std::ifstream f(std::string(BIHSPHERE_SOURCE_DIR) + "/share/report.schema.json");
    REQUIRE(f.good());
    json shipped = json::parse(f);
    CHECK(shipped == schema);
}

TEST_CASE("runs abort when too many grid points fail") {
    // Zero boundary offset puts sample rows on the polar-coordinate poles,
    // where the frame is rank-deficient; above 10% failures the run aborts.
    RunConfig cfg = load_config("[immersion]\ncatalog = \"hypersphere\"\n");
    cfg.grid.points_per_dim = 5;
    cfg.grid.boundary_offset = 0.0;
    CHECK_THROWS_AS(run(cfg), NumericalAbort);
}

TEST_CASE("parallel evaluation yields byte-identical reports") {
    RunConfig cfg = load_config(kFullDoc);
    cfg.grid.points_per_dim = 5;
    RunResult serial = run(cfg);
    setenv("BIHSPHERE_THREADS", "4", 1);
    RunResult parallel = run(cfg);
    unsetenv("BIHSPHERE_THREADS");
    CHECK(serial.rendered == parallel.rendered);
}

TEST_CASE("scan CSV has the fixed column order") {
    RunConfig cfg;
    cfg.checks = ChecksConfig{};
    cfg.checks.area_scan = true;
    ScanBlock scan;
    scan.family = "hypersphere";
    scan.m = 2;
    scan.a_min = 0.68;
    scan.a_max = 0.73;
    scan.step = 0.01;
    scan.grid_points = 5;
    cfg.scan = scan;
    RunResult result = run(cfg);
    REQUIRE(result.scan_csv.has_value());
    CHECK(result.scan_csv->rfind("a,residual_normal,residual_tangent,area_II,d_area_II\n", 0) ==
          0);
    // LF-only line endings.
    CHECK(result.scan_csv->find('\r') == std::string::npos);
}

TEST_CASE("catalog expectation blocks drive exit codes") {
    // A fixture whose parallel check is expectedly inapplicable still exits 0.
    RunConfig cfg = load_config("[immersion]\ncatalog = \"legendre_torus\"\n");
    cfg.grid.points_per_dim = 5;
    RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    bool saw_na = false;
    for (const auto& c : r.report["checks"])
        if (c["verdict"] == "not-applicable") saw_na = true;
    CHECK(saw_na);
}
