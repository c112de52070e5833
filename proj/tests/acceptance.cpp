// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fails. Grids stay at or below 33 points per axis; every tolerance is
// pinned in code.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bihsphere/catalog.hpp"
#include "bihsphere/report.hpp"
#include "bihsphere/spectral.hpp"

using namespace bihsphere;

namespace {

const double kA = 1.0 / std::sqrt(2.0);
constexpr double kPi = std::numbers::pi;
const Tolerances kTol;

int g_failures = 0;
std::vector<std::string> g_notes;

void expect(bool ok, const char* what) {
    if (!ok) {
        ++g_failures;
        g_notes.push_back(what);
    }
}

struct Criterion {
    const char* label;
    std::function<void()> body;
};

void run_criterion(int index, const Criterion& c) {
    g_failures = 0;
    g_notes.clear();
    try {
        c.body();
    } catch (const std::exception& e) {
        ++g_failures;
        g_notes.push_back(std::string("exception: ") + e.what());
    }
    std::printf("[%s] criterion %d: %s\n", g_failures == 0 ? "PASS" : "FAIL", index, c.label);
    for (const auto& n : g_notes) std::printf("        - %s\n", n.c_str());
    std::fflush(stdout);
}

double max_over_grid(const ImmersionSpec& spec, const Grid& grid,
                     const std::function<double(const FrameData&)>& fn) {
    double worst = 0.0;
    for (int idx = 0; idx < grid.total_points(); ++idx)
        worst = std::max(worst, fn(frame_at(spec, grid.point(idx), kTol)));
    return worst;
}

// ---- criteria ----

void criterion1_biharmonicity() {
    const std::vector<CatalogEntry> fixtures = {
        make_hypersphere(2, kA),  make_hypersphere(3, kA), make_clifford(1, 2, kA),
        make_legendre_torus(),    make_anti_invariant_torus()};
    for (const auto& e : fixtures) {
        Grid grid = sample_grid(e.spec, 9, 0.05);
        const double t2 = max_over_grid(e.spec, grid,
                                        [](const FrameData& f) { return bitension(f).norm(); });
        expect(t2 < 1e-8, (e.name + ": max |tau_2| < 1e-8").c_str());
        auto reports = check_general(e.spec, grid, kTol);
        expect(reports[0].max_residual < 1e-8, (e.name + ": normal residual < 1e-8").c_str());
        expect(reports[1].max_residual < 1e-8, (e.name + ": tangent residual < 1e-8").c_str());
    }

    // Negative controls: the off-radius 3-sphere has pointwise normal defect
    // exactly 28/9; the off-radius product torus has |tau_2| = 7/432 > 0.01.
    auto off = make_hypersphere(3, 0.6);
    Grid grid = sample_grid(off.spec, 9, 0.05);
    double lo = 1e30, hi = 0.0;
    for (int idx = 0; idx < grid.total_points(); ++idx) {
        FrameData f = frame_at(off.spec, grid.point(idx), kTol);
        const double r = (normal_laplacian_H(f) + trace_B_AH(f) - 3.0 * f.H).norm();
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    expect(std::abs(lo - 28.0 / 9.0) < 1e-6 && std::abs(hi - 28.0 / 9.0) < 1e-6,
           "S^3(0.6): normal residual = 28/9 +- 1e-6 pointwise");

    auto offcl = make_clifford(1, 2, 0.6);
    Grid gridcl = sample_grid(offcl.spec, 9, 0.05);
    const double t2 = max_over_grid(offcl.spec, gridcl,
                                    [](const FrameData& f) { return bitension(f).norm(); });
    expect(t2 > 0.01, "S^1(0.6) x S^2(0.8): |tau_2| > 0.01");
}

void criterion2_invariant_tables() {
    struct Expected {
        CatalogEntry entry;
        double H, A2, s;
        bool check_A2_s;
    };
    std::vector<Expected> table;
    table.push_back({make_hypersphere(3, kA), 1.0, 3.0, 12.0, true});
    table.push_back({make_clifford(1, 2, kA), 1.0 / 3.0, 3.0, 4.0, true});
    table.push_back({make_legendre_torus(), 0.5, 0.0, 0.0, false});
    table.push_back({make_anti_invariant_torus(), 1.0 / 3.0, 0.0, 0.0, false});
    for (const auto& row : table) {
        Grid grid = sample_grid(row.entry.spec, 9, 0.05);
        double worst_H = 0, worst_A2 = 0, worst_s = 0;
        for (int idx = 0; idx < grid.total_points(); ++idx) {
            FrameData f = frame_at(row.entry.spec, grid.point(idx), kTol);
            worst_H = std::max(worst_H, std::abs(f.H_norm - row.H));
            if (row.check_A2_s) {
                worst_A2 = std::max(worst_A2,
                                    std::abs(shape_operator_norms(f).A2 - row.A2));
                worst_s = std::max(worst_s, std::abs(scalar_curvature(f) - row.s));
            }
        }
        expect(worst_H < 1e-8, (row.entry.name + ": |H| within 1e-8").c_str());
        if (row.check_A2_s) {
            expect(worst_A2 < 1e-8, (row.entry.name + ": |A|^2 within 1e-8").c_str());
            expect(worst_s < 1e-8, (row.entry.name + ": s within 1e-8").c_str());
        }
    }
}

void criterion3_spectral() {
    struct Row {
        CatalogEntry entry;
        double lp, lq;
        int grid;
    };
    std::vector<Row> rows;
    rows.push_back({make_clifford(1, 2, kA), 2.0, 4.0, 9});
    rows.push_back({make_legendre_torus(), 1.0, 3.0, 9});
    rows.push_back({make_anti_invariant_torus(), 2.0, 4.0, 9});
    for (const auto& row : rows) {
        SpectralEstimate est =
            chen_fit(row.entry.spec, quadrature_grid(row.entry.spec, row.grid), kTol);
        expect(est.type == ChenType::TwoType, (row.entry.name + ": 2-type").c_str());
        expect(std::abs(est.lambda_p - row.lp) < 1e-7,
               (row.entry.name + ": lambda_p within 1e-7").c_str());
        expect(std::abs(est.lambda_q - row.lq) < 1e-7,
               (row.entry.name + ": lambda_q within 1e-7").c_str());
        expect(est.com_norm < 1e-9, (row.entry.name + ": mass-symmetric |phi0| < 1e-9").c_str());
        // m(1 -/+ |H|) with the expected mean curvature.
        const double m = row.entry.spec.m, H = *row.entry.expected.H_norm;
        expect(std::abs(est.lambda_p - m * (1 - H)) < 1e-7 &&
                   std::abs(est.lambda_q - m * (1 + H)) < 1e-7,
               (row.entry.name + ": eigenvalues match m(1 -/+ |H|)").c_str());
    }

    auto h = make_hypersphere(3, kA);
    SpectralEstimate est = chen_fit(h.spec, quadrature_grid(h.spec, 17), kTol);
    expect(est.type == ChenType::OneType, "S^3(1/sqrt2): 1-type");
    expect(std::abs(est.lambda_p - 6.0) < 1e-7, "S^3(1/sqrt2): lambda = 6");
    expect(std::abs(est.com_norm - kA) < 1e-9, "S^3(1/sqrt2): |phi0| = 1/sqrt(2) +- 1e-9");
}

void criterion4_orders() {
    const std::vector<double> legendre_lattice = {2 * kPi, std::sqrt(2.0) * kPi};
    auto o1 = torus_order(legendre_lattice, 1.0, 3.0);
    expect(o1.first == 1 && o1.second == 3, "legendre torus order [1,3]");

    const std::vector<double> anti_lattice = {2 * kPi, std::sqrt(2.0) * kPi, 2 * kPi};
    auto o2 = torus_order(anti_lattice, 2.0, 4.0);
    expect(o2.first == 2 && o2.second == 4, "anti-invariant torus order [2,4]");

    auto o3 = clifford_order(1, 2);
    expect(o3.has_value() && o3->first == 1 && o3->second == 2,
           "product criterion gives order [1,2] for (1,2)");
}

void criterion5_identities() {
    const std::vector<CatalogEntry> parallel_fixtures = {
        make_hypersphere(2, kA), make_hypersphere(3, kA), make_clifford(1, 2, kA),
        make_anti_invariant_torus()};
    for (const auto& e : parallel_fixtures) {
        Grid grid = sample_grid(e.spec, 7, 0.05);
        auto p31 = check_parallel_identities(e.spec, grid, kTol);
        for (const auto& r : p31)
            expect(r.verdict == Verdict::Pass && r.max_residual < 1e-8,
                   (e.name + ": " + r.name + " < 1e-8").c_str());
        auto p32 = check_eigen_identities(e.spec, grid, kTol);
        for (const auto& r : p32)
            expect(r.verdict == Verdict::Pass && r.max_residual < 1e-8,
                   (e.name + ": " + r.name + " < 1e-8").c_str());
    }

    // Gap bound with equality for the flat 2-torus: lambda_1 = m(1-|H|) = 1.
    auto bounds = spectral_gap_bounds(2, 0.5, kTol);
    const std::vector<double> legendre_lattice = {2 * kPi, std::sqrt(2.0) * kPi};
    auto spectrum = lattice_spectrum(legendre_lattice, 2.0);
    expect(bounds.applicable && !spectrum.empty() &&
               std::abs(spectrum[0] - bounds.lambda1_bound) < 1e-12 &&
               std::abs(spectrum[0] - 1.0) < 1e-12,
           "legendre torus: lambda_1 = m(1-|H|) = 1 with equality");
}

void criterion6_gates() {
    for (int m = 4; m <= 6; ++m) {
        const double bound = double(m - 2) / m;
        for (int k = 1; k <= 10; ++k) {
            const double H = 0.1 * k;
            auto range = mean_range_gate(m, H, 1, true, kTol);
            const bool admissible = range.verdict != RangeVerdict::Excluded;
            const bool should_admit = (H <= bound + 1e-9) || (std::abs(H - 1.0) < 1e-9);
            if (admissible != should_admit) {
                char buf[96];
                std::snprintf(buf, sizeof(buf), "range gate m=%d |H|=%.1f", m, H);
                expect(false, buf);
            }

            const double t = m * H * H - 1.0;
            if (t < -1e-9) continue;
            const double r = 1.0 + t / (m - 1.0);
            auto li = li_gate(m, r, double(m), kTol);
            char buf[96];
            std::snprintf(buf, sizeof(buf), "li gate m=%d |H|=%.1f", m, H);
            if (std::abs(H - 1.0) < 1e-9)
                expect(li.branch == LiBranch::Umbilical, buf);
            else if (std::abs(H - bound) < 1e-9) {
                expect(li.branch == LiBranch::Clifford, buf);
                expect(std::abs(li.c2 - (m - 2.0) / (m * r)) < 1e-12,
                       "clifford branch c^2 = (m-2)/(m r)");
            } else if (H > bound && H < 1.0)
                expect(li.branch == LiBranch::InteriorContradiction, buf);
        }
    }
}

void criterion7_area() {
    // Hypersphere families m = 2 and 3, plus the (1,2) product family; the
    // derivative sign change must bracket 1/sqrt(2) within one 0.01 step.
    ScanFamily hs2{ScanFamily::Hypersphere, 2, 0, 0};
    auto scan2 = area_II_scan(hs2, 0.65, 0.76, 0.01, 17, kTol);
    expect(scan2.critical_found && std::abs(scan2.critical_a - kA) <= 0.01,
           "hypersphere m=2: Area_II critical point at 1/sqrt(2) +- 0.01");
    expect(scan2.biharmonic_matches, "hypersphere m=2: biharmonic radius matches");
    const double v2 = area_II_value(hs2, kA, 33, kTol);
    expect(std::abs(v2 - 2.0 * kPi) < 1e-6, "hypersphere m=2: Area_II(1/sqrt2) = 2 pi +- 1e-6");

    ScanFamily hs3{ScanFamily::Hypersphere, 3, 0, 0};
    auto scan3 = area_II_scan(hs3, 0.65, 0.76, 0.01, 9, kTol);
    expect(scan3.critical_found && std::abs(scan3.critical_a - kA) <= 0.01,
           "hypersphere m=3: Area_II critical point at 1/sqrt(2) +- 0.01");
    // Closed form: Vol(S^3(1)) (a b)^{3/2} = 2 pi^2 / (2 sqrt 2). Seventeen
    // Gauss-Legendre nodes per axis already integrate this analytic
    // integrand to machine precision while staying clear of the poles.
    const double v3 = area_II_value(hs3, kA, 17, kTol);
    expect(std::abs(v3 - 2.0 * kPi * kPi * std::pow(0.5, 1.5)) < 1e-6,
           "hypersphere m=3: Area_II(1/sqrt2) matches the closed form +- 1e-6");

    ScanFamily cl{ScanFamily::Clifford, 0, 1, 2};
    auto scancl = area_II_scan(cl, 0.65, 0.76, 0.01, 9, kTol);
    expect(scancl.critical_found && std::abs(scancl.critical_a - kA) <= 0.01,
           "clifford (1,2): Area_II critical point at 1/sqrt(2) +- 0.01");
    const double vcl = area_II_value(cl, kA, 17, kTol);
    // Vol(S^1(1)) Vol(S^2(1)) (a1 a2)^{3/2} = 8 pi^2 (1/2)^{3/2}.
    expect(std::abs(vcl - 8.0 * kPi * kPi * std::pow(0.5, 1.5)) < 1e-6,
           "clifford (1,2): Area_II(1/sqrt2) matches the closed form +- 1e-6");

    // Joint verdicts: the biharmonic residual minimum sits at the same
    // bracket for each family.
    expect(scan3.biharmonic_matches && scancl.biharmonic_matches,
           "families: II-minimality and biharmonicity pick the same radius");
}

void criterion8_property_suites() {
    // Jet product rule on integer jets: exact.
    {
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> coef(-3, 3);
        bool exact = true;
        for (int rep = 0; rep < 30 && exact; ++rep) {
            const int nv = 1 + rep % 3;
            Jet a = Jet::constant(coef(rng), nv, 4);
            Jet b = Jet::constant(coef(rng), nv, 4);
            for (int v = 0; v < nv; ++v) {
                a = a + coef(rng) * Jet::variable(v, coef(rng), nv, 4);
                b = b + coef(rng) * Jet::variable(v, coef(rng), nv, 4) *
                            Jet::variable(v, coef(rng), nv, 4);
            }
            for (int v = 0; v < nv; ++v) {
                Jet lhs = (a * b).derive(v);
                Jet rhs = a.derive(v) * b.truncated(3) + a.truncated(3) * b.derive(v);
                for (int i = 0; i < lhs.size(); ++i)
                    if (lhs.coeffs()[i] != rhs.coeffs()[i]) exact = false;
            }
        }
        expect(exact, "jet product rule exact on integer jets");
    }
    // Chain rule: sin^2 + cos^2 = 1 to machine precision.
    {
        std::mt19937 rng(100);
        std::uniform_real_distribution<double> val(-2.0, 2.0);
        double worst = 0.0;
        for (int rep = 0; rep < 30; ++rep) {
            const int nv = 1 + rep % 3;
            Jet a = Jet::constant(val(rng), nv, 4);
            for (int v = 0; v < nv; ++v) a = a + val(rng) * Jet::variable(v, val(rng), nv, 4);
            Jet id = sin(a) * sin(a) + cos(a) * cos(a);
            for (int i = 0; i < id.size(); ++i)
                worst = std::max(worst, std::abs(id.coeffs()[i] - (i == 0 ? 1.0 : 0.0)));
        }
        expect(worst < 1e-12, "jet chain rule (circle identity) at machine precision");
    }
    // Polynomial oracle equivalence, exact: done exhaustively in the unit
    // suite; spot-check one instance here.
    {
        Jet x = Jet::variable(0, 2.0, 2, 4);
        Jet y = Jet::variable(1, -1.0, 2, 4);
        Jet p = 3.0 * x * x * y - 2.0 * y * y + x;
        MultiIndex a{};
        a[0] = 2;
        a[1] = 1;
        expect(p.partial(a) == 6.0, "polynomial partial d^3/dx^2 dy exact");
    }
    // DSL round trip.
    {
        const std::vector<std::string> params = {"u", "v"};
        const std::string src = "-(1/sqrt(2))*cos(u)^2 + sin(sqrt(2)*v)/(1 + u^2) - pi";
        auto ast = parse_expression(src, params);
        auto back = parse_expression(to_string(ast), params);
        expect(expr_equal(*ast, *back), "DSL pretty-print round trip");
    }
    // Determinism of reports.
    {
        RunConfig cfg = load_config("[immersion]\ncatalog = \"clifford\"\n");
        cfg.grid.points_per_dim = 5;
        RunResult r1 = run(cfg);
        RunResult r2 = run(cfg);
        expect(r1.rendered == r2.rendered && r1.exit_code == 0,
               "byte-identical reports across runs");
    }
    // Grid-refinement stability of the spectral fit.
    {
        auto lt = make_legendre_torus();
        SpectralEstimate coarse = chen_fit(lt.spec, quadrature_grid(lt.spec, 9), kTol);
        SpectralEstimate fine = chen_fit(lt.spec, quadrature_grid(lt.spec, 17), kTol);
        expect(std::abs(coarse.lambda_p - fine.lambda_p) < 1e-9 &&
                   std::abs(coarse.lambda_q - fine.lambda_q) < 1e-9,
               "chen_fit stable under 9 -> 17 grid refinement (1e-9)");
    }
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"biharmonicity of the example families (9-per-axis grids, residuals < 1e-8; "
         "negative controls 28/9 and |tau_2| > 0.01)",
         criterion1_biharmonicity},
        {"invariant tables (|H|, |A|^2, s) within 1e-8", criterion2_invariant_tables},
        {"spectral fits: (2,4), (1,3), (2,4) within 1e-7; 1-type lambda = 6, "
         "|phi0| = 1/sqrt(2) +- 1e-9; mass-symmetry < 1e-9",
         criterion3_spectral},
        {"orders [1,3], [2,4] exactly; product criterion [1,2]", criterion4_orders},
        {"parallel-H identities < 1e-8; gap bound with equality for the flat 2-torus",
         criterion5_identities},
        {"mean-curvature range and pinching gate trichotomy for m = 4,5,6",
         criterion6_gates},
        {"Area_II scans: critical radius 1/sqrt(2) +- 0.01, quadrature matches closed "
         "forms +- 1e-6, joint verdicts",
         criterion7_area},
        {"property suites: jet rules, polynomial oracle, DSL round trip, determinism, "
         "grid-refinement stability",
         criterion8_property_suites},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        run_criterion(static_cast<int>(i) + 1, criteria[i]);
        failures += g_failures;
    }
    if (failures > 0) {
        std::printf("ACCEPTANCE: FAILED (%d failing assertion%s)\n", failures,
                    failures == 1 ? "" : "s");
        return 1;
    }
    std::printf("ACCEPTANCE: PASSED (8/8 criteria)\n");
    return 0;
}
