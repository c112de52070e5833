#include "bihsphere/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace bihsphere {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

// Unit-sphere factor of intrinsic dimension k, scaled by `radius`, written
// over the given parameter names (azimuthal angle first, then polar angles).
std::vector<std::string> sphere_factor(int k, double radius,
                                       const std::vector<std::string>& names) {
    const std::string r = num(radius);
    if (k == 1) return {r + "*cos(" + names[0] + ")", r + "*sin(" + names[0] + ")"};
    if (k == 2) {
        const std::string &u = names[0], &v = names[1];
        return {r + "*sin(" + v + ")*cos(" + u + ")", r + "*sin(" + v + ")*sin(" + u + ")",
                r + "*cos(" + v + ")"};
    }
    if (k == 3) {
        const std::string &u = names[0], &v1 = names[1], &v2 = names[2];
        return {r + "*sin(" + v2 + ")*sin(" + v1 + ")*cos(" + u + ")",
                r + "*sin(" + v2 + ")*sin(" + v1 + ")*sin(" + u + ")",
                r + "*sin(" + v2 + ")*cos(" + v1 + ")", r + "*cos(" + v2 + ")"};
    }
    throw std::invalid_argument("sphere factor: unsupported dimension " + std::to_string(k));
}

// Angular domains for one sphere factor: azimuth periodic, polar in (0, pi).
std::vector<AxisDomain> sphere_domains(int k) {
    std::vector<AxisDomain> d;
    d.push_back({0.0, kTwoPi, kTwoPi});
    for (int i = 1; i < k; ++i) d.push_back({0.0, std::numbers::pi, std::nullopt});
    return d;
}

}  // namespace

CatalogEntry make_hypersphere(int m, double a) {
    if (m != 2 && m != 3)
        throw std::invalid_argument("hypersphere: m must be 2 or 3, got " + std::to_string(m));
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("hypersphere: a must be in (0, 1]");
    const double b = std::sqrt(1.0 - a * a);

    std::vector<std::string> params =
        m == 2 ? std::vector<std::string>{"u", "v"} : std::vector<std::string>{"u", "v1", "v2"};
    std::vector<std::string> comps = sphere_factor(m, a, params);
    comps.push_back(num(b));
    std::vector<AxisDomain> domain = sphere_domains(m);

    CatalogEntry e;
    char label[64];
    std::snprintf(label, sizeof(label), "hypersphere(m=%d, a=%.6g)", m, a);
    e.name = label;
    e.component_sources = comps;
    e.spec = make_immersion(e.name, params, comps, domain);
    e.expected.H_norm = b / a;
    e.expected.A2 = m * b * b / (a * a);
    e.expected.scalar = m * (m - 1) / (a * a);
    e.expected.lambda_p = m / (a * a);  // 1-type: round sphere offset from the origin
    e.expected.com_norm = b;
    e.expected.parallel_H = true;
    e.expected.pseudo_umbilical = true;
    e.expected.mass_symmetric = false;
    e.expected.proper_biharmonic = near(a, kInvSqrt2);
    if (e.expected.proper_biharmonic) e.expected.order = std::pair{1, 1};
    return e;
}

CatalogEntry make_clifford(int m1, int m2, double a1) {
    if (m1 < 1 || m2 < 1 || m1 + m2 > 3)
        throw std::invalid_argument("clifford: need m1, m2 >= 1 with m1 + m2 <= 3");
    if (!(a1 > 0.0 && a1 < 1.0)) throw std::invalid_argument("clifford: a1 must be in (0, 1)");
    const double a2 = std::sqrt(1.0 - a1 * a1);
    const int m = m1 + m2;

    static const char* kNames[3] = {"u", "v", "w"};
    std::vector<std::string> p1(kNames, kNames + m1);
    std::vector<std::string> p2(kNames + m1, kNames + m);
    std::vector<std::string> comps = sphere_factor(m1, a1, p1);
    for (auto& c : sphere_factor(m2, a2, p2)) comps.push_back(c);
    std::vector<AxisDomain> domain = sphere_domains(m1);
    for (auto& d : sphere_domains(m2)) domain.push_back(d);
    std::vector<std::string> params = p1;
    params.insert(params.end(), p2.begin(), p2.end());

    CatalogEntry e;
    char label[64];
    std::snprintf(label, sizeof(label), "clifford(%d, %d, a1=%.6g)", m1, m2, a1);
    e.name = label;
    e.component_sources = comps;
    e.spec = make_immersion(e.name, params, comps, domain);

    const double H = std::abs(a2 * a2 * m1 - a1 * a1 * m2) / (a1 * a2 * m);
    e.expected.H_norm = H;
    e.expected.A2 = (a2 / a1) * (a2 / a1) * m1 + (a1 / a2) * (a1 / a2) * m2;
    e.expected.scalar = m1 * (m1 - 1) / (a1 * a1) + m2 * (m2 - 1) / (a2 * a2);
    const double mu1 = m1 / (a1 * a1), mu2 = m2 / (a2 * a2);
    e.expected.lambda_p = std::min(mu1, mu2);
    if (!near(mu1, mu2)) e.expected.lambda_q = std::max(mu1, mu2);
    e.expected.com_norm = 0.0;
    e.expected.parallel_H = true;
    e.expected.pseudo_umbilical = near(H, 0.0);  // only vacuously, when minimal
    e.expected.mass_symmetric = true;
    e.expected.proper_biharmonic = near(a1, kInvSqrt2) && m1 != m2;
    if (e.expected.proper_biharmonic && std::max(m1, m2) <= 2 * (std::min(m1, m2) + 1))
        e.expected.order = std::pair{1, 2};
    if (m1 == m2 && near(a1, a2)) {
        // Square flat torus: exact rectangular lattice available.
        std::vector<double> periods;
        for (int i = 0; i < m1; ++i) periods.push_back(kTwoPi * a1);
        for (int i = 0; i < m2; ++i) periods.push_back(kTwoPi * a2);
        e.expected.lattice_periods = periods;
    }
    return e;
}

CatalogEntry make_legendre_torus() {
    const std::string s = "(1/sqrt(2))";
    std::vector<std::string> comps = {
        s + "*cos(u)",
        s + "*sin(u)",
        s + "*sin(u)*sin(sqrt(2)*v)",
        s + "*cos(u)*sin(sqrt(2)*v)",
        s + "*sin(u)*cos(sqrt(2)*v)",
        s + "*cos(u)*cos(sqrt(2)*v)",
    };
    const double v_period = std::numbers::pi * std::sqrt(2.0);
    CatalogEntry e;
    e.name = "legendre_torus";
    e.component_sources = comps;
    e.spec = make_immersion(e.name, {"u", "v"}, comps,
                            {{0.0, kTwoPi, kTwoPi}, {0.0, v_period, v_period}});
    e.expected.H_norm = 0.5;
    e.expected.scalar = 0.0;
    e.expected.lambda_p = 1.0;
    e.expected.lambda_q = 3.0;
    e.expected.com_norm = 0.0;
    e.expected.parallel_H = false;
    e.expected.pseudo_umbilical = false;
    e.expected.mass_symmetric = true;
    e.expected.proper_biharmonic = true;
    e.expected.order = std::pair{1, 3};
    e.expected.lattice_periods = std::vector<double>{kTwoPi, v_period};
    return e;
}

CatalogEntry make_anti_invariant_torus() {
    const std::string s = "(1/sqrt(2))";
    std::vector<std::string> comps = {
        s + "*cos(u+w)",
        s + "*sin(u+w)",
        s + "*sin(u-w)*sin(sqrt(2)*v)",
        s + "*cos(u-w)*sin(sqrt(2)*v)",
        s + "*sin(u-w)*cos(sqrt(2)*v)",
        s + "*cos(u-w)*cos(sqrt(2)*v)",
    };
    const double v_period = std::numbers::pi * std::sqrt(2.0);
    CatalogEntry e;
    e.name = "anti_invariant_torus";
    e.component_sources = comps;
    e.spec = make_immersion(
        e.name, {"u", "v", "w"}, comps,
        {{0.0, kTwoPi, kTwoPi}, {0.0, v_period, v_period}, {0.0, kTwoPi, kTwoPi}});
    e.expected.H_norm = 1.0 / 3.0;
    e.expected.scalar = 0.0;
    e.expected.lambda_p = 2.0;
    e.expected.lambda_q = 4.0;
    e.expected.com_norm = 0.0;
    e.expected.parallel_H = true;
    e.expected.pseudo_umbilical = false;
    e.expected.mass_symmetric = true;
    e.expected.proper_biharmonic = true;
    e.expected.order = std::pair{2, 4};
    e.expected.lattice_periods = std::vector<double>{kTwoPi, v_period, kTwoPi};
    return e;
}

CatalogEntry make_perturbed_graph() {
    // Latitude-dependent tilt of the biharmonic 2-sphere: alpha(v) = pi/4 +
    // 0.1 cos v. Stays on the unit sphere by construction, but |H| varies
    // with v, so every constant-mean-curvature consequence must fail.
    const std::string alpha = "(" + num(std::numbers::pi / 4.0) + " + 0.1*cos(v))";
    std::vector<std::string> comps = {
        "cos" + alpha + "*sin(v)*cos(u)",
        "cos" + alpha + "*sin(v)*sin(u)",
        "cos" + alpha + "*cos(v)",
        "sin" + alpha,
    };
    CatalogEntry e;
    e.name = "perturbed_graph";
    e.component_sources = comps;
    e.spec = make_immersion(e.name, {"u", "v"}, comps,
                            {{0.0, kTwoPi, kTwoPi}, {0.0, std::numbers::pi, std::nullopt}});
    e.expected.parallel_H = false;
    e.expected.pseudo_umbilical = false;
    e.expected.mass_symmetric = false;
    e.expected.proper_biharmonic = false;
    e.expected.cmc = false;
    return e;
}

CatalogEntry compose_in_next_sphere(const CatalogEntry& entry) {
    CatalogEntry e;
    e.name = entry.name + " in next sphere";
    e.component_sources = entry.component_sources;
    // Insert a zero component before the final offset coordinate: the image
    // now sits inside a great hypersphere of the bigger sphere.
    e.component_sources.insert(e.component_sources.end() - 1, "0");
    e.spec = make_immersion(e.name, entry.spec.params, e.component_sources, entry.spec.domain,
                            entry.spec.closed);
    e.expected = entry.expected;
    e.expected.A2.reset();
    // Minimal in a hypersphere of radius 1/sqrt(2): |H| = 1, pseudo-umbilical,
    // proper biharmonic by the composition property.
    e.expected.H_norm = 1.0;
    e.expected.pseudo_umbilical = true;
    e.expected.parallel_H = true;
    e.expected.proper_biharmonic = true;
    return e;
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {"hypersphere", "clifford", "legendre_torus",
                                                   "anti_invariant_torus", "perturbed_graph"};
    return names;
}

CatalogEntry catalog_entry(const std::string& name, const std::map<std::string, double>& params) {
    auto get = [&](const char* key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    auto allow = [&](std::initializer_list<const char*> keys) {
        for (const auto& [key, value] : params) {
            (void)value;
            bool ok = false;
            for (const char* k : keys)
                if (key == k) ok = true;
            if (!ok)
                throw std::invalid_argument("catalog '" + name + "': unknown parameter '" + key +
                                            "'");
        }
    };
    if (name == "hypersphere") allow({"m", "a"});
    else if (name == "clifford") allow({"m1", "m2", "a"});
    else allow({});
    if (name == "hypersphere")
        return make_hypersphere(static_cast<int>(get("m", 3)), get("a", kInvSqrt2));
    if (name == "clifford")
        return make_clifford(static_cast<int>(get("m1", 1)), static_cast<int>(get("m2", 2)),
                             get("a", kInvSqrt2));
    if (name == "legendre_torus") return make_legendre_torus();
    if (name == "anti_invariant_torus") return make_anti_invariant_torus();
    if (name == "perturbed_graph") return make_perturbed_graph();
    throw std::invalid_argument("catalog: unknown entry '" + name + "'");
}

}  // namespace bihsphere
