#include "bihsphere/jet.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

using namespace bihsphere;

namespace {

bool jets_close(const Jet& a, const Jet& b, double tol = 1e-14) {
    if (a.num_vars() != b.num_vars() || a.order() != b.order()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (std::abs(a.coeffs()[i] - b.coeffs()[i]) > tol) return false;
    return true;
}

// Independent polynomial oracle: exact symbolic differentiation of integer-
// coefficient polynomials, evaluated at integer points. Everything stays in
// exactly representable doubles.
struct Poly {
    std::map<MultiIndex, double> terms;

    static Poly var(int i) {
        Poly p;
        MultiIndex a{};
        a[i] = 1;
        p.terms[a] = 1.0;
        return p;
    }
    static Poly constant(double c) {
        Poly p;
        p.terms[MultiIndex{}] = c;
        return p;
    }
    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (auto& [a, c] : o.terms) r.terms[a] += c;
        return r;
    }
    Poly operator*(const Poly& o) const {
        Poly r;
        for (auto& [a, ca] : terms)
            for (auto& [b, cb] : o.terms) {
                MultiIndex s{};
                for (int v = 0; v < kMaxVars; ++v) s[v] = a[v] + b[v];
                r.terms[s] += ca * cb;
            }
        return r;
    }
    Poly derive(int i) const {
        Poly r;
        for (auto& [a, c] : terms) {
            if (a[i] == 0) continue;
            MultiIndex d = a;
            d[i] -= 1;
            r.terms[d] += c * a[i];
        }
        return r;
    }
    double eval(const std::vector<double>& x) const {
        double s = 0.0;
        for (auto& [a, c] : terms) {
            double t = c;
            for (int v = 0; v < kMaxVars; ++v)
                for (int k = 0; k < a[v]; ++k) t *= x[v];
            s += t;
        }
        return s;
    }
    double partial(MultiIndex alpha, const std::vector<double>& x) const {
        Poly p = *this;
        for (int v = 0; v < kMaxVars; ++v)
            for (int k = 0; k < alpha[v]; ++k) p = p.derive(v);
        return p.eval(x);
    }
};

}  // namespace

TEST_CASE("coordinate jets") {
    Jet u = Jet::variable(0, 2.0, 1, 2);
    CHECK(u.coeffs() == std::vector<double>{2.0, 1.0, 0.0});

    Jet v = Jet::variable(1, 0.0, 2, 1);
    CHECK(v.value() == 0.0);
    MultiIndex e0{}, e1{};
    e0[0] = 1;
    e1[1] = 1;
    CHECK(v.coeff(e1) == 1.0);
    CHECK(v.coeff(e0) == 0.0);

    Jet w = Jet::variable(0, M_PI, 1, 0);
    CHECK(w.size() == 1);
    CHECK(w.value() == M_PI);

    CHECK_THROWS_AS(Jet::variable(2, 0.0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(Jet::variable(-1, 0.0, 2, 1), std::invalid_argument);
}

TEST_CASE("multiplication is the truncated Cauchy product") {
    Jet u = Jet::variable(0, 2.0, 1, 2);
    Jet sq = u * u;
    CHECK(sq.coeffs() == std::vector<double>{4.0, 4.0, 1.0});

    Jet one = Jet::constant(1.0, 1, 2);
    CHECK(jets_close(sq * one, sq, 0.0));

    // (1+u)(1-u) at u = 0
    Jet x = Jet::variable(0, 0.0, 1, 2);
    Jet prod = (1.0 + x) * (1.0 - x);
    CHECK(prod.coeffs() == std::vector<double>{1.0, 0.0, -1.0});

    Jet other = Jet::variable(0, 1.0, 2, 2);
    CHECK_THROWS_AS((void)(u * other), std::invalid_argument);
}

TEST_CASE("mixed orders truncate to the lower order") {
    Jet a = Jet::variable(0, 1.0, 1, 4);
    Jet b = Jet::variable(0, 1.0, 1, 2);
    CHECK((a * b).order() == 2);
    CHECK((a + b).order() == 2);
}

TEST_CASE("elementary functions") {
    Jet x = Jet::variable(0, 0.0, 1, 4);
    Jet s = sin(x);
    CHECK(s.coeffs()[0] == 0.0);
    CHECK(s.coeffs()[1] == 1.0);
    CHECK(s.coeffs()[2] == 0.0);
    CHECK(s.coeffs()[3] == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    CHECK(s.coeffs()[4] == 0.0);

    Jet c = Jet::constant(1.5, 1, 3);
    Jet ec = exp(c);
    CHECK(ec.value() == doctest::Approx(std::exp(1.5)));
    for (int i = 1; i < ec.size(); ++i) CHECK(ec.coeffs()[i] == 0.0);

    // sqrt of (2+u)^2 recovers 2+u; verified by squaring in jet arithmetic.
    Jet u = Jet::variable(0, 2.0, 1, 2);
    Jet r = sqrt(u * u);
    CHECK(jets_close(r, u, 1e-14));
    CHECK(jets_close(r * r, u * u, 1e-13));

    CHECK_THROWS_AS(sqrt(Jet::constant(-1.0, 1, 2)), std::domain_error);
    CHECK_THROWS_AS(log(Jet::constant(0.0, 1, 2)), std::domain_error);
    CHECK_THROWS_AS(recip(Jet::constant(0.0, 1, 2)), std::domain_error);
}

TEST_CASE("derive") {
    Jet sq = Jet::variable(0, 2.0, 1, 2);
    sq = sq * sq;  // [4,4,1]
    Jet d = sq.derive(0);
    CHECK(d.coeffs() == std::vector<double>{4.0, 2.0});

    Jet s = sin(Jet::variable(0, 0.0, 1, 4)).derive(0);
    CHECK(s.order() == 3);
    CHECK(s.coeffs()[0] == doctest::Approx(1.0));
    CHECK(s.coeffs()[2] == doctest::Approx(-0.5));

    // Two derivatives of u^2 leave the constant 2.
    CHECK(sq.derive(0).derive(0).value() == 2.0);

    CHECK_THROWS_AS(Jet::constant(1.0, 1, 0).derive(0), std::invalid_argument);
}

TEST_CASE("extract partial derivatives") {
    Jet sq = Jet::variable(0, 2.0, 1, 2);
    sq = sq * sq;
    MultiIndex two{};
    two[0] = 2;
    CHECK(sq.partial(two) == 2.0);
    CHECK(sq.partial(MultiIndex{}) == 4.0);

    Jet s = sin(Jet::variable(0, 0.0, 1, 3));
    MultiIndex three{};
    three[0] = 3;
    CHECK(s.partial(three) == doctest::Approx(-1.0).epsilon(1e-15));

    MultiIndex too_deep{};
    too_deep[0] = 4;
    CHECK_THROWS_AS(s.partial(too_deep), std::invalid_argument);
}

TEST_CASE("product rule holds coefficient-wise") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int rep = 0; rep < 50; ++rep) {
        const int nv = 1 + rep % 3;
        Jet a = Jet::constant(coef(rng), nv, 4);
        Jet b = Jet::constant(coef(rng), nv, 4);
        for (int v = 0; v < nv; ++v) {
            a = a + coef(rng) * Jet::variable(v, coef(rng), nv, 4) *
                        Jet::variable(v, coef(rng), nv, 4);
            b = b + coef(rng) * Jet::variable(v, coef(rng), nv, 4);
        }
        for (int v = 0; v < nv; ++v) {
            Jet lhs = (a * b).derive(v);
            Jet rhs = a.derive(v) * b.truncated(3) + a.truncated(3) * b.derive(v);
            CHECK(jets_close(lhs, rhs, 0.0));  // integer arithmetic: exact
        }
    }
}

TEST_CASE("chain rule via the circle identity") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    for (int rep = 0; rep < 40; ++rep) {
        const int nv = 1 + rep % 3;
        Jet a = Jet::constant(val(rng), nv, 4);
        for (int v = 0; v < nv; ++v) a = a + val(rng) * Jet::variable(v, val(rng), nv, 4);
        a = a + 0.25 * a * a;
        Jet identity = sin(a) * sin(a) + cos(a) * cos(a);
        Jet one = Jet::constant(1.0, nv, 4);
        CHECK(jets_close(identity, one, 1e-12));
    }
}

TEST_CASE("polynomial derivatives match a symbolic oracle exactly") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> pt(-2, 2);
    std::uniform_int_distribution<int> mono(0, 3);

    for (int rep = 0; rep < 60; ++rep) {
        const int nv = 1 + rep % 3;
        std::vector<double> x(kMaxVars, 0.0);
        for (int v = 0; v < nv; ++v) x[v] = pt(rng);

        // Random polynomial of total degree <= 4 as both a Poly and a Jet.
        Poly p = Poly::constant(coef(rng));
        Jet j = Jet::constant(p.terms[MultiIndex{}], nv, 4);
        for (int t = 0; t < 5; ++t) {
            int c = coef(rng);
            Poly term = Poly::constant(c);
            Jet jterm = Jet::constant(c, nv, 4);
            int degree_left = 4;
            while (degree_left > 0 && mono(rng) > 0) {
                int v = mono(rng) % nv;
                term = term * Poly::var(v);
                jterm = jterm * Jet::variable(v, x[v], nv, 4);
                --degree_left;
            }
            p = p + term;
            j = j + jterm;
        }

        std::vector<double> xv(x.begin(), x.end());
        for (const MultiIndex& alpha : jet_slots(nv, 4)) {
            CHECK(j.partial(alpha) == p.partial(alpha, xv));  // exact
        }
    }
}
