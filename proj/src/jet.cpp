#include "bihsphere/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>

namespace bihsphere {

namespace {

void check_shape(int num_vars, int order) {
    if (num_vars < 1 || num_vars > kMaxVars)
        throw std::invalid_argument("jet: num_vars must be in 1.." + std::to_string(kMaxVars) +
                                    ", got " + std::to_string(num_vars));
    if (order < 0 || order > kMaxOrder)
        throw std::invalid_argument("jet: order must be in 0.." + std::to_string(kMaxOrder) +
                                    ", got " + std::to_string(order));
}

// Dense lookup key for a multi-index: digits base (kMaxOrder+1).
int alpha_key(const MultiIndex& a) {
    int key = 0;
    for (int i = kMaxVars - 1; i >= 0; --i) key = key * (kMaxOrder + 1) + a[i];
    return key;
}

constexpr int kKeySpace = 5 * 5 * 5 * 5;  // (kMaxOrder+1)^kMaxVars

struct Layout {
    int num_vars = 0, order = 0;
    std::vector<MultiIndex> alphas;            // graded-lex storage order
    std::array<int, kKeySpace> index{};        // alpha_key -> slot, -1 if absent
    std::vector<std::array<int, 3>> products;  // (i, j, k): out[k] += a[i]*b[j]
};

Layout build_layout(int num_vars, int order) {
    Layout L;
    L.num_vars = num_vars;
    L.order = order;
    // Enumerate all alphas with |alpha| <= order, grade-major so that the
    // layout of a lower order is a prefix of the higher one.
    std::vector<MultiIndex> all;
    MultiIndex a{};
    // Odometer over [0..order]^num_vars, then filter and sort.
    while (true) {
        if (degree(a) <= order) all.push_back(a);
        int i = 0;
        for (; i < num_vars; ++i) {
            if (++a[i] <= order) break;
            a[i] = 0;
        }
        if (i == num_vars) break;
    }
    std::sort(all.begin(), all.end(), [](const MultiIndex& x, const MultiIndex& y) {
        if (degree(x) != degree(y)) return degree(x) < degree(y);
        return x > y;  // lexicographic, leading variable major
    });
    L.alphas = std::move(all);
    L.index.fill(-1);
    for (int s = 0; s < static_cast<int>(L.alphas.size()); ++s) L.index[alpha_key(L.alphas[s])] = s;
    const int n = static_cast<int>(L.alphas.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (degree(L.alphas[i]) + degree(L.alphas[j]) > order) continue;
            MultiIndex s{};
            for (int v = 0; v < kMaxVars; ++v) s[v] = L.alphas[i][v] + L.alphas[j][v];
            L.products.push_back({i, j, L.index[alpha_key(s)]});
        }
    }
    return L;
}

const Layout& layout(int num_vars, int order) {
    static const std::array<Layout, kMaxVars * (kMaxOrder + 1)> table = [] {
        std::array<Layout, kMaxVars * (kMaxOrder + 1)> t;
        for (int v = 1; v <= kMaxVars; ++v)
            for (int o = 0; o <= kMaxOrder; ++o) t[(v - 1) * (kMaxOrder + 1) + o] = build_layout(v, o);
        return t;
    }();
    check_shape(num_vars, order);
    return table[(num_vars - 1) * (kMaxOrder + 1) + order];
}

void require_same_vars(const Jet& a, const Jet& b) {
    if (a.num_vars() != b.num_vars())
        throw std::invalid_argument("jet: mismatched num_vars (" + std::to_string(a.num_vars()) +
                                    " vs " + std::to_string(b.num_vars()) + ")");
}

double factorial_of(const MultiIndex& a) {
    static constexpr double fact[5] = {1, 1, 2, 6, 24};
    double f = 1;
    for (int v = 0; v < kMaxVars; ++v) f *= fact[a[v]];
    return f;
}

[[noreturn]] void domain_error(const char* fn, double value) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "jet %s: constant term %.17g outside domain", fn, value);
    throw std::domain_error(buf);
}

}  // namespace

int jet_slot_count(int num_vars, int order) {
    return static_cast<int>(layout(num_vars, order).alphas.size());
}

const std::vector<MultiIndex>& jet_slots(int num_vars, int order) {
    return layout(num_vars, order).alphas;
}

Jet::Jet(int num_vars, int order) : num_vars_(num_vars), order_(order) {
    check_shape(num_vars, order);
    coeffs_.assign(layout(num_vars, order).alphas.size(), 0.0);
}

Jet Jet::constant(double value, int num_vars, int order) {
    Jet j(num_vars, order);
    j.coeffs_[0] = value;
    return j;
}

Jet Jet::variable(int index, double value, int num_vars, int order) {
    Jet j(num_vars, order);
    if (index < 0 || index >= num_vars)
        throw std::invalid_argument("jet variable: index " + std::to_string(index) +
                                    " out of range for " + std::to_string(num_vars) + " variable(s)");
    j.coeffs_[0] = value;
    if (order >= 1) {
        MultiIndex e{};
        e[index] = 1;
        j.coeffs_[layout(num_vars, order).index[alpha_key(e)]] = 1.0;
    }
    return j;
}

double Jet::coeff(const MultiIndex& alpha) const {
    if (degree(alpha) > order_) throw std::invalid_argument("jet coeff: |alpha| exceeds order");
    int s = layout(num_vars_, order_).index[alpha_key(alpha)];
    if (s < 0) throw std::invalid_argument("jet coeff: invalid multi-index");
    return coeffs_[s];
}

double Jet::partial(const MultiIndex& alpha) const { return factorial_of(alpha) * coeff(alpha); }

Jet Jet::truncated(int order) const {
    if (order >= order_) return *this;
    if (order < 0) throw std::invalid_argument("jet truncated: negative order");
    Jet r(num_vars_, order);
    // Grade-major layout: lower-order coefficients are a prefix.
    std::copy_n(coeffs_.begin(), r.coeffs_.size(), r.coeffs_.begin());
    return r;
}

Jet Jet::derive(int index) const {
    if (order_ < 1) throw std::invalid_argument("jet derive: order-0 input");
    if (index < 0 || index >= num_vars_)
        throw std::invalid_argument("jet derive: variable index out of range");
    Jet r(num_vars_, order_ - 1);
    const Layout& src = layout(num_vars_, order_);
    const Layout& dst = layout(num_vars_, order_ - 1);
    for (int s = 0; s < static_cast<int>(dst.alphas.size()); ++s) {
        MultiIndex a = dst.alphas[s];
        a[index] += 1;
        r.coeffs_[s] = a[index] * coeffs_[src.index[alpha_key(a)]];
    }
    return r;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (double& c : r.coeffs_) c = -c;
    return r;
}

Jet operator+(const Jet& a, const Jet& b) {
    require_same_vars(a, b);
    int ord = std::min(a.order_, b.order_);
    Jet r = a.truncated(ord);
    for (int s = 0; s < r.size(); ++s) r.coeffs_[s] += b.coeffs_[s];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    require_same_vars(a, b);
    int ord = std::min(a.order_, b.order_);
    Jet r = a.truncated(ord);
    for (int s = 0; s < r.size(); ++s) r.coeffs_[s] -= b.coeffs_[s];
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    require_same_vars(a, b);
    int ord = std::min(a.order_, b.order_);
    const Jet at = a.truncated(ord);
    const Jet bt = b.truncated(ord);
    Jet r(a.num_vars_, ord);
    for (const auto& [i, j, k] : layout(a.num_vars_, ord).products)
        r.coeffs_[k] += at.coeffs_[i] * bt.coeffs_[j];
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

Jet operator+(const Jet& a, double s) { Jet r = a; r.coeffs_[0] += s; return r; }
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { Jet r = a; r.coeffs_[0] -= s; return r; }
Jet operator-(double s, const Jet& a) { Jet r = -a; r.coeffs_[0] += s; return r; }
Jet operator*(const Jet& a, double s) {
    Jet r = a;
    for (double& c : r.coeffs_) c *= s;
    return r;
}
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }

namespace {

// Compose the univariate Taylor polynomial sum t[k] * x^k with the
// zero-constant part of `a` (Horner on jets).
Jet compose(const Jet& a, const double* t, int n) {
    Jet delta = a - a.value();
    Jet r = Jet::constant(t[n], a.num_vars(), a.order());
    for (int k = n - 1; k >= 0; --k) r = r * delta + t[k];
    return r;
}

}  // namespace

Jet sin(const Jet& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    static constexpr double inv_fact[5] = {1, 1, 1.0 / 2, 1.0 / 6, 1.0 / 24};
    const double cycle[4] = {s, c, -s, -c};
    double t[kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) t[k] = cycle[k % 4] * inv_fact[k];
    return compose(a, t, a.order());
}

Jet cos(const Jet& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    static constexpr double inv_fact[5] = {1, 1, 1.0 / 2, 1.0 / 6, 1.0 / 24};
    const double cycle[4] = {c, -s, -c, s};
    double t[kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) t[k] = cycle[k % 4] * inv_fact[k];
    return compose(a, t, a.order());
}

Jet exp(const Jet& a) {
    static constexpr double inv_fact[5] = {1, 1, 1.0 / 2, 1.0 / 6, 1.0 / 24};
    const double e = std::exp(a.value());
    double t[kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) t[k] = e * inv_fact[k];
    return compose(a, t, a.order());
}

Jet sqrt(const Jet& a) {
    const double c = a.value();
    if (!(c > 0)) domain_error("sqrt", c);
    double t[kMaxOrder + 1];
    t[0] = std::sqrt(c);
    for (int k = 1; k <= a.order(); ++k) t[k] = t[k - 1] * (0.5 - (k - 1)) / (k * c);
    return compose(a, t, a.order());
}

Jet log(const Jet& a) {
    const double c = a.value();
    if (!(c > 0)) domain_error("log", c);
    double t[kMaxOrder + 1];
    t[0] = std::log(c);
    for (int k = 1; k <= a.order(); ++k)
        t[k] = (k == 1) ? 1.0 / c : -t[k - 1] * (k - 1) / (k * c);
    return compose(a, t, a.order());
}

Jet recip(const Jet& a) {
    const double c = a.value();
    if (c == 0) domain_error("recip", c);
    double t[kMaxOrder + 1];
    t[0] = 1.0 / c;
    for (int k = 1; k <= a.order(); ++k) t[k] = -t[k - 1] / c;
    return compose(a, t, a.order());
}

Jet pow(const Jet& a, int exponent) {
    if (exponent == 0) return Jet::constant(1.0, a.num_vars(), a.order());
    if (exponent < 0) return recip(pow(a, -exponent));
    Jet r = Jet::constant(1.0, a.num_vars(), a.order());
    Jet base = a;
    int e = exponent;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Jet apply(Elementary f, const Jet& a) {
    switch (f) {
        case Elementary::Sin: return sin(a);
        case Elementary::Cos: return cos(a);
        case Elementary::Exp: return exp(a);
        case Elementary::Sqrt: return sqrt(a);
        case Elementary::Log: return log(a);
        case Elementary::Neg: return -a;
        case Elementary::Recip: return recip(a);
    }
    throw std::invalid_argument("jet apply: unknown elementary function");
}

}  // namespace bihsphere
