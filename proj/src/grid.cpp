#include "bihsphere/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bihsphere {

std::vector<double> Grid::point(int flat) const {
    std::vector<double> p(nodes.size());
    for (int i = dims() - 1; i >= 0; --i) {
        const int n = static_cast<int>(nodes[i].size());
        p[i] = nodes[i][flat % n];
        flat /= n;
    }
    return p;
}

double Grid::weight(int flat) const {
    double w = 1.0;
    for (int i = dims() - 1; i >= 0; --i) {
        const int n = static_cast<int>(nodes[i].size());
        w *= weights[i][flat % n];
        flat /= n;
    }
    return w;
}

void gauss_legendre(int n, double lo, double hi, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const int pairs = (n + 1) / 2;
    for (int i = 0; i < pairs; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root of P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // Recompute P'_n at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = w * half;
        weights[n - 1 - i] = w * half;
    }
    if (n % 2 == 1) {
        // Midpoint node: the loop above writes it twice with the same value.
        nodes[n / 2] = mid;
    }
}

Grid sample_grid(const ImmersionSpec& spec, int points_per_dim, double boundary_offset) {
    if (points_per_dim < 3) throw std::invalid_argument("grid: need at least 3 points per axis");
    Grid g;
    g.nodes.resize(spec.m);
    g.weights.resize(spec.m);
    for (int i = 0; i < spec.m; ++i) {
        const AxisDomain& d = spec.domain[i];
        const int n = points_per_dim;
        g.weights[i].assign(n, 1.0);
        g.nodes[i].resize(n);
        if (d.period) {
            for (int k = 0; k < n; ++k) g.nodes[i][k] = d.lo + *d.period * k / n;
        } else {
            const double span = d.hi - d.lo;
            const double lo = d.lo + boundary_offset * span;
            const double hi = d.hi - boundary_offset * span;
            for (int k = 0; k < n; ++k) g.nodes[i][k] = lo + (hi - lo) * k / (n - 1);
        }
    }
    return g;
}

Grid quadrature_grid(const ImmersionSpec& spec, int points_per_dim) {
    if (points_per_dim < 3) throw std::invalid_argument("grid: need at least 3 points per axis");
    Grid g;
    g.nodes.resize(spec.m);
    g.weights.resize(spec.m);
    for (int i = 0; i < spec.m; ++i) {
        const AxisDomain& d = spec.domain[i];
        const int n = points_per_dim;
        if (d.period) {
            // Equispaced nodes over one period: spectrally accurate for
            // smooth periodic integrands.
            g.nodes[i].resize(n);
            g.weights[i].assign(n, *d.period / n);
            for (int k = 0; k < n; ++k) g.nodes[i][k] = d.lo + *d.period * k / n;
        } else {
            gauss_legendre(n, d.lo, d.hi, g.nodes[i], g.weights[i]);
        }
    }
    return g;
}

}  // namespace bihsphere
