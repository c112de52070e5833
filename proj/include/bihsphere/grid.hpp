#pragma once

/// Tensor-product parameter grids. Sample grids (for residual checks) are
/// uniform with a configurable offset from non-periodic boundaries, to stay
/// clear of coordinate singularities. Quadrature grids use the trapezoidal
/// rule on periodic axes and Gauss-Legendre nodes on non-periodic ones.

#include <vector>

#include "bihsphere/immersion.hpp"

namespace bihsphere {

struct Grid {
    std::vector<std::vector<double>> nodes;    // per axis
    std::vector<std::vector<double>> weights;  // per axis (all 1 for sample grids)

    int dims() const { return static_cast<int>(nodes.size()); }
    int total_points() const {
        int n = 1;
        for (const auto& ax : nodes) n *= static_cast<int>(ax.size());
        return n;
    }
    // Point and tensor weight for a flat index in row-major order
    // (last axis fastest).
    std::vector<double> point(int flat) const;
    double weight(int flat) const;
};

Grid sample_grid(const ImmersionSpec& spec, int points_per_dim, double boundary_offset);
Grid quadrature_grid(const ImmersionSpec& spec, int points_per_dim);

// Gauss-Legendre nodes and weights on [lo, hi].
void gauss_legendre(int n, double lo, double hi, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace bihsphere
