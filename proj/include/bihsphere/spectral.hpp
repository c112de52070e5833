#pragma once

/// Finite-type analysis of the position vector in R^{n+1}: coordinate
/// Laplacians, center of mass, the two-eigenvalue annihilation fit, exact
/// flat-torus spectra, and the cross-validation of biharmonicity against the
/// type characterization for compact CMC submanifolds.

#include <optional>

#include "bihsphere/checks.hpp"

namespace bihsphere {

enum class ChenType { OneType, TwoType, Indeterminate };

const char* to_string(ChenType t);

struct SpectralEstimate {
    double lambda_p = 0.0, lambda_q = 0.0;
    // Max over the grid of |Delta^2 phi - sigma Delta phi + pi (phi - phi0)|
    // with sigma = lambda_p + lambda_q, pi = lambda_p lambda_q (or the
    // one-eigenvalue analogue for 1-type fits).
    double residual = std::numeric_limits<double>::infinity();
    Eigen::VectorXd com;  // center of mass phi0
    double com_norm = 0.0;
    bool mass_symmetric = false;
    ChenType type = ChenType::Indeterminate;
    std::optional<std::pair<int, int>> order;
    // Set when the domain is not known to close up: the fit is then formal
    // (parametrization-relative), reported as informational.
    bool formal = false;
};

struct CenterOfMass {
    Eigen::VectorXd phi0;
    double volume = 0.0;
    bool parametrization_relative = false;
};

CenterOfMass center_of_mass(const ImmersionSpec& spec, const Grid& quad,
                            const Tolerances& tol = {});

SpectralEstimate chen_fit(const ImmersionSpec& spec, const Grid& quad, const Tolerances& tol = {});

// Exact spectrum of a flat rectangular torus with the given geometric
// periods: all distinct nonzero values of sum (2 pi k_i / L_i)^2 up to
// `max_lambda`, ascending.
std::vector<double> lattice_spectrum(std::span<const double> periods, double max_lambda);

// Ranks [p, q] of lambda_p, lambda_q in the distinct nonzero lattice
// spectrum (1-based). Throws std::invalid_argument when an eigenvalue is
// not in the spectrum within 1e-9.
std::pair<int, int> torus_order(std::span<const double> periods, double lambda_p,
                                double lambda_q);

// Product-of-spheres order criterion: [1, 2] exactly when the larger factor
// dimension is at most 2 (smaller + 1); otherwise the order is not
// determined by the criterion.
std::optional<std::pair<int, int>> clifford_order(int m1, int m2);

// Cross-validates, for CMC immersions: the characterization residuals
// vanish exactly when either |H| = 1 with a 1-type position of eigenvalue
// 2m and |phi0| = 1/sqrt(2), or |H| in (0,1) with a mass-symmetric 2-type
// position of eigenvalues m(1 -/+ |H|).
CheckReport type_theorem_check(const ImmersionSpec& spec, const Grid& sample, const Grid& quad,
                               bool compact, const Tolerances& tol = {});

}  // namespace bihsphere
