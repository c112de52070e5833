#pragma once

/// Pointwise geometry of an immersed M^m in S^n: metric, Christoffel symbols,
/// second fundamental form, mean curvature, shape operators and the normal
/// frame, all realized through order-4 jets of the position in R^{n+1}.
///
/// Sphere quantities come from Euclidean ones: the mean curvature of M in
/// S^n is H = H_euclidean + phi, and projections split R^{n+1} into the
/// tangent space of M, the normal space of M in S^n, and the radial line.

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "bihsphere/grid.hpp"
#include "bihsphere/immersion.hpp"

namespace bihsphere {

struct Tolerances {
    double constraint = 1e-10;   // structural identities (orthogonality etc.)
    double sphere = 1e-8;        // |phi|^2 - 1 at frame points
    double residual = 1e-8;      // check pass threshold
    double cond_limit = 1e8;     // metric condition number limit
    double parallel = 1e-8;      // |nabla^perp H| threshold for applicability
    double cmc = 1e-8;           // constancy of |H| over a grid
    double spectral_fit = 1e-7;  // spectral annihilation residual
    double mass_symmetry = 1e-9; // |center of mass| for the mass-symmetric flag
    double eig_match = 1e-6;     // eigenvalue matching in cross-validations
    double gate = 1e-12;         // boundary comparisons in scalar gates
};

struct FrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Jet-valued field helpers: an ambient vector field along M is a vector of
// per-component jets in the m parameters.
using JetVec = std::vector<Jet>;

struct FrameData {
    // --- values at the point ---
    Eigen::VectorXd point;                  // parameter values (m)
    Eigen::VectorXd position;               // phi in R^{n+1}
    Eigen::MatrixXd g, g_inv;               // metric and inverse (m x m)
    std::vector<Eigen::MatrixXd> christoffel;  // [k](i,j) = Gamma^k_ij
    std::vector<Eigen::VectorXd> tangent;   // d_i phi, ambient vectors
    std::vector<Eigen::VectorXd> normal_frame;  // orthonormal normal basis in S^n
    std::vector<std::vector<Eigen::VectorXd>> B;  // B_ij, ambient vectors, symmetric
    Eigen::VectorXd H;                      // mean curvature vector of M in S^n
    double H_norm = 0.0;
    std::vector<Eigen::MatrixXd> A;         // shape operator per normal_frame vector

    // --- jet-level fields (order: phi 4, dphi 3, g 3, Gamma/B/H 2) ---
    std::vector<Jet> jets;                  // phi components, order 4
    std::vector<JetVec> dphi;               // [i][c]
    std::vector<std::vector<JetVec>> ddphi; // [i][j][c]
    std::vector<std::vector<Jet>> g_jet, g_inv_jet;
    Jet det_g_jet;
    std::vector<std::vector<std::vector<Jet>>> gamma_jet;  // [k][i][j]
    std::vector<std::vector<JetVec>> B_jet;                // [i][j][c]
    JetVec H_jet;

    int meta_m = 0, meta_ambient = 0;

    // Euclidean projections of an ambient vector at this point.
    Eigen::VectorXd project_tangent(const Eigen::VectorXd& w) const;
    Eigen::VectorXd project_sphere(const Eigen::VectorXd& w) const;   // w - <w,phi>phi
    Eigen::VectorXd project_normal(const Eigen::VectorXd& w) const;   // normal to M in S^n
};

// Full frame at a parameter point. Throws FrameError when the differential
// is rank-deficient (metric condition above tol.cond_limit) or the point
// leaves the unit sphere by more than tol.sphere.
FrameData frame_at(const ImmersionSpec& spec, std::span<const double> point,
                   const Tolerances& tol = {});

// Jet-level projections of an ambient jet field onto the normal space of M
// in S^n and onto the tangent space of S^n.
JetVec project_normal_jets(const FrameData& f, const JetVec& w);
JetVec project_sphere_jets(const FrameData& f, const JetVec& w);

Jet dot_jets(const JetVec& a, const JetVec& b);

// g-orthonormal tangent basis via Gram-Schmidt on the coordinate fields in
// ascending order; rows are coordinate coefficients.
Eigen::MatrixXd orthonormal_tangent_basis(const FrameData& f);

}  // namespace bihsphere
