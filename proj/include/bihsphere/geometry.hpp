#pragma once

/// Derived geometric quantities at a frame point: shape-operator norms and
/// spectra, normal-bundle derivatives of H, tension and bitension fields,
/// Gauss-equation curvatures, and the bienergy integral.
///
/// Laplacian sign convention throughout: Delta = -trace(Hessian), so the
/// spectrum is nonnegative.

#include "bihsphere/frame.hpp"

namespace bihsphere {

struct ShapeNorms {
    double A2 = 0.0;              // |A|^2 = |B|^2 in an orthonormal frame
    double AH2 = 0.0;             // |A_H|^2
    Eigen::VectorXd eigenvalues;  // of A_H, ascending
    Eigen::MatrixXd eigenbasis;   // rows: g-orthonormal eigenvectors (coords)
};

ShapeNorms shape_operator_norms(const FrameData& f);

// nabla^perp_{d_i} H: the normal-space projection of d_i H.
Eigen::VectorXd normal_derivative_H(const FrameData& f, int direction);

// |nabla^perp H| as the g-norm of the normal-bundle-valued one-form.
double normal_derivative_H_norm(const FrameData& f);

// Delta^perp H = -g^{ij}( nabla^perp_i nabla^perp_j H - Gamma^k_ij nabla^perp_k H ).
Eigen::VectorXd normal_laplacian_H(const FrameData& f);

// tau = m H;  tau_2 = -Delta^phi tau + m tau, with Delta^phi the rough
// Laplacian of the pulled-back sphere connection (sphere-tangent projection
// of the Euclidean directional derivative).
Eigen::VectorXd tension(const FrameData& f);
Eigen::VectorXd bitension(const FrameData& f);
Eigen::VectorXd tension(const ImmersionSpec& spec, std::span<const double> point,
                        const Tolerances& tol = {});
Eigen::VectorXd bitension(const ImmersionSpec& spec, std::span<const double> point,
                          const Tolerances& tol = {});

// trace B(., A_H .) as an ambient vector (normal to M).
Eigen::VectorXd trace_B_AH(const FrameData& f);

// 4 trace A_{nabla^perp H}(.) tangential vector of the general tangent system.
Eigen::VectorXd trace_A_nablaH(const FrameData& f);

// Sectional curvature of the plane spanned by two g-orthonormal tangent
// vectors given in coordinates (Gauss equation with ambient curvature 1).
double sectional_curvature(const FrameData& f, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);
// Plane of the i-th and j-th Gram-Schmidt orthonormal basis vectors.
double sectional_curvature(const FrameData& f, int i, int j);
double scalar_curvature(const FrameData& f);

// grad(|H|^2), tangent vector in ambient coordinates.
Eigen::VectorXd grad_H2(const FrameData& f);

// Coordinate Laplacians: Delta phi (and Delta^2 phi when depth == 2).
struct LaplaceCoords {
    Eigen::VectorXd lap;
    Eigen::VectorXd bilap;  // empty unless depth 2
};
LaplaceCoords laplace_coords(const FrameData& f, int depth);
LaplaceCoords laplace_coords(const ImmersionSpec& spec, std::span<const double> point, int depth,
                             const Tolerances& tol = {});

// Bienergy 1/2 integral of |tau|^2 over the parameter domain.
double bienergy(const ImmersionSpec& spec, const Grid& quad, const Tolerances& tol = {});

}  // namespace bihsphere
