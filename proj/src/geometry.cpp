#include "bihsphere/geometry.hpp"

#include <cmath>

namespace bihsphere {

namespace {

// d_i of a jet field, one order lower.
JetVec derive_field(const JetVec& v, int i) {
    JetVec out(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) out[c] = v[c].derive(i);
    return out;
}

Eigen::VectorXd values_of(const JetVec& v) {
    Eigen::VectorXd out(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) out[c] = v[c].value();
    return out;
}

// Connection Laplacian pattern shared by the normal and pullback bundles:
// -g^{ij}( P[d_i V_j] - Gamma^k_ij V_k ) for projected fields V_j = P[d_j W].
template <typename Projector>
Eigen::VectorXd bundle_laplacian(const FrameData& f, Projector&& project_values,
                                 const std::vector<JetVec>& Vjet) {
    const int m = f.meta_m;
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(f.meta_ambient);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double gij = f.g_inv(i, j);
            if (gij == 0.0) continue;
            Eigen::VectorXd second = project_values(values_of(derive_field(Vjet[j], i)));
            for (int k = 0; k < m; ++k)
                second -= f.christoffel[k](i, j) * values_of(Vjet[k]);
            acc += gij * second;
        }
    }
    return -acc;
}

}  // namespace

ShapeNorms shape_operator_norms(const FrameData& f) {
    const int m = f.meta_m;
    ShapeNorms out;
    // |A|^2 = g^{ik} g^{jl} <B_ij, B_kl>
    double a2 = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    a2 += f.g_inv(i, k) * f.g_inv(j, l) * f.B[i][j].dot(f.B[k][l]);
    out.A2 = a2;

    Eigen::MatrixXd M(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) M(i, j) = f.B[i][j].dot(f.H);
    double ah2 = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    ah2 += f.g_inv(i, k) * f.g_inv(j, l) * M(i, j) * M(k, l);
    out.AH2 = ah2;

    // A_H is g-self-adjoint: solve M x = lambda g x.
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M, f.g);
    out.eigenvalues = es.eigenvalues();
    out.eigenbasis = es.eigenvectors().transpose();  // rows g-orthonormal
    return out;
}

Eigen::VectorXd normal_derivative_H(const FrameData& f, int direction) {
    return f.project_normal(values_of(derive_field(f.H_jet, direction)));
}

double normal_derivative_H_norm(const FrameData& f) {
    const int m = f.meta_m;
    std::vector<Eigen::VectorXd> w(m);
    for (int i = 0; i < m; ++i) w[i] = normal_derivative_H(f, i);
    double n2 = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) n2 += f.g_inv(i, j) * w[i].dot(w[j]);
    return std::sqrt(std::max(0.0, n2));
}

Eigen::VectorXd normal_laplacian_H(const FrameData& f) {
    const int m = f.meta_m;
    std::vector<JetVec> V(m);
    for (int j = 0; j < m; ++j) V[j] = project_normal_jets(f, derive_field(f.H_jet, j));
    return bundle_laplacian(
        f, [&](const Eigen::VectorXd& w) { return f.project_normal(w); }, V);
}

Eigen::VectorXd tension(const FrameData& f) { return f.meta_m * f.H; }

Eigen::VectorXd bitension(const FrameData& f) {
    const int m = f.meta_m;
    JetVec tau(f.meta_ambient);
    for (int c = 0; c < f.meta_ambient; ++c) tau[c] = static_cast<double>(m) * f.H_jet[c];
    std::vector<JetVec> W(m);
    for (int j = 0; j < m; ++j) W[j] = project_sphere_jets(f, derive_field(tau, j));
    Eigen::VectorXd rough = bundle_laplacian(
        f, [&](const Eigen::VectorXd& w) { return f.project_sphere(w); }, W);
    // Curvature term of the unit sphere: trace R(dphi, tau)dphi = -m tau
    // since tau is normal to M.
    return -rough + m * (m * f.H);
}

Eigen::VectorXd tension(const ImmersionSpec& spec, std::span<const double> point,
                        const Tolerances& tol) {
    return tension(frame_at(spec, point, tol));
}

Eigen::VectorXd bitension(const ImmersionSpec& spec, std::span<const double> point,
                          const Tolerances& tol) {
    return bitension(frame_at(spec, point, tol));
}

Eigen::VectorXd trace_B_AH(const FrameData& f) {
    const int m = f.meta_m;
    Eigen::MatrixXd M(m, m);
    for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j) M(l, j) = f.B[l][j].dot(f.H);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(f.meta_ambient);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    acc += f.g_inv(i, j) * f.g_inv(k, l) * M(l, j) * f.B[i][k];
    return acc;
}

Eigen::VectorXd trace_A_nablaH(const FrameData& f) {
    const int m = f.meta_m;
    std::vector<Eigen::VectorXd> W(m);
    for (int i = 0; i < m; ++i) W[i] = normal_derivative_H(f, i);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(f.meta_ambient);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    acc += f.g_inv(i, j) * f.g_inv(k, l) * f.B[l][j].dot(W[i]) * f.tangent[k];
    return 4.0 * acc;
}

double sectional_curvature(const FrameData& f, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
    const int m = f.meta_m;
    Eigen::VectorXd Bxx = Eigen::VectorXd::Zero(f.meta_ambient);
    Eigen::VectorXd Byy = Bxx, Bxy = Bxx;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Bxx += x[i] * x[j] * f.B[i][j];
            Byy += y[i] * y[j] * f.B[i][j];
            Bxy += x[i] * y[j] * f.B[i][j];
        }
    return 1.0 + Bxx.dot(Byy) - Bxy.squaredNorm();
}

double sectional_curvature(const FrameData& f, int i, int j) {
    if (i == j) throw std::invalid_argument("sectional_curvature: need two distinct directions");
    const Eigen::MatrixXd E = orthonormal_tangent_basis(f);
    return sectional_curvature(f, E.row(i).transpose(), E.row(j).transpose());
}

double scalar_curvature(const FrameData& f) {
    const int m = f.meta_m;
    const Eigen::MatrixXd E = orthonormal_tangent_basis(f);
    double s = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            s += sectional_curvature(f, E.row(i).transpose(), E.row(j).transpose());
        }
    return s;
}

Eigen::VectorXd grad_H2(const FrameData& f) {
    const int m = f.meta_m;
    Jet h2 = dot_jets(f.H_jet, f.H_jet);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(f.meta_ambient);
    for (int i = 0; i < m; ++i) {
        double coef = 0.0;
        for (int j = 0; j < m; ++j) coef += f.g_inv(i, j) * h2.derive(j).value();
        out += coef * f.tangent[i];
    }
    return out;
}

LaplaceCoords laplace_coords(const FrameData& f, int depth) {
    const int m = f.meta_m;
    const int ambient = f.meta_ambient;
    // Delta phi^c = -g^{ij}( dd_ij phi^c - Gamma^k_ij d_k phi^c ), kept as a
    // jet field so the operator can be applied twice.
    JetVec lap(ambient);
    for (int c = 0; c < ambient; ++c) {
        Jet acc = Jet::constant(0.0, m, f.ddphi[0][0][c].order());
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Jet term = f.ddphi[i][j][c];
                for (int k = 0; k < m; ++k) term -= f.gamma_jet[k][i][j] * f.dphi[k][c];
                acc += f.g_inv_jet[i][j] * term;
            }
        lap[c] = -acc;
    }
    LaplaceCoords out;
    out.lap = values_of(lap);
    if (depth < 2) return out;

    out.bilap.resize(ambient);
    for (int c = 0; c < ambient; ++c) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) {
            const Jet di = lap[c].derive(i);
            for (int j = 0; j < m; ++j) {
                double term = di.derive(j).value();
                for (int k = 0; k < m; ++k)
                    term -= f.christoffel[k](i, j) * lap[c].derive(k).value();
                acc += f.g_inv(i, j) * term;
            }
        }
        out.bilap[c] = -acc;
    }
    return out;
}

LaplaceCoords laplace_coords(const ImmersionSpec& spec, std::span<const double> point, int depth,
                             const Tolerances& tol) {
    return laplace_coords(frame_at(spec, point, tol), depth);
}

double bienergy(const ImmersionSpec& spec, const Grid& quad, const Tolerances& tol) {
    if (quad.dims() != spec.m)
        throw std::invalid_argument("bienergy: empty or mismatched quadrature grid");
    const int n = quad.total_points();
    double acc = 0.0;
    for (int idx = 0; idx < n; ++idx) {
        const auto p = quad.point(idx);
        FrameData f = frame_at(spec, p, tol);
        const double tau2 = tension(f).squaredNorm();
        acc += 0.5 * tau2 * std::sqrt(f.det_g_jet.value()) * quad.weight(idx);
    }
    return acc;
}

}  // namespace bihsphere
