#include "bihsphere/frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace bihsphere {

namespace {

// Gauss-Jordan inverse of a jet-valued symmetric matrix, pivoting on the
// largest constant term. Also returns the determinant jet.
void invert_jet_matrix(const std::vector<std::vector<Jet>>& a,
                       std::vector<std::vector<Jet>>& inv, Jet& det) {
    const int n = static_cast<int>(a.size());
    const int nv = a[0][0].num_vars();
    const int ord = a[0][0].order();
    std::vector<std::vector<Jet>> w = a;
    inv.assign(n, std::vector<Jet>(n, Jet::constant(0.0, nv, ord)));
    for (int i = 0; i < n; ++i) inv[i][i] = Jet::constant(1.0, nv, ord);
    det = Jet::constant(1.0, nv, ord);
    double det_sign = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(w[r][col].value()) > std::abs(w[pivot][col].value())) pivot = r;
        if (pivot != col) {
            std::swap(w[pivot], w[col]);
            std::swap(inv[pivot], inv[col]);
            det_sign = -det_sign;
        }
        if (w[col][col].value() == 0.0) throw FrameError("metric is singular at point");
        det = det * w[col][col];
        Jet inv_pivot = recip(w[col][col]);
        for (int c = 0; c < n; ++c) {
            w[col][c] = w[col][c] * inv_pivot;
            inv[col][c] = inv[col][c] * inv_pivot;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Jet factor = w[r][col];
            if (factor.value() == 0.0) {
                bool zero = true;
                for (double cc : factor.coeffs())
                    if (cc != 0.0) { zero = false; break; }
                if (zero) continue;
            }
            for (int c = 0; c < n; ++c) {
                w[r][c] = w[r][c] - factor * w[col][c];
                inv[r][c] = inv[r][c] - factor * inv[col][c];
            }
        }
    }
    det = det * det_sign;
}

Eigen::VectorXd jet_values(const JetVec& v) {
    Eigen::VectorXd out(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) out[c] = v[c].value();
    return out;
}

}  // namespace

Jet dot_jets(const JetVec& a, const JetVec& b) {
    Jet s = a[0] * b[0];
    for (std::size_t c = 1; c < a.size(); ++c) s += a[c] * b[c];
    return s;
}

Eigen::VectorXd FrameData::project_tangent(const Eigen::VectorXd& w) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(w.size());
    for (int i = 0; i < meta_m; ++i) {
        double coef = 0.0;
        for (int j = 0; j < meta_m; ++j) coef += g_inv(i, j) * tangent[j].dot(w);
        out += coef * tangent[i];
    }
    return out;
}

Eigen::VectorXd FrameData::project_sphere(const Eigen::VectorXd& w) const {
    return w - position.dot(w) * position;
}

Eigen::VectorXd FrameData::project_normal(const Eigen::VectorXd& w) const {
    return project_sphere(w) - project_tangent(w);
}

JetVec project_sphere_jets(const FrameData& f, const JetVec& w) {
    Jet radial = dot_jets(w, f.jets);
    JetVec out(w.size());
    for (std::size_t c = 0; c < w.size(); ++c) out[c] = w[c] - radial * f.jets[c];
    return out;
}

JetVec project_normal_jets(const FrameData& f, const JetVec& w) {
    JetVec out = project_sphere_jets(f, w);
    std::vector<Jet> wdot(f.meta_m);
    for (int j = 0; j < f.meta_m; ++j) wdot[j] = dot_jets(w, f.dphi[j]);
    for (int i = 0; i < f.meta_m; ++i) {
        Jet coef = f.g_inv_jet[i][0] * wdot[0];
        for (int j = 1; j < f.meta_m; ++j) coef += f.g_inv_jet[i][j] * wdot[j];
        for (std::size_t c = 0; c < out.size(); ++c) out[c] -= coef * f.dphi[i][c];
    }
    return out;
}

Eigen::MatrixXd orthonormal_tangent_basis(const FrameData& f) {
    const int m = f.meta_m;
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
        v[i] = 1.0;
        for (int k = 0; k < i; ++k) {
            const double proj = E.row(k).dot(f.g * v);
            v -= proj * E.row(k).transpose();
        }
        const double len2 = v.dot(f.g * v);
        if (len2 <= 0) throw FrameError("degenerate tangent basis");
        E.row(i) = v.transpose() / std::sqrt(len2);
    }
    return E;
}

FrameData frame_at(const ImmersionSpec& spec, std::span<const double> point,
                   const Tolerances& tol) {
    const int m = spec.m;
    const int ambient = spec.ambient_dim;
    FrameData f;
    f.meta_m = m;
    f.meta_ambient = ambient;
    f.point = Eigen::Map<const Eigen::VectorXd>(point.data(), point.size());

    f.jets = immersion_jets(spec, point, kMaxOrder);
    f.position = jet_values(f.jets);

    const double sphere_defect = std::abs(f.position.squaredNorm() - 1.0);
    if (sphere_defect > tol.sphere) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "not a spherical immersion at point (| |phi|^2 - 1 | = %.3g)",
                      sphere_defect);
        throw FrameError(buf);
    }

    f.dphi.resize(m);
    for (int i = 0; i < m; ++i) {
        f.dphi[i].resize(ambient);
        for (int c = 0; c < ambient; ++c) f.dphi[i][c] = f.jets[c].derive(i);
    }
    f.ddphi.assign(m, std::vector<JetVec>(m));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            JetVec col(ambient);
            for (int c = 0; c < ambient; ++c) col[c] = f.dphi[i][c].derive(j);
            f.ddphi[i][j] = col;
            if (j != i) f.ddphi[j][i] = f.ddphi[i][j];
        }

    f.g_jet.assign(m, std::vector<Jet>(m));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            f.g_jet[i][j] = dot_jets(f.dphi[i], f.dphi[j]);
            if (j != i) f.g_jet[j][i] = f.g_jet[i][j];
        }

    f.g.resize(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) f.g(i, j) = f.g_jet[i][j].value();

    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.g);
        const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
        if (!(lo > 0.0) || hi / lo > tol.cond_limit) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "not an immersion at point (metric condition %.3g)",
                          lo > 0 ? hi / lo : std::numeric_limits<double>::infinity());
            throw FrameError(buf);
        }
    }

    invert_jet_matrix(f.g_jet, f.g_inv_jet, f.det_g_jet);
    f.g_inv.resize(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) f.g_inv(i, j) = f.g_inv_jet[i][j].value();

    // Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
    std::vector<std::vector<std::vector<Jet>>> dg(m);
    for (int k = 0; k < m; ++k) {
        dg[k].assign(m, std::vector<Jet>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) dg[k][i][j] = f.g_jet[i][j].derive(k);
    }
    f.gamma_jet.assign(m, std::vector<std::vector<Jet>>(m));
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i) {
            f.gamma_jet[k][i].resize(m);
            for (int j = 0; j < m; ++j) {
                Jet sum = f.g_inv_jet[k][0] * (dg[i][j][0] + dg[j][i][0] - dg[0][i][j]);
                for (int l = 1; l < m; ++l)
                    sum += f.g_inv_jet[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                f.gamma_jet[k][i][j] = 0.5 * sum;
            }
        }
    f.christoffel.assign(m, Eigen::MatrixXd(m, m));
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) f.christoffel[k](i, j) = f.gamma_jet[k][i][j].value();

    // B_ij = dd_ij phi - Gamma^k_ij d_k phi + g_ij phi: normal to M, tangent
    // to the sphere.
    f.B_jet.assign(m, std::vector<JetVec>(m));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            JetVec b(ambient);
            for (int c = 0; c < ambient; ++c) {
                Jet v = f.ddphi[i][j][c] + f.g_jet[i][j] * f.jets[c];
                for (int k = 0; k < m; ++k) v -= f.gamma_jet[k][i][j] * f.dphi[k][c];
                b[c] = v;
            }
            f.B_jet[i][j] = b;
            if (j != i) f.B_jet[j][i] = f.B_jet[i][j];
        }

    f.H_jet.assign(ambient, Jet());
    for (int c = 0; c < ambient; ++c) {
        Jet sum = f.g_inv_jet[0][0] * f.B_jet[0][0][c];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == 0 && j == 0) continue;
                sum += f.g_inv_jet[i][j] * f.B_jet[i][j][c];
            }
        f.H_jet[c] = sum / static_cast<double>(m);
    }

    f.tangent.resize(m);
    for (int i = 0; i < m; ++i) f.tangent[i] = jet_values(f.dphi[i]);
    f.B.assign(m, std::vector<Eigen::VectorXd>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) f.B[i][j] = jet_values(f.B_jet[i][j]);
    f.H = jet_values(f.H_jet);
    f.H_norm = f.H.norm();

    // Normal frame: project the ambient axes onto the normal space and
    // orthonormalize, always taking the largest remaining residual first
    // (ties resolved by ascending axis index).
    const int codim = ambient - 1 - m;
    std::vector<Eigen::VectorXd> cand(ambient);
    for (int c = 0; c < ambient; ++c) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(ambient);
        e[c] = 1.0;
        cand[c] = f.project_normal(e);
    }
    f.normal_frame.clear();
    f.normal_frame.reserve(codim);
    for (int r = 0; r < codim; ++r) {
        int best = -1;
        double best_norm = -1.0;
        for (int c = 0; c < ambient; ++c) {
            const double n = cand[c].norm();
            if (n > best_norm + 1e-14) {
                best_norm = n;
                best = c;
            }
        }
        if (best < 0 || best_norm < 1e-8)
            throw FrameError("normal frame construction failed at point");
        Eigen::VectorXd xi = cand[best] / best_norm;
        f.normal_frame.push_back(xi);
        for (int c = 0; c < ambient; ++c) cand[c] -= xi.dot(cand[c]) * xi;
    }

    f.A.resize(codim);
    for (int a = 0; a < codim; ++a) {
        Eigen::MatrixXd M(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) M(i, j) = f.B[i][j].dot(f.normal_frame[a]);
        f.A[a] = f.g_inv * M;
    }

    return f;
}

}  // namespace bihsphere
