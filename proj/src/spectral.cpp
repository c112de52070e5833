#include "bihsphere/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bihsphere/parallel.hpp"

namespace bihsphere {

const char* to_string(ChenType t) {
    switch (t) {
        case ChenType::OneType: return "1-type";
        case ChenType::TwoType: return "2-type";
        case ChenType::Indeterminate: return "indeterminate";
    }
    return "?";
}

CenterOfMass center_of_mass(const ImmersionSpec& spec, const Grid& quad, const Tolerances& tol) {
    CenterOfMass out;
    const int n = quad.total_points();
    std::vector<Eigen::VectorXd> contrib(n);
    std::vector<double> vols(n, 0.0);
    parallel_for(n, [&](int idx) {
        FrameData f = frame_at(spec, quad.point(idx), tol);
        const double dv = std::sqrt(f.det_g_jet.value()) * quad.weight(idx);
        contrib[idx] = dv * f.position;
        vols[idx] = dv;
    });
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(spec.ambient_dim);
    double vol = 0.0;
    for (int idx = 0; idx < n; ++idx) {
        acc += contrib[idx];
        vol += vols[idx];
    }
    out.phi0 = acc / vol;
    out.volume = vol;
    // With a non-periodic axis the parameter patch need not close up; the
    // center of mass is then relative to the chosen patch.
    bool all_periodic = true;
    for (const auto& d : spec.domain)
        if (!d.period) all_periodic = false;
    out.parametrization_relative = !all_periodic && !spec.closed;
    return out;
}

SpectralEstimate chen_fit(const ImmersionSpec& spec, const Grid& quad, const Tolerances& tol) {
    SpectralEstimate est;
    CenterOfMass com = center_of_mass(spec, quad, tol);
    est.com = com.phi0;
    est.com_norm = com.phi0.norm();
    est.mass_symmetric = est.com_norm < tol.mass_symmetry;
    est.formal = com.parametrization_relative;

    const int n = quad.total_points();
    const int ambient = spec.ambient_dim;
    // Rows of the annihilation system over all points and components:
    //   Delta^2 phi = sigma Delta phi - pi (phi - phi0).
    std::vector<Eigen::VectorXd> lap(n), bilap(n), centered(n);
    parallel_for(n, [&](int idx) {
        FrameData f = frame_at(spec, quad.point(idx), tol);
        LaplaceCoords lc = laplace_coords(f, 2);
        lap[idx] = lc.lap;
        bilap[idx] = lc.bilap;
        centered[idx] = f.position - com.phi0;
    });

    Eigen::Matrix2d AtA = Eigen::Matrix2d::Zero();
    Eigen::Vector2d Atb = Eigen::Vector2d::Zero();
    for (int idx = 0; idx < n; ++idx)
        for (int c = 0; c < ambient; ++c) {
            const Eigen::Vector2d row(lap[idx][c], -centered[idx][c]);
            AtA += row * row.transpose();
            Atb += row * bilap[idx][c];
        }

    auto one_type_fit = [&]() {
        double num = 0.0, den = 0.0;
        for (int idx = 0; idx < n; ++idx)
            for (int c = 0; c < ambient; ++c) {
                num += lap[idx][c] * centered[idx][c];
                den += centered[idx][c] * centered[idx][c];
            }
        const double lambda = num / den;
        double worst = 0.0;
        for (int idx = 0; idx < n; ++idx)
            worst = std::max(worst, (lap[idx] - lambda * centered[idx]).norm());
        est.lambda_p = est.lambda_q = lambda;
        est.residual = worst;
        est.type = worst < tol.spectral_fit ? ChenType::OneType : ChenType::Indeterminate;
    };

    // Relative conditioning of the 2x2 normal system decides whether the
    // two-eigenvalue fit is meaningful.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(AtA);
    const double cond_ratio = es.eigenvalues()(0) / es.eigenvalues()(1);
    if (!(cond_ratio > 1e-10)) {
        one_type_fit();
        return est;
    }

    const Eigen::Vector2d sol = AtA.ldlt().solve(Atb);
    const double sigma = sol[0], prod = sol[1];
    const double disc = sigma * sigma - 4.0 * prod;
    if (disc < 0.0) {
        one_type_fit();
        return est;
    }
    est.lambda_p = 0.5 * (sigma - std::sqrt(disc));
    est.lambda_q = 0.5 * (sigma + std::sqrt(disc));
    double worst = 0.0;
    for (int idx = 0; idx < n; ++idx)
        worst = std::max(worst,
                         (bilap[idx] - sigma * lap[idx] + prod * centered[idx]).norm());
    est.residual = worst;
    est.type = worst < tol.spectral_fit ? ChenType::TwoType : ChenType::Indeterminate;
    return est;
}

std::vector<double> lattice_spectrum(std::span<const double> periods, double max_lambda) {
    const int m = static_cast<int>(periods.size());
    std::vector<double> freq2(m);
    std::vector<int> kmax(m);
    for (int i = 0; i < m; ++i) {
        const double w = 2.0 * std::numbers::pi / periods[i];
        freq2[i] = w * w;
        kmax[i] = static_cast<int>(std::floor(std::sqrt(max_lambda / freq2[i]))) + 1;
    }
    std::vector<double> values;
    std::vector<int> k(m, 0);
    // Odometer over 0..kmax per axis; signs do not change the value.
    while (true) {
        double v = 0.0;
        for (int i = 0; i < m; ++i) v += k[i] * k[i] * freq2[i];
        if (v > 0.0 && v <= max_lambda + 1e-9) values.push_back(v);
        int i = 0;
        for (; i < m; ++i) {
            if (++k[i] <= kmax[i]) break;
            k[i] = 0;
        }
        if (i == m) break;
    }
    std::sort(values.begin(), values.end());
    std::vector<double> distinct;
    for (double v : values)
        if (distinct.empty() || v - distinct.back() > 1e-9) distinct.push_back(v);
    return distinct;
}

std::pair<int, int> torus_order(std::span<const double> periods, double lambda_p,
                                double lambda_q) {
    if (periods.empty()) throw std::invalid_argument("torus_order: no lattice periods");
    const double cap = std::max(lambda_p, lambda_q) + 1.0;
    const std::vector<double> spectrum = lattice_spectrum(periods, cap);
    auto rank_of = [&](double lambda) {
        for (std::size_t i = 0; i < spectrum.size(); ++i)
            if (std::abs(spectrum[i] - lambda) < 1e-9) return static_cast<int>(i) + 1;
        throw std::invalid_argument("torus_order: eigenvalue " + std::to_string(lambda) +
                                    " is not in the lattice spectrum");
    };
    return {rank_of(lambda_p), rank_of(lambda_q)};
}

std::optional<std::pair<int, int>> clifford_order(int m1, int m2) {
    const int lo = std::min(m1, m2), hi = std::max(m1, m2);
    if (hi <= 2 * (lo + 1)) return std::pair{1, 2};
    return std::nullopt;  // p = 1 still, but q exceeds 2 by an unknown amount
}

CheckReport type_theorem_check(const ImmersionSpec& spec, const Grid& sample, const Grid& quad,
                               bool compact, const Tolerances& tol) {
    CheckReport r;
    r.name = "type_characterization";
    r.tolerance = tol.eig_match;
    const int m = spec.m;

    double H_min = std::numeric_limits<double>::infinity(), H_max = 0.0, H_sum = 0.0;
    int n_ok = 0;
    const int n = sample.total_points();
    for (int idx = 0; idx < n; ++idx) {
        try {
            FrameData f = frame_at(spec, sample.point(idx), tol);
            H_min = std::min(H_min, f.H_norm);
            H_max = std::max(H_max, f.H_norm);
            H_sum += f.H_norm;
            ++n_ok;
        } catch (const std::exception& e) {
            r.point_errors.push_back(e.what());
        }
    }
    if (n_ok == 0) {
        r.reason = "no evaluable grid points";
        r.finish(Verdict::NotApplicable);
        return r;
    }
    const double H = H_sum / n_ok;
    r.meta["H_min"] = H_min;
    r.meta["H_max"] = H_max;
    r.meta["H_mean"] = H;
    if (H_max - H_min > tol.cmc) {
        r.reason = "not CMC: |H| varies over the grid";
        r.finish(Verdict::NotApplicable);
        return r;
    }
    if (!compact) {
        r.reason = "compactness flag not set; characterization is stated for compact M";
        r.finish(Verdict::NotApplicable);
        return r;
    }

    auto general = check_general(spec, sample, tol);
    const bool biharmonic =
        general[0].verdict == Verdict::Pass && general[1].verdict == Verdict::Pass;
    const bool proper = biharmonic && H > tol.residual;

    SpectralEstimate est = chen_fit(spec, quad, tol);
    r.meta["lambda_p"] = est.lambda_p;
    r.meta["lambda_q"] = est.lambda_q;
    r.meta["com_norm"] = est.com_norm;
    r.meta["fit_residual"] = est.residual;

    bool type_side = false;
    std::string type_detail;
    if (std::abs(H - 1.0) < tol.eig_match) {
        const bool one_type = est.type == ChenType::OneType &&
                              std::abs(est.lambda_p - 2.0 * m) < tol.eig_match;
        const bool com_ok = std::abs(est.com_norm - 1.0 / std::numbers::sqrt2) < tol.eig_match;
        type_side = one_type && com_ok;
        type_detail = "|H| = 1 branch: 1-type with eigenvalue 2m and |phi0| = 1/sqrt(2)";
    } else if (H > tol.eig_match && H < 1.0) {
        const bool two_type = est.type == ChenType::TwoType;
        const bool eig_ok = std::abs(est.lambda_p - m * (1.0 - H)) < tol.eig_match &&
                            std::abs(est.lambda_q - m * (1.0 + H)) < tol.eig_match;
        type_side = two_type && est.mass_symmetric && eig_ok;
        type_detail = "|H| in (0,1) branch: mass-symmetric 2-type with eigenvalues m(1 -/+ |H|)";
    } else {
        type_detail = "|H| outside (0,1]";
    }

    const bool equivalent = proper == type_side;
    r.residuals.push_back(equivalent ? 0.0 : 1.0);
    r.max_residual = r.mean_residual = r.residuals.back();
    r.tolerance = 0.5;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "biharmonic: %s; type side: %s (%s)",
                  proper ? "true" : "false", type_side ? "true" : "false", type_detail.c_str());
    r.reason = buf;
    r.finish();
    return r;
}

}  // namespace bihsphere
