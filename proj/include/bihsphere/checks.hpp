#pragma once

/// Residual checks of the biharmonicity characterization systems and the
/// identities satisfied by proper biharmonic submanifolds with parallel mean
/// curvature, plus pure-arithmetic inequality gates and the restricted-family
/// scan of the second-fundamental-form area functional.

#include <array>
#include <functional>
#include <map>
#include <optional>

#include "bihsphere/geometry.hpp"

namespace bihsphere {

enum class Verdict { Pass, Fail, NotApplicable };

const char* to_string(Verdict v);

struct CheckReport {
    std::string name;
    std::vector<double> residuals;          // per successful grid point
    std::vector<std::string> point_errors;  // per-point frame failures
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::NotApplicable;
    std::string reason;  // mandatory when not applicable
    // Metadata: m, ambient, |H| statistics and check-specific scalars.
    std::map<std::string, double> meta;

    void finish(Verdict pass_fail_from_max = Verdict::Pass);
};

// Evaluates `fn` at every grid point on a shared frame; collects residual
// norms and per-point errors. Used by all grid checks.
CheckReport grid_check(const std::string& name, const ImmersionSpec& spec, const Grid& grid,
                       const Tolerances& tol,
                       const std::function<double(const FrameData&)>& fn);

// General characterization system: normal and tangent residual fields
//   | Delta^perp H + trace B(., A_H .) - m H |
//   | 4 trace A_{nabla^perp H}(.) + m grad|H|^2 |
std::array<CheckReport, 2> check_general(const ImmersionSpec& spec, const Grid& grid,
                                         const Tolerances& tol = {});

// Parallel-mean-curvature reduction: |trace B(., A_H .) - m H|. Not
// applicable unless |nabla^perp H| stays below tol.parallel on the grid.
CheckReport check_parallel_H(const ImmersionSpec& spec, const Grid& grid,
                             const Tolerances& tol = {});

// Hypersurface system: |Delta^perp H - (m - |A|^2) H| and
// |2 A(grad|H|) + m |H| grad|H)|. Not applicable above codimension one or
// where H vanishes.
std::array<CheckReport, 2> check_hypersurface(const ImmersionSpec& spec, const Grid& grid,
                                              const Tolerances& tol = {});

// CMC hypersurface criterion: | |A|^2 - m |. Requires |H| constant and
// nonzero over the grid.
CheckReport check_cmc_hypersurface(const ImmersionSpec& spec, const Grid& grid,
                                   const Tolerances& tol = {});

// Parallel-H identities: (i) |A_H|^2 = m|H|^2 and constant; (ii)
// trace(nabla A_H) = 0; (iii) <trace (nabla^perp B)(X, ., A_H .), H> = 0 for
// both trace placements and X over a g-orthonormal basis.
std::array<CheckReport, 3> check_parallel_identities(const ImmersionSpec& spec, const Grid& grid,
                                        const Tolerances& tol = {});

// Gauss-equation identities in the A_H eigenbasis: (i) m|H|^2 = sum a_i =
// sum a_i^2; (ii) (2m-1)m|H|^2 = 1/2 sum (a_i+a_j)(K_ij + |B_ij|^2);
// (iii) (m-1+m|H|^2)m|H|^2 = sum a_i a_j (K_ij + |B_ij|^2).
std::array<CheckReport, 3> check_eigen_identities(const ImmersionSpec& spec, const Grid& grid,
                                        const Tolerances& tol = {});

// Scalar-curvature identity s = m^2(1 + |H|^2) - 2m for proper biharmonic
// CMC hypersurfaces.
CheckReport check_scalar_curvature(const ImmersionSpec& spec, const Grid& grid,
                                   const Tolerances& tol = {});

// ---- pure scalar gates ----

enum class RangeVerdict { Admissible, Excluded, BoundaryCase };

struct RangeGateResult {
    RangeVerdict verdict;
    std::string rule;   // which mean-curvature range applied
    std::string label;  // boundary model, when on a boundary
};

// CMC proper biharmonic mean-curvature range: |H| in (0,1] in general; for
// compact hypersurfaces with m >= 4, |H| in (0, (m-2)/m] union {1}.
RangeGateResult mean_range_gate(int m, double H_norm, int codim, bool compact,
                                const Tolerances& tol = {});

enum class LiBranch { HypothesesFail, Umbilical, Clifford, InteriorContradiction };

struct LiGateResult {
    LiBranch branch;
    double lower = 0.0, upper = 0.0;  // pinching interval for |B|^2
    double c2 = 0.0;                  // torus radius^2 on the Clifford branch
};

// Scalar-curvature pinching gate (Li): for constant normalized scalar
// curvature r >= 1 and m(r-1) <= B2 <= upper(m, r), the hypersurface is
// umbilical at the lower bound and the torus S^1 x S^{m-1} at the upper one;
// a strict interior is the contradiction used to exclude mean-curvature
// values between (m-2)/m and 1.
LiGateResult li_gate(int m, double r, double B2, const Tolerances& tol = {});

struct SpectralGapBounds {
    bool applicable = false;
    double lambda1_bound = 0.0;  // m(1 - |H|)
    double ricci_bound = 0.0;    // (m-1)(1 - |H|)
};

SpectralGapBounds spectral_gap_bounds(int m, double H_norm, const Tolerances& tol = {});

// ---- Area_II restricted-family scan ----

struct ScanFamily {
    enum Kind { Hypersphere, Clifford } kind = Hypersphere;
    int m = 2;        // hypersphere dimension
    int m1 = 1, m2 = 2;
};

struct AreaScanRow {
    double a;
    double residual_normal, residual_tangent;  // general-system residuals
    double area_II;
    double d_area_II;  // central difference in a
};

struct AreaScanResult {
    std::vector<AreaScanRow> rows;
    bool critical_found = false;
    double critical_a = 0.0;
    bool biharmonic_matches = false;  // residual minimum brackets the same a
    std::string verdict;
};

// Area_II = integral of sqrt(|det A|) over the family member at radius a.
double area_II_value(const ScanFamily& family, double a, int quad_points,
                     const Tolerances& tol = {});

AreaScanResult area_II_scan(const ScanFamily& family, double a_min, double a_max, double step,
                            int grid_points, const Tolerances& tol = {});

}  // namespace bihsphere
