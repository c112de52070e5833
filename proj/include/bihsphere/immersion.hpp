#pragma once

/// A parametrized immersion of M^m into the unit sphere S^n inside R^{n+1},
/// described by n+1 component expressions over m named parameters.

#include <optional>
#include <string>
#include <vector>

#include "bihsphere/expr.hpp"

namespace bihsphere {

struct AxisDomain {
    double lo = 0.0;
    double hi = 1.0;
    // Period of the parameter, when the immersion is periodic along it.
    std::optional<double> period;
};

struct ImmersionSpec {
    std::string name = "custom";
    int m = 0;           // intrinsic dimension = number of parameters
    int ambient_dim = 0; // n+1, components live in R^{n+1}
    std::vector<std::string> params;
    std::vector<ExprPtr> components;
    std::vector<AxisDomain> domain;
    // Closed-manifold hint (all catalog entries are closed); drives whether
    // centers of mass are geometric or parametrization-relative.
    bool closed = true;

    int codim_in_sphere() const { return ambient_dim - 1 - m; }
};

// Builds a spec from component source strings, parsing each expression.
ImmersionSpec make_immersion(const std::string& name, std::vector<std::string> params,
                             const std::vector<std::string>& component_sources,
                             std::vector<AxisDomain> domain, bool closed = true);

// Evaluates all ambient components as jets at a parameter point.
std::vector<Jet> immersion_jets(const ImmersionSpec& spec, std::span<const double> point,
                                int order);

// Max |sum of squared components - 1| over a deterministic pseudo-random
// sample of the domain. Throws std::runtime_error above `tolerance`.
double validate_sphere_constraint(const ImmersionSpec& spec, int sample_count, double tolerance);

}  // namespace bihsphere
