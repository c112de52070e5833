#include "bihsphere/immersion.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace bihsphere {

ImmersionSpec make_immersion(const std::string& name, std::vector<std::string> params,
                             const std::vector<std::string>& component_sources,
                             std::vector<AxisDomain> domain, bool closed) {
    ImmersionSpec spec;
    spec.name = name;
    spec.m = static_cast<int>(params.size());
    spec.ambient_dim = static_cast<int>(component_sources.size());
    spec.params = std::move(params);
    spec.domain = std::move(domain);
    spec.closed = closed;
    if (spec.m < 1 || spec.m > kMaxVars)
        throw std::invalid_argument("immersion: need 1.." + std::to_string(kMaxVars) +
                                    " parameters, got " + std::to_string(spec.m));
    if (spec.ambient_dim < spec.m + 2)
        throw std::invalid_argument("immersion: ambient dimension must exceed m+1");
    if (static_cast<int>(spec.domain.size()) != spec.m)
        throw std::invalid_argument("immersion: one domain interval per parameter required");
    spec.components.reserve(component_sources.size());
    for (const auto& src : component_sources)
        spec.components.push_back(parse_expression(src, spec.params));
    return spec;
}

std::vector<Jet> immersion_jets(const ImmersionSpec& spec, std::span<const double> point,
                                int order) {
    std::vector<Jet> out;
    out.reserve(spec.components.size());
    for (const auto& c : spec.components)
        out.push_back(eval_expression(c, point, spec.m, order));
    return out;
}

double validate_sphere_constraint(const ImmersionSpec& spec, int sample_count, double tolerance) {
    std::mt19937 rng(0x5f3759dfu);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    double worst = 0.0;
    std::vector<double> p(spec.m);
    for (int s = 0; s < sample_count; ++s) {
        for (int i = 0; i < spec.m; ++i) {
            const auto& d = spec.domain[i];
            p[i] = d.lo + unit(rng) * (d.hi - d.lo);
        }
        double sum = -1.0;
        for (const auto& c : spec.components) {
            double v = eval_expression(c, p, spec.m, 0).value();
            sum += v * v;
        }
        worst = std::max(worst, std::abs(sum));
    }
    if (worst > tolerance) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "immersion '%s': unit-sphere constraint violated (max |..| = %.3g)",
                      spec.name.c_str(), worst);
        throw std::runtime_error(buf);
    }
    return worst;
}

}  // namespace bihsphere
