#pragma once

/// Built-in example immersions with their closed-form invariants. Entries
/// emit ordinary DSL component text so the parser/evaluator path is
/// exercised by the fixtures themselves.

#include <map>
#include <optional>

#include "bihsphere/immersion.hpp"

namespace bihsphere {

struct ExpectedInvariants {
    std::optional<double> H_norm;
    std::optional<double> A2;               // |A|^2
    std::optional<double> scalar;           // intrinsic scalar curvature
    std::optional<double> lambda_p, lambda_q;
    std::optional<double> com_norm;         // |center of mass|
    bool parallel_H = false;
    bool pseudo_umbilical = false;
    bool mass_symmetric = false;
    bool proper_biharmonic = false;
    bool cmc = true;
    bool compact = true;
    std::optional<std::pair<int, int>> order;
    // Rectangular-lattice periods when the induced metric is identically the
    // identity (flat torus); enables exact spectra.
    std::optional<std::vector<double>> lattice_periods;
};

struct CatalogEntry {
    std::string name;
    ImmersionSpec spec;
    ExpectedInvariants expected;
    std::vector<std::string> component_sources;  // DSL text as shipped
};

// Hypersphere of radius a inside the next sphere, polar coordinates.
// m in {2, 3}, a in (0, 1].
CatalogEntry make_hypersphere(int m, double a);

// Product of two spheres of radii a1 and sqrt(1 - a1^2); m1 + m2 <= 3.
CatalogEntry make_clifford(int m1, int m2, double a1);

// Flat 2-torus in S^5 with constant |H| = 1/2 and non-parallel H.
CatalogEntry make_legendre_torus();

// Flat 3-torus in S^5 with constant |H| = 1/3 and parallel H.
CatalogEntry make_anti_invariant_torus();

// Non-CMC negative fixture: a rotationally symmetric graph perturbation of
// the biharmonic 2-sphere in S^3.
CatalogEntry make_perturbed_graph();

// The equator 2-sphere of a hypersphere entry, re-embedded one sphere up
// (codimension 2); proper biharmonic with |H| = 1 and pseudo-umbilical.
CatalogEntry compose_in_next_sphere(const CatalogEntry& entry);

// CLI-addressable names.
const std::vector<std::string>& catalog_names();
// Builds an entry by name with parameters (m, a) or (m1, m2, a) where they
// apply; unknown names throw std::invalid_argument.
CatalogEntry catalog_entry(const std::string& name,
                           const std::map<std::string, double>& params);

}  // namespace bihsphere
