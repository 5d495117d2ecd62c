#pragma once

#include "riesz/potential_spec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace riesz::cli {

struct RegimeReport {
    // gamma > 1/(n-1-alpha), required by every existence case.
    double gamma_lower_bound = 0.0;
    bool gamma_hypothesis = false;
    // 3n/(3n - 2(1+alpha)); required for kappa = 1 when alpha != n-2 and for case (b).
    double bd_gamma_threshold = 0.0;

    std::vector<std::string> existence_cases; // subset of "a".."e" whose conditions hold
    int energy_case = 0;                      // 1..4, 0 when none applies
    std::vector<std::string> bd_entropy;      // "repulsive_or_coulomb", "gamma_threshold"
    bool stability_regime = false;

    // Subcritical attractive band gamma in (2n/(2n-alpha), (n+alpha)/n], alpha in (0, n-1).
    bool subcritical_band = false;
    std::optional<double> critical_mass; // computed with C_{n,alpha}, a lower bound for the sharp value
    std::optional<bool> mass_below_critical;

    std::vector<std::string> warnings;

    bool covered() const { return gamma_hypothesis && !existence_cases.empty(); }
};

// Classifies (spec, M, E0) against the existence, energy, BD entropy and stability ranges. Never
// refuses: configurations outside all ranges get warnings. E0 may be absent; it is only needed
// for the critical mass when gamma < (n+alpha)/n.
RegimeReport validate_regime(const PotentialSpec& spec, double M, std::optional<double> E0);

} // namespace riesz::cli
