#include "riesz/cli/regime.hpp"

#include "riesz/errors.hpp"
#include "riesz/functionals.hpp"

#include <fmt/format.h>

#include <cmath>

namespace riesz::cli {

namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

} // namespace

RegimeReport validate_regime(const PotentialSpec& spec, double M, std::optional<double> E0)
{
    spec.validate();
    require(M > 0.0, "mass must be positive");
    const double n = spec.n, alpha = spec.alpha, gamma = spec.gamma;
    const bool coulomb = near(alpha, n - 2.0);
    const bool positive_alpha = alpha > 0.0;
    const double lo = 2.0 * n / (2.0 * n - alpha);
    const double hi = (n + alpha) / n;

    RegimeReport r;
    r.gamma_lower_bound = 1.0 / (n - 1.0 - alpha);
    r.gamma_hypothesis = gamma > r.gamma_lower_bound;
    r.bd_gamma_threshold = 3.0 * n / (3.0 * n - 2.0 * (1.0 + alpha));
    const bool bd_threshold = gamma >= r.bd_gamma_threshold;

    r.subcritical_band = spec.kappa == 1 && positive_alpha && gamma > lo && (gamma < hi || near(gamma, hi));
    if (r.subcritical_band) {
        const bool upper = near(gamma, hi);
        if (upper || (E0 && *E0 > 0.0)) {
            r.critical_mass = critical_mass(spec.n, upper ? hi : gamma, alpha, E0.value_or(0.0)).Mc;
            r.mass_below_critical = M < *r.critical_mass;
        } else {
            r.warnings.push_back("critical mass needs a positive initial energy E0 when gamma < (n+alpha)/n");
        }
    }

    if (spec.kappa == -1) {
        if (alpha <= n - 2.0 || coulomb) r.existence_cases.push_back("a");
        else if (bd_threshold) r.existence_cases.push_back("b");
    } else if (coulomb || bd_threshold) {
        if (alpha <= 0.0) r.existence_cases.push_back("c");
        else if (gamma > hi && !near(gamma, hi)) r.existence_cases.push_back("d");
        else if (r.subcritical_band && r.mass_below_critical.value_or(false)) r.existence_cases.push_back("e");
    }

    if (alpha <= 0.0) r.energy_case = 4;
    else if (spec.kappa == -1) r.energy_case = 1;
    else if (gamma > hi && !near(gamma, hi)) r.energy_case = 3;
    else if (r.subcritical_band && r.mass_below_critical.value_or(false)) r.energy_case = 2;

    if ((spec.kappa == -1 && (alpha <= n - 2.0 || coulomb)) || (spec.kappa == 1 && coulomb))
        r.bd_entropy.push_back("repulsive_or_coulomb");
    if (bd_threshold) r.bd_entropy.push_back("gamma_threshold");

    r.stability_regime = spec.kappa == 1 && positive_alpha && gamma > hi && !near(gamma, hi);

    if (!r.gamma_hypothesis)
        r.warnings.push_back(fmt::format("gamma > 1/(n-1-alpha) fails: needs gamma > {:.6g}", r.gamma_lower_bound));
    if (n - 1.0 - alpha < 1e-2)
        r.warnings.push_back(fmt::format("alpha is near n-1, where the bound gamma > 1/(n-1-alpha) = {:.6g} blows up",
                                         r.gamma_lower_bound));
    if (spec.kappa == 1 && !coulomb && !bd_threshold)
        r.warnings.push_back(
            fmt::format("attractive case with alpha != n-2 needs gamma >= 3n/(3n-2(1+alpha)) = {:.6g}", r.bd_gamma_threshold));
    if (r.subcritical_band && r.mass_below_critical && !*r.mass_below_critical)
        r.warnings.push_back(fmt::format("mass {:.6g} is not below the critical mass bound {:.6g}", M, *r.critical_mass));
    if (spec.kappa == 1 && positive_alpha && gamma <= lo)
        r.warnings.push_back("attractive case with gamma <= 2n/(2n-alpha): no energy estimate applies");
    if (r.bd_entropy.empty()) r.warnings.push_back("no BD entropy estimate applies");
    if (!r.covered()) r.warnings.push_back("configuration lies outside all existence cases");
    return r;
}

} // namespace riesz::cli
