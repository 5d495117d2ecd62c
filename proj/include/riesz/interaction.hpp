#pragma once

#include "riesz/ball.hpp"
#include "riesz/potential_spec.hpp"
#include "riesz/radial_field.hpp"

#include <memory>
#include <vector>

namespace riesz {

enum class ForceRoute {
    automatic,     // closed-form shell theorem for alpha = n-2, kernel otherwise
    kernel,        // tabulated kernel primitives for every alpha
    local_coulomb, // omega_n r^{1-n} * enclosed mass; only valid for alpha = n-2
};

// Convolution of shell-wise constant radial densities with Phi_alpha.
class Interaction {
public:
    explicit Interaction(const PotentialSpec& spec);

    const PotentialSpec& spec() const { return spec_; }

    std::vector<double> potential(const CellDensity& rho, const std::vector<double>& r) const;
    std::vector<double> field(const CellDensity& rho, const std::vector<double>& r,
                              ForceRoute route = ForceRoute::automatic) const;

    // Symmetrised int_{R^n} f (Phi_alpha * g) dx. Cell integrals use 4-point Gauss rules on the
    // merged edge set; the result is exactly symmetric in (f, g).
    double pairing(const CellDensity& f, const CellDensity& g) const;

private:
    double one_sided(const CellDensity& f, const CellDensity& g) const;

    PotentialSpec spec_;
    std::shared_ptr<const BallPrimitive> ball_;
    double omega_n_;
};

} // namespace riesz
