#pragma once

#include "riesz/interaction.hpp"
#include "riesz/potential_spec.hpp"
#include "riesz/radial_field.hpp"

namespace riesz {

// Phi_alpha * rho sampled on rho's grid. The samples are read through to_cells().
RadialField potential(const PotentialSpec& spec, const RadialField& rho);

// (Phi_alpha * rho)_r on rho's grid.
RadialField potential_derivative(const PotentialSpec& spec, const RadialField& rho,
                                 ForceRoute route = ForceRoute::automatic);

// omega_n int rho(r) k_alpha(1 + r^2) r^{n-1} dr with k_alpha(s) = s^{-alpha/2}, or log s at alpha = 0.
double moment_kalpha(const PotentialSpec& spec, const RadialField& rho);

} // namespace riesz
