#pragma once

#include "riesz/potential_spec.hpp"

namespace riesz {

// Angular-reduced kernels of a radial convolution:
//   K(r, eta)     = int_{S^{n-1}} Phi_alpha(|r e1 - eta y|) dsigma(y)
//   omega(r, eta) = int_{S^{n-1}} grad Phi_alpha(r e1 - eta y) . e1 dsigma(y)
// both reduced to a single polar angle with weight sin^{n-2}(theta).
double kernel_K(const PotentialSpec& spec, double r, double eta);
double kernel_omega(const PotentialSpec& spec, double r, double eta);

// Same as kernel_omega but always through theta quadrature, also for alpha = n-2.
double kernel_omega_quadrature(const PotentialSpec& spec, double r, double eta);

// Prefactor of the theta integral, fixed so that the Coulomb force kernel equals
// omega_n 1_{eta<r} / r^{n-1}. Equals |S^{n-2}|.
double angular_prefactor(int n);

} // namespace riesz
