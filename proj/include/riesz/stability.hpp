#pragma once

#include "riesz/nsr_solver.hpp"
#include "riesz/steady_states.hpp"

#include <string>
#include <utility>
#include <vector>

namespace riesz {

enum class PerturbationMode { bump, squeeze, velocity };

PerturbationMode parse_perturbation_mode(const std::string& name);
std::string to_string(PerturbationMode mode);

struct Perturbation {
    PerturbationMode mode = PerturbationMode::bump;
    double amplitude = 0.0;
};

// Density and momentum on rho_tilde's grid, with the density rescaled to rho_tilde's mass.
//   bump:     rho_tilde (1 + a cos(pi r / R)), R the support radius; needs a <= 1
//   squeeze:  (1 + a)^n rho_tilde((1 + a) r)
//   velocity: rho_tilde unchanged, momentum a r rho_tilde
std::pair<RadialField, RadialField> perturb(const RadialField& rho_tilde, int n, const Perturbation& p);

// Ball state on [0, R], R the first zero node after the support of rho: N cells uniform in r whose
// masses integrate the cell model of rho exactly, edge velocities m / rho.
FluidState lagrangian_projection(const RadialField& rho, const RadialField& m, int n, int N);

struct StabilityTerms {
    double distance = 0.0;     // d(rho, rho_tilde)
    double norm_squared = 0.0; // ||rho - rho_tilde||^2 in L^{2n/(2n-alpha)}
    double kinetic = 0.0;
    double cross = 0.0;        // int (rho - rho_tilde) Phi_alpha * (rho - rho_tilde)
    double total() const { return distance + norm_squared + kinetic; }
};

// Terms of the stability functional for a solver state against the steady density, all evaluated
// on the merged edge set of the two cell models.
StabilityTerms stability_terms(const PotentialSpec& spec, const FluidState& state, const CellDensity& steady);

struct StabilityReport {
    std::vector<double> times;
    std::vector<double> functional;
    double initial_value = 0.0;
    double max_value = 0.0;
    double ratio = 0.0;
    double noise_floor = 0.0;
    // |E(rho0, m0) - G(rho_tilde) - (d + cross/2 + kinetic)| / |E(rho0, m0) - G(rho_tilde)| at t = 0.
    double identity_gap = 0.0;
    // max over outputs of alpha |cross| / (C_{n,alpha} ||rho - rho_tilde||^2); at most 1 by HLS.
    double cross_bound_ratio = 0.0;
    long steps = 0;
};

// Defaults for stability runs: epsilon = 1e-3, N = 256, T = 1.
SolverConfig stability_solver_config(const PotentialSpec& spec);

// Discretisation mismatch between the steady density and the solver grid: the larger of the
// functional of the unperturbed projection and of its relaxation to the discrete equilibrium.
double scheme_noise_floor(const PotentialSpec& spec, const SteadyState& steady, int N);

StabilityReport stability_run(const PotentialSpec& spec, const SteadyState& steady, const Perturbation& perturbation,
                              const SolverConfig& config);

} // namespace riesz
