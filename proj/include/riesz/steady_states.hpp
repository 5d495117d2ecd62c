#pragma once

#include "riesz/errors.hpp"
#include "riesz/interaction.hpp"
#include "riesz/potential_spec.hpp"
#include "riesz/radial_field.hpp"

#include <optional>
#include <vector>

namespace riesz {

struct SteadyState {
    RadialField profile;
    double lambda = 0.0;
    double support_radius = 0.0;
    double free_energy = 0.0;
    double mass = 0.0;
    int iterations = 0;
};

class SteadyNonConvergence : public NonConvergenceError {
public:
    SteadyNonConvergence(const std::string& what, SteadyState s) : NonConvergenceError(what), best(std::move(s)) {}
    SteadyState best;
};

struct MinimizerOptions {
    int max_iterations = 4000;
    double damping = 0.5;
    int max_expansions = 8;
    std::optional<RadialField> initial; // starting density, resampled onto the grid
};

// Enthalpy h(rho) = (rho e(rho))' = a0 gamma rho^{gamma-1} / (gamma-1) and its inverse on [0, inf).
double enthalpy(const PotentialSpec& spec, double rho);
double inverse_enthalpy(const PotentialSpec& spec, double h);

// Damped fixed point rho <- [h^{-1}(lambda - Phi * rho)]_+ with lambda set by bisection on the mass.
// The grid is uniform; it is enlarged by 1.5 whenever the support reaches its last decile.
SteadyState solve_minimizer(const PotentialSpec& spec, double M, const RadialGrid& grid, double tol,
                            const MinimizerOptions& options = {});

// Fixed point with the support radius pinned to 1 and the amplitude normalised, followed by the
// exact dilation to mass M. Covers gamma below (n+alpha)/n, where the steady state is a saddle of
// the free energy and neither the mass-constrained iteration nor the gradient flow settles on it.
SteadyState solve_scaled_steady_state(const PotentialSpec& spec, double M, std::size_t nodes, double tol,
                                      int max_iterations = 4000);

// Lagrangian discretisation of rho_t = div(rho grad(h(rho) + Phi * rho)): cell masses are fixed,
// edges move with v = -(grad h + grad Phi * rho). Pressure is linearised implicitly, the interaction
// force is explicit. The innermost edge is pinned (0 for a ball), the outermost edge sees vacuum.
class GradientFlow {
public:
    GradientFlow(const PotentialSpec& spec, std::vector<double> edges, std::vector<double> cell_mass);

    // Attempts a step of size dt, halving until cells stay ordered and no volume changes by more
    // than a factor 2. Returns the step actually taken.
    double step(double dt);
    // Steps with dt (shrunk on failure, regrown by 1.5 up to dt) until the largest edge speed is
    // below 1e-10 of its starting value, or stays above 0.9 of its best value for 200 steps once
    // below 1e-7 of it (rounding floor), or max_steps is reached. Returns the steps taken.
    int relax(double dt, int max_steps);
    std::vector<double> velocity() const;
    double max_speed() const;
    double free_energy() const;
    double mass() const;

    const std::vector<double>& edges() const { return r_; }
    const std::vector<double>& cell_mass() const { return m_; }
    const std::vector<double>& density() const { return rho_; }
    CellDensity cells() const { return CellDensity{r_, rho_}; }

private:
    void refresh_density();

    PotentialSpec spec_;
    Interaction op_;
    std::vector<double> r_, m_, rho_;
};

// Relaxes GradientFlow from a compactly supported parabola on cells uniform in r over half the
// grid. The profile is rebuilt on the grid by interpolating the enthalpy between cell centroids.
SteadyState gradient_flow_oracle(const PotentialSpec& spec, double M, const RadialGrid& grid, double dt,
                                 int steps);

struct ElResidual {
    double on_support = 0.0;
    double off_support = 0.0;
};

// Sup of |h(rho) + Phi * rho - lambda| over nodes with rho above 1e-12 max(rho), and the largest
// positive part of lambda - Phi * rho over the remaining nodes; both divided by max |Phi * rho|.
ElResidual euler_lagrange_residual(const PotentialSpec& spec, const SteadyState& state);

struct SubCriticalResidual {
    double residual = 0.0;
    double K = 0.0;
};

// Residual of p(rho)/rho = (-(gamma-1)/gamma Phi * rho - K)_+ with K fitted by least squares on the
// support, relative to max p(rho)/rho.
SubCriticalResidual sub_critical_steady_residual(const PotentialSpec& spec, const SteadyState& state);

} // namespace riesz
