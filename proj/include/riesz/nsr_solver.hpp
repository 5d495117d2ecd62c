#pragma once

#include "riesz/errors.hpp"
#include "riesz/functionals.hpp"
#include "riesz/interaction.hpp"
#include "riesz/potential_spec.hpp"
#include "riesz/radial_field.hpp"

#include <functional>
#include <vector>

namespace riesz {

struct SolverConfig {
    PotentialSpec spec;
    double epsilon = 1e-2;
    double b = 4.0;
    int N = 128;
    double T = 0.1;
    double cfl = 0.4;
    double dt_max = 1e-2;
    int force_refresh_every = 1;
    int output_every = 10;
    ForceRoute force_route = ForceRoute::automatic;
    double density_floor = 1e-14;
    long max_steps = 50'000'000;

    void validate() const;
};

// Lagrangian snapshot. Edges j = 0..N carry x (mass per unit solid angle below the edge), the
// particle radius r and the velocity u; cells k = 0..N-1 carry the density.
struct FluidState {
    std::vector<double> x;
    std::vector<double> r;
    std::vector<double> rho;
    std::vector<double> u;
    double t = 0.0;
    double b_t = 0.0;

    std::size_t cells() const { return rho.size(); }
    double cell_mass(std::size_t k) const { return x[k + 1] - x[k]; }
    // Mass per unit solid angle at edge j: half of each neighbouring cell.
    double edge_mass(std::size_t j) const;
    double total_mass(int n) const;
    CellDensity density() const { return CellDensity{r, rho}; }

    // Builds a state from edge radii and cell masses; densities follow as mass / volume.
    static FluidState from_cells(int n, std::vector<double> r, const std::vector<double>& cell_mass,
                                 std::vector<double> u, double t = 0.0);
    // Recomputes rho from r and the fixed cell masses.
    void update_density(int n);
};

struct DiagnosticsRow {
    double t = 0.0;
    double mass = 0.0;
    EnergyBreakdown energy;
    double bd_entropy = 0.0;
    double boundary_pressure = 0.0;
    double b_t = 0.0;
    double min_rho = 0.0;
    double dissipation_rate = 0.0;
};

class SolverAbort : public BlowUpError {
public:
    SolverAbort(const std::string& what, FluidState s) : BlowUpError(what), state(std::move(s)) {}
    FluidState state;
};

struct Trajectory {
    std::vector<FluidState> snapshots;
    std::vector<DiagnosticsRow> rows;
    FluidState final_state;
    long steps = 0;
};

class NsrSolver {
public:
    explicit NsrSolver(SolverConfig config);

    const SolverConfig& config() const { return config_; }

    // Largest step allowed by the CFL and force conditions, capped by dt_max.
    double stable_dt(const FluidState& s) const;

    // One SSP-RK2 step whose stages are IMEX Euler (explicit pressure and interaction force,
    // implicit viscosity). A non-null frozen_force replaces the edge forces in both stages.
    FluidState step(const FluidState& s, double dt, const std::vector<double>* frozen_force = nullptr) const;

    DiagnosticsRow diagnostics(const FluidState& s) const;

    // Interaction force (Phi * rho)_r at every edge.
    std::vector<double> edge_force(const FluidState& s) const;

    // Viscous dissipation rate omega_n u^T L u (nonnegative by construction).
    double dissipation_rate(const FluidState& s) const;

    // p - eps rho^2 (r^{n-1} u)_x in the outermost cell.
    double boundary_stress(const FluidState& s) const;

    using Observer = std::function<void(const FluidState&, const DiagnosticsRow&)>;
    Trajectory run(const FluidState& initial, const Observer& observer = {}) const;

private:
    FluidState stage(const FluidState& s, double dt, const std::vector<double>* frozen_force) const;

    SolverConfig config_;
    Interaction op_;
    double omega_n_;
};

struct EulerianSnapshot {
    RadialField rho; // on cell centres
    RadialField u;   // on positive edge radii
    CellDensity cells;
};

EulerianSnapshot eulerian_map(const FluidState& s);

// Mass coordinates recomputed from a shell-wise constant density: x_j = int_{r_0}^{r_j} rho y^{n-1} dy.
std::vector<double> mass_coordinates(const CellDensity& cells, int n);

// L^q distance between two states' densities (zero outside each support), with the omega_n weight.
double density_distance(const FluidState& a, const FluidState& b, double q, int n);

struct SweepPair {
    double eps_a = 0.0, eps_b = 0.0; // consecutive entries of the epsilon list
    double time = 0.0;
    double l1 = 0.0;
    double lgamma = 0.0; // L^gamma distance
};

struct SweepTable {
    std::vector<double> eps;
    std::vector<double> times;
    std::vector<SweepPair> pairs; // grouped by time, then by consecutive epsilon pair
    // True when the final-time L^1 distances between consecutive epsilons are finite and strictly
    // decreasing along the list.
    bool cauchy = false;
};

// Runs the same initial state for each epsilon (decreasing list) and compares consecutive runs at
// `checkpoints` equally spaced times up to config.T. Runs are spread over `threads` workers.
SweepTable vanishing_viscosity_sweep(const SolverConfig& config, const FluidState& initial,
                                     const std::vector<double>& eps_list, int checkpoints = 4, int threads = 1);

} // namespace riesz
