#include "riesz/nsr_solver.hpp"

#include "riesz/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace riesz {

void SolverConfig::validate() const
{
    spec.validate();
    require(epsilon > 0.0, "epsilon must be positive");
    require(b > 1.0, "initial outer radius b must exceed 1");
    require(N >= 16, "at least 16 mass cells are required");
    require(cfl > 0.0 && cfl <= 1.0, "cfl must lie in (0, 1]");
    require(T >= 0.0 && dt_max > 0.0, "T must be nonnegative and dt_max positive");
    require(force_refresh_every >= 1 && output_every >= 1, "refresh and output intervals must be >= 1");
    if (force_route == ForceRoute::local_coulomb)
        require(spec.coulomb(), "the local force route needs alpha = n-2");
}

double FluidState::edge_mass(std::size_t j) const
{
    double m = 0.0;
    if (j > 0) m += 0.5 * cell_mass(j - 1);
    if (j < cells()) m += 0.5 * cell_mass(j);
    return m;
}

double FluidState::total_mass(int n) const
{
    double v = 0.0;
    for (std::size_t k = 0; k < cells(); ++k) v += rho[k] * (std::pow(r[k + 1], n) - std::pow(r[k], n)) / n;
    return surface_area(n) * v;
}

FluidState FluidState::from_cells(int n, std::vector<double> r, const std::vector<double>& cell_mass,
                                  std::vector<double> u, double t)
{
    require(r.size() == cell_mass.size() + 1 && u.size() == r.size(), "state arrays have inconsistent sizes");
    FluidState s;
    s.r = std::move(r);
    s.u = std::move(u);
    s.u[0] = 0.0;
    s.x.assign(s.r.size(), 0.0);
    for (std::size_t k = 0; k < cell_mass.size(); ++k) {
        require(cell_mass[k] > 0.0, "cell masses must be positive");
        s.x[k + 1] = s.x[k] + cell_mass[k];
    }
    s.t = t;
    s.update_density(n);
    return s;
}

void FluidState::update_density(int n)
{
    rho.resize(r.size() - 1);
    for (std::size_t k = 0; k < rho.size(); ++k)
        rho[k] = cell_mass(k) * n / (std::pow(r[k + 1], n) - std::pow(r[k], n));
    b_t = r.back();
}

NsrSolver::NsrSolver(SolverConfig config)
    : config_(std::move(config)), op_(config_.spec), omega_n_(surface_area(config_.spec.n))
{
    config_.spec.validate();
}

std::vector<double> NsrSolver::edge_force(const FluidState& s) const
{
    auto f = op_.field(s.density(), s.r, config_.force_route);
    if (s.r[0] == 0.0) f[0] = 0.0;
    return f;
}

double NsrSolver::stable_dt(const FluidState& s) const
{
    const auto& sp = config_.spec;
    double dt = config_.dt_max;
    const auto force = edge_force(s);
    for (std::size_t k = 0; k < s.cells(); ++k) {
        const double dr = s.r[k + 1] - s.r[k];
        const double speed = std::max(std::abs(s.u[k]), std::abs(s.u[k + 1])) + sound_speed(sp, s.rho[k]);
        dt = std::min(dt, config_.cfl * dr / speed);
        const double acc = std::max(std::abs(force[k]), std::abs(force[k + 1]));
        if (acc > 0.0) dt = std::min(dt, config_.cfl * std::sqrt(dr / acc));
    }
    return dt;
}

namespace {

struct ViscousMatrix {
    std::vector<double> diag; // edges 1..N
    std::vector<double> off;  // between edges j and j+1, j = 1..N-1
};

// Quadratic form eps [ sum_k rho_k V_k div_k^2 + (n-1) sum_j r_j^{n-2}(rho_j - rho_{j-1}) u_j^2 ] in
// the unknowns u_1..u_N, with the ghost density rho_N = rho_{N-1}.
ViscousMatrix viscous_matrix(const FluidState& s, int n, double eps)
{
    const std::size_t N = s.cells();
    ViscousMatrix L;
    L.diag.assign(N, 0.0);
    L.off.assign(N > 0 ? N - 1 : 0, 0.0);
    std::vector<double> A(N + 1);
    for (std::size_t j = 0; j <= N; ++j) A[j] = std::pow(s.r[j], n - 1);
    for (std::size_t k = 0; k < N; ++k) {
        const double V = (std::pow(s.r[k + 1], n) - std::pow(s.r[k], n)) / n;
        const double c = eps * s.rho[k] / V;
        // div_k = (A_{k+1} u_{k+1} - A_k u_k) / V_k; unknown index of edge j is j-1.
        L.diag[k] += c * A[k + 1] * A[k + 1];
        if (k >= 1) {
            L.diag[k - 1] += c * A[k] * A[k];
            L.off[k - 1] -= c * A[k] * A[k + 1];
        }
    }
    for (std::size_t j = 1; j < N; ++j)
        L.diag[j - 1] += eps * (n - 1) * std::pow(s.r[j], n - 2) * (s.rho[j] - s.rho[j - 1]);
    return L;
}

} // namespace

FluidState NsrSolver::stage(const FluidState& s, double dt, const std::vector<double>* frozen_force) const
{
    const auto& sp = config_.spec;
    const int n = sp.n;
    const std::size_t N = s.cells();
    const auto force = frozen_force ? *frozen_force : edge_force(s);
    std::vector<double> p(N + 1, 0.0);
    for (std::size_t k = 0; k < N; ++k) p[k] = pressure(sp, s.rho[k]);

    auto L = viscous_matrix(s, n, config_.epsilon);
    std::vector<double> rhs(N);
    for (std::size_t j = 1; j <= N; ++j) {
        const double m = s.edge_mass(j);
        const double A = std::pow(s.r[j], n - 1);
        rhs[j - 1] = m * s.u[j] + dt * (-A * (p[j] - p[j - 1]) - m * sp.kappa * force[j]);
        L.diag[j - 1] = m + dt * L.diag[j - 1];
    }
    for (auto& e : L.off) e *= dt;
    solve_tridiagonal(L.diag, L.off, rhs);

    FluidState out = s;
    for (std::size_t j = 1; j <= N; ++j) {
        out.u[j] = rhs[j - 1];
        out.r[j] = s.r[j] + dt * out.u[j];
    }
    out.u[0] = 0.0;
    for (std::size_t j = 0; j < N; ++j)
        if (!(out.r[j + 1] > out.r[j]) || !std::isfinite(out.r[j + 1]))
            throw SolverAbort("particle paths crossed or became non-finite", s);
    out.update_density(n);
    out.t = s.t + dt;
    return out;
}

FluidState NsrSolver::step(const FluidState& s, double dt, const std::vector<double>* frozen_force) const
{
    require(dt > 0.0 && std::isfinite(dt), "time step must be positive");
    const FluidState s1 = stage(s, dt, frozen_force);
    const FluidState s2 = stage(s1, dt, frozen_force);
    FluidState out = s;
    for (std::size_t j = 1; j < s.r.size(); ++j) {
        out.r[j] = 0.5 * (s.r[j] + s2.r[j]);
        out.u[j] = 0.5 * (s.u[j] + s2.u[j]);
    }
    out.update_density(config_.spec.n);
    out.t = s.t + dt;
    const double lo = *std::min_element(out.rho.begin(), out.rho.end());
    if (!(lo >= config_.density_floor)) throw SolverAbort("density fell below the floor", out);
    return out;
}

double NsrSolver::dissipation_rate(const FluidState& s) const
{
    const auto L = viscous_matrix(s, config_.spec.n, config_.epsilon);
    const std::size_t N = s.cells();
    double q = 0.0;
    for (std::size_t j = 1; j <= N; ++j) {
        q += L.diag[j - 1] * s.u[j] * s.u[j];
        if (j < N) q += 2.0 * L.off[j - 1] * s.u[j] * s.u[j + 1];
    }
    return omega_n_ * q;
}

double NsrSolver::boundary_stress(const FluidState& s) const
{
    const int n = config_.spec.n;
    const std::size_t k = s.cells() - 1;
    const double V = (std::pow(s.r[k + 1], n) - std::pow(s.r[k], n)) / n;
    const double div = (std::pow(s.r[k + 1], n - 1) * s.u[k + 1] - std::pow(s.r[k], n - 1) * s.u[k]) / V;
    return pressure(config_.spec, s.rho[k]) - config_.epsilon * s.rho[k] * div;
}

DiagnosticsRow NsrSolver::diagnostics(const FluidState& s) const
{
    const auto& sp = config_.spec;
    const int n = sp.n;
    const std::size_t N = s.cells();
    DiagnosticsRow row;
    row.t = s.t;
    row.mass = s.total_mass(n);
    double kin = 0.0, internal = 0.0;
    for (std::size_t j = 1; j <= N; ++j) kin += 0.5 * s.edge_mass(j) * s.u[j] * s.u[j];
    for (std::size_t k = 0; k < N; ++k) internal += s.cell_mass(k) * internal_energy_density(sp, s.rho[k]);
    const auto cells = s.density();
    const double inter = 0.5 * sp.kappa * op_.pairing(cells, cells);
    row.energy = EnergyBreakdown::make(omega_n_ * kin, omega_n_ * internal, inter);

    double bd = 0.0;
    for (std::size_t j = 1; j < N; ++j) {
        const double c0 = 0.5 * (s.r[j - 1] + s.r[j]), c1 = 0.5 * (s.r[j] + s.r[j + 1]);
        const double g = (std::sqrt(s.rho[j]) - std::sqrt(s.rho[j - 1])) / (c1 - c0);
        bd += g * g * std::pow(s.r[j], n - 1) * (c1 - c0);
    }
    row.bd_entropy = omega_n_ * 0.25 * config_.epsilon * config_.epsilon * bd;
    row.energy.bd_entropy = row.bd_entropy;
    if (sp.alpha <= 0.0) {
        double mom = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            const double c = 0.5 * (s.r[k] + s.r[k + 1]);
            const double arg = 1.0 + c * c;
            mom += s.cell_mass(k) * (sp.alpha == 0.0 ? std::log(arg) : std::pow(arg, -0.5 * sp.alpha));
        }
        row.energy.moment = omega_n_ * mom;
    }
    row.boundary_pressure = boundary_stress(s);
    row.b_t = s.r.back();
    row.min_rho = *std::min_element(s.rho.begin(), s.rho.end());
    row.dissipation_rate = dissipation_rate(s);
    return row;
}

Trajectory NsrSolver::run(const FluidState& initial, const Observer& observer) const
{
    Trajectory traj;
    FluidState s = initial;
    auto emit = [&](const FluidState& st) {
        const auto row = diagnostics(st);
        traj.rows.push_back(row);
        traj.snapshots.push_back(st);
        if (observer) observer(st, row);
    };
    emit(s);
    const double T = config_.T;
    std::vector<double> frozen;
    long step_index = 0;
    while (s.t < T * (1.0 - 1e-14)) {
        if (step_index >= config_.max_steps) throw SolverAbort("step budget exhausted", s);
        double dt = stable_dt(s);
        if (s.t + dt > T) dt = T - s.t;
        const std::vector<double>* use = nullptr;
        if (config_.force_refresh_every > 1) {
            if (step_index % config_.force_refresh_every == 0) frozen = edge_force(s);
            use = &frozen;
        }
        s = step(s, dt, use);
        ++step_index;
        const bool last = s.t >= T * (1.0 - 1e-14);
        if (last) s.t = T;
        if (step_index % config_.output_every == 0 || last) emit(s);
    }
    traj.final_state = s;
    traj.steps = step_index;
    return traj;
}

std::vector<double> mass_coordinates(const CellDensity& cells, int n)
{
    std::vector<double> x(cells.edges.size(), 0.0);
    for (std::size_t k = 0; k < cells.cells(); ++k) x[k + 1] = x[k] + cells.values[k] * cells.volume(k, n);
    return x;
}

EulerianSnapshot eulerian_map(const FluidState& s)
{
    EulerianSnapshot e;
    e.cells = s.density();
    std::vector<double> centres(s.cells());
    for (std::size_t k = 0; k < s.cells(); ++k) centres[k] = 0.5 * (s.r[k] + s.r[k + 1]);
    e.rho = RadialField(RadialGrid(centres), s.rho);
    const std::size_t first = s.r[0] > 0.0 ? 0 : 1;
    e.u = RadialField(RadialGrid(std::vector<double>(s.r.begin() + first, s.r.end())),
                      std::vector<double>(s.u.begin() + first, s.u.end()));
    return e;
}

double density_distance(const FluidState& a, const FluidState& b, double q, int n)
{
    const auto ca = a.density(), cb = b.density();
    auto edges = merge_edges(ca.edges, cb.edges);
    if (edges.front() > 0.0) edges.insert(edges.begin(), 0.0);
    const auto fa = ca.resample(edges), fb = cb.resample(edges);
    double s = 0.0;
    for (std::size_t k = 0; k < fa.cells(); ++k)
        s += std::pow(std::abs(fa.values[k] - fb.values[k]), q) * fa.volume(k, n);
    return std::pow(surface_area(n) * s, 1.0 / q);
}

SweepTable vanishing_viscosity_sweep(const SolverConfig& config, const FluidState& initial,
                                     const std::vector<double>& eps_list, int checkpoints, int threads)
{
    require(!eps_list.empty(), "epsilon list is empty");
    for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
        require(eps_list[i + 1] < eps_list[i], "epsilon list must be strictly decreasing");
    require(checkpoints >= 1, "need at least one checkpoint");
    const int n = config.spec.n;
    SweepTable table;
    table.eps = eps_list;
    for (int c = 1; c <= checkpoints; ++c) table.times.push_back(config.T * c / checkpoints);

    // states[e][c]: run e at checkpoint c.
    std::vector<std::vector<FluidState>> states(eps_list.size());
    std::vector<std::string> failures(eps_list.size());
    const auto work = [&](std::size_t e) {
        try {
            SolverConfig cfg = config;
            cfg.epsilon = eps_list[e];
            FluidState s = initial;
            for (double t : table.times) {
                cfg.T = t;
                s = NsrSolver(cfg).run(s).final_state;
                states[e].push_back(s);
            }
        } catch (const std::exception& ex) {
            failures[e] = ex.what();
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, eps_list.size());
    if (workers == 1) {
        for (std::size_t e = 0; e < eps_list.size(); ++e) work(e);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t e = w; e < eps_list.size(); e += workers) work(e);
            });
        for (auto& t : pool) t.join();
    }
    for (std::size_t e = 0; e < eps_list.size(); ++e)
        if (!failures[e].empty()) throw BlowUpError("sweep run eps=" + std::to_string(eps_list[e]) + ": " + failures[e]);

    for (std::size_t c = 0; c < table.times.size(); ++c)
        for (std::size_t e = 0; e + 1 < eps_list.size(); ++e) {
            SweepPair p;
            p.eps_a = eps_list[e];
            p.eps_b = eps_list[e + 1];
            p.time = table.times[c];
            p.l1 = density_distance(states[e][c], states[e + 1][c], 1.0, n);
            p.lgamma = density_distance(states[e][c], states[e + 1][c], config.spec.gamma, n);
            table.pairs.push_back(p);
        }
    table.cauchy = eps_list.size() >= 2;
    const std::size_t last = (table.times.size() - 1) * (eps_list.size() - 1);
    for (std::size_t e = 0; e + 1 < eps_list.size(); ++e) {
        const double d = table.pairs[last + e].l1;
        if (!std::isfinite(d) || (e > 0 && !(d < table.pairs[last + e - 1].l1))) table.cauchy = false;
    }
    return table;
}

} // namespace riesz
