#include "riesz/stability.hpp"

#include "riesz/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace riesz {

namespace {

// Index of the first node after the last positive value (the last node if none follows).
std::size_t support_end(const RadialField& rho)
{
    std::size_t last = 0;
    bool any = false;
    for (std::size_t i = 0; i < rho.size(); ++i)
        if (rho.values[i] > 0.0) {
            last = i;
            any = true;
        }
    require(any, "density has no support");
    return std::min(last + 1, rho.size() - 1);
}

void check_stability_regime(const PotentialSpec& spec)
{
    spec.validate();
    require(spec.kappa == 1, "stability runs need the attractive sign kappa = 1");
    require(spec.alpha > 0.0 && spec.alpha < spec.n - 1, "stability runs need alpha in (0, n-1)");
    require(spec.gamma > (spec.n + spec.alpha) / spec.n, "stability runs need gamma > (n + alpha)/n");
}

double kinetic(const FluidState& s, int n)
{
    double kin = 0.0;
    for (std::size_t j = 1; j < s.r.size(); ++j) kin += 0.5 * s.edge_mass(j) * s.u[j] * s.u[j];
    return surface_area(n) * kin;
}

} // namespace

PerturbationMode parse_perturbation_mode(const std::string& name)
{
    if (name == "bump") return PerturbationMode::bump;
    if (name == "squeeze") return PerturbationMode::squeeze;
    if (name == "velocity") return PerturbationMode::velocity;
    throw ParseError("unknown perturbation mode '" + name + "' (bump, squeeze, velocity)");
}

std::string to_string(PerturbationMode mode)
{
    switch (mode) {
    case PerturbationMode::bump: return "bump";
    case PerturbationMode::squeeze: return "squeeze";
    case PerturbationMode::velocity: return "velocity";
    }
    return "bump";
}

std::pair<RadialField, RadialField> perturb(const RadialField& rho_tilde, int n, const Perturbation& p)
{
    validate_field(rho_tilde);
    require(p.amplitude >= 0.0, "perturbation amplitude must be nonnegative");
    RadialField zero(rho_tilde.grid, std::vector<double>(rho_tilde.size(), 0.0));
    if (p.amplitude == 0.0) return {rho_tilde, zero};

    const double a = p.amplitude;
    const double R = rho_tilde.grid[support_end(rho_tilde)];
    RadialField rho = rho_tilde;
    RadialField m = zero;
    switch (p.mode) {
    case PerturbationMode::bump:
        require(a <= 1.0, "bump amplitude above 1 makes the density negative");
        for (std::size_t i = 0; i < rho.size(); ++i)
            rho.values[i] *= 1.0 + a * std::cos(std::numbers::pi * std::min(rho.grid[i] / R, 1.0));
        break;
    case PerturbationMode::squeeze: {
        const double s = 1.0 + a;
        for (std::size_t i = 0; i < rho.size(); ++i)
            rho.values[i] = std::pow(s, n) * std::max(0.0, rho_tilde.interpolate(s * rho.grid[i]));
        break;
    }
    case PerturbationMode::velocity:
        for (std::size_t i = 0; i < m.size(); ++i) m.values[i] = a * rho.grid[i] * rho_tilde.values[i];
        return {rho, m};
    }
    const double scale = mass(rho_tilde, n) / mass(rho, n);
    for (auto& v : rho.values) v *= scale;
    return {rho, m};
}

FluidState lagrangian_projection(const RadialField& rho, const RadialField& m, int n, int N)
{
    validate_field(rho);
    validate_field(m);
    require(rho.grid.nodes == m.grid.nodes, "density and momentum must share a grid");
    require(N >= 2, "projection needs at least 2 cells");
    for (double v : rho.values) require(v >= 0.0, "density must be nonnegative");
    const double R = rho.grid[support_end(rho)];
    const CellDensity cells = to_cells(rho);

    std::vector<double> edges(N + 1);
    for (int j = 0; j <= N; ++j) edges[j] = R * j / N;
    edges[N] = R;
    const auto fine = cells.resample(merge_edges(cells.edges, edges));
    std::vector<double> cell_mass(N, 0.0);
    std::size_t k = 0;
    for (std::size_t c = 0; c < fine.cells(); ++c) {
        const double mid = 0.5 * (fine.edges[c] + fine.edges[c + 1]);
        if (mid > R) break;
        while (k + 1 < static_cast<std::size_t>(N) && edges[k + 1] <= mid) ++k;
        cell_mass[k] += fine.values[c] * fine.volume(c, n);
    }

    // Velocity m / rho on the support, held at its last value beyond it.
    RadialField vel = m;
    double last = 0.0;
    for (std::size_t i = 0; i < vel.size(); ++i) {
        if (rho.values[i] > 0.0) last = m.values[i] / rho.values[i];
        vel.values[i] = last;
    }
    std::vector<double> u(N + 1);
    for (int j = 0; j <= N; ++j) u[j] = j == 0 ? 0.0 : vel.interpolate(std::min(edges[j], vel.grid.nodes.back()));
    return FluidState::from_cells(n, edges, cell_mass, u, 0.0);
}

StabilityTerms stability_terms(const PotentialSpec& spec, const FluidState& state, const CellDensity& steady)
{
    const int n = spec.n;
    const auto cells = state.density();
    const auto edges = merge_edges(cells.edges, steady.edges);
    const auto a = cells.resample(edges);
    const auto b = steady.resample(edges);
    CellDensity diff = a;
    for (std::size_t k = 0; k < diff.cells(); ++k) diff.values[k] -= b.values[k];
    StabilityTerms t;
    t.distance = distance_d(spec, a, b);
    const double norm = lq_norm(diff, 2.0 * n / (2.0 * n - spec.alpha), n);
    t.norm_squared = norm * norm;
    t.kinetic = kinetic(state, n);
    t.cross = Interaction(spec).pairing(diff, diff);
    return t;
}

SolverConfig stability_solver_config(const PotentialSpec& spec)
{
    SolverConfig c;
    c.spec = spec;
    c.epsilon = 1e-3;
    c.N = 256;
    c.T = 1.0;
    c.output_every = 25;
    return c;
}

double scheme_noise_floor(const PotentialSpec& spec, const SteadyState& steady, int N)
{
    check_stability_regime(spec);
    const int n = spec.n;
    const RadialField zero(steady.profile.grid, std::vector<double>(steady.profile.size(), 0.0));
    const FluidState projected = lagrangian_projection(steady.profile, zero, n, N);
    const CellDensity reference = to_cells(steady.profile);
    const double f0 = stability_terms(spec, projected, reference).total();

    std::vector<double> cell_mass(projected.cells());
    for (std::size_t k = 0; k < cell_mass.size(); ++k) cell_mass[k] = projected.cell_mass(k);
    GradientFlow flow(spec, projected.r, cell_mass);
    flow.relax(1e-2, 20000);
    const FluidState relaxed = FluidState::from_cells(n, flow.edges(), cell_mass, projected.u, 0.0);
    const double f1 = stability_terms(spec, relaxed, reference).total();
    return std::max(f0, f1);
}

StabilityReport stability_run(const PotentialSpec& spec, const SteadyState& steady, const Perturbation& perturbation,
                              const SolverConfig& config_in)
{
    check_stability_regime(spec);
    SolverConfig config = config_in;
    config.spec = spec;
    config.validate();
    const int n = spec.n;
    const auto [rho0, m0] = perturb(steady.profile, n, perturbation);
    const FluidState initial = lagrangian_projection(rho0, m0, n, config.N);
    const CellDensity reference = to_cells(steady.profile);

    StabilityReport report;
    {
        const auto cells = initial.density();
        const auto edges = merge_edges(cells.edges, reference.edges);
        const auto a = cells.resample(edges);
        const auto b = reference.resample(edges);
        const Interaction op(spec);
        const double E0 = internal_energy(spec, a) + 0.5 * op.pairing(a, a) + kinetic(initial, n);
        const double G = free_energy(spec, b);
        const auto terms = stability_terms(spec, initial, reference);
        const double rhs = terms.distance + 0.5 * terms.cross + terms.kinetic;
        const double lhs = E0 - G;
        report.identity_gap = std::abs(lhs - rhs) / (lhs != 0.0 ? std::abs(lhs) : 1.0);
    }

    const double hls = hls_constant(n, spec.alpha);
    const NsrSolver solver(config);
    const auto traj = solver.run(initial, [&](const FluidState& s, const DiagnosticsRow&) {
        const auto terms = stability_terms(spec, s, reference);
        report.times.push_back(s.t);
        report.functional.push_back(terms.total());
        if (terms.norm_squared > 0.0)
            report.cross_bound_ratio =
                std::max(report.cross_bound_ratio, spec.alpha * std::abs(terms.cross) / (hls * terms.norm_squared));
    });
    report.steps = traj.steps;
    report.initial_value = report.functional.front();
    report.max_value = *std::max_element(report.functional.begin(), report.functional.end());
    if (report.initial_value > 0.0)
        report.ratio = report.max_value / report.initial_value;
    else
        report.ratio = report.max_value > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    report.noise_floor = scheme_noise_floor(spec, steady, config.N);
    return report;
}

} // namespace riesz
