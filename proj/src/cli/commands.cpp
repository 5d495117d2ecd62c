#include "riesz/cli/commands.hpp"

#include "riesz/cli/output.hpp"
#include "riesz/cli/regime.hpp"
#include "riesz/functionals.hpp"
#include "riesz/initial_data.hpp"
#include "riesz/kernel.hpp"
#include "riesz/nsr_solver.hpp"
#include "riesz/radial_ops.hpp"
#include "riesz/stability.hpp"
#include "riesz/steady_states.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>

namespace riesz::cli {

const std::vector<std::string> subcommands = {"simulate",      "steady",       "stability",     "critical-mass",
                                              "phase-diagram", "kernel-table", "sweep-epsilon", "verify"};

namespace {

struct Context {
    const RunManifest& manifest;
    const Config& config;
    Stamp stamp;

    void csv(const std::string& name, const CsvTable& table) const
    {
        write_text(manifest.out_dir, name, table.render(stamp));
    }
    void json(const std::string& name, const JsonObject& body) const
    {
        write_text(manifest.out_dir, name, render_json(stamp, body));
    }
};

PotentialSpec spec_from(const Config& c)
{
    PotentialSpec s;
    s.n = static_cast<int>(c.integer("n", 3));
    s.alpha = c.real("alpha", 1.0);
    s.kappa = static_cast<int>(c.integer("kappa", 1));
    s.gamma = c.real("gamma", 2.0);
    s.validate();
    return s;
}

ForceRoute parse_route(const std::string& name)
{
    if (name == "automatic") return ForceRoute::automatic;
    if (name == "kernel") return ForceRoute::kernel;
    if (name == "local_coulomb") return ForceRoute::local_coulomb;
    throw ParseError("unknown force_route '" + name + "' (automatic, kernel, local_coulomb)");
}

SolverConfig solver_from(const Config& c, const PotentialSpec& spec)
{
    SolverConfig s;
    s.spec = spec;
    s.epsilon = c.real("epsilon", s.epsilon);
    s.b = c.real("b", s.b);
    s.N = static_cast<int>(c.integer("N", s.N));
    s.T = c.real("T", s.T);
    s.cfl = c.real("cfl", s.cfl);
    s.dt_max = c.real("dt_max", s.dt_max);
    s.force_refresh_every = static_cast<int>(c.integer("force_refresh_every", s.force_refresh_every));
    s.output_every = static_cast<int>(c.integer("output_every", s.output_every));
    s.force_route = parse_route(c.text("force_route", "automatic"));
    s.max_steps = c.integer("max_steps", s.max_steps);
    s.validate();
    return s;
}

// Ball of radius `radius` with rho = floor + exp(-(r/w)^2) and u = momentum r.
FluidState smooth_state(const Config& c, const SolverConfig& sc)
{
    const double w = c.real("rho0_width", 0.35);
    const double floor = c.real("floor", 0.01);
    const double momentum = c.real("momentum", 0.0);
    const double radius = c.real("radius", 1.0);
    require(w > 0.0 && radius > 0.0 && floor >= 0.0, "smooth initial data needs rho0_width > 0, radius > 0, floor >= 0");
    return profile_state(
        sc.spec, [=](double r) { return floor + std::exp(-(r / w) * (r / w)); },
        [=](double r) { return momentum * r; }, 0.0, radius, sc.N);
}

// Annulus data from rho0 = A (1 + (r/w)^2)^{-2} with A set so the mass is `mass`, m0 = momentum r rho0.
FluidState annulus_state(const Config& c, const SolverConfig& sc)
{
    const double w = c.real("rho0_width", 1.0);
    const double M = c.real("mass", 1.0);
    const double momentum = c.real("momentum", 0.0);
    require(w > 0.0 && M > 0.0, "annulus initial data needs rho0_width > 0 and mass > 0");
    const auto grid = RadialGrid::geometric(1e-4 / sc.b, 2.0 * sc.b, 2000);
    auto shape = [w](double r) { return 1.0 / ((1.0 + (r / w) * (r / w)) * (1.0 + (r / w) * (r / w))); };
    auto rho0 = RadialField::sample(grid, shape);
    const double scale = M / mass(rho0, sc.spec.n);
    for (auto& v : rho0.values) v *= scale;
    auto m0 = rho0;
    for (std::size_t i = 0; i < m0.size(); ++i) m0.values[i] = momentum * grid[i] * rho0.values[i];
    return build_initial_data(sc.spec, rho0, m0, sc.epsilon, sc.b, sc.N);
}

FluidState initial_state(const Config& c, const SolverConfig& sc)
{
    const std::string kind = c.text("initial", "smooth");
    if (kind == "smooth") return smooth_state(c, sc);
    if (kind == "annulus") return annulus_state(c, sc);
    throw ParseError("unknown initial '" + kind + "' (smooth, annulus)");
}

JsonObject spec_json(const PotentialSpec& s)
{
    JsonObject o;
    o.add("n", s.n).add("alpha", s.alpha).add("kappa", s.kappa).add("gamma", s.gamma);
    return o;
}

JsonObject regime_json(const RegimeReport& r)
{
    JsonObject o;
    std::string cases, bd;
    for (const auto& c : r.existence_cases) cases += (cases.empty() ? "" : ",") + c;
    for (const auto& b : r.bd_entropy) bd += (bd.empty() ? "" : ",") + b;
    o.add("gamma_lower_bound", r.gamma_lower_bound)
        .add("gamma_hypothesis", r.gamma_hypothesis)
        .add("bd_gamma_threshold", r.bd_gamma_threshold)
        .add("existence_cases", cases)
        .add("energy_case", r.energy_case)
        .add("bd_entropy", bd)
        .add("stability_regime", r.stability_regime)
        .add("subcritical_band", r.subcritical_band);
    if (r.critical_mass) o.add("critical_mass_lower_bound", *r.critical_mass);
    else o.add_null("critical_mass_lower_bound");
    if (r.mass_below_critical) o.add("mass_below_critical", *r.mass_below_critical);
    else o.add_null("mass_below_critical");
    std::string warnings;
    for (const auto& w : r.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
    o.add("warnings", warnings);
    return o;
}

RegimeReport report_regime(const PotentialSpec& spec, double M, std::optional<double> E0)
{
    auto r = validate_regime(spec, M, E0);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    return r;
}

const std::vector<std::string> diagnostics_columns = {"t",   "mass",     "E_kin", "E_int",   "E_pot",
                                                      "E_tot", "bd_entropy", "boundary_pressure", "b_t",
                                                      "min_rho", "dissipation_rate"};

std::vector<double> diagnostics_values(const DiagnosticsRow& d)
{
    return {d.t,         d.mass,       d.energy.kinetic,    d.energy.internal, d.energy.interaction, d.energy.total,
            d.bd_entropy, d.boundary_pressure, d.b_t, d.min_rho, d.dissipation_rate};
}

JsonObject state_json(const FluidState& s)
{
    JsonObject o;
    o.add("t", s.t).add("b_t", s.b_t).add("cells", static_cast<long>(s.cells()));
    o.add("x", s.x).add("r", s.r).add("rho", s.rho).add("u", s.u);
    return o;
}

void simulate(const Context& ctx)
{
    const auto spec = spec_from(ctx.config);
    const auto sc = solver_from(ctx.config, spec);
    const FluidState initial = initial_state(ctx.config, sc);
    const NsrSolver solver(sc);
    const double M = initial.total_mass(spec.n);
    const double E0 = solver.diagnostics(initial).energy.total;
    // The critical mass takes the radial energy, without the sphere area factor.
    const auto regime = report_regime(spec, M, E0 / surface_area(spec.n));

    CsvTable table(diagnostics_columns);
    auto observer = [&](const FluidState&, const DiagnosticsRow& row) { table.row(diagnostics_values(row)); };
    Trajectory traj;
    try {
        traj = solver.run(initial, observer);
    } catch (const SolverAbort& abort) {
        ctx.csv("diagnostics.csv", table);
        JsonObject body;
        body.add("status", "aborted").add("reason", abort.what()).add("spec", spec_json(spec));
        body.add("state", state_json(abort.state));
        ctx.json("final_state.json", body);
        throw;
    }
    ctx.csv("diagnostics.csv", table);
    JsonObject body;
    body.add("status", "ok").add("spec", spec_json(spec)).add("epsilon", sc.epsilon).add("mass", M);
    body.add("initial_energy", E0).add("steps", traj.steps).add("regime", regime_json(regime));
    body.add("state", state_json(traj.final_state));
    ctx.json("final_state.json", body);
}

RadialGrid steady_grid(const Config& c, double default_rmax)
{
    const long nodes = c.integer("grid_nodes", 400);
    const double rmax = c.real("grid_rmax", default_rmax);
    require(nodes >= 16 && rmax > 0.0, "steady grid needs grid_nodes >= 16 and grid_rmax > 0");
    return RadialGrid::uniform(rmax / nodes, rmax, static_cast<std::size_t>(nodes));
}

SteadyState solve_steady(const Config& c, const PotentialSpec& spec, double M)
{
    const double tol = c.real("tol", 1e-10);
    if (spec.gamma > (spec.n + spec.alpha) / spec.n)
        return solve_minimizer(spec, M, steady_grid(c, 0.8), tol);
    return solve_scaled_steady_state(spec, M, static_cast<std::size_t>(c.integer("grid_nodes", 400)), tol);
}

void steady(const Context& ctx)
{
    const auto spec = spec_from(ctx.config);
    const double M = ctx.config.real("mass", 1.0);
    const auto regime = report_regime(spec, M, std::nullopt);
    const SteadyState st = solve_steady(ctx.config, spec, M);

    JsonObject body;
    body.add("spec", spec_json(spec)).add("regime", regime_json(regime));
    body.add("lambda", st.lambda).add("support_radius", st.support_radius).add("free_energy", st.free_energy);
    body.add("mass", st.mass).add("iterations", st.iterations);
    if (spec.gamma > (spec.n + spec.alpha) / spec.n) {
        const auto el = euler_lagrange_residual(spec, st);
        body.add("el_residual_support", el.on_support).add("el_residual_outside", el.off_support);
        const long flow_steps = ctx.config.integer("flow_steps", 0);
        if (flow_steps > 0) {
            const auto gf = gradient_flow_oracle(spec, M, st.profile.grid, ctx.config.real("flow_dt", 1e-2),
                                                 static_cast<int>(flow_steps));
            RadialField diff = st.profile;
            for (std::size_t i = 0; i < diff.size(); ++i)
                diff.values[i] = std::abs(st.profile.values[i] - gf.profile.values[i]);
            body.add("gradient_flow_l1_gap", mass(diff, spec.n) / M);
            body.add("gradient_flow_support_radius", gf.support_radius);
        }
    } else {
        const auto sub = sub_critical_steady_residual(spec, st);
        body.add("subcritical_residual", sub.residual).add("subcritical_K", sub.K);
    }
    body.add("r", st.profile.grid.nodes).add("rho", st.profile.values);
    ctx.json("steady_state.json", body);
}

void stability(const Context& ctx)
{
    const auto spec = spec_from(ctx.config);
    const double M = ctx.config.real("mass", 1.0);
    const auto regime = report_regime(spec, M, std::nullopt);
    const SteadyState st = solve_minimizer(spec, M, steady_grid(ctx.config, 0.8), ctx.config.real("tol", 1e-10));

    SolverConfig sc = stability_solver_config(spec);
    sc.epsilon = ctx.config.real("epsilon", sc.epsilon);
    sc.N = static_cast<int>(ctx.config.integer("N", sc.N));
    sc.T = ctx.config.real("T", sc.T);
    sc.cfl = ctx.config.real("cfl", sc.cfl);
    sc.output_every = static_cast<int>(ctx.config.integer("output_every", sc.output_every));
    sc.max_steps = ctx.config.integer("max_steps", sc.max_steps);

    const auto mode = parse_perturbation_mode(ctx.config.text("mode", "bump"));
    const auto amplitudes = ctx.config.reals("amplitudes", {1e-2});
    const bool has_baseline = ctx.config.has("baseline_ratio");

    std::vector<JsonObject> runs;
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
        const auto rep = stability_run(spec, st, {mode, amplitudes[k]}, sc);
        CsvTable table({"t", "functional"});
        for (std::size_t i = 0; i < rep.times.size(); ++i) table.row({rep.times[i], rep.functional[i]});
        const std::string name = fmt::format("stability_{}_{}.csv", to_string(mode), k);
        ctx.csv(name, table);

        JsonObject run;
        run.add("mode", to_string(mode)).add("amplitude", amplitudes[k]).add("series", name);
        run.add("initial_value", rep.initial_value).add("max_value", rep.max_value).add("ratio", rep.ratio);
        run.add("noise_floor", rep.noise_floor).add("identity_gap", rep.identity_gap);
        run.add("cross_bound_ratio", rep.cross_bound_ratio).add("steps", rep.steps);
        if (has_baseline) {
            const double base = ctx.config.real("baseline_ratio");
            run.add("baseline_ratio", base).add("within_baseline", rep.ratio <= base * (1.0 + 1e-2));
        }
        runs.push_back(run);
    }
    JsonObject body;
    body.add("spec", spec_json(spec)).add("regime", regime_json(regime)).add("mass", M);
    body.add("steady_support_radius", st.support_radius).add("epsilon", sc.epsilon).add("N", sc.N).add("T", sc.T);
    body.add("runs", runs);
    ctx.json("stability_summary.json", body);
}

void critical_mass_command(const Context& ctx)
{
    const auto spec = spec_from(ctx.config);
    const std::optional<double> E0 =
        ctx.config.has("energy") ? std::optional<double>(ctx.config.real("energy")) : std::nullopt;
    const double M = ctx.config.real("mass", 1.0);
    const auto regime = report_regime(spec, M, E0);
    const auto rep = critical_mass(spec.n, spec.gamma, spec.alpha, E0.value_or(0.0));
    JsonObject body;
    body.add("spec", spec_json(spec)).add("mass", M);
    if (E0) body.add("E0", *E0);
    else body.add_null("E0");
    body.add("B", rep.B).add("Mc", rep.Mc).add("constant_used", rep.constant_used).add("lower_bound", rep.lower_bound);
    body.add("exponent", spec.alpha / (spec.n * (spec.gamma - 1.0)));
    body.add("regime", regime_json(regime));
    ctx.json("critical_mass.json", body);
}

void phase_diagram(const Context& ctx)
{
    const long lo = ctx.config.integer("n_min", 2), hi = ctx.config.integer("n_max", 200);
    require(lo >= 2 && hi >= lo, "phase diagram needs 2 <= n_min <= n_max");
    CsvTable table({"n", "has_band", "alpha_minus", "alpha_plus"});
    for (long n = lo; n <= hi; ++n) {
        const auto band = critical_alpha_band(static_cast<int>(n));
        table.row_text({std::to_string(n), band ? "1" : "0", band ? format_real(band->first) : "nan",
                        band ? format_real(band->second) : "nan"});
    }
    ctx.csv("phase_diagram.csv", table);
}

void kernel_table(const Context& ctx)
{
    const auto spec = spec_from(ctx.config);
    const auto radii = ctx.config.reals("radii", {0.25, 0.5, 1.0, 2.0, 4.0});
    for (double r : radii) require(r > 0.0, "radii must be positive");
    CsvTable table({"r", "eta", "K", "omega"});
    for (double r : radii)
        for (double eta : radii) {
            // Both kernels are singular on the diagonal once alpha >= n-2; the force kernel always is.
            const bool diagonal = r == eta;
            const double K = diagonal && spec.alpha >= spec.n - 2.0 ? NAN : kernel_K(spec, r, eta);
            const double w = diagonal ? NAN : kernel_omega(spec, r, eta);
            table.row({r, eta, K, w});
        }
    ctx.csv("kernel_table.csv", table);
}

void sweep_epsilon(const Context& ctx)
{
    const auto spec = spec_from(ctx.config);
    Config c = ctx.config;
    if (!c.has("N")) c.set("N", "128");
    if (!c.has("T")) c.set("T", "0.2");
    const auto sc = solver_from(c, spec);
    const FluidState initial = smooth_state(c, sc);
    const auto eps = c.reals("eps_list", {1e-1, 3e-2, 1e-2});
    const int checkpoints = static_cast<int>(c.integer("checkpoints", 4));
    const auto tab = vanishing_viscosity_sweep(sc, initial, eps, checkpoints, ctx.manifest.threads);

    CsvTable table({"t", "eps_a", "eps_b", "l1", "lgamma"});
    for (const auto& p : tab.pairs) table.row({p.time, p.eps_a, p.eps_b, p.l1, p.lgamma});
    ctx.csv("sweep_epsilon.csv", table);
    JsonObject body;
    body.add("spec", spec_json(spec)).add("eps", tab.eps).add("times", tab.times).add("cauchy", tab.cauchy);
    ctx.json("sweep_summary.json", body);
}

// Seeded invariant suite. Each check yields a measured value and the bound it must respect.
struct Check {
    std::string name;
    double value;
    double bound;
    bool pass;
};

CellDensity random_cells(std::mt19937_64& rng, double r_max, int cells)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CellDensity f;
    f.edges.push_back(0.0);
    for (int k = 0; k < cells; ++k) f.edges.push_back(f.edges.back() + (0.2 + unit(rng)) * r_max / cells);
    for (int k = 0; k < cells; ++k) f.values.push_back(unit(rng));
    return f;
}

std::vector<Check> verify_suite(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Check> checks;
    auto add = [&](std::string name, double value, double bound) {
        checks.push_back({std::move(name), value, bound, std::isfinite(value) && value <= bound});
    };

    {
        double worst = 0.0;
        for (int trial = 0; trial < 24; ++trial) {
            const int n = trial % 2 ? 3 : 2;
            PotentialSpec s{n, -0.9 + unit(rng) * (n - 1.0 + 0.8), 1, 2.0};
            const double r = 0.1 + 3.0 * unit(rng), eta = r * (1.2 + 2.0 * unit(rng));
            const double a = kernel_K(s, r, eta), b = kernel_K(s, eta, r);
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
        }
        add("kernel_symmetry", worst, 1e-9);
    }
    {
        PotentialSpec s{3, 1.0, 1, 2.0};
        const auto grid = RadialGrid::uniform(1.0 / 64, 1.0, 64);
        const double c1 = 1.0 + unit(rng), c2 = 2.0 + 4.0 * unit(rng);
        const auto rho = RadialField::sample(grid, [=](double r) { return c1 * std::exp(-c2 * r * r); });
        const auto field = potential_derivative(s, rho, ForceRoute::kernel);
        const auto enclosed = cumulative_radial_integral(rho, 3);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double want = surface_area(3) * enclosed[i] / (grid[i] * grid[i]);
            worst = std::max(worst, std::abs(field.values[i] - want) / std::abs(want));
        }
        add("coulomb_identity", worst, 1e-8);
    }
    {
        double worst = 0.0, asym = 0.0;
        for (int trial = 0; trial < 8; ++trial) {
            const int n = trial % 2 ? 3 : 2;
            PotentialSpec s{n, 0.2 + unit(rng) * (n - 1.4), 1, 2.0};
            const Interaction op(s);
            const auto f = random_cells(rng, 2.0, 12), g = random_cells(rng, 2.0, 9);
            const double norm = lq_norm(f, 2.0 * n / (2.0 * n - s.alpha), n);
            worst = std::max(worst, s.alpha * std::abs(op.pairing(f, f)) / (hls_constant(n, s.alpha) * norm * norm));
            const double fg = op.pairing(f, g), gf = op.pairing(g, f);
            asym = std::max(asym, std::abs(fg - gf) / std::abs(fg));
        }
        add("hls_ratio", worst, 1.0);
        add("pairing_symmetry", asym, 1e-12);
    }
    {
        const auto b20 = critical_alpha_band(20);
        const auto b19 = critical_alpha_band(19);
        const double miss = b20 ? std::abs(b20->first - 4.0) + std::abs(b20->second - 5.0) : 1.0;
        add("critical_band", miss + (b19 ? 1.0 : 0.0), 0.0);
    }
    for (int kappa : {1, -1}) {
        PotentialSpec s{3, 1.0, kappa, 2.0};
        SolverConfig sc;
        sc.spec = s;
        sc.N = 32;
        sc.T = 0.05;
        sc.output_every = 1;
        sc.epsilon = 0.05 + 0.05 * unit(rng);
        const double width = 0.3 + 0.2 * unit(rng);
        const auto init = profile_state(
            s, [=](double r) { return 0.01 + std::exp(-(r / width) * (r / width)); }, [](double) { return 0.0; }, 0.0,
            1.0, sc.N);
        const auto traj = NsrSolver(sc).run(init);
        const double M0 = traj.rows.front().mass;
        const double E0 = std::abs(traj.rows.front().energy.total);
        double drift = 0.0, rise = 0.0;
        for (std::size_t i = 1; i < traj.rows.size(); ++i) {
            drift = std::max(drift, std::abs(traj.rows[i].mass - M0) / M0);
            rise = std::max(rise, (traj.rows[i].energy.total - traj.rows[i - 1].energy.total) / E0);
        }
        const std::string tag = kappa == 1 ? "attractive" : "repulsive";
        add("mass_drift_" + tag, drift, 1e-10);
        add("energy_increase_" + tag, rise, 1e-12);
    }
    {
        const auto grid = RadialGrid::uniform(0.01, 1.0, 100);
        const auto rho = RadialField::sample(grid, [](double r) { return std::max(0.0, 1.0 - r * r); });
        const auto [p, m] = perturb(rho, 3, {PerturbationMode::bump, 0.0});
        double diff = 0.0;
        for (std::size_t i = 0; i < rho.size(); ++i) diff += std::abs(p.values[i] - rho.values[i]) + std::abs(m.values[i]);
        add("zero_perturbation", diff, 0.0);
    }
    {
        Config c;
        c.set("alpha", format_real(unit(rng)));
        c.set("eps_list", "0.1, 0.03");
        const auto again = Config::parse(c.canonical());
        add("config_round_trip", again.canonical() == c.canonical() ? 0.0 : 1.0, 0.0);
    }
    return checks;
}

bool verify(const Context& ctx)
{
    const auto checks = verify_suite(ctx.manifest.seed);
    CsvTable table({"check", "value", "bound", "pass"});
    std::vector<JsonObject> items;
    bool all = true;
    for (const auto& c : checks) {
        table.row_text({c.name, format_real(c.value), format_real(c.bound), c.pass ? "1" : "0"});
        JsonObject o;
        o.add("check", c.name).add("value", c.value).add("bound", c.bound).add("pass", c.pass);
        items.push_back(o);
        all = all && c.pass;
        if (!c.pass) std::cerr << "verify: " << c.name << " failed (" << format_real(c.value) << " > " << format_real(c.bound) << ")\n";
    }
    ctx.csv("verify_report.csv", table);
    JsonObject body;
    body.add("seed", static_cast<long>(ctx.manifest.seed)).add("all_pass", all).add("checks", items);
    ctx.json("verify_report.json", body);
    return all;
}

} // namespace

std::string manifest_text(const RunManifest& manifest, const Config& config)
{
    return "riesz_gas\nversion=" + manifest.version + "\nsubcommand=" + manifest.subcommand +
           "\nseed=" + std::to_string(manifest.seed) + "\n" + config.canonical();
}

bool execute(const RunManifest& manifest)
{
    if (std::find(subcommands.begin(), subcommands.end(), manifest.subcommand) == subcommands.end())
        throw ParseError("unknown subcommand '" + manifest.subcommand + "'");
    const bool optional_config = manifest.subcommand == "phase-diagram" || manifest.subcommand == "verify";
    Config config;
    if (manifest.config_path) config = Config::load(*manifest.config_path);
    else if (!optional_config) throw ParseError(manifest.subcommand + " needs --config");
    require(manifest.threads >= 1, "threads must be at least 1");

    const Context ctx{manifest, config, Stamp{manifest.version, sha256_hex(manifest_text(manifest, config)), manifest.subcommand}};
    const auto& cmd = manifest.subcommand;
    if (cmd == "simulate") simulate(ctx);
    else if (cmd == "steady") steady(ctx);
    else if (cmd == "stability") stability(ctx);
    else if (cmd == "critical-mass") critical_mass_command(ctx);
    else if (cmd == "phase-diagram") phase_diagram(ctx);
    else if (cmd == "kernel-table") kernel_table(ctx);
    else if (cmd == "sweep-epsilon") sweep_epsilon(ctx);
    else return verify(ctx);
    return true;
}

int run_command(const RunManifest& manifest)
{
    try {
        return execute(manifest) ? 0 : 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BlowUpError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const NonConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace riesz::cli
