#include "riesz/steady_states.hpp"

#include "riesz/functionals.hpp"
#include "riesz/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace riesz {

namespace {

constexpr double support_threshold = 1e-12;

void check_minimizer_regime(const PotentialSpec& spec)
{
    spec.validate();
    require(spec.kappa == 1, "steady states need the attractive sign kappa = 1");
    require(spec.alpha > 0.0 && spec.alpha < spec.n - 1, "steady states need alpha in (0, n-1)");
    require(spec.gamma > (spec.n + spec.alpha) / spec.n, "steady states need gamma > (n + alpha)/n");
}

RadialField profile_from(const RadialGrid& grid, const PotentialSpec& spec, double lambda,
                         const std::vector<double>& phi)
{
    RadialField out(grid, std::vector<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = inverse_enthalpy(spec, lambda - phi[i]);
    return out;
}

// Multiplier giving mass M to [h^{-1}(lambda - phi)]_+ on the grid.
double fit_lambda(const PotentialSpec& spec, const RadialGrid& grid, const std::vector<double>& phi, double M)
{
    const double phi_min = *std::min_element(phi.begin(), phi.end());
    const auto mass_at = [&](double lambda) { return mass(profile_from(grid, spec, lambda, phi), spec.n); };
    double lo = phi_min - 1.0, hi = 0.0;
    for (int k = 0; mass_at(hi) < M; ++k) {
        require(k < 200, "could not bracket the Lagrange multiplier");
        hi += 2.0 * (hi - lo);
    }
    for (int k = 0; k < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)); ++k) {
        const double mid = 0.5 * (lo + hi);
        (mass_at(mid) < M ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Largest radius where lambda - phi changes sign after the last node above the support threshold.
double support_edge(const RadialField& rho, double lambda, const std::vector<double>& phi, bool& touches)
{
    const double peak = *std::max_element(rho.values.begin(), rho.values.end());
    std::size_t last = 0;
    for (std::size_t i = 0; i < rho.size(); ++i)
        if (rho.values[i] > support_threshold * peak) last = i;
    touches = last + 1 >= rho.size();
    if (touches) return rho.grid.nodes.back();
    const double g0 = lambda - phi[last], g1 = lambda - phi[last + 1];
    const double r0 = rho.grid[last], r1 = rho.grid[last + 1];
    if (g0 <= g1 || g1 > 0.0) return r0;
    return r0 + (r1 - r0) * g0 / (g0 - g1);
}

RadialField resample_onto(const RadialGrid& grid, const RadialField& f)
{
    return RadialField::sample(grid, [&](double r) { return std::max(0.0, f.interpolate(r)); });
}

RadialField parabola(const RadialGrid& grid, double radius, double M, int n)
{
    auto f = RadialField::sample(grid, [radius](double r) { return std::max(0.0, 1.0 - (r / radius) * (r / radius)); });
    const double scale = M / mass(f, n);
    for (auto& v : f.values) v *= scale;
    return f;
}

double l1_change(const RadialField& a, const RadialField& b, int n)
{
    RadialField d = a;
    for (std::size_t i = 0; i < d.size(); ++i) d.values[i] = std::abs(a.values[i] - b.values[i]);
    return mass(d, n);
}

} // namespace

double enthalpy(const PotentialSpec& spec, double rho)
{
    return rho > 0.0 ? spec.a0() * spec.gamma / (spec.gamma - 1.0) * std::pow(rho, spec.gamma - 1.0) : 0.0;
}

double inverse_enthalpy(const PotentialSpec& spec, double h)
{
    return h > 0.0 ? std::pow((spec.gamma - 1.0) / (spec.a0() * spec.gamma) * h, 1.0 / (spec.gamma - 1.0)) : 0.0;
}

SteadyState solve_minimizer(const PotentialSpec& spec, double M, const RadialGrid& grid_in, double tol,
                            const MinimizerOptions& options)
{
    check_minimizer_regime(spec);
    require(M > 0.0, "mass must be positive");
    require(tol > 0.0, "tolerance must be positive");
    require(grid_in.size() >= 8, "steady-state grid needs at least 8 nodes");
    require(options.damping > 0.0 && options.damping <= 1.0, "damping must lie in (0, 1]");
    const Interaction op(spec);
    const int n = spec.n;

    RadialGrid grid = grid_in;
    RadialField rho = options.initial ? resample_onto(grid, *options.initial)
                                      : parabola(grid, 0.5 * grid.nodes.back(), M, n);
    if (options.initial) {
        const double m0 = mass(rho, n);
        require(m0 > 0.0, "initial density has no mass on the grid");
        for (auto& v : rho.values) v *= M / m0;
    }

    SteadyState best;
    double best_score = std::numeric_limits<double>::infinity();
    int expansions = 0;
    int total = 0;
    for (int it = 0; it < options.max_iterations; ++it, ++total) {
        const auto phi = op.potential(to_cells(rho), grid.nodes);
        const double lambda = fit_lambda(spec, grid, phi, M);
        const RadialField target = profile_from(grid, spec, lambda, phi);

        SteadyState current;
        current.profile = rho;
        current.lambda = lambda;
        current.mass = mass(rho, n);
        current.iterations = total;
        bool touches = false;
        current.support_radius = support_edge(rho, lambda, phi, touches);

        const double peak = *std::max_element(rho.values.begin(), rho.values.end());
        double scale = 0.0, residual = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) scale = std::max(scale, std::abs(phi[i]));
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (rho.values[i] > support_threshold * peak)
                residual = std::max(residual, std::abs(enthalpy(spec, rho.values[i]) + phi[i] - lambda));
        residual /= scale;
        const double change = l1_change(target, rho, n) / M;

        if (touches || current.support_radius > 0.9 * grid.nodes.back()) {
            require(expansions < options.max_expansions, "support keeps reaching the end of the grid");
            ++expansions;
            const double r_max = 1.5 * grid.nodes.back();
            grid = RadialGrid::uniform(r_max / grid.size(), r_max, grid.size());
            rho = resample_onto(grid, rho);
            const double m0 = mass(rho, n);
            for (auto& v : rho.values) v *= M / m0;
            it = -1;
            continue;
        }
        if (std::max(change, residual) < best_score) {
            best_score = std::max(change, residual);
            best = current;
        }
        if (change < tol && residual < tol) {
            current.free_energy = riesz::free_energy(spec, rho);
            return current;
        }
        for (std::size_t i = 0; i < grid.size(); ++i)
            rho.values[i] = (1.0 - options.damping) * rho.values[i] + options.damping * target.values[i];
    }
    best.free_energy = riesz::free_energy(spec, best.profile);
    throw SteadyNonConvergence("steady-state fixed point did not converge", best);
}

SteadyState solve_scaled_steady_state(const PotentialSpec& spec, double M, std::size_t nodes, double tol,
                                      int max_iterations)
{
    spec.validate();
    require(spec.kappa == 1, "steady states need the attractive sign kappa = 1");
    require(spec.alpha > 0.0 && spec.alpha < spec.n - 1, "steady states need alpha in (0, n-1)");
    require(spec.gamma != 2.0, "gamma = 2 fixes the support radius; use solve_minimizer");
    require(M > 0.0 && nodes >= 16, "need M > 0 and at least 16 nodes");
    const int n = spec.n;
    const double q = 1.0 / (spec.gamma - 1.0);
    const Interaction op(spec);

    // Nodes k/K for k = 1..nodes with the node K at r = 1.
    const std::size_t K = static_cast<std::size_t>(std::lround(nodes / 1.25));
    std::vector<double> r(nodes);
    for (std::size_t i = 0; i < nodes; ++i) r[i] = static_cast<double>(i + 1) / K;
    const RadialGrid grid(r);
    const std::size_t edge = K - 1;

    RadialField w = RadialField::sample(grid, [](double x) { return std::max(0.0, 1.0 - x * x); });
    for (int it = 0; it < max_iterations; ++it) {
        const auto phi = op.potential(to_cells(w), grid.nodes);
        const double ell = phi[edge];
        RadialField next = w;
        double top = 0.0;
        for (std::size_t i = 0; i < nodes; ++i) {
            next.values[i] = i < edge ? std::pow(std::max(0.0, ell - phi[i]), q) : 0.0;
            top = std::max(top, next.values[i]);
        }
        require(top > 0.0, "scaled iteration lost its support");
        double change = 0.0;
        for (std::size_t i = 0; i < nodes; ++i) {
            next.values[i] /= top;
            change = std::max(change, std::abs(next.values[i] - w.values[i]));
        }
        if (change < tol) {
            // rho1 = mu w solves rho = [C(lambda - Phi * rho)]_+^q with support 1.
            const double C = (spec.gamma - 1.0) / (spec.a0() * spec.gamma);
            const double mu = std::pow(std::pow(C, q) * top, 1.0 / (1.0 - q));
            const double lambda1 = mu * ell;
            const double M1 = mu * mass(next, n);
            // rho_s(r) = A rho1(s r), A = s^{(alpha-n) q/(1-q)}, has mass A s^{-n} M1.
            const double a_exp = (spec.alpha - n) * q / (1.0 - q);
            const double s = std::pow(M / M1, 1.0 / (a_exp - n));
            const double A = std::pow(s, a_exp);
            std::vector<double> rs(nodes), vals(nodes);
            for (std::size_t i = 0; i < nodes; ++i) {
                rs[i] = r[i] / s;
                vals[i] = A * mu * next.values[i];
            }
            SteadyState out;
            out.profile = RadialField(RadialGrid(rs), vals);
            out.lambda = A * std::pow(s, spec.alpha - n) * lambda1;
            out.support_radius = 1.0 / s;
            out.mass = mass(out.profile, n);
            out.free_energy = riesz::free_energy(spec, out.profile);
            out.iterations = it + 1;
            return out;
        }
        for (std::size_t i = 0; i < nodes; ++i) w.values[i] = 0.5 * (w.values[i] + next.values[i]);
        double peak = *std::max_element(w.values.begin(), w.values.end());
        for (auto& v : w.values) v /= peak;
    }
    throw NonConvergenceError("scaled steady-state iteration did not converge");
}

GradientFlow::GradientFlow(const PotentialSpec& spec, std::vector<double> edges, std::vector<double> cell_mass)
    : spec_(spec), op_(spec), r_(std::move(edges)), m_(std::move(cell_mass))
{
    spec_.validate();
    require(r_.size() == m_.size() + 1 && m_.size() >= 2, "gradient flow needs N >= 2 cells and N+1 edges");
    require(r_.front() >= 0.0, "edges must be nonnegative");
    for (std::size_t k = 0; k < m_.size(); ++k) {
        require(r_[k + 1] > r_[k], "edges must increase");
        require(m_[k] > 0.0, "cell masses must be positive");
    }
    refresh_density();
}

void GradientFlow::refresh_density()
{
    const int n = spec_.n;
    rho_.resize(m_.size());
    for (std::size_t k = 0; k < m_.size(); ++k)
        rho_[k] = m_[k] * n / (std::pow(r_[k + 1], n) - std::pow(r_[k], n));
}

std::vector<double> GradientFlow::velocity() const
{
    const int n = spec_.n;
    const std::size_t N = m_.size();
    const auto force = op_.field(cells(), r_);
    std::vector<double> v(N + 1, 0.0);
    for (std::size_t j = 1; j <= N; ++j) {
        const double p_hi = j < N ? pressure(spec_, rho_[j]) : 0.0;
        const double p_lo = pressure(spec_, rho_[j - 1]);
        const double mu = j < N ? 0.5 * (m_[j - 1] + m_[j]) : 0.5 * m_[N - 1];
        v[j] = -(std::pow(r_[j], n - 1) * (p_hi - p_lo) / mu + spec_.kappa * force[j]);
    }
    return v;
}

double GradientFlow::max_speed() const
{
    double top = 0.0;
    for (double x : velocity()) top = std::max(top, std::abs(x));
    return top;
}

double GradientFlow::step(double dt)
{
    require(dt > 0.0, "time step must be positive");
    const int n = spec_.n;
    const std::size_t N = m_.size();
    const auto v = velocity();
    std::vector<double> A(N + 1), c(N);
    for (std::size_t j = 0; j <= N; ++j) A[j] = std::pow(r_[j], n - 1);
    for (std::size_t k = 0; k < N; ++k)
        c[k] = spec_.gamma * pressure(spec_, rho_[k]) * n / (std::pow(r_[k + 1], n) - std::pow(r_[k], n));

    for (int attempt = 0; attempt < 60; ++attempt, dt *= 0.5) {
        // Row j scaled by the edge mass: mu_j dr_j + dt sum_k c_k (A dr)_k-differences = dt mu_j v_j.
        std::vector<double> diag(N), off(N > 1 ? N - 1 : 0), rhs(N);
        for (std::size_t j = 1; j <= N; ++j) {
            const double mu = j < N ? 0.5 * (m_[j - 1] + m_[j]) : 0.5 * m_[N - 1];
            const double c_hi = j < N ? c[j] : 0.0;
            diag[j - 1] = mu + dt * A[j] * A[j] * (c_hi + c[j - 1]);
            if (j < N) off[j - 1] = -dt * A[j] * A[j + 1] * c[j];
            rhs[j - 1] = dt * mu * v[j];
        }
        solve_tridiagonal(diag, off, rhs);
        std::vector<double> trial = r_;
        for (std::size_t j = 1; j <= N; ++j) trial[j] += rhs[j - 1];
        bool ok = true;
        for (std::size_t k = 0; k < N && ok; ++k) {
            if (!(trial[k + 1] > trial[k])) {
                ok = false;
                break;
            }
            const double ratio = (std::pow(trial[k + 1], n) - std::pow(trial[k], n)) /
                                 (std::pow(r_[k + 1], n) - std::pow(r_[k], n));
            ok = ratio > 0.5 && ratio < 2.0;
        }
        if (!ok) continue;
        r_ = std::move(trial);
        refresh_density();
        return dt;
    }
    throw BlowUpError("gradient flow step collapsed a cell");
}

int GradientFlow::relax(double dt, int max_steps)
{
    const double v_scale = max_speed();
    int taken = 0, stalled = 0;
    double h = dt, best = v_scale;
    for (double speed = v_scale; taken < max_steps && speed > 1e-10 * v_scale && stalled < 200; ++taken) {
        const double used = step(h);
        h = used < h ? used : std::min(dt, 1.5 * h);
        speed = max_speed();
        if (speed < 0.9 * best) {
            best = speed;
            stalled = 0;
        } else if (speed < 1e-7 * v_scale) {
            ++stalled;
        }
    }
    return taken;
}

double GradientFlow::free_energy() const { return riesz::free_energy(spec_, cells()); }

double GradientFlow::mass() const
{
    double total = 0.0;
    for (double x : m_) total += x;
    return surface_area(spec_.n) * total;
}

SteadyState gradient_flow_oracle(const PotentialSpec& spec, double M, const RadialGrid& grid, double dt, int steps)
{
    check_minimizer_regime(spec);
    require(M > 0.0 && dt > 0.0 && steps > 0, "need M > 0, dt > 0 and steps > 0");
    require(grid.size() >= 8, "steady-state grid needs at least 8 nodes");
    const int n = spec.n;
    const double omega = surface_area(n);
    const std::size_t N = grid.size() - 1;
    const double R0 = 0.5 * grid.nodes.back();

    // Parabolic start, (1 - r^2/R0^2), on cells uniform in r.
    std::vector<double> edges(N + 1), cell_mass(N);
    for (std::size_t j = 0; j <= N; ++j) edges[j] = R0 * j / N;
    const auto integral = [&](double a, double b) {
        const auto pw = [n](double x, int k) { return std::pow(x, n + k) / (n + k); };
        return (pw(b, 0) - pw(a, 0)) - (pw(b, 2) - pw(a, 2)) / (R0 * R0);
    };
    double total = 0.0;
    for (std::size_t k = 0; k < N; ++k) total += cell_mass[k] = integral(edges[k], edges[k + 1]);
    for (auto& x : cell_mass) x *= M / (omega * total);

    GradientFlow flow(spec, edges, cell_mass);
    const int taken = flow.relax(dt, steps);

    // Enthalpy at cell centroids (radius of the volume midpoint), linear in between, extended to
    // its zero past the last centroid and held constant below the first.
    const auto& r = flow.edges();
    const auto& rho = flow.density();
    std::vector<double> centre(N), hval(N);
    for (std::size_t k = 0; k < N; ++k) {
        centre[k] = std::pow(0.5 * (std::pow(r[k], n) + std::pow(r[k + 1], n)), 1.0 / n);
        hval[k] = enthalpy(spec, rho[k]);
    }
    const double slope = (hval[N - 1] - hval[N - 2]) / (centre[N - 1] - centre[N - 2]);
    const double zero = slope < 0.0 ? centre[N - 1] - hval[N - 1] / slope : r.back();
    const auto h_at = [&](double x) {
        if (x <= centre[0]) return hval[0];
        if (x >= centre[N - 1]) return hval[N - 1] + slope * (x - centre[N - 1]);
        const std::size_t k = static_cast<std::size_t>(std::upper_bound(centre.begin(), centre.end(), x) - centre.begin());
        const double t = (x - centre[k - 1]) / (centre[k] - centre[k - 1]);
        return (1.0 - t) * hval[k - 1] + t * hval[k];
    };
    SteadyState out;
    out.profile = RadialField::sample(grid, [&](double x) { return inverse_enthalpy(spec, h_at(x)); });
    const auto phi = Interaction(spec).potential(flow.cells(), centre);
    double lam = 0.0;
    for (std::size_t k = 0; k < N; ++k) lam += cell_mass[k] * (hval[k] + phi[k]);
    out.lambda = lam * omega / M;
    out.support_radius = zero;
    out.mass = mass(out.profile, n);
    out.free_energy = riesz::free_energy(spec, out.profile);
    out.iterations = taken;
    return out;
}

ElResidual euler_lagrange_residual(const PotentialSpec& spec, const SteadyState& state)
{
    spec.validate();
    validate_field(state.profile);
    const auto& rho = state.profile;
    const double peak = *std::max_element(rho.values.begin(), rho.values.end());
    require(peak > 0.0, "steady state has no support");
    const auto phi = Interaction(spec).potential(to_cells(rho), rho.grid.nodes);
    double scale = 0.0;
    for (double p : phi) scale = std::max(scale, std::abs(p));
    ElResidual out;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (rho.values[i] > support_threshold * peak)
            out.on_support = std::max(out.on_support, std::abs(enthalpy(spec, rho.values[i]) + phi[i] - state.lambda));
        else
            out.off_support = std::max(out.off_support, state.lambda - phi[i]);
    }
    out.on_support /= scale;
    out.off_support = std::max(0.0, out.off_support) / scale;
    return out;
}

SubCriticalResidual sub_critical_steady_residual(const PotentialSpec& spec, const SteadyState& state)
{
    spec.validate();
    const double n = spec.n;
    require(spec.kappa == 1, "needs the attractive sign kappa = 1");
    require(spec.alpha >= n - 2.0 && spec.alpha < n - 1.0 && spec.alpha > 0.0,
            "sub-critical relation needs alpha in [n-2, n-1)");
    require(spec.gamma > 2.0 * n / (2.0 * n - spec.alpha) && spec.gamma < (n + spec.alpha) / n,
            "sub-critical relation needs gamma in (2n/(2n-alpha), (n+alpha)/n)");
    validate_field(state.profile);
    const auto& rho = state.profile;
    const double peak = *std::max_element(rho.values.begin(), rho.values.end());
    require(peak > 0.0, "steady state has no support");
    const auto phi = Interaction(spec).potential(to_cells(rho), rho.grid.nodes);
    const double c = (spec.gamma - 1.0) / spec.gamma;
    const auto ratio = [&](double v) { return spec.a0() * std::pow(v, spec.gamma - 1.0); };
    double sum = 0.0, top = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < rho.size(); ++i)
        if (rho.values[i] > support_threshold * peak) {
            sum += -c * phi[i] - ratio(rho.values[i]);
            top = std::max(top, ratio(rho.values[i]));
            ++count;
        }
    SubCriticalResidual out;
    out.K = sum / count;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double model = std::max(0.0, -c * phi[i] - out.K);
        out.residual = std::max(out.residual, std::abs(ratio(rho.values[i]) - model));
    }
    out.residual /= top;
    return out;
}

} // namespace riesz
