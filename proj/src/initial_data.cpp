#include "riesz/initial_data.hpp"

#include "riesz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <map>
#include <numbers>

namespace riesz {

namespace {

constexpr double pi = std::numbers::pi;

double bump(double s2) { return s2 < 1.0 ? std::exp(1.0 / (s2 - 1.0)) : 0.0; }

double mollifier_constant(int n)
{
    static std::mutex mutex;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const double integral =
        quad::adaptive([n](double s) { return bump(s * s) * std::pow(s, n - 1); }, 0.0, 1.0, 1e-14).value;
    const double c = 1.0 / (surface_area(n) * integral);
    cache.emplace(n, c);
    return c;
}

// int_a^b f(y) y^{n-1} dy by an 8-point Gauss rule.
double cell_integral(const std::function<double(double)>& f, int n, double a, double b)
{
    return quad::fixed_gauss([&](double y) { return f(y) * std::pow(y, n - 1); }, a, b, 8);
}

} // namespace

double smooth_step(double t)
{
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double mollify(const std::function<double(double)>& f, int n, double delta, double r)
{
    const double c = mollifier_constant(n) / std::pow(delta, n);
    const double sphere = surface_area(n - 1);
    const auto& gs = quad::gauss_legendre(40);
    const auto& gp = quad::gauss_legendre(48);
    double total = 0.0;
    for (std::size_t i = 0; i < gs.x.size(); ++i) {
        const double s = 0.5 * delta * (gs.x[i] + 1.0);
        const double w = bump((s / delta) * (s / delta)) * std::pow(s, n - 1);
        if (w == 0.0) continue;
        double ang = 0.0;
        for (std::size_t j = 0; j < gp.x.size(); ++j) {
            const double psi = 0.5 * pi * (gp.x[j] + 1.0);
            const double d = std::sqrt(std::max(0.0, r * r + s * s - 2.0 * r * s * std::cos(psi)));
            ang += gp.w[j] * f(d) * (n == 2 ? 1.0 : std::pow(std::sin(psi), n - 2));
        }
        total += gs.w[i] * w * 0.5 * pi * ang;
    }
    return c * sphere * 0.5 * delta * total;
}

double boundary_exponent_beta(const PotentialSpec& spec)
{
    return std::min(0.5, (1.0 - 1.0 / spec.gamma) * spec.n);
}

std::vector<double> annulus_edges(double b, int N)
{
    const int tail = std::max(4, N / 8);
    const double a = 1.0 / b;
    require(b - 1.0 > a, "annulus too thin for the boundary layer");
    std::vector<double> r(N + 1);
    const int core = N - tail;
    const double q = std::log((b - 1.0) / a) / core;
    for (int j = 0; j <= core; ++j) r[j] = a * std::exp(q * j);
    r[0] = a;
    r[core] = b - 1.0;
    for (int j = 1; j <= tail; ++j) r[core + j] = b - 1.0 + static_cast<double>(j) / tail;
    r[N] = b;
    return r;
}

FluidState build_initial_data(const PotentialSpec& spec, const RadialField& rho0, const RadialField& m0,
                              double epsilon, double b, int N)
{
    spec.validate();
    validate_field(rho0);
    validate_field(m0);
    require(epsilon > 0.0 && b > 1.0 && N >= 16, "need epsilon > 0, b > 1 and N >= 16");
    for (double v : rho0.values) require(v >= 0.0, "initial density must be nonnegative");
    const int n = spec.n;
    const double omega = surface_area(n);
    const double M = mass(rho0, n);
    require(M > 0.0, "initial mass must be positive");

    RadialField sqrt_rho0 = rho0;
    for (auto& v : sqrt_rho0.values) v = std::sqrt(v);
    const auto sq0 = [&](double r) { return sqrt_rho0.interpolate(r); };
    const double delta = std::sqrt(epsilon);
    const auto sq_eps_raw = [&](double r) { return mollify(sq0, n, delta, r) + epsilon * std::exp(-r * r); };

    // Mass normalisation of the mollified profile over R^n.
    const double r_far = std::max(rho0.grid.nodes.back() + delta, 8.0);
    double raw_mass = 0.0;
    {
        const int panels = 400;
        for (int i = 0; i < panels; ++i) {
            const double lo = r_far * i / panels, hi = r_far * (i + 1) / panels;
            raw_mass += cell_integral([&](double y) { const double v = sq_eps_raw(y); return v * v; }, n, lo, hi);
        }
    }
    const double scale = std::sqrt(M / (omega * raw_mass));
    const auto sq_eps = [&](double r) { return scale * sq_eps_raw(r); };

    const double beta = boundary_exponent_beta(spec);
    const double tail = std::pow(b, -0.5 * (n - beta));
    const auto cut = [&](double r) { return smooth_step(2.0 * (r - (b - 1.0))); };

    const auto edges = annulus_edges(b, N);
    std::vector<double> A(N), B(N), C(N);
    double sa = 0.0, sb = 0.0, sc = 0.0;
    for (int k = 0; k < N; ++k) {
        const double lo = edges[k], hi = edges[k + 1];
        if (hi <= b - 1.0) {
            A[k] = cell_integral([&](double y) { const double v = sq_eps(y); return v * v; }, n, lo, hi);
            B[k] = C[k] = 0.0;
        } else {
            const auto inner = [&](double y) { return sq_eps(y) * (1.0 - cut(y)); };
            const auto outer = [&](double y) { return tail * cut(y); };
            A[k] = cell_integral([&](double y) { const double v = inner(y); return v * v; }, n, lo, hi);
            B[k] = cell_integral([&](double y) { return inner(y) * outer(y); }, n, lo, hi);
            C[k] = cell_integral([&](double y) { const double v = outer(y); return v * v; }, n, lo, hi);
        }
        sa += A[k];
        sb += B[k];
        sc += C[k];
    }
    const double target = M / omega;
    require(sc < target, "the boundary layer alone carries more than the mass M; increase b");
    const double c = (-sb + std::sqrt(sb * sb - sa * (sc - target))) / sa;
    std::vector<double> cell_mass(N);
    for (int k = 0; k < N; ++k) cell_mass[k] = c * c * A[k] + 2.0 * c * B[k] + C[k];

    const auto profile_sqrt = [&](double r) {
        const double s = cut(r);
        return c * sq_eps(r) * (1.0 - s) + tail * s;
    };

    // Velocity: mollified momentum over sqrt(rho0), then the stress-free correction.
    const double lo_v = 4.0 / b, hi_v = b - 2.0;
    const auto ratio = [&](double r) {
        if (r < lo_v || r > hi_v) return 0.0;
        const double rho = rho0.interpolate(r);
        const double m = m0.interpolate(r);
        return rho > 0.0 ? m / std::sqrt(rho) : 0.0;
    };
    bool any_momentum = false;
    for (double v : m0.values) any_momentum = any_momentum || v != 0.0;
    const double layer = pressure(spec, tail * tail) / (tail * tail);
    std::vector<double> u(N + 1, 0.0);
    for (int j = 1; j <= N; ++j) {
        const double r = edges[j];
        double ut = 0.0;
        if (any_momentum && r > lo_v - 1.0 / b && r < hi_v + 1.0 / b)
            ut = mollify(ratio, n, 1.0 / b, r) / profile_sqrt(r);
        const double s = smooth_step(4.0 * (r - (b - 0.5)));
        double corr = 0.0;
        if (s > 0.0) corr = s * layer * (std::pow(b, n) - std::pow(r, n)) / n / std::pow(r, n - 1) / epsilon;
        u[j] = ut - corr;
    }
    FluidState state = FluidState::from_cells(n, edges, cell_mass, u, 0.0);
    const double lo = *std::min_element(state.rho.begin(), state.rho.end());
    require(lo > 1e-14, "initial density falls below the solver floor; use a heavier-tailed rho0 or a smaller b");
    return state;
}

FluidState profile_state(const PotentialSpec& spec, const std::function<double(double)>& rho,
                         const std::function<double(double)>& u, double a, double b, int N)
{
    spec.validate();
    require(a >= 0.0 && b > a && N >= 2, "profile_state needs 0 <= a < b and N >= 2");
    std::vector<double> edges(N + 1), cell_mass(N), vel(N + 1);
    for (int j = 0; j <= N; ++j) edges[j] = a + (b - a) * j / N;
    edges[N] = b;
    for (int k = 0; k < N; ++k) cell_mass[k] = cell_integral(rho, spec.n, edges[k], edges[k + 1]);
    for (int j = 0; j <= N; ++j) vel[j] = u(edges[j]);
    return FluidState::from_cells(spec.n, edges, cell_mass, vel, 0.0);
}

} // namespace riesz
