#include "riesz/functionals.hpp"

#include "riesz/errors.hpp"
#include "riesz/interaction.hpp"
#include "riesz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace riesz {

namespace {

constexpr double pi = std::numbers::pi;

void check_density(const RadialField& rho)
{
    validate_field(rho);
    for (double v : rho.values) require(v >= 0.0, "density must be nonnegative");
}

RadialField map_values(const RadialField& f, const auto& g)
{
    RadialField out = f;
    for (auto& v : out.values) v = g(v);
    return out;
}

double internal_integrand(const PotentialSpec& spec, double rho)
{
    return rho > 0.0 ? rho * internal_energy_density(spec, rho) : 0.0;
}

} // namespace

EnergyBreakdown EnergyBreakdown::make(double kinetic, double internal, double interaction)
{
    EnergyBreakdown e;
    e.kinetic = kinetic;
    e.internal = internal;
    e.interaction = interaction;
    e.total = kinetic + internal + interaction;
    return e;
}

double mass(const RadialField& rho, int n) { return surface_area(n) * radial_integral(rho, n); }

double lq_norm(const RadialField& f, double q, int n)
{
    require(q >= 1.0, "lq_norm needs q >= 1");
    const auto g = map_values(f, [q](double v) { return std::pow(std::abs(v), q); });
    return std::pow(surface_area(n) * radial_integral(g, n), 1.0 / q);
}

double internal_energy(const PotentialSpec& spec, const RadialField& rho)
{
    spec.validate();
    check_density(rho);
    const auto g = map_values(rho, [&](double v) { return internal_integrand(spec, v); });
    return surface_area(spec.n) * radial_integral(g, spec.n);
}

double kinetic_energy(const RadialField& rho, const RadialField& m, int n)
{
    check_density(rho);
    validate_field(m);
    require(rho.grid.nodes == m.grid.nodes, "density and momentum must share a grid");
    RadialField g = rho;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (rho.values[i] == 0.0) {
            require(m.values[i] == 0.0, "momentum must vanish on vacuum");
            g.values[i] = 0.0;
        } else {
            g.values[i] = 0.5 * m.values[i] * m.values[i] / rho.values[i];
        }
    }
    return surface_area(n) * radial_integral(g, n);
}

double interaction_energy(const PotentialSpec& spec, const RadialField& rho)
{
    spec.validate();
    check_density(rho);
    const Interaction op(spec);
    const auto cells = to_cells(rho);
    return 0.5 * spec.kappa * op.pairing(cells, cells);
}

EnergyBreakdown energy(const PotentialSpec& spec, const RadialField& rho, const RadialField& m)
{
    auto e = EnergyBreakdown::make(kinetic_energy(rho, m, spec.n), internal_energy(spec, rho),
                                   interaction_energy(spec, rho));
    if (spec.alpha <= 0.0) {
        RadialField g = rho;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double s = 1.0 + g.grid[i] * g.grid[i];
            g.values[i] *= spec.alpha == 0.0 ? std::log(s) : std::pow(s, -0.5 * spec.alpha);
        }
        e.moment = surface_area(spec.n) * radial_integral(g, spec.n);
    }
    return e;
}

double free_energy(const PotentialSpec& spec, const RadialField& rho)
{
    PotentialSpec attractive = spec;
    attractive.kappa = 1;
    return internal_energy(spec, rho) + interaction_energy(attractive, rho);
}

double distance_d(const PotentialSpec& spec, const RadialField& rho, const RadialField& rho_tilde)
{
    spec.validate();
    check_density(rho);
    check_density(rho_tilde);
    const double m1 = mass(rho, spec.n), m2 = mass(rho_tilde, spec.n);
    require(std::abs(m1 - m2) <= 1e-8 * std::max(std::abs(m1), std::abs(m2)),
            "distance_d needs equal masses");
    const Interaction op(spec);
    const auto f = to_cells(rho), g = to_cells(rho_tilde);
    const auto edges = merge_edges(f.edges, g.edges);
    auto diff = f.resample(edges);
    const auto gg = g.resample(edges);
    for (std::size_t k = 0; k < diff.cells(); ++k) diff.values[k] -= gg.values[k];
    return internal_energy(spec, rho) - internal_energy(spec, rho_tilde) + op.pairing(diff, gg);
}

double mass(const CellDensity& rho, int n)
{
    double total = 0.0;
    for (std::size_t k = 0; k < rho.cells(); ++k) total += rho.values[k] * rho.volume(k, n);
    return surface_area(n) * total;
}

double lq_norm(const CellDensity& f, double q, int n)
{
    require(q >= 1.0, "lq_norm needs q >= 1");
    double total = 0.0;
    for (std::size_t k = 0; k < f.cells(); ++k) total += std::pow(std::abs(f.values[k]), q) * f.volume(k, n);
    return std::pow(surface_area(n) * total, 1.0 / q);
}

double internal_energy(const PotentialSpec& spec, const CellDensity& rho)
{
    spec.validate();
    double total = 0.0;
    for (std::size_t k = 0; k < rho.cells(); ++k) {
        require(rho.values[k] >= 0.0, "density must be nonnegative");
        total += internal_integrand(spec, rho.values[k]) * rho.volume(k, spec.n);
    }
    return surface_area(spec.n) * total;
}

double interaction_energy(const PotentialSpec& spec, const CellDensity& rho)
{
    spec.validate();
    return 0.5 * spec.kappa * Interaction(spec).pairing(rho, rho);
}

double free_energy(const PotentialSpec& spec, const CellDensity& rho)
{
    PotentialSpec attractive = spec;
    attractive.kappa = 1;
    return internal_energy(spec, rho) + interaction_energy(attractive, rho);
}

double distance_d(const PotentialSpec& spec, const CellDensity& rho, const CellDensity& rho_tilde)
{
    spec.validate();
    const double m1 = mass(rho, spec.n), m2 = mass(rho_tilde, spec.n);
    require(std::abs(m1 - m2) <= 1e-8 * std::max(std::abs(m1), std::abs(m2)),
            "distance_d needs equal masses");
    const auto edges = merge_edges(rho.edges, rho_tilde.edges);
    auto diff = rho.resample(edges);
    const auto gg = rho_tilde.resample(edges);
    for (std::size_t k = 0; k < diff.cells(); ++k) diff.values[k] -= gg.values[k];
    return internal_energy(spec, rho) - internal_energy(spec, rho_tilde) + Interaction(spec).pairing(diff, gg);
}

double hls_constant(int n, double alpha)
{
    require(n >= 1 && alpha > 0.0 && alpha < n, "hls_constant needs alpha in (0, n)");
    const double lead = std::pow(pi, 0.5 * alpha) * std::tgamma(0.5 * (n - alpha)) / std::tgamma(n - 0.5 * alpha);
    return lead * std::pow(std::tgamma(0.5 * n) / std::tgamma(static_cast<double>(n)), (alpha - n) / n);
}

double riesz_composition_constant(int n, double alpha, double beta)
{
    require(alpha > 0.0 && alpha < n && beta > 0.0 && beta < n && alpha + beta < n,
            "composition constant needs 0 < alpha, beta and alpha + beta < n");
    const double num = std::pow(pi, 0.5 * n) * std::tgamma(0.5 * alpha) * std::tgamma(0.5 * beta) *
                       std::tgamma(0.5 * (n - alpha - beta));
    const double den = std::tgamma(0.5 * (n - alpha)) * std::tgamma(0.5 * (n - beta)) *
                       std::tgamma(0.5 * (alpha + beta));
    return num / den;
}

double fractional_laplacian_constant(int n, double alpha)
{
    if (n == 2 && alpha == 0.0) return 2.0 * pi;
    require(alpha > std::max(0.0, n - 2.0) && alpha < n,
            "fractional_laplacian_constant needs alpha > max(0, n-2), or (n, alpha) = (2, 0)");
    return std::pow(2.0, n - alpha) * std::pow(pi, 0.5 * n) * std::tgamma(0.5 * (n - alpha)) /
           (alpha * std::tgamma(0.5 * alpha));
}

namespace {

void check_case2_range(int n, double gamma, double alpha)
{
    require(n >= 2 && alpha > 0.0 && alpha < n, "alpha must lie in (0, n)");
    const double lo = 2.0 * n / (2.0 * n - alpha);
    const double hi = (n + alpha) / static_cast<double>(n);
    require(gamma > lo && gamma <= hi * (1.0 + 1e-14),
            "gamma must lie in (2n/(2n-alpha), (n+alpha)/n]");
}

bool at_upper_end(int n, double gamma, double alpha)
{
    const double hi = (n + alpha) / static_cast<double>(n);
    return std::abs(gamma - hi) <= 1e-14 * hi;
}

} // namespace

double b_constant(int n, double gamma, double alpha, double sharp_constant)
{
    check_case2_range(n, gamma, alpha);
    require(sharp_constant > 0.0, "sharp constant must be positive");
    const double a0 = (gamma - 1.0) * (gamma - 1.0) / (4.0 * gamma);
    const double e = alpha / (n * (gamma - 1.0));
    return sharp_constant / (2.0 * alpha) * std::pow(surface_area(n), e - 1.0) *
           std::pow((gamma - 1.0) / a0, e);
}

CriticalMassReport critical_mass(int n, double gamma, double alpha, double E0, double sharp_constant)
{
    CriticalMassReport rep;
    rep.n = n;
    rep.alpha = alpha;
    rep.gamma = gamma;
    rep.E0 = E0;
    rep.B = b_constant(n, gamma, alpha, sharp_constant);
    if (at_upper_end(n, gamma, alpha)) {
        rep.Mc = std::pow(rep.B, -n / (n - alpha));
    } else {
        require(E0 > 0.0, "the gamma < (n+alpha)/n branch needs E0 > 0");
        const double g1 = gamma - 1.0;
        const double den = 2.0 * n - gamma * (2.0 * n - alpha);
        rep.Mc = std::pow(alpha * rep.B / (n * g1), n * g1 / den) *
                 std::pow(alpha * E0 / (alpha - n * g1), (alpha - n * g1) / den);
    }
    return rep;
}

CriticalMassReport critical_mass(int n, double gamma, double alpha, double E0)
{
    auto rep = critical_mass(n, gamma, alpha, E0, hls_constant(n, alpha));
    rep.constant_used = "hls_constant(n, alpha)";
    return rep;
}

std::optional<std::pair<double, double>> critical_alpha_band(int n)
{
    require(n >= 2, "critical_alpha_band needs n >= 2");
    const double disc = static_cast<double>(n) * n - 20.0 * n + 4.0;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    return std::make_pair((n - 2.0 - root) / 4.0, (n - 2.0 + root) / 4.0);
}

double EnergyBoundMap::coefficient() const
{
    const double e = (gamma * (2.0 * n - alpha) - 2.0 * n) / (n * (gamma - 1.0));
    return B * std::pow(M, e);
}

double EnergyBoundMap::exponent() const { return alpha / (n * (gamma - 1.0)); }

double EnergyBoundMap::value(double s) const { return s - coefficient() * std::pow(s, exponent()); }

double EnergyBoundMap::derivative(double s) const
{
    return 1.0 - coefficient() * exponent() * std::pow(s, exponent() - 1.0);
}

double EnergyBoundMap::second_derivative(double s) const
{
    const double g1 = gamma - 1.0;
    return -alpha * (alpha - n * g1) / (n * n * g1 * g1) * coefficient() *
           std::pow(s, (alpha - 2.0 * n * g1) / (n * g1));
}

double EnergyBoundMap::coercivity() const
{
    if (at_upper_end(n, gamma, alpha)) return 1.0 - B * std::pow(M, (n - alpha) / n);
    return (alpha - n * (gamma - 1.0)) / alpha;
}

namespace {

// int_a^b g(s) (1 - s^2)^b ds with a, b on the same side of 0.
double weighted_piece(const std::function<double(double)>& g, double a, double b, double bexp)
{
    const auto& rule = quad::gauss_legendre(64);
    double sum = 0.0;
    if (bexp >= 0.0 || (a > -1.0 && b < 1.0)) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double s = c + h * rule.x[i];
            sum += rule.w[i] * g(s) * std::pow(std::max(0.0, 1.0 - s * s), bexp);
        }
        return sum * h;
    }
    // Endpoint map s = 1 - L tau^k (or -1 + L tau^k) with k = 1/(b+1) absorbs (1-|s|)^b.
    const double k = 1.0 / (bexp + 1.0);
    const bool upper = b >= 1.0;
    const double L = upper ? 1.0 - a : b + 1.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double tau = 0.5 * (rule.x[i] + 1.0);
        const double off = L * std::pow(tau, k);
        const double s = upper ? 1.0 - off : -1.0 + off;
        const double other = upper ? 1.0 + s : 1.0 - s;
        sum += 0.5 * rule.w[i] * g(s) * std::pow(other, bexp) * std::pow(L, bexp + 1.0) * k;
    }
    return sum;
}

double weighted_integral(const std::function<double(double)>& g, double kink, double bexp)
{
    std::vector<double> pts{-1.0, 0.0, 1.0};
    if (kink > -1.0 && kink < 1.0 && kink != 0.0) pts.push_back(kink);
    std::sort(pts.begin(), pts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) sum += weighted_piece(g, pts[i], pts[i + 1], bexp);
    return sum;
}

} // namespace

std::pair<double, double> entropy_pair(double rho, double u, double gamma)
{
    require(gamma > 1.0, "entropy_pair needs gamma > 1");
    require(rho >= 0.0, "entropy_pair needs rho >= 0");
    if (rho == 0.0) return {0.0, 0.0};
    const double theta = 0.5 * (gamma - 1.0);
    const double bexp = (3.0 - gamma) / (2.0 * (gamma - 1.0));
    const double rt = std::pow(rho, theta);
    const double kink = -u / rt;
    const auto eta_g = [&](double s) {
        const double v = u + rt * s;
        return v * std::abs(v);
    };
    const auto q_g = [&](double s) {
        const double v = u + rt * s;
        return (u + theta * rt * s) * v * std::abs(v);
    };
    return {0.5 * rho * weighted_integral(eta_g, kink, bexp), 0.5 * rho * weighted_integral(q_g, kink, bexp)};
}

EntropyBoundsResult entropy_bounds_check(const std::vector<double>& rho, const std::vector<double>& u,
                                         double gamma)
{
    EntropyBoundsResult res;
    const double theta = 0.5 * (gamma - 1.0);
    double c = 0.0;
    bool ok = true;
    for (double r : rho) {
        for (double v : u) {
            if (r == 0.0) continue;
            const auto [eta, q] = entropy_pair(r, v, gamma);
            if (!(q > 0.0)) ok = false;
            const double upper = r * v * v + std::pow(r, gamma);
            const double lower = r * std::abs(v) * v * v + std::pow(r, gamma + theta);
            c = std::max(c, std::abs(eta) / upper);
            if (q > 0.0) c = std::max(c, lower / q);
        }
    }
    res.fitted_constant = c;
    res.pass = ok && std::isfinite(c) && c > 0.0;
    return res;
}

} // namespace riesz
