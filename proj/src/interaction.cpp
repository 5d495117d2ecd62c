#include "riesz/interaction.hpp"

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"

#include <cmath>

namespace riesz {

namespace {

// Jump of the density at each edge, so that rho = sum_j jump_j 1_{|x| < e_j}.
std::vector<double> jumps(const CellDensity& rho)
{
    const std::size_t m = rho.cells();
    std::vector<double> j(m + 1);
    for (std::size_t e = 0; e <= m; ++e) {
        const double below = e > 0 ? rho.values[e - 1] : 0.0;
        const double above = e < m ? rho.values[e] : 0.0;
        j[e] = below - above;
    }
    return j;
}

} // namespace

Interaction::Interaction(const PotentialSpec& spec)
    : spec_(spec), ball_(ball_primitive(spec)), omega_n_(surface_area(spec.n))
{
}

std::vector<double> Interaction::potential(const CellDensity& rho, const std::vector<double>& r) const
{
    const auto jump = jumps(rho);
    const int n = spec_.n;
    const double alpha = spec_.alpha;
    std::vector<double> out(r.size(), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double x = r[i];
        require(x > 0.0, "potential evaluated at the origin");
        double sum_hat = 0.0, sum_vol = 0.0;
        for (std::size_t e = 0; e < jump.size(); ++e) {
            if (jump[e] == 0.0 || rho.edges[e] <= 0.0) continue;
            sum_hat += jump[e] * ball_->potential_hat(rho.edges[e] / x);
            if (alpha == 0.0) sum_vol += jump[e] * std::pow(rho.edges[e], n);
        }
        out[i] = alpha == 0.0 ? std::log(x) * omega_n_ * sum_vol / n + std::pow(x, n) * sum_hat
                              : std::pow(x, n - alpha) * sum_hat;
    }
    return out;
}

std::vector<double> Interaction::field(const CellDensity& rho, const std::vector<double>& r,
                                       ForceRoute route) const
{
    if (route == ForceRoute::automatic) route = spec_.coulomb() ? ForceRoute::local_coulomb : ForceRoute::kernel;
    const int n = spec_.n;
    std::vector<double> out(r.size(), 0.0);
    if (route == ForceRoute::local_coulomb) {
        require(spec_.coulomb(), "the local force formula needs alpha = n-2");
        // Enclosed mass per unit solid angle, walking edges and evaluation radii together.
        std::size_t k = 0;
        double enclosed = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double x = r[i];
            if (i > 0) require(x >= r[i - 1], "local Coulomb route needs sorted radii");
            while (k < rho.cells() && rho.edges[k + 1] <= x) {
                enclosed += rho.values[k] * rho.volume(k, n);
                ++k;
            }
            double partial = 0.0;
            if (k < rho.cells() && x > rho.edges[k])
                partial = rho.values[k] * (std::pow(x, n) - std::pow(rho.edges[k], n)) / n;
            out[i] = omega_n_ * (enclosed + partial) / std::pow(x, n - 1);
        }
        return out;
    }
    const auto jump = jumps(rho);
    const double p = n - 1.0 - spec_.alpha;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double x = r[i];
        if (x <= 0.0) continue; // symmetry: no radial force at the centre
        double sum = 0.0;
        for (std::size_t e = 0; e < jump.size(); ++e) {
            if (jump[e] == 0.0 || rho.edges[e] <= 0.0) continue;
            sum += jump[e] * ball_->field_hat(rho.edges[e] / x);
        }
        out[i] = std::pow(x, p) * sum;
    }
    return out;
}

double Interaction::one_sided(const CellDensity& f, const CellDensity& g) const
{
    const auto& rule = quad::gauss_legendre(4);
    const int n = spec_.n;
    std::vector<double> pts, wts;
    for (std::size_t k = 0; k < f.cells(); ++k) {
        if (f.values[k] == 0.0) continue;
        const double a = f.edges[k], b = f.edges[k + 1];
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (std::size_t q = 0; q < rule.x.size(); ++q) {
            const double x = c + h * rule.x[q];
            pts.push_back(x);
            wts.push_back(f.values[k] * h * rule.w[q] * std::pow(x, n - 1));
        }
    }
    const auto pot = potential(g, pts);
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) s += wts[i] * pot[i];
    return omega_n_ * s;
}

double Interaction::pairing(const CellDensity& f, const CellDensity& g) const
{
    if (f.edges == g.edges) return 0.5 * (one_sided(f, g) + one_sided(g, f));
    const auto edges = merge_edges(f.edges, g.edges);
    const CellDensity ff = f.resample(edges), gg = g.resample(edges);
    return 0.5 * (one_sided(ff, gg) + one_sided(gg, ff));
}

} // namespace riesz
