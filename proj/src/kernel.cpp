#include "riesz/kernel.hpp"

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

namespace riesz {

namespace {

constexpr double pi = std::numbers::pi;

double sin_power(double theta, int m)
{
    if (m == 0) return 1.0;
    return std::pow(std::sin(theta), m);
}

// |r e1 - eta y|^2 with y at polar angle theta, written to avoid cancellation near theta = 0.
double dist2(double r, double eta, double theta)
{
    const double s = std::sin(0.5 * theta);
    return (r - eta) * (r - eta) + 4.0 * r * eta * s * s;
}

std::vector<double> breakpoints(double r, double eta)
{
    std::vector<double> pts{0.0};
    const double zeta = std::abs(r - eta) / std::sqrt(r * eta);
    if (zeta > 0.0 && zeta < 0.5 * pi) {
        pts.push_back(zeta);
        if (8.0 * zeta < 0.5 * pi) pts.push_back(8.0 * zeta);
    }
    pts.push_back(pi);
    return pts;
}

double omega_integral(int n, double alpha, double r, double eta)
{
    const int m = n - 2;
    auto f = [&](double th) {
        const double d2 = dist2(r, eta, th);
        return (r - eta * std::cos(th)) * std::pow(d2, -0.5 * (alpha + 2.0)) * sin_power(th, m);
    };
    const double scale = std::pow(std::max(r, eta), -alpha - 1.0);
    return quad::adaptive(f, breakpoints(r, eta), 1e-13, 1e-16 * scale, 4000).value;
}

void check_args(const PotentialSpec& spec, double r, double eta)
{
    spec.validate();
    require(r > 0.0 && eta > 0.0, "kernel arguments must be positive");
    if (spec.alpha >= spec.n - 2.0 && r == eta)
        throw SingularityError("kernel evaluated on the diagonal r = eta for alpha >= n-2");
}

} // namespace

double angular_prefactor(int n)
{
    static std::mutex mutex;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Coulomb force of a unit shell at eta = 1/2 on the point r = 1 is omega_n.
    const double c = surface_area(n) / omega_integral(n, n - 2.0, 1.0, 0.5);
    cache.emplace(n, c);
    return c;
}

double kernel_omega_quadrature(const PotentialSpec& spec, double r, double eta)
{
    check_args(spec, r, eta);
    return angular_prefactor(spec.n) * omega_integral(spec.n, spec.alpha, r, eta);
}

double kernel_omega(const PotentialSpec& spec, double r, double eta)
{
    check_args(spec, r, eta);
    if (spec.coulomb()) return eta < r ? surface_area(spec.n) / std::pow(r, spec.n - 1.0) : 0.0;
    return angular_prefactor(spec.n) * omega_integral(spec.n, spec.alpha, r, eta);
}

double kernel_K(const PotentialSpec& spec, double r, double eta)
{
    check_args(spec, r, eta);
    const int m = spec.n - 2;
    const double alpha = spec.alpha;
    auto f = [&](double th) {
        const double d2 = dist2(r, eta, th);
        const double phi = alpha == 0.0 ? 0.5 * std::log(d2) : -std::pow(d2, -0.5 * alpha) / alpha;
        return phi * sin_power(th, m);
    };
    const double scale = alpha == 0.0 ? 1.0 : std::pow(std::max(r, eta), -alpha) / std::abs(alpha);
    return angular_prefactor(spec.n) *
           quad::adaptive(f, breakpoints(r, eta), 1e-13, 1e-16 * scale, 4000).value;
}

} // namespace riesz
