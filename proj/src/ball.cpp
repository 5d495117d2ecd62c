#include "riesz/ball.hpp"

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace riesz {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double t_min = 1e-10;
constexpr double ratio = 1.005;
constexpr double sigma_max = 1e9;
constexpr double rel_tol = 1e-14;

double sin_power(double x, int m) { return m == 0 ? 1.0 : std::pow(std::sin(x), m); }

} // namespace

BallPrimitive::BallPrimitive(const PotentialSpec& spec)
    : n_(spec.n), alpha_(spec.alpha), omega_n_(surface_area(spec.n)),
      sphere_(surface_area(spec.n - 1))
{
    spec.validate();
    field_table_ = build(true);
    potential_table_ = build(false);
}

// Radial antiderivative along a ray: field uses rho^{p}/p with p = n-1-alpha (times -cos psi),
// potential uses int Phi(rho) rho^{n-1} d rho.
namespace {

struct RayKernel {
    int n;
    double alpha;
    bool field;

    double operator()(double rho) const
    {
        if (rho <= 0.0) return 0.0;
        if (field) {
            const double p = n - 1.0 - alpha;
            return std::pow(rho, p) / p;
        }
        if (alpha == 0.0) return std::pow(rho, n) * (std::log(rho) / n - 1.0 / (n * double(n)));
        const double q = n - alpha;
        return -std::pow(rho, q) / (alpha * q);
    }
};

double ray_integral(int n, double alpha, double sphere, double sigma, bool field)
{
    const RayKernel prim{n, alpha, field};
    const int m = n - 2;
    if (sigma <= 0.0) return 0.0;
    if (sigma >= 1.0) {
        const double d = (sigma - 1.0) * (sigma + 1.0);
        auto f = [&](double psi) {
            const double c = std::cos(psi);
            const double root = std::sqrt(c * c + d);
            const double rp = c <= 0.0 ? root - c : d / (c + root);
            const double w = field ? -c : 1.0;
            return w * prim(rp) * sin_power(psi, m);
        };
        std::vector<double> pts{0.0};
        const double width = std::sqrt(d);
        if (width > 0.0 && width < 0.25) {
            pts.push_back(0.5 * pi - 4.0 * width);
            pts.push_back(0.5 * pi);
            pts.push_back(0.5 * pi + 4.0 * width);
        } else {
            pts.push_back(0.5 * pi);
        }
        pts.push_back(pi);
        return sphere * quad::adaptive(f, pts, rel_tol, 0.0, 4000).value;
    }
    // Point outside the ball: rays enter between psi = pi - beta_t and pi, beta_t = asin(sigma).
    // beta = beta_t (1 - w^2) removes the square-root behaviour at tangency.
    const double d = (1.0 - sigma) * (1.0 + sigma);
    const double beta_t = std::asin(sigma);
    const double sin_t = sigma;
    auto f = [&](double w) {
        const double beta = beta_t * (1.0 - w * w);
        const double jac = 2.0 * beta_t * w;
        const double sb = std::sin(beta);
        const double disc = std::max(0.0, (sin_t - sb) * (sin_t + sb));
        const double mc = std::cos(beta); // = -cos(psi) > 0
        const double root = std::sqrt(disc);
        const double rp = mc + root;
        const double rm = d / rp;
        const double wgt = field ? mc : 1.0;
        return wgt * (prim(rp) - prim(rm)) * sin_power(beta, m) * jac;
    };
    return sphere * quad::adaptive(f, std::vector<double>{0.0, 0.5, 1.0}, rel_tol, 0.0, 4000).value;
}

} // namespace

double BallPrimitive::field_hat_direct(double sigma) const
{
    return ray_integral(n_, alpha_, sphere_, sigma, true);
}

double BallPrimitive::potential_hat_direct(double sigma) const
{
    return ray_integral(n_, alpha_, sphere_, sigma, false);
}

BallPrimitive::Table BallPrimitive::build(bool field) const
{
    Table t;
    const double p = n_ - 1.0 - alpha_;
    t.exponent = std::min(1.0, field ? p : p + 1.0);
    t.at_one = ray_integral(n_, alpha_, sphere_, 1.0, field);
    // Inside the unit ball the profile behaves like sigma^n; the table stores value / sigma^n,
    // whose limit at sigma = 0 is the point-mass value (omega_n / n) Phi'(1) or Phi(1).
    for (double tt = t_min; tt < 1.0; tt *= ratio) {
        const double sg = 1.0 - tt;
        t.inner.sigma.push_back(sg);
        t.inner.value.push_back(ray_integral(n_, alpha_, sphere_, sg, field) / std::pow(sg, n_));
    }
    t.inner.sigma.push_back(0.0);
    const double point = field ? 1.0 : (alpha_ == 0.0 ? 0.0 : -1.0 / alpha_);
    t.inner.value.push_back(omega_n_ / n_ * point);
    for (double tt = t_min; tt < sigma_max * ratio; tt *= ratio) {
        t.outer.sigma.push_back(1.0 + tt);
        t.outer.value.push_back(ray_integral(n_, alpha_, sphere_, 1.0 + tt, field));
    }
    for (Side* side : {&t.inner, &t.outer}) {
        const std::size_t m = side->sigma.size();
        side->scaled.assign(4 * m, 0.0);
        for (std::size_t i = 0; i + 3 < m; ++i)
            for (int a = 0; a < 4; ++a) {
                double denom = 1.0;
                for (int b = 0; b < 4; ++b)
                    if (b != a) denom *= side->sigma[i + a] - side->sigma[i + b];
                side->scaled[4 * i + a] = side->value[i + a] / denom;
            }
    }
    return t;
}

double BallPrimitive::lookup(const Table& table, double sigma, bool field) const
{
    if (sigma <= 0.0) return 0.0;
    if (sigma == 1.0) return table.at_one;
    const bool outer = sigma > 1.0;
    const Side& side = outer ? table.outer : table.inner;
    const double t = std::abs(sigma - 1.0);
    if (t < t_min) {
        const double v0 = outer ? side.value.front() : side.value.front() * std::pow(side.sigma.front(), n_);
        return table.at_one + (v0 - table.at_one) * std::pow(t / t_min, table.exponent);
    }
    if (outer && sigma > side.sigma.back()) return ray_integral(n_, alpha_, sphere_, sigma, field);
    const int last = static_cast<int>(side.sigma.size()) - 1;
    int i = static_cast<int>(std::floor(std::log(t / t_min) / std::log(ratio)));
    i = std::clamp(i, 0, last - 1);
    // Nodes i and i+1 bracket t (up to rounding of the log); use i-1..i+2.
    int lo = std::clamp(i - 1, 0, last - 3);
    const double* xs = &side.sigma[lo];
    const double* ws = &side.scaled[4 * lo];
    const double d0 = sigma - xs[0], d1 = sigma - xs[1], d2 = sigma - xs[2], d3 = sigma - xs[3];
    const double sum = ws[0] * d1 * d2 * d3 + ws[1] * d0 * d2 * d3 + ws[2] * d0 * d1 * d3 + ws[3] * d0 * d1 * d2;
    if (outer) return sum;
    double power = 1.0;
    for (int k = 0; k < n_; ++k) power *= sigma;
    return sum * power;
}

double BallPrimitive::field_hat(double sigma) const { return lookup(field_table_, sigma, true); }

double BallPrimitive::potential_hat(double sigma) const
{
    return lookup(potential_table_, sigma, false);
}

double BallPrimitive::field(double r, double s) const
{
    if (s <= 0.0) return 0.0;
    return std::pow(r, n_ - 1.0 - alpha_) * field_hat(s / r);
}

double BallPrimitive::potential(double r, double s) const
{
    if (s <= 0.0) return 0.0;
    if (alpha_ == 0.0)
        return std::log(r) * omega_n_ * std::pow(s, n_) / n_ + std::pow(r, n_) * potential_hat(s / r);
    return std::pow(r, n_ - alpha_) * potential_hat(s / r);
}

std::shared_ptr<const BallPrimitive> ball_primitive(const PotentialSpec& spec)
{
    static std::mutex mutex;
    static std::map<std::pair<int, double>, std::shared_ptr<const BallPrimitive>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_pair(spec.n, spec.alpha);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto made = std::make_shared<const BallPrimitive>(spec);
    cache.emplace(key, made);
    return made;
}

} // namespace riesz
