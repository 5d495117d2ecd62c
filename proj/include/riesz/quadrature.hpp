#pragma once

#include <functional>
#include <vector>

namespace riesz::quad {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const Rule& gauss_legendre(int order);

// Integral of f over [a, b] with a fixed Gauss-Legendre rule.
double fixed_gauss(const std::function<double(double)>& f, double a, double b, int order);

struct Result {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

// Globally adaptive 15-point Gauss-Kronrod. Stops when the summed error estimate drops below
// max(abs_tol, rel_tol * |value|) or after max_intervals subdivisions.
Result adaptive(const std::function<double(double)>& f, double a, double b,
                double rel_tol = 1e-12, double abs_tol = 0.0, int max_intervals = 2000);

// As adaptive(), but with the interval pre-split at the given interior breakpoints.
Result adaptive(const std::function<double(double)>& f, const std::vector<double>& points,
                double rel_tol = 1e-12, double abs_tol = 0.0, int max_intervals = 2000);

} // namespace riesz::quad
