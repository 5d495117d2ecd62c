#pragma once

#include "riesz/nsr_solver.hpp"

#include <functional>

namespace riesz {

// Smooth step: 0 for t <= 0, 1 for t >= 1, C-infinity in between.
double smooth_step(double t);

// Radial mollification (f * J_delta)(r) with J(x) = c exp(1/(|x|^2 - 1)) on the unit ball.
double mollify(const std::function<double(double)>& f, int n, double delta, double r);

// Approximate initial data on the annulus [1/b, b]:
//   rho = { c sqrt(rho_eps) (1 - S(2(r-(b-1)))) + b^{-(n-beta)/2} S(2(r-(b-1))) }^2,
//   rho_eps = (sqrt(rho0) * J_{sqrt(eps)} + eps e^{-r^2})^2 normalised to mass M,
// with c chosen so that the total mass is M while rho(b) = b^{-(n-beta)}, beta = min(1/2, (1-1/gamma) n).
// The velocity is the mollified m0 1_{[4/b, b-2]} / sqrt(rho0) divided by sqrt(rho), minus
// (1/eps) S(4(r-(b-1/2))) r^{1-n} int_r^b p(rho)/rho z^{n-1} dz, which makes the outer edge stress free.
FluidState build_initial_data(const PotentialSpec& spec, const RadialField& rho0, const RadialField& m0,
                              double epsilon, double b, int N);

// Edge radii used by build_initial_data: geometric on [1/b, b-1], then uniform cells on [b-1, b].
std::vector<double> annulus_edges(double b, int N);

double boundary_exponent_beta(const PotentialSpec& spec);

// State with the given density and velocity profiles on N cells uniform in r over [a, b] (a may be 0).
FluidState profile_state(const PotentialSpec& spec, const std::function<double(double)>& rho,
                         const std::function<double(double)>& u, double a, double b, int N);

} // namespace riesz
