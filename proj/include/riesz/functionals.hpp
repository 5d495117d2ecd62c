#pragma once

#include "riesz/potential_spec.hpp"
#include "riesz/radial_field.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace riesz {

struct EnergyBreakdown {
    double kinetic = 0.0;
    double internal = 0.0;
    double interaction = 0.0; // includes the kappa/2 factor
    double total = 0.0;
    std::optional<double> moment;
    std::optional<double> bd_entropy;

    static EnergyBreakdown make(double kinetic, double internal, double interaction);
};

double internal_energy(const PotentialSpec& spec, const RadialField& rho);
double kinetic_energy(const RadialField& rho, const RadialField& m, int n);
double interaction_energy(const PotentialSpec& spec, const RadialField& rho);
EnergyBreakdown energy(const PotentialSpec& spec, const RadialField& rho, const RadialField& m);

// G(rho) = int rho e(rho) + 1/2 rho (Phi_alpha * rho), always with the attractive sign.
double free_energy(const PotentialSpec& spec, const RadialField& rho);

// d(rho, rho_tilde) = int (rho e(rho) - rho~ e(rho~)) + (Phi_alpha * rho~)(rho - rho~).
double distance_d(const PotentialSpec& spec, const RadialField& rho, const RadialField& rho_tilde);

double mass(const RadialField& rho, int n);
// (omega_n int |f|^q r^{n-1} dr)^{1/q}
double lq_norm(const RadialField& f, double q, int n);

// Shell-wise constant versions. Cell integrals are exact, so identities built from these
// functionals on a common edge set hold to rounding.
double mass(const CellDensity& rho, int n);
double lq_norm(const CellDensity& f, double q, int n);
double internal_energy(const PotentialSpec& spec, const CellDensity& rho);
double interaction_energy(const PotentialSpec& spec, const CellDensity& rho);
double free_energy(const PotentialSpec& spec, const CellDensity& rho);
double distance_d(const PotentialSpec& spec, const CellDensity& rho, const CellDensity& rho_tilde);

// Constants.
double hls_constant(int n, double alpha);
double riesz_composition_constant(int n, double alpha, double beta);
double fractional_laplacian_constant(int n, double alpha);
double b_constant(int n, double gamma, double alpha, double sharp_constant);

struct CriticalMassReport {
    int n = 0;
    double alpha = 0.0;
    double gamma = 0.0;
    double E0 = 0.0;
    double B = 0.0;
    double Mc = 0.0;
    std::string constant_used;
    bool lower_bound = true; // C_{n,alpha} overestimates the sharp constant, so Mc is a lower bound
};

// E0 is the radial energy int rho(|u|^2/2 + e + Phi*rho/2) r^{n-1} dr (no omega_n factor); it is
// only used on the gamma < (n+alpha)/n branch.
CriticalMassReport critical_mass(int n, double gamma, double alpha, double E0, double sharp_constant);
CriticalMassReport critical_mass(int n, double gamma, double alpha, double E0);

std::optional<std::pair<double, double>> critical_alpha_band(int n);

// F(s) = s - B M^{(gamma(2n-alpha)-2n)/(n(gamma-1))} s^{alpha/(n(gamma-1))}: the scalar bound on
// the energy in terms of the radial internal energy s.
struct EnergyBoundMap {
    int n;
    double gamma, alpha, B, M;
    double coefficient() const;
    double exponent() const;
    double value(double s) const;
    double derivative(double s) const;
    double second_derivative(double s) const;
    // Coercivity constant C_gamma of the subcritical energy estimate.
    double coercivity() const;
};

// Weak entropy pair generated by the kernel (rho^{2theta} - (s-u)^2)_+^b, theta = (gamma-1)/2.
std::pair<double, double> entropy_pair(double rho, double u, double gamma);

struct EntropyBoundsResult {
    bool pass = false;
    double fitted_constant = 0.0;
};
EntropyBoundsResult entropy_bounds_check(const std::vector<double>& rho, const std::vector<double>& u,
                                         double gamma);

} // namespace riesz
