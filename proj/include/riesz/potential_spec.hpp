#pragma once

namespace riesz {

struct PotentialSpec {
    int n = 3;
    double alpha = 1.0;
    int kappa = 1;
    double gamma = 2.0;

    double a0() const { return (gamma - 1.0) * (gamma - 1.0) / (4.0 * gamma); }
    bool coulomb() const { return alpha == n - 2.0; }
    bool logarithmic() const { return alpha == 0.0; }

    // Throws DomainError unless n >= 2, alpha in (-1, n-1), kappa = +-1, gamma > 1.
    void validate() const;
};

// Area of the unit sphere S^{n-1} in R^n.
double surface_area(int n);

// Phi_alpha(s) = -s^{-alpha}/alpha, or log s for alpha = 0.
double phi_kernel(const PotentialSpec& spec, double s);

// Pressure law p = a0 rho^gamma and the matching internal energy density e = a0 rho^{gamma-1}/(gamma-1).
double pressure(const PotentialSpec& spec, double rho);
double internal_energy_density(const PotentialSpec& spec, double rho);
double sound_speed(const PotentialSpec& spec, double rho);

} // namespace riesz
