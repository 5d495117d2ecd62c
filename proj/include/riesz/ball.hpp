#pragma once

#include "riesz/potential_spec.hpp"

#include <memory>
#include <vector>

namespace riesz {

// Field and potential generated by the uniform unit-density ball B_s(0), evaluated at |x| = r:
//   field(r, s)     = d/dr of (Phi_alpha * 1_{B_s})(r)
//   potential(r, s) = (Phi_alpha * 1_{B_s})(r)
// Differences in s give the exact contribution of a spherical shell of constant density, which
// is how piecewise-constant radial densities are convolved without a diagonal singularity.
//
// The normalised profiles fhat(sigma) = field(1, sigma) and phat(sigma) = potential(1, sigma)
// are ray integrals centred at the evaluation point, tabulated on a mesh that is geometrically
// graded towards the cusp at sigma = 1 and interpolated by local cubics in sigma.
class BallPrimitive {
public:
    explicit BallPrimitive(const PotentialSpec& spec);

    double field(double r, double s) const;
    double potential(double r, double s) const;

    double field_hat(double sigma) const;
    double potential_hat(double sigma) const;

    // Ray-integral evaluation with no table.
    double field_hat_direct(double sigma) const;
    double potential_hat_direct(double sigma) const;

    int n() const { return n_; }
    double alpha() const { return alpha_; }

private:
    struct Side {
        std::vector<double> sigma;
        std::vector<double> value;
        // value[i] / prod_{b != a}(sigma[i+a] - sigma[i+b]) for the 4-point stencil starting at i.
        std::vector<double> scaled;
    };
    struct Table {
        Side inner, outer;
        double at_one = 0.0;
        double exponent = 1.0;
    };

    double lookup(const Table& table, double sigma, bool field) const;
    Table build(bool field) const;

    int n_;
    double alpha_;
    double omega_n_;
    double sphere_;
    Table field_table_, potential_table_;
};

// Process-wide cache, one primitive per (n, alpha).
std::shared_ptr<const BallPrimitive> ball_primitive(const PotentialSpec& spec);

} // namespace riesz
