#include "riesz/radial_ops.hpp"

#include "riesz/errors.hpp"

#include <cmath>

namespace riesz {

namespace {

void check_density(const PotentialSpec& spec, const RadialField& rho)
{
    spec.validate();
    validate_field(rho);
    for (double v : rho.values) require(v >= 0.0, "density must be nonnegative");
}

} // namespace

RadialField potential(const PotentialSpec& spec, const RadialField& rho)
{
    check_density(spec, rho);
    Interaction op(spec);
    return RadialField(rho.grid, op.potential(to_cells(rho), rho.grid.nodes));
}

RadialField potential_derivative(const PotentialSpec& spec, const RadialField& rho, ForceRoute route)
{
    check_density(spec, rho);
    Interaction op(spec);
    return RadialField(rho.grid, op.field(to_cells(rho), rho.grid.nodes, route));
}

double moment_kalpha(const PotentialSpec& spec, const RadialField& rho)
{
    check_density(spec, rho);
    require(spec.alpha <= 0.0, "the k_alpha moment is defined for alpha in (-1, 0]");
    RadialField g = rho;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double s = 1.0 + g.grid[i] * g.grid[i];
        g.values[i] *= spec.alpha == 0.0 ? std::log(s) : std::pow(s, -0.5 * spec.alpha);
    }
    return surface_area(spec.n) * radial_integral(g, spec.n);
}

} // namespace riesz
