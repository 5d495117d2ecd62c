#include "riesz/errors.hpp"
#include "riesz/functionals.hpp"
#include "riesz/stability.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace riesz;

namespace {

const PotentialSpec polytrope{3, 1.0, 1, 2.0};

const SteadyState& steady()
{
    static const SteadyState st =
        solve_minimizer(polytrope, 1.0, RadialGrid::uniform(0.8 / 400, 0.8, 400), 1e-10);
    return st;
}

SolverConfig short_config()
{
    auto c = stability_solver_config(polytrope);
    c.N = 96;
    c.T = 0.05;
    c.output_every = 5;
    return c;
}

} // namespace

TEST(Perturb, ZeroAmplitudeIsTheIdentity)
{
    for (auto mode : {PerturbationMode::bump, PerturbationMode::squeeze, PerturbationMode::velocity}) {
        const auto [rho, m] = perturb(steady().profile, 3, {mode, 0.0});
        EXPECT_EQ(rho.values, steady().profile.values) << to_string(mode);
        for (double v : m.values) EXPECT_EQ(v, 0.0);
    }
}

TEST(Perturb, ModesPreserveMass)
{
    const double M = mass(steady().profile, 3);
    for (auto mode : {PerturbationMode::bump, PerturbationMode::squeeze, PerturbationMode::velocity}) {
        const auto [rho, m] = perturb(steady().profile, 3, {mode, 0.05});
        EXPECT_NEAR(mass(rho, 3), M, 1e-12 * M) << to_string(mode);
        for (double v : rho.values) EXPECT_GE(v, 0.0);
    }
    EXPECT_THROW(perturb(steady().profile, 3, {PerturbationMode::bump, -0.1}), DomainError);
    EXPECT_THROW(perturb(steady().profile, 3, {PerturbationMode::bump, 1.5}), DomainError);
}

TEST(Perturb, ModeNamesRoundTrip)
{
    for (auto mode : {PerturbationMode::bump, PerturbationMode::squeeze, PerturbationMode::velocity})
        EXPECT_EQ(parse_perturbation_mode(to_string(mode)), mode);
    EXPECT_THROW(parse_perturbation_mode("twist"), ParseError);
}

TEST(Terms, NonnegativeAndIncreasingWithAmplitude)
{
    const auto st = steady().profile;
    const auto cells = to_cells(st);
    for (auto mode : {PerturbationMode::bump, PerturbationMode::squeeze, PerturbationMode::velocity}) {
        double previous = -1.0;
        for (double a : {1e-3, 1e-2, 1e-1}) {
            const auto [rho, m] = perturb(st, 3, {mode, a});
            const auto s = lagrangian_projection(rho, m, 3, 128);
            const auto t = stability_terms(polytrope, s, cells);
            EXPECT_GE(t.distance, -1e-12);
            EXPECT_GE(t.norm_squared, 0.0);
            EXPECT_GE(t.kinetic, 0.0);
            EXPECT_LE(polytrope.alpha * std::abs(t.cross), hls_constant(3, 1.0) * t.norm_squared * (1.0 + 1e-12));
            EXPECT_GT(t.total(), previous) << to_string(mode) << " " << a;
            previous = t.total();
        }
    }
}

TEST(Run, RelativeEnergyIdentityAndCrossBound)
{
    for (auto mode : {PerturbationMode::bump, PerturbationMode::squeeze, PerturbationMode::velocity}) {
        const auto rep = stability_run(polytrope, steady(), {mode, 1e-2}, short_config());
        EXPECT_LT(rep.identity_gap, 1e-8) << to_string(mode);
        EXPECT_LE(rep.cross_bound_ratio, 1.0);
        ASSERT_EQ(rep.times.size(), rep.functional.size());
        for (double v : rep.functional) {
            EXPECT_TRUE(std::isfinite(v));
            EXPECT_GE(v, 0.0);
        }
        EXPECT_GE(rep.ratio, 1.0 - 1e-12);
        EXPECT_EQ(rep.max_value / rep.initial_value, rep.ratio);
    }
}

TEST(Run, ZeroPerturbationStaysAtTheNoiseFloor)
{
    const auto rep = stability_run(polytrope, steady(), {PerturbationMode::bump, 0.0}, short_config());
    EXPECT_GT(rep.noise_floor, 0.0);
    EXPECT_LT(rep.max_value, 10.0 * rep.noise_floor);
}

TEST(Run, RequiresTheAttractiveRegime)
{
    EXPECT_THROW(stability_run({3, 1.0, -1, 2.0}, steady(), {PerturbationMode::bump, 0.01}, short_config()),
                 DomainError);
}
