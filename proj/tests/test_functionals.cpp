#include "riesz/errors.hpp"
#include "riesz/functionals.hpp"
#include "riesz/interaction.hpp"
#include "support/generators.hpp"
#include "support/hls.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace riesz;
using std::numbers::pi;
using big = boost::multiprecision::cpp_dec_float_50;

namespace {

double hls_oracle(int n, double alpha)
{
    const big a(alpha), N(n), P = boost::math::constants::pi<big>();
    const big lead = pow(P, a / 2) * boost::math::tgamma((N - a) / 2) / boost::math::tgamma(N - a / 2);
    return static_cast<double>(lead * pow(boost::math::tgamma(N / 2) / boost::math::tgamma(N), (a - N) / N));
}

RadialField unit_ball(double value, std::size_t count = 400)
{
    return RadialField(RadialGrid::uniform(1.0 / count, 1.0, count), std::vector<double>(count, value));
}

} // namespace

TEST(Energies, UniformBallClosedForms)
{
    const PotentialSpec s{3, 1.0, 1, 2.0};
    const auto one = unit_ball(1.0);
    EXPECT_NEAR(internal_energy(s, one), pi / 6.0, 1e-12);
    EXPECT_NEAR(kinetic_energy(one, one, 3), 2.0 * pi / 3.0, 1e-12);
    // Self-energy of the uniform ball: (1/2) int rho Phi * rho = -16 pi^2 / 15.
    EXPECT_NEAR(interaction_energy(s, one), -16.0 * pi * pi / 15.0, 1e-9);
    EXPECT_DOUBLE_EQ(PotentialSpec({3, 1.0, 1, 4.0 / 3.0}).a0(), 1.0 / 48.0);
}

TEST(Energies, ZeroDensity)
{
    const PotentialSpec s{3, 1.0, 1, 2.0};
    const auto zero = unit_ball(0.0);
    EXPECT_EQ(internal_energy(s, zero), 0.0);
    EXPECT_EQ(kinetic_energy(zero, zero, 3), 0.0);
    EXPECT_EQ(interaction_energy(s, zero), 0.0);
    EXPECT_EQ(free_energy(s, zero), 0.0);
}

TEST(Energies, VacuumMomentumRejected)
{
    auto rho = unit_ball(1.0, 10);
    rho.values[9] = 0.0;
    auto m = unit_ball(0.0, 10);
    EXPECT_NO_THROW(kinetic_energy(rho, m, 3));
    m.values[9] = 1.0;
    EXPECT_THROW(kinetic_energy(rho, m, 3), DomainError);
}

TEST(Energies, BreakdownTotalIsSumOfParts)
{
    gen::Gen gen(21);
    for (int trial = 0; trial < 5; ++trial) {
        const PotentialSpec s{3, 1.0, trial % 2 ? 1 : -1, gen.uniform(1.2, 3.0)};
        const auto rho = gen.bumps(2.0, 60), m = gen.bumps(2.0, 60);
        const auto e = energy(s, rho, m);
        EXPECT_NEAR(e.total, e.kinetic + e.internal + e.interaction, 1e-14 * std::abs(e.total));
        EXPECT_FALSE(e.moment.has_value());
    }
    const auto e = energy({3, 0.0, 1, 2.0}, unit_ball(1.0), unit_ball(0.0));
    ASSERT_TRUE(e.moment.has_value());
    EXPECT_GT(*e.moment, 0.0);
}

TEST(Energies, AttractiveInteractionIsNonpositive)
{
    gen::Gen gen(8);
    for (int trial = 0; trial < 4; ++trial) {
        const auto s = gen.spec(3, 0.2, 1.8);
        EXPECT_LE(interaction_energy(s, gen.bumps(2.0, 40)), 0.0);
    }
}

TEST(DistanceD, VanishesOnTheDiagonalAndNeedsEqualMass)
{
    const PotentialSpec s{3, 1.0, 1, 2.0};
    const auto rho = gen::Gen(2).bumps(1.0, 80);
    EXPECT_NEAR(distance_d(s, rho, rho), 0.0, 1e-13);
    auto heavier = rho;
    for (auto& v : heavier.values) v *= 1.01;
    EXPECT_THROW(distance_d(s, heavier, rho), DomainError);
}

TEST(Constants, HlsAgainstMultiprecisionGamma)
{
    // Frozen from a 30-digit gamma evaluation.
    EXPECT_NEAR(hls_constant(3, 1.0), 2.2940107035415989, 1e-14);
    EXPECT_NEAR(hls_constant(3, 2.0), 7.3038721193751091, 1e-13);
    for (int n = 2; n <= 5; ++n)
        for (double a = 0.25; a < n; a += 0.5) {
            const double want = hls_oracle(n, a);
            EXPECT_NEAR(hls_constant(n, a), want, 1e-13 * want) << n << " " << a;
            EXPECT_GT(hls_constant(n, a), 0.0);
        }
    EXPECT_THROW(hls_constant(3, 0.0), DomainError);
    EXPECT_THROW(hls_constant(3, 3.0), DomainError);
}

TEST(Constants, CompositionAndFractionalLaplacian)
{
    EXPECT_NEAR(riesz_composition_constant(3, 1.0, 1.0), std::pow(pi, 3), 1e-12);
    EXPECT_DOUBLE_EQ(riesz_composition_constant(4, 1.0, 2.5), riesz_composition_constant(4, 2.5, 1.0));
    EXPECT_THROW(riesz_composition_constant(3, 2.0, 1.0), DomainError);
    EXPECT_NEAR(fractional_laplacian_constant(2, 0.0), 2.0 * pi, 1e-15);
    EXPECT_NEAR(fractional_laplacian_constant(3, 2.0), pi * pi, 1e-12);
    for (double a : {1.1, 1.5, 2.9}) EXPECT_GT(fractional_laplacian_constant(3, a), 0.0);
    EXPECT_THROW(fractional_laplacian_constant(3, 0.5), DomainError);
}

TEST(CriticalMass, CoulombChainInThreeDimensions)
{
    const double C = hls_oracle(3, 1.0);
    const double gamma = 4.0 / 3.0;
    EXPECT_NEAR(b_constant(3, gamma, 1.0, C), 8.0 * C, 1e-12 * C);
    EXPECT_NEAR(b_constant(3, gamma, 1.0, 2.29396), 18.3517, 1e-4);
    const auto rep = critical_mass(3, gamma, 1.0, 0.0);
    EXPECT_NEAR(rep.B, 8.0 * C, 1e-12 * C);
    EXPECT_NEAR(rep.Mc, std::pow(8.0 * C, -1.5), 1e-12);
    EXPECT_NEAR(rep.Mc, 0.01272, 1e-5);
    EXPECT_TRUE(rep.lower_bound);
    EXPECT_FALSE(rep.constant_used.empty());
}

TEST(CriticalMass, SubcriticalBranchByHand)
{
    const int n = 3;
    const double a = 1.0, g = 1.25, E0 = 0.7, C = 2.0;
    const double a0 = (g - 1) * (g - 1) / (4 * g);
    const double e = a / (n * (g - 1));
    const double B = C / (2 * a) * std::pow(4 * pi, e - 1) * std::pow((g - 1) / a0, e);
    const double den = 2 * n - g * (2 * n - a);
    const double Mc = std::pow(a * B / (n * (g - 1)), n * (g - 1) / den) * std::pow(a * E0 / (a - n * (g - 1)), (a - n * (g - 1)) / den);
    const auto rep = critical_mass(n, g, a, E0, C);
    EXPECT_NEAR(rep.B, B, 1e-12 * B);
    EXPECT_NEAR(rep.Mc, Mc, 1e-12 * Mc);
    EXPECT_THROW(critical_mass(n, g, a, 0.0, C), DomainError);
    EXPECT_THROW(critical_mass(n, 1.1, a, E0, C), DomainError);
    EXPECT_THROW(critical_mass(n, 1.5, a, E0, C), DomainError);
}

TEST(CriticalMass, DecreasingInTheConstant)
{
    double previous = INFINITY;
    for (double C : {0.5, 1.0, 2.0, 4.0}) {
        const double Mc = critical_mass(3, 4.0 / 3.0, 1.0, 0.0, C).Mc;
        EXPECT_LT(Mc, previous);
        previous = Mc;
    }
}

TEST(CriticalBand, ExactValuesAndAsymptotics)
{
    const auto b20 = critical_alpha_band(20);
    ASSERT_TRUE(b20.has_value());
    EXPECT_EQ(b20->first, 4.0);
    EXPECT_EQ(b20->second, 5.0);
    EXPECT_FALSE(critical_alpha_band(19).has_value());
    for (int n = 2; n < 20; ++n) EXPECT_FALSE(critical_alpha_band(n).has_value()) << n;
    // alpha_- tends to 2 and alpha_+ - n/2 to -3.
    const auto b100 = critical_alpha_band(100), b1000 = critical_alpha_band(1000);
    ASSERT_TRUE(b100 && b1000);
    EXPECT_NEAR(b100->first, 2.0, 0.2);
    EXPECT_NEAR(b1000->first, 2.0, 0.02);
    EXPECT_NEAR(b100->second - 50.0, -3.0, 0.2);
    EXPECT_NEAR(b1000->second - 500.0, -3.0, 0.02);
    EXPECT_LT(std::abs(b1000->first - 2.0), std::abs(b100->first - 2.0));
}

TEST(CriticalBand, EndpointsEqualiseTheTwoGammaThresholds)
{
    // Inside the band (n+alpha)/n exceeds 3n/(3n - 2(1+alpha)); at the endpoints they agree.
    for (int n = 20; n <= 60; n += 5) {
        const auto b = critical_alpha_band(n);
        ASSERT_TRUE(b.has_value());
        auto gap = [n](double a) { return (n + a) / n - 3.0 * n / (3.0 * n - 2.0 * (1.0 + a)); };
        EXPECT_NEAR(gap(b->first), 0.0, 1e-12);
        EXPECT_NEAR(gap(b->second), 0.0, 1e-12);
        if (b->second > b->first) EXPECT_GT(gap(0.5 * (b->first + b->second)), 0.0);
    }
}

TEST(EnergyBoundMap, ConcaveInTheSubcriticalBand)
{
    gen::Gen gen(4);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = gen.integer(2, 5);
        const double a = gen.uniform(0.2, n - 1.05);
        const double lo = 2.0 * n / (2.0 * n - a), hi = (n + a) / n;
        const double g = gen.uniform(lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo));
        const EnergyBoundMap F{n, g, a, gen.uniform(0.1, 10.0), gen.uniform(0.1, 5.0)};
        const double s = gen.log_uniform(1e-2, 1e2);
        EXPECT_LT(F.second_derivative(s), 0.0);
        const double h = 1e-4 * s;
        EXPECT_NEAR(F.derivative(s), (F.value(s + h) - F.value(s - h)) / (2 * h), 1e-6 * std::max(1.0, std::abs(F.derivative(s))));
        EXPECT_NEAR(F.second_derivative(s), (F.derivative(s + h) - F.derivative(s - h)) / (2 * h),
                    1e-5 * std::max(1.0, std::abs(F.second_derivative(s))));
        EXPECT_GT(F.coercivity(), 0.0);
    }
}

TEST(HlsWitness, RandomDensitiesRespectBothForms)
{
    gen::Gen gen(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = trial % 2 ? 3 : 2;
        const double a = gen.uniform(0.2, n - 1.1);
        const auto f = gen.cells(gen.uniform(0.5, 3.0), gen.integer(3, 12));
        EXPECT_LE(hls::operator_ratio(n, a, f), 1.0) << "trial " << trial;
        EXPECT_LE(hls::bilinear_ratio(n, a, f), 1.0) << "trial " << trial;
    }
}

TEST(HlsWitness, VariationChainBoundsTheInteraction)
{
    gen::Gen gen(99);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3;
        const double a = gen.uniform(0.3, 1.8);
        const double lo = 2.0 * n / (2.0 * n - a), hi = (n + a) / n;
        const double g = gen.uniform(lo + 0.05 * (hi - lo), hi);
        const PotentialSpec s{n, a, 1, g};
        const auto f = gen.cells(gen.uniform(0.5, 2.0), 8);
        const double w = surface_area(n);
        const double lhs = std::abs(interaction_energy(s, f)) / w;
        const double M = mass(f, n);
        const double B = b_constant(n, g, a, hls_constant(n, a));
        const double rhs = B * std::pow(M, (g * (2 * n - a) - 2 * n) / (n * (g - 1))) *
                           std::pow(internal_energy(s, f) / w, a / (n * (g - 1)));
        EXPECT_LE(lhs, rhs) << "trial " << trial;
    }
}

TEST(EntropyPair, ClosedFormsAndSigns)
{
    EXPECT_EQ(entropy_pair(0.0, 0.7, 2.0), std::make_pair(0.0, 0.0));
    for (double rho : {0.5, 1.0, 3.0}) EXPECT_NEAR(entropy_pair(rho, 0.0, 3.0).first, 0.0, 1e-14);
    EXPECT_NEAR(entropy_pair(1.0, 0.0, 3.0).second, 0.25, 1e-13);
    // gamma = 3: b = 0, theta = 1, so eta = rho/2 int_{-1}^{1} v|v| ds with v = u + rho s.
    const double rho = 2.0, u = 0.3;
    auto prim = [](double v) { return v * v * std::abs(v) / 3.0; };
    EXPECT_NEAR(entropy_pair(rho, u, 3.0).first, 0.5 * (prim(u + rho) - prim(u - rho)), 1e-12);
    EXPECT_THROW(entropy_pair(1.0, 0.0, 1.0), DomainError);
    for (double g : {1.4, 2.0, 5.0})
        for (double r : {0.1, 1.0, 10.0})
            for (double v : {-2.0, 0.0, 2.0}) EXPECT_GT(entropy_pair(r, v, g).second, 0.0);
}

TEST(EntropyPair, BoundsHoldOnLattice)
{
    const auto res = entropy_bounds_check({0.0, 0.1, 1.0, 10.0}, {-2.0, 0.0, 2.0}, 2.0);
    EXPECT_TRUE(res.pass);
    EXPECT_TRUE(std::isfinite(res.fitted_constant));
    for (double g : {1.2, 1.67, 3.0, 4.5})
        EXPECT_TRUE(entropy_bounds_check({0.01, 0.3, 2.0}, {-1.0, 0.5, 3.0}, g).pass) << g;
}

TEST(CellFunctionals, MatchClosedForms)
{
    const CellDensity shell{{0.5, 1.0}, {2.0}};
    const double vol = (1.0 - 0.125) / 3.0;
    EXPECT_NEAR(mass(shell, 3), 4.0 * pi * 2.0 * vol, 1e-14);
    EXPECT_NEAR(lq_norm(shell, 2.0, 3), std::sqrt(4.0 * pi * 4.0 * vol), 1e-14);
    const PotentialSpec s{3, 1.0, 1, 2.0};
    EXPECT_NEAR(internal_energy(s, shell), 4.0 * pi * vol * 2.0 * (2.0 / 8.0), 1e-14);
}
