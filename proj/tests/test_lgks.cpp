// Thermal generators: KMS rates, Gibbs references, currents and Spohn's inequality.

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "qfridge/lgks.hpp"

using namespace qfridge;

namespace {

struct Qubit {
    HilbertSpace space{std::vector<Factor>{Factor::tls()}};
    Operator s = ladder(space, 0);
    Operator h = 1.0 * number(space, 0);
};

DensityMatrix random_state(const HilbertSpace& space, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Matrix z(space.dim(), space.dim());
    for (Index j = 0; j < z.cols(); ++j)
        for (Index i = 0; i < z.rows(); ++i) z(i, j) = Scalar(g(rng), g(rng));
    return DensityMatrix::from_numeric(Operator(space, z * z.adjoint()));
}

} // namespace

TEST_CASE("thermal contact rates satisfy detailed balance unless broken on purpose")
{
    Qubit q;
    ThermalContact c{"bath", 2.0, {{q.s, 1.0, 0.7}}, {}, 1.0};
    for (const auto& p : rate_pairs(c)) CHECK(kms_check(p));
    c.upward_rate_factor = 1.5;
    for (const auto& p : rate_pairs(c)) CHECK_FALSE(kms_check(p));
    c.terms[0].omega = -1.0;
    CHECK_THROWS_AS(build_thermal_generator(c), std::invalid_argument);
}

TEST_CASE("the Gibbs state annihilates the thermal generator")
{
    Qubit q;
    const ThermalContact c{"bath", 1.3, {{q.s, 1.0, 0.4}}, {dephasing_term(number(q.space, 0), 2.0)}, 1.0};
    const Superoperator l = build_thermal_generator(c);
    const auto ref = LocalGibbsReference::make("bath", q.h, 1.3);
    CHECK(reference_defect(l, ref) < 1e-15);
    CHECK(hamiltonian_commutation_defect(l, q.h) < 1e-15);
}

TEST_CASE("gibbs_state validates its inputs")
{
    Qubit q;
    CHECK_THROWS_AS(gibbs_state(q.h, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(gibbs_state(q.s, 1.0), std::invalid_argument);
    CHECK(gibbs_state(q.h, 0.0).matrix().isApprox(0.5 * Matrix::Identity(2, 2)));
}

TEST_CASE("log-form and energy-form heat currents coincide for a scale-1 reference")
{
    Qubit q;
    const ThermalContact c{"bath", 0.8, {{q.s, 1.0, 1.2}}, {}, 1.0};
    const Superoperator l = build_thermal_generator(c);
    const auto ref = LocalGibbsReference::make("bath", q.h, 0.8);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
        const DensityMatrix rho = random_state(q.space, rng);
        CHECK(heat_current(l, rho, ref) == doctest::Approx(heat_current_energy_form(l, rho, ref)).epsilon(1e-12));
    }
    // at infinite temperature only the energy form is meaningful
    const auto hot = LocalGibbsReference::make("hot", q.h, 0.0);
    const DensityMatrix rho = random_state(q.space, rng);
    CHECK(heat_current(l, rho, hot) == heat_current_energy_form(l, rho, hot));
}

TEST_CASE("log of an underflowed reference falls back to the Gibbs form")
{
    const HilbertSpace osc({Factor::oscillator(30)});
    const Operator h = 5.0 * number(osc, 0);
    const auto ref = LocalGibbsReference::make("cold", h, 20.0);
    const Matrix l = ref.log_state();
    CHECK(std::abs(l(29, 29).real() - (-100.0 * 29 - std::log1p(std::exp(-100.0)))) < 1e-9);
}

TEST_CASE("Spohn terms are nonpositive for random states")
{
    const HilbertSpace space({Factor::oscillator(4), Factor::tls()});
    const Operator a = ladder(space, 0), s = ladder(space, 1);
    const Operator h = 1.5 * number(space, 0) + 1.0 * number(space, 1);
    const ThermalContact ca{"a", 0.7, {{a, 1.5, 0.9}}, {}, 1.0};
    const ThermalContact cs{"s", 2.0, {{s, 1.0, 0.6}}, {dephasing_term(number(space, 1), 0.3)}, 1.0};
    const Superoperator la = build_thermal_generator(ca), ls = build_thermal_generator(cs);
    const std::vector<BathCoupling> baths{{"a", 0.7, {{la, LocalGibbsReference::make("a", h, 0.7)}}},
                                          {"s", 2.0, {{ls, LocalGibbsReference::make("s", h, 2.0)}}}};
    const Superoperator total = liouvillian_matrix(h, {}) + la + ls;
    std::mt19937_64 rng(17);
    for (int k = 0; k < 50; ++k) {
        const DensityMatrix rho = random_state(space, rng);
        for (const auto& b : baths) CHECK(spohn_term(b.pieces[0].generator, rho, b.pieces[0].reference) <= 1e-12);
        const EntropyProduction ep = entropy_production(rho, total, baths);
        CHECK(ep.sigma >= -1e-10);
        CHECK_FALSE(ep.regularized);
    }
}

TEST_CASE("averaged power is minus the sum of the currents")
{
    const std::vector<double> j{0.3, -0.5, 0.1};
    CHECK(averaged_power(j) == doctest::Approx(0.1));
}
