// Cooling trajectories, optimal tuning, exponent fits and unattainability verdicts.

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qfridge/cooling.hpp"

using namespace qfridge;

namespace {

CoolingScenario bosonic_scenario(int d, double kappa)
{
    CoolingScenario sc;
    sc.cold_bath = BosonicBath{d, kappa, 1.0, 1.0};
    sc.capacity = HeatCapacityModel::bosonic_solid(d);
    sc.absorption.omega_h = 20.0;
    sc.absorption.beta_h = 1.0;
    sc.T_start = 0.1;
    sc.T_floor = 1e-4;
    return sc;
}

CurrentLaw power_law(double c, double p)
{
    return [c, p](double T) { return OperatingPoint{T, 0.0, c * std::pow(T, p)}; };
}

} // namespace

TEST_CASE("optimal frequency ratio against frozen roots")
{
    const std::pair<BosonicBath, double> cases[] = {
        {{1, 1.0, 1.0, 1.0}, 1.5936242600400401}, {{3, 0.5, 1.0, 1.0}, 3.3809466654733675},
        {{3, 1.0, 1.0, 1.0}, 3.9206903948728863}, {{3, 1.5, 1.0, 1.0}, 4.4473046049759},
        {{3, 2.0, 1.0, 1.0}, 4.9651142317442763},
    };
    for (const auto& [bath, x] : cases) CHECK(optimal_frequency_ratio(bath) == doctest::Approx(x).epsilon(1e-12));
    CHECK_THROWS_AS(optimal_frequency_ratio(BosonicBath{1, 0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("gas optimal ratio maximizes the low-temperature current")
{
    const GasBath g;
    const double x = optimal_frequency_ratio(g);
    auto j = [&](double y) { return y * relaxation_rate(BathSpectrum{g}, y * g.T, g.T) * std::exp(-y); };
    CHECK(j(x) > j(0.95 * x));
    CHECK(j(x) > j(1.05 * x));
}

TEST_CASE("exponential cooling of a linear-capacity body by a quadratic current")
{
    // c_V = T, J = 2 T^2: T(t) = exp(-2 t)
    const CoolingTrajectory tr = integrate_cooling(power_law(2.0, 2.0), HeatCapacityModel::custom(1.0), 1.0, 1e-3, 40, 1e-12);
    REQUIRE(tr.samples.size() == 121);
    CHECK(tr.terminated_at_floor);
    for (const auto& s : tr.samples) CHECK(std::abs(s.t - (-std::log(s.T) / 2.0)) <= 1e-6 * std::max(1.0, s.t));
    CHECK(tr.zeta_fit.zeta == doctest::Approx(1.0).epsilon(1e-12));
    const UnattainabilityReport rep = unattainability_report(tr.zeta_fit, tr);
    CHECK(rep.verdict == UnattainabilityReport::Verdict::Exponential);
    CHECK_FALSE(rep.t0.has_value());
}

TEST_CASE("fit recovers a synthetic power law")
{
    const CoolingTrajectory tr = integrate_cooling(power_law(1.0, 2.5), HeatCapacityModel::custom(1.0), 1.0, 1e-3);
    CHECK(tr.zeta_fit.zeta == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(tr.zeta_fit.residual < 1e-12);
    CHECK(tr.zeta_fit.points >= 20);
    CHECK(to_string(unattainability_report(tr.zeta_fit, tr).verdict) == "power-law");
}

TEST_CASE("finite-time extrapolation for zeta below one")
{
    // -dT/dt = sqrt(T) from T = 1 reaches zero at t0 = 2
    const CoolingTrajectory tr = integrate_cooling(power_law(1.0, 1.5), HeatCapacityModel::custom(1.0), 1.0, 1e-3);
    const UnattainabilityReport rep = unattainability_report(tr.zeta_fit, tr);
    CHECK(rep.verdict == UnattainabilityReport::Verdict::FiniteTime);
    REQUIRE(rep.t0.has_value());
    CHECK(*rep.t0 == doctest::Approx(2.0).epsilon(1e-8));
    CHECK_FALSE(rep.low_confidence);
}

TEST_CASE("empty and exited cooling windows")
{
    CHECK_THROWS_AS(integrate_cooling(power_law(-1.0, 2.0), HeatCapacityModel::custom(1.0), 1.0, 1e-3), std::runtime_error);
    auto gapped = [](double T) { return OperatingPoint{T, 0.0, T > 0.05 ? T * T : 0.0}; };
    const CoolingTrajectory tr = integrate_cooling(gapped, HeatCapacityModel::custom(1.0), 1.0, 1e-3);
    CHECK(tr.window_exited);
    CHECK_FALSE(tr.terminated_at_floor);
    CHECK(tr.samples.back().T > 0.05);
    CHECK(tr.zeta_fit.T_low > 0.05);  // the fit only sees the window actually cooled through
}

TEST_CASE("bosonic baths cool with zeta equal to kappa")
{
    for (int d : {1, 3})
        for (double kappa : {1.0, 1.5, 2.0}) {
            const CoolingTrajectory tr = integrate_cooling(bosonic_scenario(d, kappa));
            CAPTURE(d);
            CAPTURE(kappa);
            CHECK(std::abs(tr.zeta_fit.zeta - kappa) <= 0.05);
        }
}

TEST_CASE("ideal gases cool with zeta = 3/2")
{
    for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
        CoolingScenario sc = bosonic_scenario(3, 1.0);
        GasBath g;
        g.statistics = st;
        g.T_crit = st == Statistics::Bose ? std::optional<double>(0.5) : std::nullopt;
        sc.cold_bath = g;
        sc.capacity = HeatCapacityModel::ideal_gas(st, g.T_crit);
        const CoolingTrajectory tr = integrate_cooling(sc);
        CAPTURE(to_string(st));
        CHECK(std::abs(tr.zeta_fit.zeta - 1.5) <= 0.05);
    }
}

TEST_CASE("tuned operating points are local optima")
{
    CoolingScenario sc = bosonic_scenario(3, 1.0);
    const double T = 0.05;
    const OperatingPoint op = operating_point(sc, T);
    for (double f : {0.95, 1.05}) CHECK(cold_current(sc, T, f * op.omega_c, 0.0) < op.J_c);

    sc.source = CurrentSource::Analytic;
    sc.tuning = TuningPolicy::NumericOpt;
    const OperatingPoint num = operating_point(sc, T);
    for (double f : {0.95, 1.05}) CHECK(cold_current(sc, T, f * num.omega_c, 0.0) < num.J_c);

    sc.fridge = FridgeKind::Driven;
    sc.driven.omega_h = 20.0;
    sc.driven.beta_h = 1.0;
    const OperatingPoint drv = operating_point(sc, T);
    CHECK(drv.lambda >= 0.1 * drv.omega_c * (1 - 1e-9));
    CHECK(drv.lambda <= 0.95 * drv.omega_c * (1 + 1e-9));
    for (double f : {0.95, 1.05}) CHECK(cold_current(sc, T, f * drv.omega_c, drv.lambda) < drv.J_c * (1 + 1e-9));
}

TEST_CASE("absorption and driven fridges share the exponent")
{
    CoolingScenario a = bosonic_scenario(3, 1.5);
    a.source = CurrentSource::Analytic;
    CoolingScenario d = a;
    d.fridge = FridgeKind::Driven;
    d.driven.omega_h = 20.0;
    d.driven.beta_h = 1.0;
    const double za = integrate_cooling(a).zeta_fit.zeta;
    const double zd = integrate_cooling(d).zeta_fit.zeta;
    CHECK(std::abs(za - zd) <= 0.05);
    CHECK(std::abs(za - 1.5) <= 0.05);
}

TEST_CASE("scenario validation")
{
    CoolingScenario sc = bosonic_scenario(3, 1.0);
    sc.T_floor = 0.2;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc = bosonic_scenario(3, 1.0);
    sc.T_start = 2.0;  // hotter than the hot bath
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc = bosonic_scenario(3, 1.0);
    sc.fridge = FridgeKind::Driven;
    sc.lambda_ratio = 10.0;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    CHECK(to_string(CurrentSource::NumericSteadyState) == "numeric");
    CHECK(to_string(TuningPolicy::NumericOpt) == "numeric-opt");
}
