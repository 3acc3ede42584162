// cooling.hpp — Cooling of a finite cold bath, optimal tuning and the scaling exponent zeta

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfridge/absorption.hpp"
#include "qfridge/baths.hpp"
#include "qfridge/driven.hpp"

namespace qfridge {

// Root x* of (d + kappa)(1 - e^-x) = x, the maximizer of x^(d+kappa) / (e^x - 1).
double optimal_frequency_ratio(const BosonicBath& bath);
// Maximizer of x^2 e^{x/2} K1(x/2) e^-x, the low-temperature cold current of a gas bath at omega = x T.
double optimal_frequency_ratio(const GasBath& bath);
double optimal_frequency_ratio(const BathSpectrum& bath);

enum class FridgeKind { Absorption, Driven };
enum class CurrentSource { LowTemperature, Analytic, NumericSteadyState };
enum class TuningPolicy { OptimalRatio, NumericOpt };

std::string to_string(FridgeKind k);
std::string to_string(CurrentSource s);
std::string to_string(TuningPolicy p);

// The cold bath of a fridge template is replaced along the trajectory: beta_c = 1/T_c and the cold
// rates come from cold_bath at the tuned frequencies. Hot rates come from hot_bath when given,
// otherwise the template's constants are kept.
struct CoolingScenario {
    FridgeKind fridge{FridgeKind::Absorption};
    AbsorptionModel absorption;
    DrivenModel driven;
    BathSpectrum cold_bath{BosonicBath{}};
    std::optional<BathSpectrum> hot_bath;
    HeatCapacityModel capacity;
    TuningPolicy tuning{TuningPolicy::OptimalRatio};
    double lambda_ratio{0.0};  // lambda = lambda_ratio * T for driven fridges; 0 picks x*/2
    CurrentSource source{CurrentSource::LowTemperature};
    double T_start{1.0};
    std::optional<double> T_floor;  // default T_start / 1000
    int samples_per_decade{40};
    double rtol{1e-10};

    double floor() const { return T_floor.value_or(T_start / 1000.0); }
    void validate() const;
};

struct OperatingPoint {
    double omega_c{0.0};
    double lambda{0.0};
    double J_c{0.0};
};

// Tuned (omega_c, lambda) and the resulting cold current at temperature T.
OperatingPoint operating_point(const CoolingScenario& scenario, double T);
// Fridge models with the cold side set to (omega_c, lambda, T) and rates taken from the scenario's baths.
AbsorptionModel absorption_at(const CoolingScenario& scenario, double T, double omega_c);
DrivenModel driven_at(const CoolingScenario& scenario, double T, double omega_c, double lambda);

// Current at prescribed (omega_c, lambda) for temperature T.
double cold_current(const CoolingScenario& scenario, double T, double omega_c, double lambda);

struct CoolingSample {
    double t;
    double T;
    double omega_c;
    double lambda;
    double J_c;
    double rate;  // -dT/dt = J_c / c_V
};

struct ExponentFit {
    double zeta{0.0};
    double intercept{0.0};  // -dT/dt = exp(intercept) T^zeta
    double residual{0.0};   // rms residual of ln(-dT/dt)
    double T_low{0.0};
    double T_high{0.0};
    std::size_t points{0};
};

struct CoolingTrajectory {
    std::vector<CoolingSample> samples;
    bool terminated_at_floor{false};
    bool window_exited{false};  // J_c <= 0 reached before the floor
    ExponentFit zeta_fit;
};

using CurrentLaw = std::function<OperatingPoint(double T)>;

// c_V dT/dt = -J_c integrated in v = -ln T (dt/dv = c_V T / J_c) with samples evenly spaced in ln T.
CoolingTrajectory integrate_cooling(const CurrentLaw& law, const HeatCapacityModel& capacity, double T_start, double T_floor,
                                    int samples_per_decade = 40, double rtol = 1e-10);
CoolingTrajectory integrate_cooling(const CoolingScenario& scenario);

// Least-squares slope of ln(-dT/dt) against ln T over the coldest decade; at least 20 samples.
ExponentFit fit_zeta(const CoolingTrajectory& trajectory);

struct UnattainabilityReport {
    enum class Verdict { Exponential, PowerLaw, FiniteTime };

    Verdict verdict{Verdict::Exponential};
    std::string statement;
    std::optional<double> t0;  // extrapolated time to reach T = 0
    bool low_confidence{false};
};

std::string to_string(UnattainabilityReport::Verdict v);

// zeta within 0.05 of 1: exponential approach; above: power law; below: finite t0 = t_last + T_last^(1-zeta) / (A (1 - zeta)).
UnattainabilityReport unattainability_report(const ExponentFit& fit, const CoolingTrajectory& trajectory);

} // namespace qfridge
