// baths.hpp — Relaxation-rate spectra, heat-capacity models and van Hove classification

#pragma once

#include <optional>
#include <string>
#include <variant>

namespace qfridge {

// Harmonic (phonon/photon) bath in d dimensions with form factor |g(omega)|^2 ~ omega^kappa.
struct BosonicBath {
    int d{3};
    double kappa{1.0};
    double g0{1.0};
    double T{1.0};

    void validate() const;
};

enum class Statistics { Bose, Fermi };

// Low-density ideal gas scattering off the system with s-wave length a_s.
// For Bose statistics T_crit is the condensation temperature; for Fermi statistics it is the
// degeneracy (Fermi) temperature and defaults to 1 when absent.
struct GasBath {
    double n{1.0};
    double m{1.0};
    double a_s{0.01};
    double T{1.0};
    Statistics statistics{Statistics::Bose};
    std::optional<double> T_crit;

    void validate() const;
};

using BathSpectrum = std::variant<BosonicBath, GasBath>;

// gamma = g0 omega^(kappa + d - 1) / (1 - exp(-omega / T))
double bosonic_rate(const BosonicBath& bath, double omega);

// Density of particles taking part in scattering: n (T/T_crit)^(3/2) below a Bose T_crit,
// n T/T_F for a degenerate Fermi gas, n otherwise.
double effective_density(const GasBath& bath);

// (4 pi)^4 (beta / 2 pi m)^(1/2) a_s^2 n_eff omega K1(beta omega / 2) exp(beta omega / 2)
double gas_rate_closed(const GasBath& bath, double omega);

// Same rate by radial quadrature of the energy-shell integral over a Maxwell distribution.
double gas_rate_numeric(const GasBath& bath, double omega);

// exp(x) K1(x) without overflow; relative accuracy ~1e-13 on [1e-4, 700] and beyond.
double bessel_k1_scaled(double x);

// Rate of a spectrum at (omega, T); the spectrum's own T is ignored.
double relaxation_rate(const BathSpectrum& bath, double omega, double T);

struct HeatCapacityModel {
    enum class Kind { BosonicSolid, IdealGas, Custom };

    Kind kind{Kind::BosonicSolid};
    double c0{1.0};
    int d{3};                                  // BosonicSolid
    Statistics statistics{Statistics::Bose};   // IdealGas
    std::optional<double> T_crit;              // IdealGas
    double exponent{1.0};                      // Custom

    static HeatCapacityModel bosonic_solid(int d, double c0 = 1.0);
    static HeatCapacityModel ideal_gas(Statistics s, std::optional<double> T_crit, double c0 = 1.0);
    static HeatCapacityModel custom(double exponent, double c0 = 1.0);

    void validate() const;
};

// c0 T^d for a bosonic solid; a gas is flat above T_crit and scales like its
// participating density below it (T^(3/2) Bose, T Fermi). Jumps at T_crit are allowed.
double heat_capacity(const HeatCapacityModel& model, double T);

struct VanHoveClass {
    bool ground_state_exists;    // kappa > 2 - d
    bool ground_energy_finite;   // kappa > 1 - d
    bool third_law_compatible;   // kappa >= 1

    bool operator==(const VanHoveClass&) const = default;
};

VanHoveClass van_hove_classify(int d, double kappa);

std::string to_string(Statistics s);

} // namespace qfridge
