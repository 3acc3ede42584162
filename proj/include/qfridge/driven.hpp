// driven.hpp — Periodically driven two-oscillator refrigerator in its normal-mode (Floquet) picture

#pragma once

#include <string>
#include <vector>

#include "qfridge/baths.hpp"
#include "qfridge/lgks.hpp"

namespace qfridge {

// H(t) = omega_h a^dag a + omega_c b^dag b + lambda (e^{i Omega t} a b^dag + h.c.), Omega = omega_h - omega_c.
// In the rotating frame the normal modes d_pm = (a pm b)/sqrt(2) carry Bohr frequencies omega_h,c pm lambda.
// The truncation applies to each normal mode.
struct DrivenModel {
    double omega_h{3.0};
    double omega_c{1.0};
    double lambda{0.5};
    double beta_h{0.5};
    double beta_c{1.0};
    double gamma_h_plus{1.0};
    double gamma_h_minus{1.0};
    double gamma_c_plus{1.0};
    double gamma_c_minus{1.0};
    Index truncation{12};
    Index max_truncation{32};
    double upward_rate_factor{1.0};  // fault injection only

    double drive_frequency() const { return omega_h - omega_c; }
    double omega_h_plus() const { return omega_h + lambda; }
    double omega_h_minus() const { return omega_h - lambda; }
    double omega_c_plus() const { return omega_c + lambda; }
    double omega_c_minus() const { return omega_c - lambda; }

    // Throws std::invalid_argument unless omega_h > omega_c > lambda > 0, betas > 0 and finite,
    // rates >= 0 with every normal mode coupled to at least one bath.
    void validate() const;
    // Non-fatal remarks, e.g. lambda < 0.1 omega_c (poorly separated Bohr frequencies).
    std::vector<std::string> warnings() const;
};

// Rates gamma_h(omega_h pm lambda, T_h), gamma_c(omega_c pm lambda, T_c) from bath spectra.
DrivenModel with_spectral_rates(DrivenModel model, const BathSpectrum& hot, const BathSpectrum& cold);

struct FloquetModes {
    HilbertSpace space;
    Operator d_plus;
    Operator d_minus;
    Operator a;  // (d_plus + d_minus)/sqrt(2)
    Operator b;  // (d_plus - d_minus)/sqrt(2)
    double omega_h_plus, omega_h_minus, omega_c_plus, omega_c_minus;
};

FloquetModes floquet_modes(const DrivenModel& model);

struct DrivenSystem {
    FloquetModes modes;
    Operator averaged_hamiltonian;  // omega_c^+ n_+ + omega_c^- n_-
    BathCoupling hot;               // pieces (+), (-)
    BathCoupling cold;              // pieces (+), (-)
    std::vector<ThermalContact> contacts;

    Superoperator total() const { return hot.generator() + cold.generator(); }
};

DrivenSystem build_driven_system(const DrivenModel& model);
// Rotating-frame generator L_h^+ + L_h^- + L_c^+ + L_c^-, each (gamma/2)(D[d] + e^{-beta omega} D[d^dag]).
Superoperator build_driven_generator(const DrivenModel& model);

// Closed-form stationary cold current summed over both normal modes.
double jc_analytic(const DrivenModel& model);

// Heat current of one normal mode between the two baths, (1/2) omega_c (n_c - n_h) / (1/g_h + 1/g_c)
// with g = gamma (1 - e^{-beta omega}); sign ±1 picks the mode.
double jc_mode(const DrivenModel& model, int sign);

struct DrivenCurrents {
    double J_h{0.0};
    double J_c{0.0};
    double P{0.0};
    DensityMatrix state;
    std::size_t null_dimension{1};
    Index truncation{0};
    double top_population{0.0};
    std::vector<RatePair> rates;
};

// Log-form local currents on the numerical steady state, P = -(J_h + J_c).
DrivenCurrents currents_numeric_driven(const DrivenModel& model, const SteadyStateOptions& options = {});

struct DrivenLowTemperatureCurrent {
    double value{0.0};
    bool regime_ok{true};  // gamma_c^pm <= 0.1 gamma_h^pm
};

// (1/2) [omega_c^+ gamma_c^+ e^{-beta_c omega_c^+} + omega_c^- gamma_c^- e^{-beta_c omega_c^-}]
DrivenLowTemperatureCurrent jc_low_T_driven(const DrivenModel& model);

// Lab-frame state U rho U^dag with U = exp(-i H0 t) exp(-i V t), H0 = omega_h a^dag a + omega_c b^dag b,
// V = lambda (a^dag b + a b^dag) = lambda (n_+ - n_-).
DensityMatrix lab_frame_state(const DensityMatrix& rho_rotating, const DrivenModel& model, double t);

} // namespace qfridge
