// absorption.hpp — Three-bath absorption refrigerator with TLS or oscillator working modes

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qfridge/baths.hpp"
#include "qfridge/lgks.hpp"

namespace qfridge {

enum class Medium { Tls, Oscillator };

std::string to_string(Medium m);

// Two modes a (hot, omega_h) and b (cold, omega_c), H = omega_h a^dag a + omega_c b^dag b.
// Hot and cold baths thermalize a and b; the work bath drives the exchange a b^dag at omega_h - omega_c.
struct AbsorptionModel {
    Medium medium{Medium::Tls};
    Index truncation{12};       // levels per oscillator mode; ignored for TLS
    Index max_truncation{32};   // auto-escalation stops here

    double omega_h{2.0};
    double omega_c{1.0};
    double gamma_h{1.0};
    double gamma_c{1.0};
    double gamma_w{1.0};
    double beta_h{1.0};
    double beta_c{1.5};
    double beta_w{0.0};
    double delta_h{0.0};
    double delta_c{0.0};

    // Extra thermalization of both modes at the work-bath temperature, off by default.
    double repair_rate{0.0};
    // Multiplies every upward rate; fault injection only.
    double upward_rate_factor{1.0};

    // +1 for TLS, -1 for oscillators.
    double epsilon() const { return medium == Medium::Tls ? 1.0 : -1.0; }

    // omega_h > omega_c > 0, beta_c >= beta_h >= beta_w >= 0, gamma_h, gamma_c > 0, gamma_w >= 0.
    void validate() const;
};

// Replace gamma_h, gamma_c by the spectrum rates at (omega_h, T_h) and (omega_c, T_c).
AbsorptionModel with_spectral_rates(AbsorptionModel model, const BathSpectrum& hot, const BathSpectrum& cold);

struct AbsorptionSystem {
    HilbertSpace space;
    Operator a;
    Operator b;
    Operator hamiltonian;
    Superoperator l_free;  // -i[H, .]
    Superoperator l_hot;
    Superoperator l_cold;
    Superoperator l_work;
    std::vector<ThermalContact> contacts;  // hot, cold, work
    std::vector<BathCoupling> baths;       // hot, cold, work

    Superoperator total() const { return l_free + l_hot + l_cold + l_work; }
};

AbsorptionSystem build_absorption_system(const AbsorptionModel& model);
Superoperator build_absorption_liouvillian(const AbsorptionModel& model);

// Closed-form stationary cold current at beta_w = 0:
//   J_c = omega_c gamma_w (n_c - n_h) / (1 + gamma_w [1/(gamma_h(1 + eps e^-x_h)) + 1/(gamma_c(1 + eps e^-x_c))])
// with n = 1/(e^x + eps), x = beta omega.
double steady_current_analytic(const AbsorptionModel& model);

struct AbsorptionCurrents {
    double J_h{0.0};
    double J_c{0.0};
    double J_w{0.0};
    DensityMatrix state;
    std::size_t null_dimension{1};
    Index truncation{0};
    double top_population{0.0};  // largest top-level marginal (0 for TLS)
    std::vector<RatePair> rates;

    double first_law_residual() const { return J_h + J_c + J_w; }
};

// Steady-state currents J_j = Tr[(L_j rho) H]. Oscillator truncation doubles until the top-level
// populations drop below 1e-10; std::runtime_error if max_truncation is reached first.
AbsorptionCurrents currents_numeric(const AbsorptionModel& model, const SteadyStateOptions& options = {});

// -sum_j beta_j J_j for stationary currents (>= 0 by the second law).
double steady_entropy_production(const AbsorptionModel& model, const AbsorptionCurrents& c);

// Mean occupations at beta_w = 0 (closed, linear):
//   dn_h/dt = gamma_h [e^-x_h - (1 + eps e^-x_h) n_h] - gamma_w (n_h - n_c)
//   dn_c/dt = gamma_c [e^-x_c - (1 + eps e^-x_c) n_c] + gamma_w (n_h - n_c)
std::pair<double, double> mean_value_rhs(double n_h, double n_c, const AbsorptionModel& model);
std::pair<double, double> mean_value_fixed_point(const AbsorptionModel& model);
double cold_current_from_occupation(double n_c, const AbsorptionModel& model);

// omega_c / (omega_h - omega_c)
double cop(const AbsorptionModel& model);

struct LowTemperatureCurrent {
    double value{0.0};
    bool regime_ok{true};  // gamma_c <= 0.1 gamma_h
};

// omega_c gamma_c exp(-beta_c omega_c)
LowTemperatureCurrent low_T_current(const AbsorptionModel& model);

} // namespace qfridge
