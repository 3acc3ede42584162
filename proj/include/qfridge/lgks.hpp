// lgks.hpp — Thermal LGKS generators, local Gibbs references and heat-current functionals

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qfridge/operators.hpp"
#include "qfridge/superoperator.hpp"

namespace qfridge {

// One Bohr-frequency channel of a bath coupling: jump A_omega lowers the system energy by omega > 0.
struct ThermalTerm {
    Operator jump;
    double omega{0.0};
    double rate{0.0};
};

// A bath at inverse temperature beta (beta = 0 is the infinite-temperature bath).
// Each term yields A at rate gamma and A^dag at rate gamma exp(-beta omega).
// Dephasing dissipators ride along with the contact and exchange no heat.
struct ThermalContact {
    std::string label;
    double beta{0.0};
    std::vector<ThermalTerm> terms;
    std::vector<Dissipator> dephasing;
    // Multiplies every upward rate. Anything but 1 breaks detailed balance; only for fault injection.
    double upward_rate_factor{1.0};

    void validate() const;
};

struct RatePair {
    double omega;
    double beta;
    double down;
    double up;
};

std::vector<Dissipator> thermal_dissipators(const ThermalContact& contact);
std::vector<RatePair> rate_pairs(const ThermalContact& contact);
Superoperator build_thermal_generator(const ThermalContact& contact);

// Z^-1 exp(-beta H), energies shifted by the ground energy before exponentiation.
DensityMatrix gibbs_state(const Operator& hamiltonian, double beta);

// |gamma_neg - exp(-beta omega) gamma_pos| <= 1e-12 gamma_pos
bool kms_check(double gamma_pos, double gamma_neg, double omega, double beta);
inline bool kms_check(const RatePair& p) { return kms_check(p.down, p.up, p.omega, p.beta); }

// Gibbs-like stationary state of one local generator:
//   rho_ref = Z^-1 exp(-scale * beta * H),
// where H is the (averaged) system Hamiltonian and scale = (omega + q Omega) / omega.
struct LocalGibbsReference {
    std::string label;
    double beta{0.0};
    double scale{1.0};
    Operator hamiltonian;
    DensityMatrix state;

    static LocalGibbsReference make(std::string label, const Operator& hamiltonian, double beta, double scale = 1.0);

    // ln rho_ref. Taken from the stored state when it is numerically full rank, otherwise
    // from the Gibbs form with a log-sum-exp partition function.
    Matrix log_state() const;
};

// ||L rho_ref||, which must vanish for a matching reference.
double reference_defect(const Superoperator& local_generator, const LocalGibbsReference& ref);

struct LocalPiece {
    Superoperator generator;
    LocalGibbsReference reference;
};

// All local pieces belonging to one bath.
struct BathCoupling {
    std::string label;
    double beta{0.0};
    std::vector<LocalPiece> pieces;

    Superoperator generator() const;
};

// J = -T Tr[(L rho) ln rho_ref]; positive when heat flows from the bath into the system.
// At beta = 0 the log form is 0 * infinity and the energy form is returned instead.
double heat_current(const Superoperator& local_generator, const DensityMatrix& rho, const LocalGibbsReference& ref);

// J = scale Tr[(L rho) H].
double heat_current_energy_form(const Superoperator& local_generator, const DensityMatrix& rho, const LocalGibbsReference& ref);

// Sum of the local currents of one bath.
double bath_current(const BathCoupling& bath, const DensityMatrix& rho);

// Tr[(L rho)(ln rho - ln rho_ref)], nonpositive for every LGKS generator (Spohn).
double spohn_term(const Superoperator& local_generator, const DensityMatrix& rho, const LocalGibbsReference& ref);

struct EntropyProduction {
    double sigma{0.0};         // dS/dt - sum_j J_j / T_j
    double entropy_rate{0.0};  // dS/dt = -Tr[(L rho) ln rho]
    std::vector<double> currents;
    bool regularized{false};   // an eigenvalue of rho was floored at 1e-14
};

EntropyProduction entropy_production(const DensityMatrix& rho, const Superoperator& total_generator,
                                     std::span<const BathCoupling> baths);

// P = -sum_j J_j over stationary currents.
double averaged_power(std::span<const double> steady_currents);

// Pure dephasing -1/2 delta [n, [n, rho]] as the Lindblad term delta D[n].
Dissipator dephasing_term(const Operator& number_operator, double delta);

// ||[ad_H, L]|| / (||ad_H|| ||L||); zero for Davies generators.
double hamiltonian_commutation_defect(const Superoperator& l, const Operator& hamiltonian);

} // namespace qfridge
