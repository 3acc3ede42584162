// lgks.cpp — Thermal generators and the thermodynamic functionals built on them

#include "qfridge/lgks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qfridge {

void ThermalContact::validate() const
{
    if (!(beta >= 0.0)) throw std::invalid_argument("contact '" + label + "': beta must be >= 0");
    if (!(upward_rate_factor >= 0.0)) throw std::invalid_argument("contact '" + label + "': upward rate factor must be >= 0");
    for (const auto& t : terms) {
        if (!(t.omega > 0.0)) throw std::invalid_argument("contact '" + label + "': Bohr frequency must be > 0");
        if (!(t.rate >= 0.0)) throw std::invalid_argument("contact '" + label + "': rate must be >= 0");
        if (!terms.empty() && !(t.jump.space() == terms.front().jump.space()))
            throw std::invalid_argument("contact '" + label + "': dimension mismatch among terms");
    }
    for (const auto& d : dephasing)
        if (!terms.empty() && !(d.jump.space() == terms.front().jump.space()))
            throw std::invalid_argument("contact '" + label + "': dephasing acts on a different space");
}

std::vector<RatePair> rate_pairs(const ThermalContact& contact)
{
    std::vector<RatePair> out;
    for (const auto& t : contact.terms)
        out.push_back({t.omega, contact.beta, t.rate, t.rate * std::exp(-contact.beta * t.omega) * contact.upward_rate_factor});
    return out;
}

std::vector<Dissipator> thermal_dissipators(const ThermalContact& contact)
{
    contact.validate();
    std::vector<Dissipator> out;
    const auto pairs = rate_pairs(contact);
    for (std::size_t i = 0; i < contact.terms.size(); ++i) {
        out.push_back({contact.terms[i].jump, pairs[i].down});
        out.push_back({contact.terms[i].jump.adjoint(), pairs[i].up});
    }
    for (const auto& d : contact.dephasing) out.push_back(d);
    return out;
}

Superoperator build_thermal_generator(const ThermalContact& contact)
{
    auto terms = thermal_dissipators(contact);
    if (terms.empty()) throw std::invalid_argument("contact '" + contact.label + "' has no terms");
    return liouvillian_matrix(terms.front().jump.space(), terms);
}

DensityMatrix gibbs_state(const Operator& hamiltonian, double beta)
{
    if (!hamiltonian.is_hermitian(1e-12)) throw std::invalid_argument("gibbs_state: Hamiltonian is not Hermitian");
    if (!(beta >= 0.0) || std::isinf(beta)) throw std::invalid_argument("gibbs_state: beta must be finite and >= 0");
    const double e0 = hermitian_eigenvalues(hamiltonian.matrix()).minCoeff();
    Matrix rho = hermitian_function(hamiltonian.matrix(), [&](double e) { return std::exp(-beta * (e - e0)); });
    rho /= rho.trace();
    return DensityMatrix::from_numeric(Operator(hamiltonian.space(), rho));
}

bool kms_check(double gamma_pos, double gamma_neg, double omega, double beta)
{
    if (!(omega > 0.0)) throw std::invalid_argument("kms_check: omega must be > 0");
    return std::abs(gamma_neg - std::exp(-beta * omega) * gamma_pos) <= 1e-12 * gamma_pos;
}

LocalGibbsReference LocalGibbsReference::make(std::string label, const Operator& hamiltonian, double beta, double scale)
{
    if (!(scale > 0.0)) throw std::invalid_argument("local reference scale must be > 0");
    return {std::move(label), beta, scale, hamiltonian, gibbs_state(hamiltonian, beta * scale)};
}

Matrix LocalGibbsReference::log_state() const
{
    if (hermitian_eigenvalues(state.matrix()).minCoeff() > 1e-250)
        return hermitian_function(state.matrix(), [](double p) { return std::log(p); });
    // Underflowed populations: ln rho = -b (H - E0) - ln sum exp(-b (E - E0)).
    const double b = beta * scale;
    if (std::isinf(b)) throw std::domain_error("local reference is not strictly positive (zero temperature)");
    const Eigen::VectorXd energies = hermitian_eigenvalues(hamiltonian.matrix());
    const double e0 = energies.minCoeff();
    const double log_z = std::log((-b * (energies.array() - e0)).exp().sum());
    return hermitian_function(hamiltonian.matrix(), [&](double x) { return -b * (x - e0) - log_z; });
}

double reference_defect(const Superoperator& local_generator, const LocalGibbsReference& ref)
{
    return local_generator.apply(ref.state).matrix().norm();
}

Superoperator BathCoupling::generator() const
{
    if (pieces.empty()) throw std::invalid_argument("bath '" + label + "' has no pieces");
    Superoperator l = pieces.front().generator;
    for (std::size_t i = 1; i < pieces.size(); ++i) l += pieces[i].generator;
    return l;
}

namespace {

double trace_product(const Matrix& a, const Matrix& b) { return (a.transpose().cwiseProduct(b)).sum().real(); }

} // namespace

double heat_current_energy_form(const Superoperator& local_generator, const DensityMatrix& rho, const LocalGibbsReference& ref)
{
    const Operator drho = local_generator.apply(rho);
    return ref.scale * trace_product(drho.matrix(), ref.hamiltonian.matrix());
}

double heat_current(const Superoperator& local_generator, const DensityMatrix& rho, const LocalGibbsReference& ref)
{
    if (ref.beta == 0.0) return heat_current_energy_form(local_generator, rho, ref);
    const Operator drho = local_generator.apply(rho);
    return -trace_product(drho.matrix(), ref.log_state()) / ref.beta;
}

double bath_current(const BathCoupling& bath, const DensityMatrix& rho)
{
    double j = 0.0;
    for (const auto& p : bath.pieces) j += heat_current(p.generator, rho, p.reference);
    return j;
}

namespace {

struct Log {
    Matrix value;
    bool floored{false};
};

Log regularized_log(const DensityMatrix& rho)
{
    bool floored = false;
    Matrix value = hermitian_function(rho.matrix(), [&floored](double p) {
        if (p < 1e-14) {
            p = 1e-14;
            floored = true;
        }
        return std::log(p);
    });
    return {std::move(value), floored};
}

} // namespace

double spohn_term(const Superoperator& local_generator, const DensityMatrix& rho, const LocalGibbsReference& ref)
{
    const Operator drho = local_generator.apply(rho);
    const Log lr = regularized_log(rho);
    return trace_product(drho.matrix(), lr.value - ref.log_state());
}

EntropyProduction entropy_production(const DensityMatrix& rho, const Superoperator& total_generator,
                                     std::span<const BathCoupling> baths)
{
    EntropyProduction out;
    const Log lr = regularized_log(rho);
    out.regularized = lr.floored;
    out.entropy_rate = -trace_product(total_generator.apply(rho).matrix(), lr.value);
    double flux = 0.0;
    for (const auto& bath : baths) {
        const double j = bath_current(bath, rho);
        out.currents.push_back(j);
        flux += bath.beta * j;
    }
    out.sigma = out.entropy_rate - flux;
    return out;
}

double averaged_power(std::span<const double> steady_currents)
{
    double p = 0.0;
    for (double j : steady_currents) p -= j;
    return p;
}

Dissipator dephasing_term(const Operator& number_operator, double delta)
{
    if (!(delta >= 0.0)) throw std::invalid_argument("dephasing rate must be >= 0");
    return {number_operator, delta};
}

double hamiltonian_commutation_defect(const Superoperator& l, const Operator& hamiltonian)
{
    const Superoperator ad = liouvillian_matrix(hamiltonian, {});
    const SparseMatrix c = ad.matrix() * l.matrix() - l.matrix() * ad.matrix();
    const double denom = ad.matrix().norm() * l.matrix().norm();
    return denom > 0.0 ? c.norm() / denom : 0.0;
}

} // namespace qfridge
