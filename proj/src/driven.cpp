// driven.cpp — Normal-mode generators and currents of the driven refrigerator

#include "qfridge/driven.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfridge {

void DrivenModel::validate() const
{
    if (!(lambda > 0.0)) throw std::invalid_argument("driven model: lambda must be > 0");
    if (!(omega_c - lambda > 0.0)) throw std::invalid_argument("driven model: need omega_c - lambda > 0");
    if (!(omega_h > omega_c)) throw std::invalid_argument("driven model: need omega_h > omega_c");
    if (!(beta_h > 0.0) || !(beta_c > 0.0) || std::isinf(beta_h) || std::isinf(beta_c))
        throw std::invalid_argument("driven model: inverse temperatures must be finite and > 0");
    for (double g : {gamma_h_plus, gamma_h_minus, gamma_c_plus, gamma_c_minus})
        if (!(g >= 0.0)) throw std::invalid_argument("driven model: rates must be >= 0");
    if (!(gamma_h_plus + gamma_c_plus > 0.0) || !(gamma_h_minus + gamma_c_minus > 0.0))
        throw std::invalid_argument("driven model: a normal mode is coupled to no bath");
    if (truncation < 2 || max_truncation < truncation)
        throw std::invalid_argument("driven model: need 2 <= truncation <= max_truncation");
}

std::vector<std::string> DrivenModel::warnings() const
{
    std::vector<std::string> w;
    if (lambda < 0.1 * omega_c) w.push_back("lambda < 0.1 omega_c: normal-mode Bohr frequencies are poorly separated");
    return w;
}

DrivenModel with_spectral_rates(DrivenModel model, const BathSpectrum& hot, const BathSpectrum& cold)
{
    model.validate();
    const double th = 1.0 / model.beta_h;
    const double tc = 1.0 / model.beta_c;
    model.gamma_h_plus = relaxation_rate(hot, model.omega_h_plus(), th);
    model.gamma_h_minus = relaxation_rate(hot, model.omega_h_minus(), th);
    model.gamma_c_plus = relaxation_rate(cold, model.omega_c_plus(), tc);
    model.gamma_c_minus = relaxation_rate(cold, model.omega_c_minus(), tc);
    return model;
}

namespace {

FloquetModes make_modes(const DrivenModel& model, Index levels)
{
    FloquetModes m;
    m.space = HilbertSpace({Factor::oscillator(levels), Factor::oscillator(levels)});
    m.d_plus = ladder(m.space, 0);
    m.d_minus = ladder(m.space, 1);
    const double s = 1.0 / std::sqrt(2.0);
    m.a = s * (m.d_plus + m.d_minus);
    m.b = s * (m.d_plus - m.d_minus);
    m.omega_h_plus = model.omega_h_plus();
    m.omega_h_minus = model.omega_h_minus();
    m.omega_c_plus = model.omega_c_plus();
    m.omega_c_minus = model.omega_c_minus();
    return m;
}

DrivenSystem build_system(const DrivenModel& model, Index levels)
{
    model.validate();
    DrivenSystem sys;
    sys.modes = make_modes(model, levels);
    const auto& m = sys.modes;
    const Operator n_plus = number(m.space, 0);
    const Operator n_minus = number(m.space, 1);
    sys.averaged_hamiltonian = m.omega_c_plus * n_plus + m.omega_c_minus * n_minus;

    struct Channel {
        const char* label;
        const Operator* jump;
        double beta;
        double omega;
        double gamma;
        double scale;  // reference exponent relative to the averaged Hamiltonian
    };
    const Channel hot[] = {
        {"hot+", &m.d_plus, model.beta_h, m.omega_h_plus, model.gamma_h_plus, m.omega_h_plus / m.omega_c_plus},
        {"hot-", &m.d_minus, model.beta_h, m.omega_h_minus, model.gamma_h_minus, m.omega_h_minus / m.omega_c_minus},
    };
    const Channel cold[] = {
        {"cold+", &m.d_plus, model.beta_c, m.omega_c_plus, model.gamma_c_plus, 1.0},
        {"cold-", &m.d_minus, model.beta_c, m.omega_c_minus, model.gamma_c_minus, 1.0},
    };

    auto add = [&](BathCoupling& bath, const Channel& s) {
        ThermalContact c{s.label, s.beta, {{*s.jump, s.omega, 0.5 * s.gamma}}, {}, model.upward_rate_factor};
        bath.pieces.push_back(
            {build_thermal_generator(c), LocalGibbsReference::make(s.label, sys.averaged_hamiltonian, s.beta, s.scale)});
        sys.contacts.push_back(std::move(c));
    };
    sys.hot = {"hot", model.beta_h, {}};
    sys.cold = {"cold", model.beta_c, {}};
    for (const auto& s : hot) add(sys.hot, s);
    for (const auto& s : cold) add(sys.cold, s);
    return sys;
}

double bose(double x) { return 1.0 / std::expm1(x); }

} // namespace

FloquetModes floquet_modes(const DrivenModel& model)
{
    model.validate();
    return make_modes(model, model.truncation);
}

DrivenSystem build_driven_system(const DrivenModel& model) { return build_system(model, model.truncation); }

Superoperator build_driven_generator(const DrivenModel& model) { return build_driven_system(model).total(); }

double jc_mode(const DrivenModel& model, int sign)
{
    const double wh = sign > 0 ? model.omega_h_plus() : model.omega_h_minus();
    const double wc = sign > 0 ? model.omega_c_plus() : model.omega_c_minus();
    const double gh = sign > 0 ? model.gamma_h_plus : model.gamma_h_minus;
    const double gc = sign > 0 ? model.gamma_c_plus : model.gamma_c_minus;
    const double xh = model.beta_h * wh;
    const double xc = model.beta_c * wc;
    const double inv_h = 1.0 / (gh * -std::expm1(-xh));
    const double inv_c = 1.0 / (gc * -std::expm1(-xc));
    return 0.5 * wc * (bose(xc) - bose(xh)) / (inv_h + inv_c);
}

double jc_analytic(const DrivenModel& model)
{
    model.validate();
    return jc_mode(model, +1) + jc_mode(model, -1);
}

DrivenCurrents currents_numeric_driven(const DrivenModel& model, const SteadyStateOptions& options)
{
    model.validate();
    Index levels = model.truncation;
    for (;;) {
        const DrivenSystem sys = build_system(model, levels);
        const SteadyState ss = steady_state(sys.total(), options);
        const auto top = top_level_populations(ss.state);
        const double top_max = *std::max_element(top.begin(), top.end());
        if (top_max > 1e-10) {
            if (levels >= model.max_truncation)
                throw std::runtime_error(truncation_failure("driven", levels, top_max));
            levels = std::min(suggested_levels(ss.state, 1e-11), model.max_truncation);
            continue;
        }
        DrivenCurrents out;
        out.state = ss.state;
        out.null_dimension = ss.null_dimension;
        out.truncation = levels;
        out.top_population = top_max;
        out.J_h = bath_current(sys.hot, ss.state);
        out.J_c = bath_current(sys.cold, ss.state);
        out.P = -(out.J_h + out.J_c);
        for (const auto& c : sys.contacts)
            for (const auto& p : rate_pairs(c)) out.rates.push_back(p);
        return out;
    }
}

DrivenLowTemperatureCurrent jc_low_T_driven(const DrivenModel& model)
{
    model.validate();
    const double wp = model.omega_c_plus();
    const double wm = model.omega_c_minus();
    const double v = 0.5 * (wp * model.gamma_c_plus * std::exp(-model.beta_c * wp) +
                            wm * model.gamma_c_minus * std::exp(-model.beta_c * wm));
    const bool ok = model.gamma_c_plus <= 0.1 * model.gamma_h_plus && model.gamma_c_minus <= 0.1 * model.gamma_h_minus;
    return {v, ok};
}

DensityMatrix lab_frame_state(const DensityMatrix& rho_rotating, const DrivenModel& model, double t)
{
    if (!(t >= 0.0)) throw std::invalid_argument("lab_frame_state: t must be >= 0");
    const Index levels = Index(std::lround(std::sqrt(double(rho_rotating.dim()))));
    const FloquetModes m = make_modes(model, levels);
    if (!(m.space == rho_rotating.space())) throw std::invalid_argument("lab_frame_state: state does not live on the normal-mode space");
    if (t == 0.0) return rho_rotating;

    const Matrix h0 = (model.omega_h * (m.a.adjoint() * m.a) + model.omega_c * (m.b.adjoint() * m.b)).matrix();
    const Matrix v = (model.lambda * (number(m.space, 0) - number(m.space, 1))).matrix();
    auto propagator = [t](const Matrix& h) { return hermitian_function(h, [t](double e) { return std::exp(Scalar(0.0, -e * t)); }); };
    const Matrix u = propagator(h0) * propagator(v);
    return DensityMatrix::from_numeric(Operator(m.space, u * rho_rotating.matrix() * u.adjoint()));
}

} // namespace qfridge
