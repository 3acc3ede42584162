// absorption.cpp — Absorption refrigerator generators, currents and mean-value dynamics

#include "qfridge/absorption.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qfridge {

std::string to_string(Medium m) { return m == Medium::Tls ? "tls" : "oscillator"; }

void AbsorptionModel::validate() const
{
    if (!(omega_c > 0.0) || !(omega_h > omega_c))
        throw std::invalid_argument("absorption model: need omega_h > omega_c > 0");
    if (!(gamma_h > 0.0) || !(gamma_c > 0.0)) throw std::invalid_argument("absorption model: gamma_h, gamma_c must be > 0");
    if (!(gamma_w >= 0.0)) throw std::invalid_argument("absorption model: gamma_w must be >= 0");
    if (!(beta_w >= 0.0) || !(beta_h >= beta_w) || !(beta_c >= beta_h) || std::isinf(beta_c))
        throw std::invalid_argument("absorption model: need beta_c >= beta_h >= beta_w >= 0, all finite");
    if (!(delta_h >= 0.0) || !(delta_c >= 0.0)) throw std::invalid_argument("absorption model: dephasing rates must be >= 0");
    if (!(repair_rate >= 0.0)) throw std::invalid_argument("absorption model: repair rate must be >= 0");
    if (medium == Medium::Oscillator && (truncation < 2 || max_truncation < truncation))
        throw std::invalid_argument("absorption model: need 2 <= truncation <= max_truncation");
}

AbsorptionModel with_spectral_rates(AbsorptionModel model, const BathSpectrum& hot, const BathSpectrum& cold)
{
    if (!(model.beta_h > 0.0) || !(model.beta_c > 0.0))
        throw std::invalid_argument("spectral rates need finite bath temperatures");
    model.gamma_h = relaxation_rate(hot, model.omega_h, 1.0 / model.beta_h);
    model.gamma_c = relaxation_rate(cold, model.omega_c, 1.0 / model.beta_c);
    return model;
}

namespace {

HilbertSpace two_mode_space(const AbsorptionModel& model, Index levels)
{
    const Factor f = model.medium == Medium::Tls ? Factor::tls() : Factor::oscillator(levels);
    return HilbertSpace({f, f});
}

AbsorptionSystem build_system(const AbsorptionModel& model, Index levels)
{
    model.validate();
    AbsorptionSystem sys;
    sys.space = two_mode_space(model, levels);
    sys.a = ladder(sys.space, 0);
    sys.b = ladder(sys.space, 1);
    const Operator na = number(sys.space, 0);
    const Operator nb = number(sys.space, 1);
    sys.hamiltonian = model.omega_h * na + model.omega_c * nb;

    ThermalContact hot{"hot", model.beta_h, {{sys.a, model.omega_h, model.gamma_h}}, {}, model.upward_rate_factor};
    ThermalContact cold{"cold", model.beta_c, {{sys.b, model.omega_c, model.gamma_c}}, {}, model.upward_rate_factor};
    if (model.delta_h > 0.0) hot.dephasing.push_back(dephasing_term(na, model.delta_h));
    if (model.delta_c > 0.0) cold.dephasing.push_back(dephasing_term(nb, model.delta_c));

    ThermalContact work{"work", model.beta_w, {{sys.a * sys.b.adjoint(), model.omega_h - model.omega_c, model.gamma_w}}, {},
                        model.upward_rate_factor};
    if (model.repair_rate > 0.0) {
        work.terms.push_back({sys.a, model.omega_h, model.repair_rate});
        work.terms.push_back({sys.b, model.omega_c, model.repair_rate});
    }

    sys.l_free = liouvillian_matrix(sys.hamiltonian, {});
    sys.l_hot = build_thermal_generator(hot);
    sys.l_cold = build_thermal_generator(cold);
    sys.l_work = build_thermal_generator(work);
    sys.contacts = {hot, cold, work};

    const Superoperator* gens[] = {&sys.l_hot, &sys.l_cold, &sys.l_work};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& c = sys.contacts[i];
        sys.baths.push_back({c.label, c.beta, {{*gens[i], LocalGibbsReference::make(c.label, sys.hamiltonian, c.beta)}}});
    }
    return sys;
}

double energy_flow(const Superoperator& l, const DensityMatrix& rho, const Operator& h)
{
    return expectation(l.apply(rho), h).real();
}

} // namespace

AbsorptionSystem build_absorption_system(const AbsorptionModel& model) { return build_system(model, model.truncation); }

Superoperator build_absorption_liouvillian(const AbsorptionModel& model) { return build_absorption_system(model).total(); }

namespace {

double occupation(double x, double eps) { return 1.0 / (std::exp(x) + eps); }

void require_infinite_work_temperature(const AbsorptionModel& model, const char* what)
{
    if (model.beta_w != 0.0) throw std::invalid_argument(std::string(what) + ": requires beta_w = 0");
}

} // namespace

double steady_current_analytic(const AbsorptionModel& model)
{
    model.validate();
    require_infinite_work_temperature(model, "steady_current_analytic");
    const double eps = model.epsilon();
    const double xh = model.beta_h * model.omega_h;
    const double xc = model.beta_c * model.omega_c;
    const double nh = occupation(xh, eps);
    const double nc = occupation(xc, eps);
    const double ah = model.gamma_h * (1.0 + eps * std::exp(-xh));
    const double ac = model.gamma_c * (1.0 + eps * std::exp(-xc));
    return model.omega_c * model.gamma_w * (nc - nh) / (1.0 + model.gamma_w * (1.0 / ah + 1.0 / ac));
}

AbsorptionCurrents currents_numeric(const AbsorptionModel& model, const SteadyStateOptions& options)
{
    model.validate();
    Index levels = model.truncation;
    for (;;) {
        const AbsorptionSystem sys = build_system(model, levels);
        const SteadyState ss = steady_state(sys.total(), options);

        AbsorptionCurrents out;
        out.state = ss.state;
        out.null_dimension = ss.null_dimension;
        out.truncation = model.medium == Medium::Tls ? 2 : levels;
        if (model.medium == Medium::Oscillator) {
            const auto top = top_level_populations(ss.state);
            out.top_population = *std::max_element(top.begin(), top.end());
        }
        if (out.top_population > 1e-10) {
            if (levels >= model.max_truncation)
                throw std::runtime_error(truncation_failure("absorption", levels, out.top_population));
            levels = std::min(suggested_levels(ss.state, 1e-11), model.max_truncation);
            continue;
        }
        out.J_h = energy_flow(sys.l_hot, ss.state, sys.hamiltonian);
        out.J_c = energy_flow(sys.l_cold, ss.state, sys.hamiltonian);
        out.J_w = energy_flow(sys.l_work, ss.state, sys.hamiltonian);
        for (const auto& c : sys.contacts)
            for (const auto& p : rate_pairs(c)) out.rates.push_back(p);
        return out;
    }
}

double steady_entropy_production(const AbsorptionModel& model, const AbsorptionCurrents& c)
{
    return -(model.beta_h * c.J_h + model.beta_c * c.J_c + model.beta_w * c.J_w);
}

std::pair<double, double> mean_value_rhs(double n_h, double n_c, const AbsorptionModel& model)
{
    model.validate();
    require_infinite_work_temperature(model, "mean_value_rhs");
    const double upper = model.medium == Medium::Tls ? 1.0 : std::numeric_limits<double>::infinity();
    if (!(n_h >= 0.0 && n_h <= upper && n_c >= 0.0 && n_c <= upper))
        throw std::domain_error("mean_value_rhs: occupations out of range");
    const double eps = model.epsilon();
    const double eh = std::exp(-model.beta_h * model.omega_h);
    const double ec = std::exp(-model.beta_c * model.omega_c);
    const double flow = model.gamma_w * (n_h - n_c);
    return {model.gamma_h * (eh - (1.0 + eps * eh) * n_h) - flow, model.gamma_c * (ec - (1.0 + eps * ec) * n_c) + flow};
}

std::pair<double, double> mean_value_fixed_point(const AbsorptionModel& model)
{
    model.validate();
    require_infinite_work_temperature(model, "mean_value_fixed_point");
    const double eps = model.epsilon();
    const double eh = std::exp(-model.beta_h * model.omega_h);
    const double ec = std::exp(-model.beta_c * model.omega_c);
    Eigen::Matrix2d m;
    m << model.gamma_h * (1.0 + eps * eh) + model.gamma_w, -model.gamma_w,
        -model.gamma_w, model.gamma_c * (1.0 + eps * ec) + model.gamma_w;
    const Eigen::Vector2d n = m.partialPivLu().solve(Eigen::Vector2d(model.gamma_h * eh, model.gamma_c * ec));
    return {n(0), n(1)};
}

double cold_current_from_occupation(double n_c, const AbsorptionModel& model)
{
    const double ec = std::exp(-model.beta_c * model.omega_c);
    return model.omega_c * model.gamma_c * (ec - (1.0 + model.epsilon() * ec) * n_c);
}

double cop(const AbsorptionModel& model)
{
    if (!(model.omega_h > model.omega_c)) throw std::invalid_argument("cop: need omega_h > omega_c");
    return model.omega_c / (model.omega_h - model.omega_c);
}

LowTemperatureCurrent low_T_current(const AbsorptionModel& model)
{
    model.validate();
    return {model.omega_c * model.gamma_c * std::exp(-model.beta_c * model.omega_c), model.gamma_c <= 0.1 * model.gamma_h};
}

} // namespace qfridge
