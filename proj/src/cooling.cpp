// cooling.cpp — Cooling trajectories, tuning policies and exponent fits

#include "qfridge/cooling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

namespace qfridge {

double optimal_frequency_ratio(const BosonicBath& bath)
{
    const double s = bath.d + bath.kappa;
    if (!(s > 1.0)) throw std::invalid_argument("optimal_frequency_ratio: need d + kappa > 1");
    // f is concave with f(0) = 0, f'(0) = s - 1 > 0 and f(s) < 0, so the positive root lies in (0, s).
    auto f = [s](double x) { return -s * std::expm1(-x) - x; };
    double lo = 0.5 * (s - 1.0) / s;
    while (!(f(lo) > 0.0)) {
        lo *= 0.5;
        if (lo < 1e-300) throw std::runtime_error("optimal_frequency_ratio: no bracket");
    }
    std::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, s, f(lo), f(s), boost::math::tools::eps_tolerance<double>(52), iters);
    const double x = 0.5 * (a + b);
    if (!(std::abs(f(x)) < 1e-10)) throw std::runtime_error("optimal_frequency_ratio: root not converged");
    return x;
}

namespace {

double maximize_ratio(const BathSpectrum& bath, double T)
{
    auto neg = [&](double x) { return -(std::log(x * relaxation_rate(bath, x * T, T)) - x); };
    const auto r = boost::math::tools::brent_find_minima(neg, 1e-3, 60.0, 52);
    return r.first;
}

} // namespace

double optimal_frequency_ratio(const GasBath& bath)
{
    bath.validate();
    return maximize_ratio(BathSpectrum{bath}, bath.T);
}

double optimal_frequency_ratio(const BathSpectrum& bath)
{
    return std::visit([](const auto& b) { return optimal_frequency_ratio(b); }, bath);
}

std::string to_string(FridgeKind k) { return k == FridgeKind::Absorption ? "absorption" : "driven"; }

std::string to_string(CurrentSource s)
{
    switch (s) {
    case CurrentSource::LowTemperature: return "low-t";
    case CurrentSource::Analytic: return "analytic";
    case CurrentSource::NumericSteadyState: return "numeric";
    }
    return "?";
}

std::string to_string(TuningPolicy p) { return p == TuningPolicy::OptimalRatio ? "optimal" : "numeric-opt"; }

void CoolingScenario::validate() const
{
    if (!(T_start > 0.0) || !(floor() > 0.0) || !(T_start > floor()))
        throw std::invalid_argument("cooling scenario: need T_start > T_floor > 0");
    if (samples_per_decade < 2) throw std::invalid_argument("cooling scenario: samples_per_decade must be >= 2");
    if (!(rtol > 0.0)) throw std::invalid_argument("cooling scenario: rtol must be > 0");
    if (!(lambda_ratio >= 0.0)) throw std::invalid_argument("cooling scenario: lambda_ratio must be >= 0");
    capacity.validate();
    std::visit([](const auto& b) { b.validate(); }, cold_bath);
    if (hot_bath) std::visit([](const auto& b) { b.validate(); }, *hot_bath);
    if (fridge == FridgeKind::Absorption) {
        absorption.validate();
        if (!(1.0 / T_start >= absorption.beta_h))
            throw std::invalid_argument("cooling scenario: T_start must not exceed the hot-bath temperature");
    } else {
        if (!(driven.omega_h > 0.0) || !(driven.beta_h > 0.0)) throw std::invalid_argument("cooling scenario: invalid driven template");
        if (tuning == TuningPolicy::OptimalRatio && lambda_ratio > 0.0 && !(lambda_ratio < optimal_frequency_ratio(cold_bath)))
            throw std::invalid_argument("cooling scenario: lambda_ratio must be below the optimal frequency ratio");
    }
}

AbsorptionModel absorption_at(const CoolingScenario& sc, double T, double omega_c)
{
    AbsorptionModel m = sc.absorption;
    m.omega_c = omega_c;
    m.beta_c = 1.0 / T;
    m.gamma_c = relaxation_rate(sc.cold_bath, omega_c, T);
    if (sc.hot_bath) m.gamma_h = relaxation_rate(*sc.hot_bath, m.omega_h, 1.0 / m.beta_h);
    return m;
}

DrivenModel driven_at(const CoolingScenario& sc, double T, double omega_c, double lambda)
{
    DrivenModel m = sc.driven;
    m.omega_c = omega_c;
    m.lambda = lambda;
    m.beta_c = 1.0 / T;
    m.gamma_c_plus = relaxation_rate(sc.cold_bath, m.omega_c_plus(), T);
    m.gamma_c_minus = relaxation_rate(sc.cold_bath, m.omega_c_minus(), T);
    if (sc.hot_bath) {
        m.gamma_h_plus = relaxation_rate(*sc.hot_bath, m.omega_h_plus(), 1.0 / m.beta_h);
        m.gamma_h_minus = relaxation_rate(*sc.hot_bath, m.omega_h_minus(), 1.0 / m.beta_h);
    }
    return m;
}

double cold_current(const CoolingScenario& sc, double T, double omega_c, double lambda)
{
    if (sc.fridge == FridgeKind::Absorption) {
        const AbsorptionModel m = absorption_at(sc, T, omega_c);
        switch (sc.source) {
        case CurrentSource::LowTemperature: return low_T_current(m).value;
        case CurrentSource::Analytic: return steady_current_analytic(m);
        case CurrentSource::NumericSteadyState: return currents_numeric(m).J_c;
        }
    } else {
        const DrivenModel m = driven_at(sc, T, omega_c, lambda);
        switch (sc.source) {
        case CurrentSource::LowTemperature: return jc_low_T_driven(m).value;
        case CurrentSource::Analytic: return jc_analytic(m);
        case CurrentSource::NumericSteadyState: return currents_numeric_driven(m).J_c;
        }
    }
    throw std::logic_error("unknown current source");
}

OperatingPoint operating_point(const CoolingScenario& sc, double T)
{
    OperatingPoint op;
    if (sc.tuning == TuningPolicy::OptimalRatio) {
        const double x = optimal_frequency_ratio(sc.cold_bath);
        op.omega_c = x * T;
        if (sc.fridge == FridgeKind::Driven) op.lambda = (sc.lambda_ratio > 0.0 ? sc.lambda_ratio : 0.5 * x) * T;
        op.J_c = cold_current(sc, T, op.omega_c, op.lambda);
        return op;
    }

    const double omega_h = sc.fridge == FridgeKind::Absorption ? sc.absorption.omega_h : sc.driven.omega_h;
    const double x_max = std::min(60.0, 0.999 * omega_h / T);
    if (sc.fridge == FridgeKind::Absorption) {
        auto neg = [&](double x) { return -cold_current(sc, T, x * T, 0.0); };
        const auto r = boost::math::tools::brent_find_minima(neg, 1e-3, x_max, 40);
        op.omega_c = r.first * T;
        op.J_c = -r.second;
        return op;
    }
    // lambda = f omega_c with f in [0.1, 0.95]; below 0.1 the normal modes are not resolved.
    auto best_x = [&](double f) {
        auto neg = [&](double x) { return -cold_current(sc, T, x * T, f * x * T); };
        return boost::math::tools::brent_find_minima(neg, 1e-3, x_max, 40);
    };
    const auto outer = boost::math::tools::brent_find_minima([&](double f) { return best_x(f).second; }, 0.1, 0.95, 30);
    const auto inner = best_x(outer.first);
    op.omega_c = inner.first * T;
    op.lambda = outer.first * op.omega_c;
    op.J_c = -inner.second;
    return op;
}

CoolingTrajectory integrate_cooling(const CurrentLaw& law, const HeatCapacityModel& capacity, double T_start, double T_floor,
                                    int samples_per_decade, double rtol)
{
    if (!(T_start > T_floor) || !(T_floor > 0.0)) throw std::invalid_argument("integrate_cooling: need T_start > T_floor > 0");
    if (samples_per_decade < 2) throw std::invalid_argument("integrate_cooling: samples_per_decade must be >= 2");
    capacity.validate();

    const double v0 = -std::log(T_start);
    const double v1 = -std::log(T_floor);
    const int n = std::max(2, int(std::ceil(std::log10(T_start / T_floor) * samples_per_decade - 1e-9)));

    CoolingTrajectory traj;
    std::vector<double> grid;
    for (int k = 0; k <= n; ++k) {
        const double v = k == n ? v1 : v0 + (v1 - v0) * k / n;
        const double T = std::exp(-v);
        const OperatingPoint op = law(T);
        if (!(op.J_c > 0.0) || !std::isfinite(op.J_c)) {
            if (k == 0) throw std::runtime_error("cooling window empty: J_c <= 0 at T_start");
            traj.window_exited = true;
            break;
        }
        grid.push_back(v);
        traj.samples.push_back({0.0, T, op.omega_c, op.lambda, op.J_c, op.J_c / heat_capacity(capacity, T)});
    }
    traj.terminated_at_floor = !traj.window_exited;

    using State = std::array<double, 1>;
    namespace odeint = boost::numeric::odeint;
    auto rhs = [&](const State&, State& dxdv, double v) {
        const double T = std::exp(-v);
        dxdv[0] = heat_capacity(capacity, T) * T / law(T).J_c;
    };
    State x{0.0};
    std::size_t idx = 0;
    auto observer = [&](const State& s, double) { traj.samples[idx++].t = s[0]; };
    if (grid.size() > 1) {
        odeint::integrate_times(odeint::make_controlled(0.0, rtol, odeint::runge_kutta_dopri5<State>()), rhs, x, grid.begin(),
                                grid.end(), (grid[1] - grid[0]) / 4.0, observer);
    }
    if (traj.samples.size() >= 20) traj.zeta_fit = fit_zeta(traj);
    return traj;
}

CoolingTrajectory integrate_cooling(const CoolingScenario& scenario)
{
    scenario.validate();
    return integrate_cooling([&](double T) { return operating_point(scenario, T); }, scenario.capacity, scenario.T_start,
                             scenario.floor(), scenario.samples_per_decade, scenario.rtol);
}

ExponentFit fit_zeta(const CoolingTrajectory& trajectory)
{
    if (trajectory.samples.empty()) throw std::invalid_argument("fit_zeta: empty trajectory");
    double t_min = std::numeric_limits<double>::infinity();
    for (const auto& s : trajectory.samples) t_min = std::min(t_min, s.T);
    const double t_max = 10.0 * t_min * (1.0 + 1e-12);

    std::vector<double> xs, ys;
    for (const auto& s : trajectory.samples)
        if (s.T <= t_max && s.rate > 0.0) {
            xs.push_back(std::log(s.T));
            ys.push_back(std::log(s.rate));
        }
    if (xs.size() < 20) throw std::invalid_argument("fit_zeta: fewer than 20 samples in the fit window");

    Eigen::MatrixXd a(xs.size(), 2);
    Eigen::VectorXd y(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        a(Index(i), 0) = xs[i];
        a(Index(i), 1) = 1.0;
        y(Index(i)) = ys[i];
    }
    const Eigen::Vector2d c = a.colPivHouseholderQr().solve(y);
    ExponentFit fit;
    fit.zeta = c(0);
    fit.intercept = c(1);
    fit.residual = std::sqrt((a * c - y).squaredNorm() / double(xs.size()));
    fit.T_low = std::exp(*std::min_element(xs.begin(), xs.end()));
    fit.T_high = std::exp(*std::max_element(xs.begin(), xs.end()));
    fit.points = xs.size();
    return fit;
}

std::string to_string(UnattainabilityReport::Verdict v)
{
    switch (v) {
    case UnattainabilityReport::Verdict::Exponential: return "exponential";
    case UnattainabilityReport::Verdict::PowerLaw: return "power-law";
    case UnattainabilityReport::Verdict::FiniteTime: return "finite-time-zero";
    }
    return "?";
}

UnattainabilityReport unattainability_report(const ExponentFit& fit, const CoolingTrajectory& trajectory)
{
    if (fit.points == 0 || trajectory.samples.empty()) throw std::invalid_argument("unattainability_report: no fit");
    UnattainabilityReport rep;
    rep.low_confidence = fit.residual > 0.1;
    const double a = std::exp(fit.intercept);
    std::ostringstream os;
    os.precision(6);
    if (std::abs(fit.zeta - 1.0) <= 0.05) {
        rep.verdict = UnattainabilityReport::Verdict::Exponential;
        os << "III-law satisfied; exponential approach T(t) ~ exp(-a t), a = " << a;
    } else if (fit.zeta > 1.0) {
        rep.verdict = UnattainabilityReport::Verdict::PowerLaw;
        os << "III-law satisfied; power-law approach T(t) ~ t^(-" << 1.0 / (fit.zeta - 1.0) << ")";
    } else {
        rep.verdict = UnattainabilityReport::Verdict::FiniteTime;
        const auto& last = trajectory.samples.back();
        rep.t0 = last.t + std::pow(last.T, 1.0 - fit.zeta) / (a * (1.0 - fit.zeta));
        os << "III-law violated; T reaches 0 at finite t0 = " << *rep.t0;
    }
    rep.statement = os.str();
    return rep;
}

} // namespace qfridge
