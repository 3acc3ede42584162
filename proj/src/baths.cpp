// baths.cpp — Bath spectra and capacities

#include "qfridge/baths.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qfridge {

using std::numbers::pi;

void BosonicBath::validate() const
{
    if (d < 1) throw std::invalid_argument("bosonic bath: d must be >= 1");
    if (!(kappa > 0.0)) throw std::invalid_argument("bosonic bath: kappa must be > 0");
    if (!(g0 > 0.0)) throw std::invalid_argument("bosonic bath: g0 must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("bosonic bath: T must be > 0");
}

void GasBath::validate() const
{
    if (!(n > 0.0) || !(m > 0.0) || !(a_s > 0.0) || !(T > 0.0))
        throw std::invalid_argument("gas bath: n, m, a_s and T must be > 0");
    if (T_crit && !(*T_crit > 0.0)) throw std::invalid_argument("gas bath: T_crit must be > 0");
}

double bosonic_rate(const BosonicBath& bath, double omega)
{
    bath.validate();
    if (!(omega > 0.0)) throw std::invalid_argument("bosonic_rate: omega must be > 0");
    // -expm1(-x) keeps the Rayleigh-Jeans end accurate.
    return bath.g0 * std::pow(omega, bath.kappa + bath.d - 1) / -std::expm1(-omega / bath.T);
}

double effective_density(const GasBath& bath)
{
    if (bath.statistics == Statistics::Bose) {
        if (bath.T_crit && bath.T < *bath.T_crit) return bath.n * std::pow(bath.T / *bath.T_crit, 1.5);
        return bath.n;
    }
    const double t_fermi = bath.T_crit.value_or(1.0);
    return bath.T < t_fermi ? bath.n * bath.T / t_fermi : bath.n;
}

double bessel_k1_scaled(double x)
{
    if (!(x > 0.0)) throw std::domain_error("bessel_k1_scaled: x must be > 0");
    if (x < 50.0) return std::cyl_bessel_k(1.0, x) * std::exp(x);
    // Hankel expansion: e^x K1(x) = sqrt(pi / 2x) sum_k prod_{j<=k} (4 - (2j-1)^2) / (8 j x)
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * (4.0 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::sqrt(pi / (2.0 * x)) * sum;
}

double gas_rate_closed(const GasBath& bath, double omega)
{
    bath.validate();
    if (!(omega > 0.0)) throw std::invalid_argument("gas_rate_closed: omega must be > 0");
    const double beta = 1.0 / bath.T;
    const double z = 0.5 * beta * omega;
    return std::pow(4.0 * pi, 4) * std::sqrt(beta / (2.0 * pi * bath.m)) * bath.a_s * bath.a_s * effective_density(bath) * omega *
           bessel_k1_scaled(z);
}

double gas_rate_numeric(const GasBath& bath, double omega)
{
    bath.validate();
    if (!(omega > 0.0)) throw std::invalid_argument("gas_rate_numeric: omega must be > 0");
    const double beta = 1.0 / bath.T;
    const double m = bath.m;
    // gamma = 2 pi n |T|^2 int d^3p f_T(p) 4 pi m p',  p' = sqrt(p^2 + 2 m omega),  |T|^2 = (4 pi a_s / m)^2.
    // With p = u sqrt(2m/beta) the radial integral is (2m/beta)^2 int u^2 e^{-u^2} sqrt(u^2 + beta omega) du.
    const double bw = beta * omega;
    auto f = [bw](double u) { return u * u * std::exp(-u * u) * std::sqrt(u * u + bw); };
    double err = 0.0;
    const double radial = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-12, &err);
    if (!std::isfinite(radial) || err > 1e-6 * std::abs(radial))
        throw std::runtime_error("gas_rate_numeric: quadrature did not converge");

    const double t2 = std::pow(4.0 * pi * bath.a_s / m, 2);
    const double maxwell_norm = std::pow(beta / (2.0 * pi * m), 1.5);
    const double scale = std::pow(2.0 * m / beta, 2);
    return 2.0 * pi * effective_density(bath) * t2 * (4.0 * pi * m) * (4.0 * pi) * maxwell_norm * scale * radial;
}

double relaxation_rate(const BathSpectrum& bath, double omega, double T)
{
    return std::visit(
        [omega, T](auto b) {
            b.T = T;
            if constexpr (std::is_same_v<decltype(b), BosonicBath>) return bosonic_rate(b, omega);
            else return gas_rate_closed(b, omega);
        },
        bath);
}

HeatCapacityModel HeatCapacityModel::bosonic_solid(int d, double c0)
{
    HeatCapacityModel m;
    m.kind = Kind::BosonicSolid;
    m.d = d;
    m.c0 = c0;
    return m;
}

HeatCapacityModel HeatCapacityModel::ideal_gas(Statistics s, std::optional<double> T_crit, double c0)
{
    HeatCapacityModel m;
    m.kind = Kind::IdealGas;
    m.statistics = s;
    m.T_crit = T_crit;
    m.c0 = c0;
    return m;
}

HeatCapacityModel HeatCapacityModel::custom(double exponent, double c0)
{
    HeatCapacityModel m;
    m.kind = Kind::Custom;
    m.exponent = exponent;
    m.c0 = c0;
    return m;
}

void HeatCapacityModel::validate() const
{
    if (!(c0 > 0.0)) throw std::invalid_argument("heat capacity: c0 must be > 0");
    if (kind == Kind::BosonicSolid && d < 1) throw std::invalid_argument("heat capacity: d must be >= 1");
    if (T_crit && !(*T_crit > 0.0)) throw std::invalid_argument("heat capacity: T_crit must be > 0");
}

double heat_capacity(const HeatCapacityModel& model, double T)
{
    model.validate();
    if (!(T > 0.0)) throw std::invalid_argument("heat_capacity: T must be > 0");
    switch (model.kind) {
    case HeatCapacityModel::Kind::BosonicSolid:
        return model.c0 * std::pow(T, model.d);
    case HeatCapacityModel::Kind::Custom:
        return model.c0 * std::pow(T, model.exponent);
    case HeatCapacityModel::Kind::IdealGas:
        if (model.statistics == Statistics::Bose) {
            if (model.T_crit && T < *model.T_crit) return model.c0 * std::pow(T / *model.T_crit, 1.5);
            return model.c0;
        } else {
            const double t_fermi = model.T_crit.value_or(1.0);
            return T < t_fermi ? model.c0 * T / t_fermi : model.c0;
        }
    }
    throw std::logic_error("unknown heat capacity kind");
}

VanHoveClass van_hove_classify(int d, double kappa)
{
    if (d < 1) throw std::invalid_argument("van_hove_classify: d must be >= 1");
    return {kappa > 2.0 - d, kappa > 1.0 - d, kappa >= 1.0};
}

std::string to_string(Statistics s) { return s == Statistics::Bose ? "bose" : "fermi"; }

} // namespace qfridge
