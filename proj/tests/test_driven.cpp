// Driven refrigerator: normal modes, generator, analytic current and lab-frame periodicity.

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>
#include <numbers>

#include "qfridge/driven.hpp"

using namespace qfridge;

namespace {

DrivenModel cooling_point()
{
    DrivenModel m;
    m.omega_h = 3.0;
    m.omega_c = 1.0;
    m.lambda = 0.5;
    m.beta_h = 0.5;
    m.beta_c = 1.0;
    return m;
}

} // namespace

TEST_CASE("normal-mode frequencies and operators")
{
    const DrivenModel m = cooling_point();
    const FloquetModes f = floquet_modes(m);
    CHECK(f.omega_h_plus == 3.5);
    CHECK(f.omega_h_minus == 2.5);
    CHECK(f.omega_c_plus == 1.5);
    CHECK(f.omega_c_minus == 0.5);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK((f.a.matrix() - s * (f.d_plus + f.d_minus).matrix()).norm() == 0.0);
    CHECK(commutator(f.d_plus, f.d_minus.adjoint()).matrix().norm() == 0.0);
    CHECK(commutator(number(f.space, 0), number(f.space, 1)).matrix().norm() == 0.0);
    // a^dag a + b^dag b equals the total normal-mode number exactly
    const Operator total = f.a.adjoint() * f.a + f.b.adjoint() * f.b;
    CHECK((total - number(f.space, 0) - number(f.space, 1)).matrix().norm() < 1e-13);
}

TEST_CASE("model validation and warnings")
{
    DrivenModel m = cooling_point();
    m.lambda = 1.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.lambda = 0.05;
    CHECK(m.warnings().size() == 1);
    m.lambda = 0.5;
    CHECK(m.warnings().empty());
    m.gamma_h_plus = m.gamma_c_plus = 0.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("each local piece has its Gibbs-like stationary state")
{
    const DrivenSystem sys = build_driven_system(cooling_point());
    for (const auto* bath : {&sys.hot, &sys.cold})
        for (const auto& p : bath->pieces) CHECK(reference_defect(p.generator, p.reference) < 1e-13);

    // cold (+) alone: Z^-1 exp(-beta_c omega_c^+ n_+) on the + mode
    const auto& piece = sys.cold.pieces[0];
    const SteadyState ss = steady_state(piece.generator + sys.hot.pieces[1].generator);
    const Matrix rho = ss.state.matrix();
    const double r = std::exp(-1.0 * 1.5);
    const Index n = sys.modes.space.factor(1).dim;
    double p0 = 0.0;
    for (Index k = 0; k < n; ++k) p0 += rho(k, k).real();  // n_+ = 0 block
    CHECK(p0 == doctest::Approx((1 - r) / (1 - std::pow(r, double(sys.modes.space.factor(0).dim)))).epsilon(1e-12));
}

TEST_CASE("analytic current against the frozen oracle and the numeric steady state")
{
    DrivenModel m = cooling_point();
    m.beta_h = 0.5;
    m.beta_c = 1.0;
    CHECK(jc_analytic(m) == doctest::Approx(0.095366591933815479).epsilon(1e-14));
    const DrivenCurrents c = currents_numeric_driven(m);
    CHECK(c.null_dimension == 1);
    CHECK(c.top_population <= 1e-10);
    CHECK(std::abs(c.J_c / jc_analytic(m) - 1.0) < 1e-6);
    CHECK(c.J_c > 0.0);
    CHECK(c.P > 0.0);
    CHECK(m.beta_h * c.J_h + m.beta_c * c.J_c <= 1e-10);
}

TEST_CASE("steady state factorizes over the normal modes")
{
    const DrivenCurrents c = currents_numeric_driven(cooling_point());
    const Matrix rho = c.state.matrix();
    const Index n = c.state.space().factor(1).dim;
    const Index m = c.state.space().factor(0).dim;
    Eigen::VectorXd pp = Eigen::VectorXd::Zero(m), pm = Eigen::VectorXd::Zero(n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) {
            pp(i) += rho(i * n + j, i * n + j).real();
            pm(j) += rho(i * n + j, i * n + j).real();
        }
    double off = 0.0, product = 0.0;
    for (Index i = 0; i < rho.rows(); ++i)
        for (Index j = 0; j < rho.cols(); ++j)
            if (i != j) off = std::max(off, std::abs(rho(i, j)));
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) product = std::max(product, std::abs(rho(i * n + j, i * n + j).real() - pp(i) * pm(j)));
    CHECK(off < 1e-10);
    CHECK(product < 1e-10);
}

TEST_CASE("cooling-condition boundary of the analytic formula")
{
    DrivenModel m = cooling_point();
    // beta_c omega_c^pm = beta_h omega_h^pm for both modes requires omega_h / omega_c = beta_c / beta_h and lambda scaling;
    // choose beta_h (omega_h + lambda) = beta_c (omega_c + lambda) and beta_h (omega_h - lambda) = beta_c (omega_c - lambda)
    // which forces lambda = 0 unless the two temperatures coincide; test each mode separately instead.
    m.beta_c = m.beta_h * m.omega_h_minus() / m.omega_c_minus();
    CHECK(std::abs(jc_mode(m, -1)) < 1e-15);
    m = cooling_point();
    m.beta_c = m.beta_h * m.omega_h_plus() / m.omega_c_plus();
    CHECK(std::abs(jc_mode(m, +1)) < 1e-15);
}

TEST_CASE("second law at equal temperatures and with a single bath")
{
    DrivenModel m = cooling_point();
    m.beta_c = m.beta_h = 1.0;
    const DrivenCurrents eq = currents_numeric_driven(m);
    CHECK(eq.J_h / 1.0 + eq.J_c / 1.0 <= 1e-10);
    CHECK(eq.P >= -1e-12);

    // with the cold bath detached every mode relaxes to a hot reference and no heat flows
    m = cooling_point();
    m.gamma_c_plus = m.gamma_c_minus = 0.0;
    const DrivenCurrents hot_only = currents_numeric_driven(m);
    CHECK(std::abs(hot_only.J_h) < 1e-12);
    CHECK(std::abs(hot_only.J_c) < 1e-15);
}

TEST_CASE("low-temperature driven current converges along a constrained path")
{
    double prev = std::numeric_limits<double>::infinity();
    for (double tc = 0.2; tc > 0.005; tc /= 2) {
        DrivenModel m = cooling_point();
        m.omega_h = 20.0;
        m.beta_h = 1.0;
        m.omega_c = 5.0 * tc;
        m.lambda = 2.0 * tc;
        m.beta_c = 1.0 / tc;
        m.gamma_c_plus = std::pow(m.omega_c_plus(), 3);
        m.gamma_c_minus = std::pow(m.omega_c_minus(), 3);
        const double err = std::abs(jc_low_T_driven(m).value / jc_analytic(m) - 1.0);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("lab-frame steady state is periodic and keeps the mode occupations")
{
    DrivenModel m = cooling_point();
    m.beta_h = 1.0;
    m.beta_c = 2.0;
    m.truncation = 16;
    m.max_truncation = 24;
    const DrivenCurrents c = currents_numeric_driven(m);
    const double tau = 2.0 * std::numbers::pi / m.drive_frequency();
    CHECK(trace_distance(lab_frame_state(c.state, m, 0.0), c.state) == 0.0);
    const DensityMatrix r1 = lab_frame_state(c.state, m, 0.37);
    const DensityMatrix r2 = lab_frame_state(c.state, m, 0.37 + tau);
    CHECK(trace_distance(r1, r2) < 1e-9);

    DrivenModel at_levels = m;
    at_levels.truncation = c.truncation;
    const FloquetModes f = floquet_modes(at_levels);
    const Operator na = f.a.adjoint() * f.a;
    const Operator nb = f.b.adjoint() * f.b;
    CHECK(std::abs(expectation(r1.op(), na) - expectation(c.state.op(), na)) < 1e-9);
    CHECK(std::abs(expectation(r2.op(), nb) - expectation(c.state.op(), nb)) < 1e-9);
}
