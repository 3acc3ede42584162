// Operator core: spaces, ladders, density matrices, Liouvillians, steady states and evolution.

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "qfridge/lgks.hpp"
#include "qfridge/operators.hpp"
#include "qfridge/superoperator.hpp"

using namespace qfridge;

namespace {

Matrix random_density(Index dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Matrix z(dim, dim);
    for (Index j = 0; j < dim; ++j)
        for (Index i = 0; i < dim; ++i) z(i, j) = Scalar(g(rng), g(rng));
    Matrix rho = z * z.adjoint();
    return rho / rho.trace();
}

} // namespace

TEST_CASE("ladder operators of TLS and truncated oscillators")
{
    const HilbertSpace tls({Factor::tls()});
    const Operator s = ladder(tls, 0);
    CHECK((s * s.adjoint() + s.adjoint() * s).matrix().isApprox(Matrix::Identity(2, 2)));

    const HilbertSpace osc({Factor::oscillator(6)});
    const Operator a = ladder(osc, 0);
    const Matrix c = commutator(a, a.adjoint()).matrix();
    for (Index k = 0; k < 5; ++k) CHECK(std::abs(c(k, k) - 1.0) < 1e-14);
    CHECK(std::abs(c(5, 5) + 5.0) < 1e-12);  // truncation artefact on the top level
    const Matrix n = number(osc, 0).matrix();
    for (Index k = 0; k < 6; ++k) CHECK(std::abs(n(k, k) - double(k)) < 1e-13);

    // vacuum expectation <0|a a^dag|0> = 1
    Vector vac = Vector::Zero(6);
    vac(0) = 1.0;
    CHECK(std::abs((vac.adjoint() * (a * a.adjoint()).matrix() * vac)(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("embedding orders factors with the first one most significant")
{
    const HilbertSpace space({Factor::tls(), Factor::oscillator(3)});
    CHECK(space.dim() == 6);
    const Operator na = number(space, 0);
    const Operator nb = number(space, 1);
    CHECK(std::abs(na.matrix()(3, 3) - 1.0) < 1e-15);
    CHECK(std::abs(nb.matrix()(1, 1) - 1.0) < 1e-15);
    CHECK(commutator(ladder(space, 0), ladder(space, 1)).matrix().norm() < 1e-15);
    CHECK_THROWS_AS(ladder(space, 2), std::out_of_range);
}

TEST_CASE("density matrix invariants are enforced")
{
    const HilbertSpace q({Factor::tls()});
    Matrix bad(2, 2);
    bad << 0.7, 0.0, 0.0, 0.4;
    CHECK_THROWS_AS(DensityMatrix(Operator(q, bad)), std::invalid_argument);
    bad << 1.2, 0.0, 0.0, -0.2;
    CHECK_THROWS_AS(DensityMatrix(Operator(q, bad)), std::invalid_argument);
    bad << 0.5, Scalar(0.0, 0.1), 0.0, 0.5;
    CHECK_FALSE(density_matrix_violation(Operator(q, bad)).empty());

    const DensityMatrix mixed = DensityMatrix::maximally_mixed(q);
    CHECK(von_neumann_entropy(mixed) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    Vector psi(2);
    psi << 1.0, 0.0;
    const DensityMatrix pure = DensityMatrix::pure(q, psi);
    CHECK(std::abs(von_neumann_entropy(pure)) < 1e-14);
    CHECK(trace_distance(pure, mixed) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("vectorization follows column stacking")
{
    std::mt19937_64 rng(7);
    const Matrix a = random_density(3, rng), x = random_density(3, rng), b = random_density(3, rng);
    const SparseMatrix bt_kron_a = sparse_kron(SparseMatrix(b.transpose().sparseView()), SparseMatrix(a.sparseView()));
    const Vector lhs = vectorize(a * x * b);
    const Vector rhs = bt_kron_a * vectorize(x);
    CHECK((lhs - rhs).norm() < 1e-13);
    CHECK((unvectorize(vectorize(x), 3) - x).norm() == 0.0);
}

TEST_CASE("Lindblad generators preserve trace and hermiticity")
{
    const HilbertSpace space({Factor::oscillator(4), Factor::tls()});
    const Operator a = ladder(space, 0), s = ladder(space, 1);
    const Operator h = 1.3 * number(space, 0) + 0.7 * number(space, 1) + 0.2 * (a * s.adjoint() + a.adjoint() * s);
    const Superoperator l = liouvillian_matrix(h, {{a, 0.8}, {a.adjoint(), 0.3}, {s, 1.1}, {number(space, 1), 0.5}});
    CHECK(l.trace_defect() < 1e-13);
    std::mt19937_64 rng(3);
    const Operator drho = l.apply(Operator(space, random_density(space.dim(), rng)));
    CHECK(std::abs(drho.trace()) < 1e-13);
    CHECK(drho.is_hermitian(1e-13));
}

TEST_CASE("steady state of a single thermalizer is the Gibbs state")
{
    const HilbertSpace q({Factor::tls()});
    const Operator s = ladder(q, 0);
    const double omega = 1.0, beta = 1.0;
    const Superoperator l = liouvillian_matrix(omega * number(q, 0), {{s, 1.0}, {s.adjoint(), std::exp(-beta * omega)}});
    const SteadyState ss = steady_state(l);
    CHECK(ss.ergodic());
    // frozen oracle: excited population 1/(e + 1)
    CHECK(std::abs(ss.state.matrix()(1, 1).real() - 0.26894142136999512) < 1e-14);
    CHECK(von_neumann_entropy(ss.state) == doctest::Approx(0.58220310888821795).epsilon(1e-13));
}

TEST_CASE("sparse component solve agrees with the dense SVD")
{
    const HilbertSpace space({Factor::oscillator(5), Factor::oscillator(5)});
    const Operator a = ladder(space, 0), b = ladder(space, 1);
    const Operator h = 2.0 * number(space, 0) + 1.0 * number(space, 1);
    const Superoperator l = liouvillian_matrix(
        h, {{a, 1.0}, {a.adjoint(), 0.2}, {b, 0.7}, {b.adjoint(), 0.1}, {a * b.adjoint(), 0.5}, {a.adjoint() * b, 0.5}});
    SteadyStateOptions dense;
    dense.dense_limit = 1000;
    SteadyStateOptions sparse;
    sparse.dense_limit = 4;
    const SteadyState s1 = steady_state(l, dense);
    const SteadyState s2 = steady_state(l, sparse);
    CHECK(s1.ergodic());
    CHECK(s2.ergodic());
    CHECK(trace_distance(s1.state, s2.state) < 1e-10);
}

TEST_CASE("degenerate null space is reported")
{
    const HilbertSpace space({Factor::tls(), Factor::tls()});
    const Operator a = ladder(space, 0), b = ladder(space, 1);
    // exchange alone conserves the excitation number
    const Superoperator l = liouvillian_matrix(space, {{a * b.adjoint(), 1.0}, {a.adjoint() * b, 1.0}});
    const SteadyState ss = steady_state(l);
    CHECK_FALSE(ss.ergodic());
    CHECK(ss.null_dimension >= 3);
    SteadyStateOptions sparse;
    sparse.dense_limit = 2;
    CHECK_FALSE(steady_state(l, sparse).ergodic());
}

TEST_CASE("dense exponential and adaptive RK45 evolution agree")
{
    const HilbertSpace space({Factor::tls(), Factor::oscillator(3)});
    const Operator s = ladder(space, 0), a = ladder(space, 1);
    const Operator h = number(space, 0) + 0.8 * number(space, 1) + 0.3 * (s * a.adjoint() + s.adjoint() * a);
    const Superoperator l = liouvillian_matrix(h, {{s, 0.9}, {s.adjoint(), 0.2}, {a, 0.5}});
    std::mt19937_64 rng(11);
    const DensityMatrix rho0 = DensityMatrix::from_numeric(Operator(space, random_density(space.dim(), rng)));
    const std::vector<double> times{0.0, 0.3, 1.0, 2.5};
    EvolveOptions ex;
    ex.method = EvolveMethod::Expm;
    EvolveOptions rk;
    rk.method = EvolveMethod::Rk45;
    rk.rtol = 1e-11;
    rk.atol = 1e-14;
    const auto r1 = evolve(rho0, l, times, ex);
    const auto r2 = evolve(rho0, l, times, rk);
    REQUIRE(r1.size() == 4);
    CHECK(trace_distance(r1[0], rho0) == 0.0);
    for (std::size_t i = 0; i < times.size(); ++i) CHECK(trace_distance(r1[i], r2[i]) < 1e-9);
    CHECK_THROWS_AS(evolve(rho0, l, {1.0, 0.5}), std::invalid_argument);
}
