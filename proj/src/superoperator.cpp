// superoperator.cpp — Liouvillian assembly, null-space solver and propagators

#include "qfridge/superoperator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/SVD>
#include <Eigen/SparseLU>
#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace qfridge {

Vector vectorize(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

Matrix unvectorize(const Vector& v, Index dim)
{
    if (v.size() != dim * dim) throw std::invalid_argument("vector length is not dim^2");
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b)
{
    SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Eigen::Triplet<Scalar>> trip;
    trip.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
    for (Index ja = 0; ja < a.outerSize(); ++ja)
        for (SparseMatrix::InnerIterator ia(a, ja); ia; ++ia)
            for (Index jb = 0; jb < b.outerSize(); ++jb)
                for (SparseMatrix::InnerIterator ib(b, jb); ib; ++ib)
                    trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                      ia.value() * ib.value());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

Superoperator::Superoperator(HilbertSpace space, SparseMatrix entries) : space_(std::move(space)), m_(std::move(entries))
{
    const Index n = space_.dim() * space_.dim();
    if (m_.rows() != n || m_.cols() != n) throw std::invalid_argument("superoperator shape does not match dim^2");
    m_.makeCompressed();
}

Superoperator Superoperator::zero(const HilbertSpace& space)
{
    const Index n = space.dim() * space.dim();
    return {space, SparseMatrix(n, n)};
}

Operator Superoperator::apply(const Operator& rho) const
{
    if (!(rho.space() == space_)) throw std::invalid_argument("state and generator act on different spaces");
    const Vector out = m_ * vectorize(rho.matrix());
    return {space_, unvectorize(out, space_.dim())};
}

double Superoperator::trace_defect() const
{
    const Index d = space_.dim();
    Vector row = Vector::Zero(m_.cols());
    for (Index j = 0; j < m_.outerSize(); ++j)
        for (SparseMatrix::InnerIterator it(m_, j); it; ++it)
            if (it.row() % (d + 1) == 0) row(j) += it.value();
    return row.size() ? row.cwiseAbs().maxCoeff() : 0.0;
}

Superoperator& Superoperator::operator+=(const Superoperator& rhs)
{
    if (!(space_ == rhs.space_)) throw std::invalid_argument("generators act on different spaces");
    m_ += rhs.m_;
    m_.makeCompressed();
    return *this;
}

Superoperator operator+(Superoperator lhs, const Superoperator& rhs) { return lhs += rhs; }

Superoperator operator*(double s, Superoperator l) { return {l.space(), SparseMatrix(Scalar(s) * l.matrix())}; }

namespace {

SparseMatrix to_sparse(const Matrix& m) { return m.sparseView(Scalar(1.0), 1e-300); }

} // namespace

Superoperator liouvillian_matrix(const HilbertSpace& space, const std::vector<Dissipator>& terms)
{
    return liouvillian_matrix(Operator::zero(space), terms);
}

Superoperator liouvillian_matrix(const Operator& hamiltonian, const std::vector<Dissipator>& terms)
{
    const HilbertSpace& space = hamiltonian.space();
    const Index d = space.dim();
    const Scalar I(0.0, 1.0);
    using Triplet = Eigen::Triplet<Scalar>;
    std::vector<Triplet> trip;
    // Diagonal entries are accumulated densely: diagonal B contributes left B_rr + right B_cc at index c d + r.
    Vector diag = Vector::Zero(d * d);

    // left (1 (x) B) + right (B^T (x) 1) for sparse B, column-stacked.
    auto add_sides = [&](const SparseMatrix& b, Scalar left, Scalar right) {
        for (Index j = 0; j < b.outerSize(); ++j)
            for (SparseMatrix::InnerIterator it(b, j); it; ++it) {
                if (it.row() == j) {
                    for (Index k = 0; k < d; ++k) {
                        diag(k * d + j) += left * it.value();
                        diag(j * d + k) += right * it.value();
                    }
                    continue;
                }
                for (Index k = 0; k < d; ++k) {
                    trip.emplace_back(k * d + it.row(), k * d + j, left * it.value());
                    trip.emplace_back(j * d + k, it.row() * d + k, right * it.value());
                }
            }
    };

    const SparseMatrix h = to_sparse(hamiltonian.matrix());
    std::size_t reserve = std::size_t(d * d);
    std::vector<SparseMatrix> jumps;
    for (const auto& term : terms) {
        if (!(term.jump.space() == space)) throw std::invalid_argument("jump operator acts on a different space");
        if (!(term.rate >= 0.0)) throw std::invalid_argument("dissipator rate must be nonnegative");
        jumps.push_back(term.rate == 0.0 ? SparseMatrix(d, d) : to_sparse(term.jump.matrix()));
        reserve += std::size_t(jumps.back().nonZeros() * jumps.back().nonZeros());
    }
    trip.reserve(reserve);

    add_sides(h, -I, I);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const double rate = terms[t].rate;
        if (rate == 0.0) continue;
        const SparseMatrix& a = jumps[t];
        // conj(A) (x) A
        for (Index ja = 0; ja < a.outerSize(); ++ja)
            for (SparseMatrix::InnerIterator ia(a, ja); ia; ++ia)
                for (Index jb = 0; jb < a.outerSize(); ++jb)
                    for (SparseMatrix::InnerIterator ib(a, jb); ib; ++ib)
                        trip.emplace_back(ia.row() * d + ib.row(), ja * d + jb, rate * std::conj(ia.value()) * ib.value());
        const SparseMatrix ada = (SparseMatrix(a.adjoint()) * a).pruned();
        add_sides(ada, Scalar(-0.5 * rate), Scalar(-0.5 * rate));
    }

    for (Index k = 0; k < d * d; ++k)
        if (diag(k) != Scalar(0.0)) trip.emplace_back(k, k, diag(k));
    SparseMatrix l(d * d, d * d);
    l.setFromTriplets(trip.begin(), trip.end());
    l.prune(Scalar(0.0), 0.0);
    return {space, std::move(l)};
}

namespace {

// Disjoint-set forest over Liouville indices.
struct Components {
    std::vector<Index> parent;

    explicit Components(Index n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), Index{0}); }

    Index find(Index x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(Index a, Index b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

double frobenius(const SparseMatrix& m)
{
    double s = 0.0;
    for (Index j = 0; j < m.outerSize(); ++j)
        for (SparseMatrix::InnerIterator it(m, j); it; ++it) s += std::norm(it.value());
    return std::sqrt(s);
}

struct NullSolve {
    Vector vec;
    std::size_t null_dim{0};
};

// Dense SVD null space of a (sub)generator. `trace_weights` marks population entries.
NullSolve dense_null(const Matrix& m, const Eigen::VectorXd& trace_weights, double threshold)
{
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    std::size_t null_dim = 0;
    for (Index i = s.size(); i-- > 0;) {
        if (s(i) <= threshold * std::max(smax, 1e-300)) ++null_dim;
        else break;
    }
    null_dim = std::max<std::size_t>(null_dim, 1);
    const Matrix basis = svd.matrixV().rightCols(static_cast<Index>(null_dim));
    // Combine null vectors so that the trace is maximal: v = sum_k conj(t_k) v_k.
    Vector traces = basis.transpose() * trace_weights.cast<Scalar>();
    Vector v = basis * traces.conjugate();
    if (v.norm() == 0.0) v = basis.col(0);
    return {v, null_dim};
}

Vector sparse_null(const SparseMatrix& m, const Eigen::VectorXd& trace_weights)
{
    // Replace the first population row with the trace condition.
    Index pivot = -1;
    for (Index i = 0; i < trace_weights.size(); ++i)
        if (trace_weights(i) != 0.0) {
            pivot = i;
            break;
        }
    if (pivot < 0) throw std::runtime_error("component carries no trace");

    SparseMatrix a = m;
    std::vector<Eigen::Triplet<Scalar>> trip;
    trip.reserve(static_cast<std::size_t>(a.nonZeros() + trace_weights.size()));
    for (Index j = 0; j < a.outerSize(); ++j)
        for (SparseMatrix::InnerIterator it(a, j); it; ++it)
            if (it.row() != pivot) trip.emplace_back(it.row(), it.col(), it.value());
    for (Index j = 0; j < trace_weights.size(); ++j)
        if (trace_weights(j) != 0.0) trip.emplace_back(pivot, j, Scalar(trace_weights(j)));
    SparseMatrix b(a.rows(), a.cols());
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();

    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(b);
    if (lu.info() != Eigen::Success) throw std::runtime_error("sparse LU failed: degenerate null space");
    Vector rhs = Vector::Zero(a.rows());
    rhs(pivot) = 1.0;
    Vector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) throw std::runtime_error("sparse LU solve failed");
    return x;
}

} // namespace

SteadyState steady_state(const Superoperator& l, const SteadyStateOptions& options)
{
    const HilbertSpace& space = l.space();
    const Index d = space.dim();
    const Index n = d * d;
    const SparseMatrix& m = l.matrix();

    auto is_population = [d](Index k) { return k % (d + 1) == 0; };

    Vector vec;
    std::size_t null_dim = 0;

    if (n <= options.dense_limit) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
        for (Index i = 0; i < d; ++i) w(i * (d + 1)) = 1.0;
        NullSolve ns = dense_null(Matrix(m), w, options.null_threshold);
        vec = std::move(ns.vec);
        null_dim = ns.null_dim;
    } else {
        Components comp(n);
        for (Index j = 0; j < m.outerSize(); ++j)
            for (SparseMatrix::InnerIterator it(m, j); it; ++it) comp.unite(it.row(), j);

        std::vector<Index> roots;
        for (Index i = 0; i < d; ++i) {
            const Index r = comp.find(i * (d + 1));
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }

        // Solve every trace-carrying component; the first one supplies the representative state.
        vec = Vector::Zero(n);
        for (std::size_t c = 0; c < roots.size(); ++c) {
            std::vector<Index> idx;
            for (Index k = 0; k < n; ++k)
                if (comp.find(k) == roots[c]) idx.push_back(k);
            const Index s = static_cast<Index>(idx.size());
            std::vector<Index> local(static_cast<std::size_t>(n), -1);
            for (Index k = 0; k < s; ++k) local[idx[k]] = k;

            std::vector<Eigen::Triplet<Scalar>> trip;
            for (Index k = 0; k < s; ++k)
                for (SparseMatrix::InnerIterator it(m, idx[k]); it; ++it)
                    trip.emplace_back(local[it.row()], k, it.value());
            SparseMatrix sub(s, s);
            sub.setFromTriplets(trip.begin(), trip.end());
            Eigen::VectorXd w = Eigen::VectorXd::Zero(s);
            for (Index k = 0; k < s; ++k)
                if (is_population(idx[k])) w(k) = 1.0;

            Vector x;
            if (s <= options.dense_limit) {
                NullSolve ns = dense_null(Matrix(sub), w, options.null_threshold);
                x = std::move(ns.vec);
                null_dim += ns.null_dim;
            } else {
                x = sparse_null(sub, w);
                null_dim += 1;
            }
            if (c == 0)
                for (Index k = 0; k < s; ++k) vec(idx[k]) = x(k);
        }
    }

    Matrix rho = unvectorize(vec, d);
    const Scalar tr = rho.trace();
    if (std::abs(tr) < 1e-300) throw std::runtime_error("steady state: null vector is traceless");
    rho /= tr;
    rho = 0.5 * (rho + rho.adjoint());

    const double residual = (m * vectorize(rho)).norm();
    const double scale = std::max(frobenius(m), 1e-300);
    if (residual > options.residual_tol * scale)
        throw std::runtime_error("steady state: no null vector found to tolerance (residual " + std::to_string(residual / scale) + ")");

    return {DensityMatrix::from_numeric(Operator(space, std::move(rho))), null_dim, residual / scale};
}

namespace {

using OdeState = std::vector<Scalar>;

std::vector<Matrix> evolve_expm(const Vector& v0, const Matrix& l, const std::vector<double>& times, Index d)
{
    std::vector<Matrix> out;
    out.reserve(times.size());
    Vector v = v0;
    double t_prev = 0.0;
    double dt_cached = -1.0;
    Matrix prop;
    for (double t : times) {
        const double dt = t - t_prev;
        if (dt > 0.0) {
            if (dt != dt_cached) {
                prop = (l * Scalar(dt)).exp();
                dt_cached = dt;
            }
            v = prop * v;
        }
        t_prev = t;
        out.push_back(unvectorize(v, d));
    }
    return out;
}

std::vector<Matrix> evolve_rk45(const Vector& v0, const SparseMatrix& l, const std::vector<double>& times, Index d,
                                const EvolveOptions& options)
{
    namespace odeint = boost::numeric::odeint;
    OdeState x(v0.data(), v0.data() + v0.size());
    const Index n = v0.size();
    auto rhs = [&l, n](const OdeState& y, OdeState& dy, double) {
        Eigen::Map<const Vector> ym(y.data(), n);
        dy.resize(static_cast<std::size_t>(n));
        Eigen::Map<Vector> dym(dy.data(), n);
        dym = l * ym;
    };

    std::vector<Matrix> out;
    out.reserve(times.size());
    auto observer = [&out, d](const OdeState& y, double) { out.push_back(Eigen::Map<const Matrix>(y.data(), d, d)); };

    std::vector<double> grid;
    if (times.front() > 0.0) grid.push_back(0.0);
    grid.insert(grid.end(), times.begin(), times.end());
    // odeint needs strictly increasing observation points; duplicates are re-emitted below.
    std::vector<double> uniq;
    std::vector<std::size_t> map_to_uniq;
    for (double t : grid) {
        if (uniq.empty() || t > uniq.back()) uniq.push_back(t);
        map_to_uniq.push_back(uniq.size() - 1);
    }
    auto stepper = odeint::make_dense_output(options.atol, options.rtol, odeint::runge_kutta_dopri5<OdeState>());
    if (uniq.size() == 1) {
        out.push_back(Eigen::Map<const Matrix>(x.data(), d, d));
    } else {
        const double dt0 = std::max((uniq.back() - uniq.front()) * 1e-4, 1e-8);
        odeint::integrate_times(stepper, rhs, x, uniq.begin(), uniq.end(), dt0, observer);
    }

    std::vector<Matrix> result;
    const std::size_t skip = times.front() > 0.0 ? 1 : 0;
    for (std::size_t i = skip; i < grid.size(); ++i) result.push_back(out.at(map_to_uniq[i]));
    return result;
}

} // namespace

std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const Superoperator& l, const std::vector<double>& times,
                                  const EvolveOptions& options)
{
    if (!(rho0.space() == l.space())) throw std::invalid_argument("state and generator act on different spaces");
    if (times.empty()) return {};
    if (times.front() < 0.0) throw std::invalid_argument("time grid must start at t >= 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] < times[i - 1]) throw std::invalid_argument("time grid must be nondecreasing");

    const Index d = l.space().dim();
    const Vector v0 = vectorize(rho0.matrix());

    EvolveMethod method = options.method;
    if (method == EvolveMethod::Auto) method = l.liouville_dim() <= options.expm_limit ? EvolveMethod::Expm : EvolveMethod::Rk45;

    std::vector<Matrix> raw = method == EvolveMethod::Expm ? evolve_expm(v0, l.dense(), times, d)
                                                           : evolve_rk45(v0, l.matrix(), times, d, options);

    std::vector<DensityMatrix> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (times[i] == 0.0) {
            out.push_back(rho0);
            continue;
        }
        if (!raw[i].allFinite()) throw std::runtime_error("evolution diverged");
        try {
            out.push_back(DensityMatrix::from_numeric(Operator(l.space(), std::move(raw[i]))));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(std::string("evolution left the state space: ") + e.what());
        }
    }
    return out;
}

} // namespace qfridge
