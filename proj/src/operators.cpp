// operators.cpp — Hilbert space bookkeeping and dense operator algebra

#include "qfridge/operators.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qfridge {

Factor Factor::oscillator(Index levels)
{
    if (levels < 2) throw std::invalid_argument("oscillator truncation must be >= 2");
    return {Kind::Oscillator, levels};
}

HilbertSpace::HilbertSpace(std::vector<Factor> factors) : factors_(std::move(factors)), dim_(1)
{
    if (factors_.empty()) throw std::invalid_argument("HilbertSpace needs at least one factor");
    for (const auto& f : factors_) {
        if (f.kind == Factor::Kind::Tls && f.dim != 2) throw std::invalid_argument("TLS factor must have dimension 2");
        if (f.dim < 2) throw std::invalid_argument("factor dimension must be >= 2");
        dim_ *= f.dim;
    }
}

std::string HilbertSpace::describe() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << " x ";
        if (factors_[i].kind == Factor::Kind::Tls) os << "TLS";
        else os << "Osc(" << factors_[i].dim << ")";
    }
    return os.str();
}

Operator::Operator(HilbertSpace space, Matrix entries) : space_(std::move(space)), m_(std::move(entries))
{
    if (m_.rows() != m_.cols()) throw std::invalid_argument("operator matrix must be square");
    if (m_.rows() != space_.dim()) throw std::invalid_argument("operator shape does not match its Hilbert space");
}

Operator Operator::zero(const HilbertSpace& space) { return {space, Matrix::Zero(space.dim(), space.dim())}; }

Operator Operator::identity(const HilbertSpace& space) { return {space, Matrix::Identity(space.dim(), space.dim())}; }

bool Operator::is_hermitian(double tol) const
{
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

void require_same_space(const Operator& a, const Operator& b)
{
    if (!(a.space() == b.space())) throw std::invalid_argument("operators act on different Hilbert spaces");
}

} // namespace

Operator& Operator::operator+=(const Operator& rhs)
{
    require_same_space(*this, rhs);
    m_ += rhs.m_;
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs)
{
    require_same_space(*this, rhs);
    m_ -= rhs.m_;
    return *this;
}

Operator& Operator::operator*=(Scalar s)
{
    m_ *= s;
    return *this;
}

Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }

Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }

Operator operator*(const Operator& lhs, const Operator& rhs)
{
    require_same_space(lhs, rhs);
    return {lhs.space(), lhs.matrix() * rhs.matrix()};
}

Operator operator*(Scalar s, Operator op) { return op *= s; }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Scalar expectation(const Operator& rho, const Operator& x)
{
    require_same_space(rho, x);
    // Tr(rho X) = sum_ij rho_ij X_ji
    return (rho.matrix().transpose().cwiseProduct(x.matrix())).sum();
}

Operator embed(const HilbertSpace& space, std::size_t factor_index, const Matrix& local)
{
    if (factor_index >= space.size()) throw std::out_of_range("factor index out of range");
    const Index d = space.factor(factor_index).dim;
    if (local.rows() != d || local.cols() != d) throw std::invalid_argument("local operator has wrong dimension");

    Index before = 1, after = 1;
    for (std::size_t i = 0; i < factor_index; ++i) before *= space.factor(i).dim;
    for (std::size_t i = factor_index + 1; i < space.size(); ++i) after *= space.factor(i).dim;

    Matrix out = kron(Matrix::Identity(before, before), kron(local, Matrix::Identity(after, after)));
    return {space, std::move(out)};
}

Operator ladder(const HilbertSpace& space, std::size_t factor_index)
{
    if (factor_index >= space.size()) throw std::out_of_range("factor index out of range");
    const Index d = space.factor(factor_index).dim;
    Matrix a = Matrix::Zero(d, d);
    for (Index k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return embed(space, factor_index, a);
}

Operator number(const HilbertSpace& space, std::size_t factor_index)
{
    if (factor_index >= space.size()) throw std::out_of_range("factor index out of range");
    const Index d = space.factor(factor_index).dim;
    Matrix n = Matrix::Zero(d, d);
    for (Index k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
    return embed(space, factor_index, n);
}

std::string density_matrix_violation(const Operator& op)
{
    const Matrix& m = op.matrix();
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > DensityMatrix::hermiticity_tol) return "not Hermitian (deviation " + std::to_string(herm) + ")";
    const Scalar tr = m.trace();
    if (std::abs(tr - Scalar(1.0)) > DensityMatrix::trace_tol) return "trace " + std::to_string(tr.real()) + " != 1";
    const double lo = hermitian_eigenvalues(m).minCoeff();
    if (lo < -DensityMatrix::positivity_tol) return "negative eigenvalue " + std::to_string(lo);
    return {};
}

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op))
{
    if (auto why = density_matrix_violation(op_); !why.empty())
        throw std::invalid_argument("invalid density matrix: " + why);
}

DensityMatrix DensityMatrix::from_numeric(const Operator& op)
{
    Matrix m = 0.5 * (op.matrix() + op.matrix().adjoint());
    const Scalar tr = m.trace();
    if (std::abs(tr) == 0.0) throw std::invalid_argument("cannot normalize a traceless operator");
    m /= tr.real();
    return DensityMatrix(Operator(op.space(), std::move(m)));
}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertSpace& space)
{
    return DensityMatrix(Operator(space, Matrix::Identity(space.dim(), space.dim()) / double(space.dim())));
}

DensityMatrix DensityMatrix::pure(const HilbertSpace& space, const Vector& psi)
{
    if (psi.size() != space.dim()) throw std::invalid_argument("state vector has wrong dimension");
    const Vector v = psi.normalized();
    return DensityMatrix(Operator(space, v * v.adjoint()));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(matrix()); }

bool is_diagonal(const Matrix& a)
{
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (i != j && a(i, j) != Scalar(0.0)) return false;
    return true;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& a)
{
    if (is_diagonal(a)) return a.diagonal().real();
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double trace_distance(const Operator& a, const Operator& b)
{
    require_same_space(a, b);
    const Matrix diff = a.matrix() - b.matrix();
    return 0.5 * hermitian_eigenvalues(0.5 * (diff + diff.adjoint())).cwiseAbs().sum();
}

double von_neumann_entropy(const DensityMatrix& rho)
{
    double s = 0.0;
    for (double p : rho.eigenvalues())
        if (p > 1e-14) s -= p * std::log(p);
    return s;
}

std::vector<Eigen::VectorXd> marginal_populations(const DensityMatrix& rho)
{
    const HilbertSpace& space = rho.space();
    std::vector<Eigen::VectorXd> out;
    for (std::size_t f = 0; f < space.size(); ++f) out.push_back(Eigen::VectorXd::Zero(space.factor(f).dim));
    for (Index idx = 0; idx < space.dim(); ++idx) {
        const double p = rho.matrix()(idx, idx).real();
        Index rest = idx;
        // Last factor is the fastest-varying digit.
        for (std::size_t f = space.size(); f-- > 0;) {
            const Index d = space.factor(f).dim;
            out[f](rest % d) += p;
            rest /= d;
        }
    }
    return out;
}

std::vector<double> top_level_populations(const DensityMatrix& rho)
{
    std::vector<double> top;
    for (const auto& p : marginal_populations(rho)) top.push_back(p(p.size() - 1));
    return top;
}

std::string truncation_failure(const std::string& who, Index levels, double top_population)
{
    std::ostringstream os;
    os << who << ": truncation guard failed at " << levels << " levels (top population " << std::scientific << std::setprecision(2)
       << top_population << " > 1e-10)";
    return os.str();
}

Index suggested_levels(const DensityMatrix& rho, double target)
{
    Index levels = 0;
    for (const auto& p : marginal_populations(rho)) {
        const Index n = p.size();
        Index want = n + 1;
        const double top = p(n - 1);
        if (n >= 2 && top > target && p(n - 2) > 0.0) {
            const double r = top / p(n - 2);
            if (r > 0.0 && r < 1.0) want = std::max(want, n + Index(std::ceil(std::log(target / top) / std::log(r))) + 1);
            else want = std::max(want, 2 * n);
        }
        levels = std::max(levels, want);
    }
    return levels;
}

} // namespace qfridge
