// operators.hpp — Finite-dimensional Hilbert spaces, operators and density matrices

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qfridge {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Units: hbar = k_B = 1 everywhere. Frequencies, temperatures and energies share one unit.

struct Factor {
    enum class Kind { Tls, Oscillator };

    Kind kind{Kind::Tls};
    Index dim{2};

    static Factor tls() { return {Kind::Tls, 2}; }
    static Factor oscillator(Index levels);

    bool operator==(const Factor&) const = default;
};

// Ordered tensor product of TLS / truncated-oscillator factors.
class HilbertSpace {
public:
    HilbertSpace() = default;
    explicit HilbertSpace(std::vector<Factor> factors);

    Index dim() const { return dim_; }
    std::size_t size() const { return factors_.size(); }
    const Factor& factor(std::size_t i) const { return factors_.at(i); }
    const std::vector<Factor>& factors() const { return factors_; }

    std::string describe() const;

    bool operator==(const HilbertSpace& other) const { return factors_ == other.factors_; }

private:
    std::vector<Factor> factors_;
    Index dim_{0};
};

class Operator {
public:
    Operator() = default;
    Operator(HilbertSpace space, Matrix entries);

    static Operator zero(const HilbertSpace& space);
    static Operator identity(const HilbertSpace& space);

    const HilbertSpace& space() const { return space_; }
    const Matrix& matrix() const { return m_; }
    Index dim() const { return m_.rows(); }

    Operator adjoint() const { return {space_, m_.adjoint()}; }
    Scalar trace() const { return m_.trace(); }
    bool is_hermitian(double tol = 1e-12) const;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(Scalar s);

private:
    HilbertSpace space_;
    Matrix m_;
};

Operator operator+(Operator lhs, const Operator& rhs);
Operator operator-(Operator lhs, const Operator& rhs);
Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator*(Scalar s, Operator op);
inline Operator operator*(double s, Operator op) { return Scalar(s) * std::move(op); }

inline Operator dagger(const Operator& op) { return op.adjoint(); }
Operator commutator(const Operator& a, const Operator& b);

// Expectation value Tr(rho X); rho need not be normalized.
Scalar expectation(const Operator& rho, const Operator& x);

// Lowering operator of one factor, embedded with identities on the others.
// TLS: [[0,1],[0,0]] so that a a^dag + a^dag a = 1.
// TruncatedOscillator(N): entries sqrt(k) at (k-1, k); [a, a^dag] = 1 except on level N-1.
Operator ladder(const HilbertSpace& space, std::size_t factor_index);

// Number operator a^dag a of one factor.
Operator number(const HilbertSpace& space, std::size_t factor_index);

// Single-factor operator embedded into the full space.
Operator embed(const HilbertSpace& space, std::size_t factor_index, const Matrix& local);

// Kronecker product of two dense Eigen expressions.
template <typename A, typename B>
Matrix kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Scalar(a(i, j)) * b.template cast<Scalar>();
    return out;
}

// Hermitian, unit-trace, positive semidefinite operator.
// Invariants: Hermitian to 1e-12, trace 1 to 1e-12, eigenvalues >= -1e-10.
class DensityMatrix {
public:
    static constexpr double hermiticity_tol = 1e-12;
    static constexpr double trace_tol = 1e-12;
    static constexpr double positivity_tol = 1e-10;

    DensityMatrix() = default;
    // Throws std::invalid_argument when the invariants fail.
    explicit DensityMatrix(Operator op);

    // Hermitize and renormalize before validating. Used for numerically produced states.
    static DensityMatrix from_numeric(const Operator& op);
    static DensityMatrix maximally_mixed(const HilbertSpace& space);
    static DensityMatrix pure(const HilbertSpace& space, const Vector& psi);

    const Operator& op() const { return op_; }
    const Matrix& matrix() const { return op_.matrix(); }
    const HilbertSpace& space() const { return op_.space(); }
    Index dim() const { return op_.dim(); }

    Eigen::VectorXd eigenvalues() const;

private:
    Operator op_;
};

// Why a density matrix candidate fails; empty string if valid.
std::string density_matrix_violation(const Operator& op);

double trace_distance(const Operator& a, const Operator& b);
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) { return trace_distance(a.op(), b.op()); }

// S = -Tr rho ln rho; eigenvalues below 1e-14 contribute zero.
double von_neumann_entropy(const DensityMatrix& rho);

// Marginal population of the top level of each factor.
std::vector<double> top_level_populations(const DensityMatrix& rho);

// Marginal level populations of each factor.
std::vector<Eigen::VectorXd> marginal_populations(const DensityMatrix& rho);

// Levels per factor at which the top population would fall below `target`, extrapolating the
// geometric tail of the marginals; never less than the current dimension plus one.
Index suggested_levels(const DensityMatrix& rho, double target);

// Message for an exhausted truncation budget.
std::string truncation_failure(const std::string& who, Index levels, double top_population);

// Exact test: every off-diagonal entry is zero.
bool is_diagonal(const Matrix& a);

// Eigenvalues of a Hermitian matrix (unsorted on the diagonal shortcut).
Eigen::VectorXd hermitian_eigenvalues(const Matrix& a);

// f(A) for Hermitian A through its eigendecomposition.
template <typename F>
Matrix hermitian_function(const Matrix& a, F&& f)
{
    if (is_diagonal(a)) {
        Vector fv(a.rows());
        for (Index i = 0; i < a.rows(); ++i) fv(i) = f(a(i, i).real());
        return fv.asDiagonal();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    Eigen::VectorXd vals = es.eigenvalues();
    Vector fv(vals.size());
    for (Index i = 0; i < vals.size(); ++i) fv(i) = f(vals(i));
    return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace qfridge
