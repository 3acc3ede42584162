// superoperator.hpp — Liouville-space generators, steady states and time evolution

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Sparse>

#include "qfridge/operators.hpp"

namespace qfridge {

using SparseMatrix = Eigen::SparseMatrix<Scalar>;

// Vectorization is column stacking: vec(A X B) = (B^T kron A) vec(X).
Vector vectorize(const Matrix& x);
Matrix unvectorize(const Vector& v, Index dim);

SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b);

// Generator acting on column-stacked density matrices; dim^2 x dim^2.
class Superoperator {
public:
    Superoperator() = default;
    Superoperator(HilbertSpace space, SparseMatrix entries);

    static Superoperator zero(const HilbertSpace& space);

    const HilbertSpace& space() const { return space_; }
    const SparseMatrix& matrix() const { return m_; }
    Matrix dense() const { return Matrix(m_); }
    Index liouville_dim() const { return m_.rows(); }

    Operator apply(const Operator& rho) const;
    Operator apply(const DensityMatrix& rho) const { return apply(rho.op()); }

    // max_j |sum_i L(ii, j)| : deviation of vec(I)^T L from zero.
    double trace_defect() const;

    Superoperator& operator+=(const Superoperator& rhs);

private:
    HilbertSpace space_;
    SparseMatrix m_;
};

Superoperator operator+(Superoperator lhs, const Superoperator& rhs);
Superoperator operator*(double s, Superoperator l);

struct Dissipator {
    Operator jump;
    double rate{0.0};
};

// -i[H, .] + sum_k rate_k (A rho A^dag - 1/2 {A^dag A, rho}).
Superoperator liouvillian_matrix(const Operator& hamiltonian, const std::vector<Dissipator>& terms);
Superoperator liouvillian_matrix(const HilbertSpace& space, const std::vector<Dissipator>& terms);

struct SteadyStateOptions {
    double null_threshold = 1e-9;     // singular values below this times sigma_max count as null
    double residual_tol = 1e-10;      // ||L rho|| <= residual_tol * ||L||
    Index dense_limit = 400;          // dense SVD below this (sub)problem size, sparse LU above
};

struct SteadyState {
    DensityMatrix state;
    std::size_t null_dimension{1};
    double residual{0.0};
    bool ergodic() const { return null_dimension == 1; }
};

// Null-space solve. When the null space is degenerate, one representative state is returned and
// null_dimension > 1 reports the non-ergodicity.
//
// Small generators are handled by a dense SVD of the whole matrix. Larger ones are split into the
// connected components of their sparsity graph; only components that touch populations |i><i| can
// carry trace, and each of those is solved separately (dense SVD or sparse LU with the trace
// condition replacing one row).
SteadyState steady_state(const Superoperator& l, const SteadyStateOptions& options = {});

enum class EvolveMethod { Auto, Expm, Rk45 };

struct EvolveOptions {
    EvolveMethod method = EvolveMethod::Auto;
    Index expm_limit = 400;  // Auto picks the dense exponential up to this Liouville dimension
    double rtol = 1e-9;
    double atol = 1e-13;
};

// rho(t) = exp(L t) rho0 on a nondecreasing grid starting at t >= 0.
std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const Superoperator& l, const std::vector<double>& times,
                                  const EvolveOptions& options = {});

} // namespace qfridge
