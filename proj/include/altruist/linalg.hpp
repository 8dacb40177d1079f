#pragma once

#include <cstddef>
#include <vector>

namespace altruist {

/// Dense symmetric positive-definite matrix, row-major storage.
/// Symmetry and definiteness are validated at construction; the
/// construction-time Jacobi spectrum is cached for later queries.
class CovarianceMatrix {
public:
    CovarianceMatrix(std::size_t dim, std::vector<double> entries);

    static CovarianceMatrix identity(std::size_t dim);
    static CovarianceMatrix diagonal(const std::vector<double>& diag);

    std::size_t dim() const { return dim_; }
    double operator()(std::size_t i, std::size_t j) const {
        return entries_[i * dim_ + j];
    }
    const std::vector<double>& entries() const { return entries_; }

    /// Eigenvalues in ascending order, from the construction-time
    /// cyclic-Jacobi sweep.
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }

    double frobenius_norm() const;

private:
    std::size_t dim_;
    std::vector<double> entries_;
    std::vector<double> eigenvalues_;
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
};

/// Largest eigenvalue and its sign-normalized unit eigenvector
/// (first component of magnitude > 1e-12 is positive).
/// Power iteration with a Rayleigh-quotient convergence test; throws
/// std::runtime_error carrying iteration count and last residual if
/// no start vector converges to the dominant eigenspace.
EigenPair leading_eigenpair(const CovarianceMatrix& R);

double trace(const CovarianceMatrix& R);

/// d'Rd for a unit vector d. Throws std::invalid_argument when
/// |norm(d) - 1| > 1e-10.
double quadratic_form(const CovarianceMatrix& R, const std::vector<double>& d);

/// Lower-triangular Cholesky factor (no pivoting), row-major.
/// Failure doubles as an SPD backstop and throws std::runtime_error.
std::vector<double> cholesky_lower(const CovarianceMatrix& R);

struct JacobiResult {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // row-major; column k pairs with values[k]
};

/// Full cyclic-Jacobi eigendecomposition of a symmetric matrix.
JacobiResult jacobi_eigen(std::size_t dim, std::vector<double> a);

}  // namespace altruist
