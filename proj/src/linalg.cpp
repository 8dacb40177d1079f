#include "altruist/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace altruist {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> matvec(const CovarianceMatrix& R,
                           const std::vector<double>& v) {
    const std::size_t n = R.dim();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += R(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

void sign_normalize(std::vector<double>& v) {
    for (double c : v) {
        if (std::abs(c) > 1e-12) {
            if (c < 0.0)
                for (double& x : v) x = -x;
            return;
        }
    }
}

}  // namespace

JacobiResult jacobi_eigen(std::size_t n, std::vector<double> a) {
    JacobiResult res;
    res.vectors.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) res.vectors[i * n + i] = 1.0;
    std::vector<double>& V = res.vectors;

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += a[p * n + q] * a[p * n + q];
        if (off < 1e-300) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = V[k * n + p];
                    const double vkq = V[k * n + q];
                    V[k * n + p] = c * vkp - s * vkq;
                    V[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    res.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.values[i] = a[i * n + i];

    // sort ascending, permuting the eigenvector columns alongside
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return res.values[i] < res.values[j];
    });
    std::vector<double> vals(n);
    std::vector<double> vecs(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        vals[k] = res.values[order[k]];
        for (std::size_t i = 0; i < n; ++i)
            vecs[i * n + k] = V[i * n + order[k]];
    }
    res.values = std::move(vals);
    res.vectors = std::move(vecs);
    return res;
}

CovarianceMatrix::CovarianceMatrix(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) throw std::invalid_argument("CovarianceMatrix: dim must be positive");
    if (entries_.size() != dim_ * dim_)
        throw std::invalid_argument("CovarianceMatrix: entry count does not match dim");
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i + 1; j < dim_; ++j) {
            const double rij = entries_[i * dim_ + j];
            const double rji = entries_[j * dim_ + i];
            if (std::abs(rij - rji) > 1e-12 * std::max(1.0, std::abs(rij)))
                throw std::invalid_argument("CovarianceMatrix: not symmetric");
        }
        if (!std::isfinite(entries_[i * dim_ + i]))
            throw std::invalid_argument("CovarianceMatrix: non-finite entry");
    }
    eigenvalues_ = jacobi_eigen(dim_, entries_).values;
    double tr = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) tr += entries_[i * dim_ + i];
    if (eigenvalues_.front() <= 1e-12 * tr)
        throw std::invalid_argument("CovarianceMatrix: not positive definite");
}

CovarianceMatrix CovarianceMatrix::identity(std::size_t dim) {
    std::vector<double> e(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
    return CovarianceMatrix(dim, std::move(e));
}

CovarianceMatrix CovarianceMatrix::diagonal(const std::vector<double>& diag) {
    const std::size_t n = diag.size();
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
    return CovarianceMatrix(n, std::move(e));
}

double CovarianceMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : entries_) s += x * x;
    return std::sqrt(s);
}

double trace(const CovarianceMatrix& R) {
    double s = 0.0;
    for (std::size_t i = 0; i < R.dim(); ++i) s += R(i, i);
    return s;
}

double quadratic_form(const CovarianceMatrix& R, const std::vector<double>& d) {
    if (d.size() != R.dim())
        throw std::invalid_argument("quadratic_form: dimension mismatch");
    if (std::abs(norm2(d) - 1.0) > 1e-10)
        throw std::invalid_argument("quadratic_form: d is not a unit vector");
    return dot(d, matvec(R, d));
}

EigenPair leading_eigenpair(const CovarianceMatrix& R) {
    const std::size_t n = R.dim();
    const double lambda_max = R.eigenvalues().back();
    const int max_iters = 10000;

    // Deterministic start vectors, tried in order. e1 first so that a
    // fully degenerate spectrum (R = c*I) yields the e1 tie-break.
    std::vector<std::vector<double>> starts;
    starts.emplace_back(n, 0.0);
    starts[0][0] = 1.0;
    starts.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
    {
        // last resort: components 1, 2, ..., n (never orthogonal to a
        // dominant eigenvector in the cases above simultaneously)
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i + 1);
        const double nv = norm2(v);
        for (double& x : v) x /= nv;
        starts.push_back(std::move(v));
    }

    const double res_tol = 1e-10 * R.frobenius_norm();
    int total_iters = 0;
    double last_residual = 0.0;
    for (auto& v : starts) {
        double lambda = 0.0;
        double res = 0.0;
        double res_prev = std::numeric_limits<double>::infinity();
        int stalls = 0;
        for (int it = 0; it < max_iters; ++it) {
            ++total_iters;
            std::vector<double> u = matvec(R, v);
            lambda = dot(v, u);  // Rayleigh quotient; v stays unit length
            res = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = u[i] - lambda * v[i];
                res += r * r;
            }
            res = std::sqrt(res);
            if (res <= res_tol) break;
            // stall detection on the residual itself: close eigenvalues
            // make progress slow (ratio^k) but steady, while a start that
            // settled on a non-dominant eigenpair sits at its noise floor
            if (res > 0.9999 * res_prev) {
                if (++stalls >= 20) break;
            } else {
                stalls = 0;
            }
            res_prev = res;
            const double nu = norm2(u);
            if (nu == 0.0) break;  // null-space start; impossible for SPD
            for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / nu;
        }
        last_residual = res;
        // Converged to some eigenpair; accept only the dominant one,
        // otherwise try the next start vector.
        if (last_residual <= res_tol &&
            lambda >= lambda_max - 1e-9 * std::max(1.0, lambda_max)) {
            sign_normalize(v);
            return EigenPair{lambda, std::move(v)};
        }
    }
    std::ostringstream msg;
    msg << "leading_eigenpair: power iteration failed after " << total_iters
        << " iterations (last residual " << last_residual << ")";
    throw std::runtime_error(msg.str());
}

std::vector<double> cholesky_lower(const CovarianceMatrix& R) {
    const std::size_t n = R.dim();
    std::vector<double> L(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = R(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
            if (i == j) {
                if (s <= 0.0)
                    throw std::runtime_error("cholesky_lower: matrix not positive definite");
                L[i * n + i] = std::sqrt(s);
            } else {
                L[i * n + j] = s / L[j * n + j];
            }
        }
    }
    return L;
}

}  // namespace altruist
