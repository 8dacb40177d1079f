#include "altruist/closed_form.hpp"

#include <cmath>
#include <stdexcept>

#include "altruist/altruism_equations.hpp"

namespace altruist {

GaussianBelief::GaussianBelief(std::vector<double> mu, CovarianceMatrix R)
    : mean(std::move(mu)), cov(std::move(R)) {
    if (mean.size() != cov.dim())
        throw std::invalid_argument("GaussianBelief: mean/cov dimension mismatch");
}

std::vector<double> EstimatorPair::midpoint() const {
    std::vector<double> m(first.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (first[i] + second[i]);
    return m;
}

std::vector<double> EstimatorPair::axis() const {
    std::vector<double> d(first.size());
    double nrm = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = second[i] - first[i];
        nrm += d[i] * d[i];
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0)
        throw std::invalid_argument("EstimatorPair::axis: degenerate pair");
    for (double& x : d) x /= nrm;
    return d;
}

EstimatorPair heterarchical_pair(const GaussianBelief& b) {
    const EigenPair ep = leading_eigenpair(b.cov);
    const double scale = std::sqrt(2.0 * ep.value / M_PI);
    EstimatorPair pair;
    pair.kind = PairKind::heterarchical;
    pair.first.resize(b.mean.size());
    pair.second.resize(b.mean.size());
    for (std::size_t i = 0; i < b.mean.size(); ++i) {
        pair.first[i] = b.mean[i] + scale * ep.vector[i];
        pair.second[i] = b.mean[i] - scale * ep.vector[i];
    }
    return pair;
}

EstimatorPair hierarchical_pair(const GaussianBelief& b, Branch branch) {
    const EigenPair ep = leading_eigenpair(b.cov);
    const double sign = (branch == Branch::plus) ? 1.0 : -1.0;
    const double scale = sign * hierarchical_constants().w_hi * std::sqrt(ep.value);
    EstimatorPair pair;
    pair.kind = (branch == Branch::plus) ? PairKind::hierarchical_plus
                                         : PairKind::hierarchical_minus;
    pair.first = b.mean;
    pair.second.resize(b.mean.size());
    for (std::size_t i = 0; i < b.mean.size(); ++i)
        pair.second[i] = b.mean[i] + scale * ep.vector[i];
    return pair;
}

CostReport analytic_cost(const GaussianBelief& b, CostKind kind) {
    const double lambda1 = b.cov.eigenvalues().back();
    const double coeff = (kind == CostKind::heterarchical)
                             ? hierarchical_constants().c_ht
                             : hierarchical_constants().c_hi;
    CostReport rep;
    rep.j_ms = trace(b.cov);
    rep.j_value = rep.j_ms - coeff * lambda1;
    rep.upsilon = (rep.j_ms - rep.j_value) / rep.j_ms;
    return rep;
}

ReductionBounds reduction_bounds(std::size_t n) {
    if (n == 0) throw std::invalid_argument("reduction_bounds: n must be >= 1");
    const double nd = static_cast<double>(n);
    const double c_hi = hierarchical_constants().c_hi;
    return ReductionBounds{2.0 / (nd * M_PI), 2.0 / M_PI, c_hi / nd, c_hi};
}

double upsilon(const GaussianBelief& b, CostKind kind) {
    const double coeff = (kind == CostKind::heterarchical)
                             ? hierarchical_constants().c_ht
                             : hierarchical_constants().c_hi;
    return coeff * b.cov.eigenvalues().back() / trace(b.cov);
}

}  // namespace altruist
