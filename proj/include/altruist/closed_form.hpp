#pragma once

#include <optional>
#include <vector>

#include "altruist/linalg.hpp"

namespace altruist {

/// Conditional belief theta | Z ~ N(mean, cov).
struct GaussianBelief {
    std::vector<double> mean;
    CovarianceMatrix cov;

    GaussianBelief(std::vector<double> mu, CovarianceMatrix R);
};

enum class PairKind { heterarchical, hierarchical_plus, hierarchical_minus };
enum class Branch { plus, minus };
enum class CostKind { heterarchical, hierarchical };

/// A pair of cooperating estimators. The constructors in this module
/// always produce distinct points; the solution axis is the unit
/// direction from first to second.
struct EstimatorPair {
    std::vector<double> first;
    std::vector<double> second;
    PairKind kind = PairKind::heterarchical;

    std::vector<double> midpoint() const;
    std::vector<double> axis() const;
};

struct CostReport {
    double j_ms = 0.0;     // trace R, the MMSE baseline
    double j_value = 0.0;  // analytic cost of the pair
    double upsilon = 0.0;  // relative reduction (j_ms - j_value)/j_ms
    std::optional<double> mc_value;
    std::optional<double> mc_std_error;
};

struct ReductionBounds {
    double ht_lower, ht_upper, hi_lower, hi_upper;
};

/// first/second = mu -+ sqrt(2 lambda1 / pi) v_lambda1; midpoint is mu.
EstimatorPair heterarchical_pair(const GaussianBelief& b);

/// first = mu (the MMSEE); second = mu +- w_hi sqrt(lambda1) v_lambda1.
/// Both branches carry identical analytic cost.
EstimatorPair hierarchical_pair(const GaussianBelief& b, Branch branch);

CostReport analytic_cost(const GaussianBelief& b, CostKind kind);

/// Attainable range of the relative cost reduction at dimension n:
/// (2/(n pi), 2/pi, c_hi/n, c_hi).
ReductionBounds reduction_bounds(std::size_t n);

double upsilon(const GaussianBelief& b, CostKind kind);

}  // namespace altruist
