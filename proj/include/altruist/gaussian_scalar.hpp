#pragma once

namespace altruist {

struct ScalarGaussian {
    double mean;
    double std;  // must be > 0; validated by the consuming operations
};

/// Standard normal density (2*pi)^(-1/2) exp(-chi^2/2).
double std_pdf(double chi);

/// Standard normal CDF, absolute error below 1e-12 (erfc-based).
double std_cdf(double chi);

/// Upper tail 1 - Phi(chi), accurate far into the tail.
double std_cdf_compl(double chi);

/// Hazard (inverse Mills ratio) phi(chi) / (1 - Phi(chi)). Switches to a
/// continued-fraction evaluation for chi > 8 where the ratio of two
/// underflowing quantities would lose all precision.
double mills_hazard(double chi);

/// E(Y | Y > x) for Y ~ N(mean, std^2). Strictly above max(x, mean).
double trunc_mean_upper(const ScalarGaussian& g, double x);

/// E(Y | Y < x). Strictly below min(x, mean).
double trunc_mean_lower(const ScalarGaussian& g, double x);

/// E|Y| for Y ~ N(mean, std^2) (folded-normal first moment).
double folded_abs_mean(const ScalarGaussian& g);

}  // namespace altruist
