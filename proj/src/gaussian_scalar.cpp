#include "altruist/gaussian_scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace altruist {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kInvSqrt2 = 0.7071067811865475244;

void check_std(const ScalarGaussian& g) {
    if (!(g.std > 0.0))
        throw std::invalid_argument("ScalarGaussian: std must be positive");
}

}  // namespace

double std_pdf(double chi) { return kInvSqrt2Pi * std::exp(-0.5 * chi * chi); }

double std_cdf(double chi) { return 0.5 * std::erfc(-chi * kInvSqrt2); }

double std_cdf_compl(double chi) { return 0.5 * std::erfc(chi * kInvSqrt2); }

double mills_hazard(double chi) {
    if (chi <= 8.0) return std_pdf(chi) / std_cdf_compl(chi);
    // Laplace continued fraction for the upper tail:
    //   phi/Q = chi + 1/(chi + 2/(chi + 3/(...)))
    // evaluated bottom-up; 64 terms is far past convergence for chi > 8.
    double t = 0.0;
    for (int k = 64; k >= 1; --k) t = static_cast<double>(k) / (chi + t);
    return chi + t;
}

double trunc_mean_upper(const ScalarGaussian& g, double x) {
    check_std(g);
    if (!std::isfinite(x)) throw std::invalid_argument("trunc_mean_upper: x not finite");
    const double chi = (x - g.mean) / g.std;
    return g.mean + g.std * mills_hazard(chi);
}

double trunc_mean_lower(const ScalarGaussian& g, double x) {
    check_std(g);
    if (!std::isfinite(x)) throw std::invalid_argument("trunc_mean_lower: x not finite");
    const double chi = (x - g.mean) / g.std;
    // E(Y|Y<x) = mu - sigma*phi(chi)/Phi(chi); mirror of the upper tail.
    return g.mean - g.std * mills_hazard(-chi);
}

double folded_abs_mean(const ScalarGaussian& g) {
    check_std(g);
    const double r = g.mean / g.std;
    return g.std * std::sqrt(2.0 / M_PI) * std::exp(-0.5 * r * r) +
           g.mean * (1.0 - 2.0 * std_cdf(-r));
}

}  // namespace altruist
