// Test-only quadrature oracles, independent of the library's erfc-based
// CDF and Mills-ratio code paths.
#pragma once

#include <cmath>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    // depth > 50 forces ten unconditional splits: a sharply peaked
    // integrand can make the five coarse samples agree by coincidence
    // (delta ~ 1e-12 with O(1) true error), so never trust the estimate
    // before the grid resolves the peak
    if (depth <= 0 || (std::abs(delta) <= 15.0 * tol && depth <= 50))
        return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson with absolute tolerance.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-11) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(f, a, b, fa, fm, fb);
    return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 60);
}

inline double phi(double t) {
    return 0.3989422804014326779 * std::exp(-0.5 * t * t);
}

/// E(X | X > chi) for standard normal X, computed entirely by quadrature
/// in the shifted variable s = t - chi so both integrands are O(1) even
/// deep in the tail:
///   E(X|X>chi) = chi + (int_0^S s w(s) ds) / (int_0^S w(s) ds),
///   w(s) = exp(-s*chi - s^2/2).
inline double trunc_mean_std_upper(double chi) {
    const double S = std::max(12.0, -chi + 15.0);
    const double speak = std::max(0.0, -chi);
    const double wmax = std::exp(-speak * chi - 0.5 * speak * speak);
    const double tol = 1e-13 * std::max(1.0, wmax);
    const auto w = [chi](double s) { return std::exp(-s * chi - 0.5 * s * s); };
    const auto sw = [&w](double s) { return s * w(s); };
    const double den = integrate(w, 0.0, S, tol);
    const double num = integrate(sw, 0.0, S, tol);
    return chi + num / den;
}

/// Upper-tail probability Q(chi) via the same shifted integral.
inline double tail_prob(double chi) {
    if (chi < 0.0) return 1.0 - tail_prob(-chi);
    const double S = std::max(12.0, -chi + 15.0);
    const auto w = [chi](double s) { return std::exp(-s * chi - 0.5 * s * s); };
    return phi(chi) * integrate(w, 0.0, S, 1e-13);
}

inline double cdf(double chi) { return 1.0 - tail_prob(chi); }

/// E(Y | Y > x) for Y ~ N(mu, sigma^2).
inline double trunc_mean_upper(double mu, double sigma, double x) {
    return mu + sigma * trunc_mean_std_upper((x - mu) / sigma);
}

/// E(Y | Y < x) by mirror symmetry.
inline double trunc_mean_lower(double mu, double sigma, double x) {
    return -trunc_mean_upper(-mu, sigma, -x);
}

/// E|Y| by direct quadrature, split at the kink.
inline double folded_abs_mean(double mu, double sigma) {
    const auto f = [mu, sigma](double y) {
        return std::abs(y) * phi((y - mu) / sigma) / sigma;
    };
    const double lo = mu - 14.0 * sigma;
    const double hi = mu + 14.0 * sigma;
    if (lo < 0.0 && hi > 0.0)
        return integrate(f, lo, 0.0, 1e-12) + integrate(f, 0.0, hi, 1e-12);
    return integrate(f, lo, hi, 1e-12);
}

}  // namespace oracle
