#pragma once

#include <functional>

namespace altruist {

/// Scale and cost constants of the two altruism equations.
/// w_hi is twice the positive root of g_hi; c_hi = w_hi^2 * (1 - Phi(w_hi/2)).
struct AltruismConstants {
    double w_hi;  // ~1.224
    double c_hi;  // ~0.405
    double c_ht;  // 2/pi
};

/// Heterarchical altruism function
///   f_ht(chi) = phi(chi)/(2[1-Phi(chi)]) - phi(chi)/(2 Phi(chi)) - chi.
/// Anti-symmetric; its only zero is chi = 0.
double f_ht(double chi);

/// Hierarchical altruism function g_hi(chi) = phi(chi) - 2 chi [1-Phi(chi)].
double g_hi(double chi);

/// g_hi'(chi) = chi phi(chi) - 2 [1-Phi(chi)].
double g_hi_deriv(double chi);

/// Solves g_hi = 0 on (0, sqrt(3)) by bisection plus Newton polish to
/// |g_hi| <= 1e-14. Throws std::runtime_error on bracket failure (only
/// possible with a broken CDF).
AltruismConstants solve_hierarchical_constant();

/// Test hook: same solve with an injectable CDF.
AltruismConstants solve_hierarchical_constant(
    const std::function<double(double)>& cdf);

/// Process-lifetime cached constants; downstream code must use these
/// rather than the literal 1.224 so the cost coefficient stays
/// self-consistent.
const AltruismConstants& hierarchical_constants();

struct RootScanReport {
    bool ht_negative = false;       // f_ht < 0 on (0, chi_max]
    double ht_worst_value = 0.0;    // max f_ht over the scan grid
    double ht_offending_chi = 0.0;  // chi attaining the max

    bool hi_single_crossing = false;  // g_hi: exactly one sign change
    int hi_sign_changes = 0;
    double hi_crossing_chi = 0.0;  // location of the (first) crossing
    bool hi_crossing_in_bracket = false;  // crossing lies in (0, sqrt(3))

    bool hi_deriv_single_crossing = false;  // g_hi' in (0, sqrt(3))
    int hi_deriv_sign_changes = 0;
    double hi_deriv_crossing_chi = 0.0;

    bool passed() const {
        return ht_negative && hi_single_crossing && hi_crossing_in_bracket &&
               hi_deriv_single_crossing;
    }
};

/// Grid scan backing the root-uniqueness claims: f_ht strictly
/// negative on (grid_step, chi_max], g_hi with exactly one sign change
/// in (0, chi_max] located inside (0, sqrt(3)), and g_hi' with exactly
/// one sign change in (0, sqrt(3)).
RootScanReport verify_root_uniqueness(double grid_step, double chi_max);

}  // namespace altruist
