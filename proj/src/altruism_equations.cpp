#include "altruist/altruism_equations.hpp"

#include <cmath>
#include <stdexcept>

#include "altruist/gaussian_scalar.hpp"

namespace altruist {

double f_ht(double chi) {
    const double p = std_pdf(chi);
    return p / (2.0 * std_cdf_compl(chi)) - p / (2.0 * std_cdf(chi)) - chi;
}

double g_hi(double chi) {
    return std_pdf(chi) - 2.0 * chi * std_cdf_compl(chi);
}

double g_hi_deriv(double chi) {
    return chi * std_pdf(chi) - 2.0 * std_cdf_compl(chi);
}

AltruismConstants solve_hierarchical_constant(
    const std::function<double(double)>& cdf) {
    const auto g = [&cdf](double chi) {
        return std_pdf(chi) - 2.0 * chi * (1.0 - cdf(chi));
    };
    double lo = 0.0;
    double hi = std::sqrt(3.0);
    if (!(g(lo) > 0.0 && g(hi) < 0.0))
        throw std::runtime_error(
            "solve_hierarchical_constant: bracket failure on (0, sqrt(3)); "
            "the normal CDF is inconsistent");

    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    double chi = 0.5 * (lo + hi);
    for (int i = 0; i < 5; ++i) {
        const double d = chi * std_pdf(chi) - 2.0 * (1.0 - cdf(chi));
        chi -= g(chi) / d;
        if (std::abs(g(chi)) <= 1e-14) break;
    }

    AltruismConstants c;
    c.w_hi = 2.0 * chi;
    c.c_hi = c.w_hi * c.w_hi * (1.0 - cdf(chi));
    c.c_ht = 2.0 / M_PI;
    return c;
}

AltruismConstants solve_hierarchical_constant() {
    return solve_hierarchical_constant(std_cdf);
}

const AltruismConstants& hierarchical_constants() {
    static const AltruismConstants c = solve_hierarchical_constant();
    return c;
}

RootScanReport verify_root_uniqueness(double grid_step, double chi_max) {
    if (!(grid_step > 0.0 && grid_step <= 1e-3))
        throw std::invalid_argument("verify_root_uniqueness: grid_step out of range");
    if (!(chi_max >= 10.0))
        throw std::invalid_argument("verify_root_uniqueness: chi_max must be >= 10");

    RootScanReport rep;
    const double sqrt3 = std::sqrt(3.0);
    const long steps = static_cast<long>(std::floor(chi_max / grid_step + 1e-9));

    // f_ht over (grid_step, chi_max]
    rep.ht_negative = true;
    rep.ht_worst_value = -INFINITY;
    for (long k = 1; k <= steps; ++k) {
        const double chi = static_cast<double>(k) * grid_step;
        if (chi <= grid_step * 0.5) continue;
        const double v = f_ht(chi);
        if (v > rep.ht_worst_value) {
            rep.ht_worst_value = v;
            rep.ht_offending_chi = chi;
        }
        if (!(v < 0.0)) rep.ht_negative = false;
    }

    // g_hi sign changes over (0, chi_max]
    {
        double prev = g_hi(grid_step);
        for (long k = 2; k <= steps; ++k) {
            const double chi = static_cast<double>(k) * grid_step;
            const double v = g_hi(chi);
            if ((prev > 0.0 && v < 0.0) || (prev < 0.0 && v > 0.0)) {
                ++rep.hi_sign_changes;
                if (rep.hi_sign_changes == 1) rep.hi_crossing_chi = chi;
            }
            if (v != 0.0) prev = v;
        }
        rep.hi_single_crossing = (rep.hi_sign_changes == 1);
        rep.hi_crossing_in_bracket =
            rep.hi_crossing_chi > 0.0 && rep.hi_crossing_chi < sqrt3;
    }

    // g_hi' sign changes over (0, sqrt(3))
    {
        const long dsteps = static_cast<long>(std::floor(sqrt3 / grid_step)) - 1;
        double prev = g_hi_deriv(grid_step);
        for (long k = 2; k <= dsteps; ++k) {
            const double chi = static_cast<double>(k) * grid_step;
            const double v = g_hi_deriv(chi);
            if ((prev > 0.0 && v < 0.0) || (prev < 0.0 && v > 0.0)) {
                ++rep.hi_deriv_sign_changes;
                if (rep.hi_deriv_sign_changes == 1) rep.hi_deriv_crossing_chi = chi;
            }
            if (v != 0.0) prev = v;
        }
        rep.hi_deriv_single_crossing = (rep.hi_deriv_sign_changes == 1);
    }

    return rep;
}

}  // namespace altruist
