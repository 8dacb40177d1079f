#include "altruist/empirical.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace altruist {

namespace {

double sq_dist(const double* a, const std::vector<double>& b, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

std::vector<double> sample_mean(const SampleSet& s) {
    std::vector<double> m(s.dim, 0.0);
    for (std::size_t k = 0; k < s.count; ++k)
        for (std::size_t j = 0; j < s.dim; ++j) m[j] += s.at(k, j);
    for (double& x : m) x /= static_cast<double>(s.count);
    return m;
}

std::vector<double> per_axis_std(const SampleSet& s,
                                 const std::vector<double>& mean) {
    std::vector<double> v(s.dim, 0.0);
    for (std::size_t k = 0; k < s.count; ++k)
        for (std::size_t j = 0; j < s.dim; ++j) {
            const double d = s.at(k, j) - mean[j];
            v[j] += d * d;
        }
    for (double& x : v) x = std::sqrt(x / static_cast<double>(s.count));
    return v;
}

/// Leading principal axis of the sample covariance; power iteration on
/// the raw matrix (no SPD validation needed here). Falls back to e1 for
/// a vanishing covariance.
std::vector<double> principal_axis(const SampleSet& s,
                                   const std::vector<double>& mean) {
    const std::size_t n = s.dim;
    std::vector<double> cov(n * n, 0.0);
    for (std::size_t k = 0; k < s.count; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const double di = s.at(k, i) - mean[i];
            for (std::size_t j = 0; j < n; ++j)
                cov[i * n + j] += di * (s.at(k, j) - mean[j]);
        }
    for (double& x : cov) x /= static_cast<double>(s.count);

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < 200; ++it) {
        std::vector<double> w(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w[i] += cov[i * n + j] * v[j];
        double nw = 0.0;
        for (double x : w) nw += x * x;
        nw = std::sqrt(nw);
        if (nw < 1e-300) {
            std::vector<double> e1(n, 0.0);
            e1[0] = 1.0;
            return e1;
        }
        for (double& x : w) x /= nw;
        v = std::move(w);
    }
    return v;
}

std::vector<double> random_unit(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> u(n);
    double nrm = 0.0;
    do {
        nrm = 0.0;
        for (double& x : u) {
            x = nd(rng);
            nrm += x * x;
        }
        nrm = std::sqrt(nrm);
    } while (nrm < 1e-12);
    for (double& x : u) x /= nrm;
    return u;
}

struct RegionMeans {
    std::vector<double> m1, m2;
    std::size_t n1 = 0, n2 = 0;
};

RegionMeans region_means(const SampleSet& s, const EstimatorPair& pair) {
    const std::size_t n = s.dim;
    RegionMeans rm;
    rm.m1.assign(n, 0.0);
    rm.m2.assign(n, 0.0);
    std::vector<double> mid = pair.midpoint();
    std::vector<double> delta(n);
    for (std::size_t j = 0; j < n; ++j) delta[j] = pair.second[j] - pair.first[j];
    for (std::size_t k = 0; k < s.count; ++k) {
        double proj = 0.0;
        for (std::size_t j = 0; j < n; ++j) proj += (s.at(k, j) - mid[j]) * delta[j];
        if (proj < 0.0) {
            ++rm.n1;
            for (std::size_t j = 0; j < n; ++j) rm.m1[j] += s.at(k, j);
        } else {
            ++rm.n2;
            for (std::size_t j = 0; j < n; ++j) rm.m2[j] += s.at(k, j);
        }
    }
    if (rm.n1 > 0)
        for (double& x : rm.m1) x /= static_cast<double>(rm.n1);
    if (rm.n2 > 0)
        for (double& x : rm.m2) x /= static_cast<double>(rm.n2);
    return rm;
}

double movement(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

LloydResult lloyd_impl(const SampleSet& samples, const LloydConfig& cfg,
                       bool pin_first) {
    if (samples.count < 2)
        throw std::invalid_argument("lloyd: need at least two samples");
    if (cfg.max_iters <= 0 || cfg.restarts <= 0 || !(cfg.move_tol > 0.0))
        throw std::invalid_argument("lloyd: config fields must be positive");

    const std::size_t n = samples.dim;
    const std::vector<double> mean = sample_mean(samples);
    const std::vector<double> axis_std = per_axis_std(samples, mean);
    double scale = 0.0;
    for (double x : axis_std) scale = std::max(scale, x);
    if (scale == 0.0)
        throw std::invalid_argument("lloyd: zero-variance sample set");
    const double tol = cfg.move_tol * scale;
    const double delta0 = 0.5 * scale;
    const std::vector<double> pca = principal_axis(samples, mean);

    LloydResult best;
    bool have_best = false;

    for (int r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL * (r + 1));
        std::vector<double> u = (r == 0) ? pca : random_unit(rng, n);

        EstimatorPair pair;
        pair.kind = pin_first ? PairKind::hierarchical_plus
                              : PairKind::heterarchical;
        pair.first.resize(n);
        pair.second.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            pair.first[j] = pin_first ? mean[j] : mean[j] - delta0 * u[j];
            pair.second[j] = mean[j] + delta0 * u[j];
        }

        bool abandoned = false;
        bool converged = false;
        int iters = 0;
        int repairs = 0;
        std::uniform_int_distribution<std::size_t> pick(0, samples.count - 1);

        for (int it = 0; it < cfg.max_iters && !abandoned; ++it) {
            iters = it + 1;
            const RegionMeans rm = region_means(samples, pair);
            if (rm.n1 == 0 || rm.n2 == 0) {
                // standard k-means repair: re-seed the starved estimator at
                // a random sample point; at most 3 repairs per restart
                if (++repairs > 3) {
                    abandoned = true;
                    break;
                }
                const double* p = samples.row(pick(rng));
                std::vector<double>& target =
                    (rm.n1 == 0 && !pin_first) ? pair.first : pair.second;
                target.assign(p, p + n);
                continue;
            }
            double moved = 0.0;
            if (!pin_first) {
                moved = std::max(moved, movement(pair.first, rm.m1));
                pair.first = rm.m1;
            }
            moved = std::max(moved, movement(pair.second, rm.m2));
            pair.second = rm.m2;
            if (movement(pair.first, pair.second) == 0.0) {
                abandoned = true;  // collapsed onto one point
                break;
            }
            if (moved <= tol) {
                converged = true;
                break;
            }
        }

        if (abandoned || !converged) continue;
        const McCost cost = mc_cost(samples, pair);
        if (!have_best || cost.mean < best.mc_cost) {
            best.pair = pair;
            best.iterations = iters;
            best.converged = true;
            best.mc_cost = cost.mean;
            best.restart_index = r;
            have_best = true;
        }
    }

    if (!have_best)
        throw std::runtime_error("lloyd: no restart converged to a valid pair");
    return best;
}

}  // namespace

VoronoiAssignment assign(const SampleSet& samples, const EstimatorPair& pair) {
    const std::size_t n = samples.dim;
    if (pair.first.size() != n || pair.second.size() != n)
        throw std::invalid_argument("assign: dimension mismatch");
    if (pair.first == pair.second)
        throw std::invalid_argument("assign: identical estimators");

    VoronoiAssignment va;
    va.labels.resize(samples.count);
    const std::vector<double> mid = pair.midpoint();
    std::vector<double> delta(n);
    for (std::size_t j = 0; j < n; ++j) delta[j] = pair.second[j] - pair.first[j];

    std::size_t n1 = 0;
    for (std::size_t k = 0; k < samples.count; ++k) {
        double proj = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            proj += (samples.at(k, j) - mid[j]) * delta[j];
        if (proj < 0.0) {
            va.labels[k] = Region::one;
            ++n1;
        } else {
            va.labels[k] = Region::two;
        }
    }
    va.p1 = static_cast<double>(n1) / static_cast<double>(samples.count);
    return va;
}

McCost mc_cost(const SampleSet& samples, const EstimatorPair& pair) {
    if (samples.count == 0)
        throw std::invalid_argument("mc_cost: empty sample set");
    if (pair.first.size() != samples.dim || pair.second.size() != samples.dim)
        throw std::invalid_argument("mc_cost: dimension mismatch");

    // fixed sequential accumulation for reproducibility
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::size_t k = 0; k < samples.count; ++k) {
        const double d1 = sq_dist(samples.row(k), pair.first, samples.dim);
        const double d2 = sq_dist(samples.row(k), pair.second, samples.dim);
        const double d = std::min(d1, d2);
        sum += d;
        sumsq += d * d;
    }
    const double nn = static_cast<double>(samples.count);
    McCost c;
    c.mean = sum / nn;
    if (samples.count > 1) {
        const double var = std::max(0.0, (sumsq - nn * c.mean * c.mean) / (nn - 1.0));
        c.std_error = std::sqrt(var / nn);
    }
    return c;
}

LloydResult lloyd_heterarchical(const SampleSet& samples, const LloydConfig& cfg) {
    return lloyd_impl(samples, cfg, false);
}

LloydResult lloyd_hierarchical(const SampleSet& samples, const LloydConfig& cfg) {
    return lloyd_impl(samples, cfg, true);
}

FarFieldReport sanity_far_field(const SampleSet& samples, double radius_factor) {
    if (!(radius_factor >= 5.0))
        throw std::invalid_argument("sanity_far_field: radius_factor must be >= 5");
    if (samples.count == 0)
        throw std::invalid_argument("sanity_far_field: empty sample set");

    const std::size_t n = samples.dim;
    double norm_scale = 0.0;
    for (std::size_t k = 0; k < samples.count; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += samples.at(k, j) * samples.at(k, j);
        norm_scale += s;
    }
    norm_scale = std::sqrt(norm_scale / static_cast<double>(samples.count));

    EstimatorPair mmse;
    mmse.first = sample_mean(samples);
    mmse.second = mmse.first;
    const double j_ms = mc_cost(samples, mmse).mean;

    FarFieldReport rep;
    rep.pass = true;
    rep.empirical_mmse = j_ms;
    rep.worst_margin = INFINITY;

    std::mt19937_64 rng(samples.seed ^ 0xfa9f00dULL);
    std::uniform_real_distribution<double> rad(1.0, 2.0);
    for (int t = 0; t < 20; ++t) {
        EstimatorPair pair;
        const double r1 = radius_factor * norm_scale * rad(rng);
        const double r2 = radius_factor * norm_scale * rad(rng);
        std::vector<double> u1 = random_unit(rng, n);
        std::vector<double> u2 = random_unit(rng, n);
        pair.first.resize(n);
        pair.second.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            pair.first[j] = r1 * u1[j];
            pair.second[j] = r2 * u2[j];
        }
        const double cost = mc_cost(samples, pair).mean;
        const double margin = cost - 0.99 * j_ms;
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_first = pair.first;
            rep.worst_second = pair.second;
        }
        if (!(margin > 0.0)) rep.pass = false;
    }
    return rep;
}

}  // namespace altruist
