#include "altruist/distributions.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "altruist/gaussian_scalar.hpp"

namespace altruist {

MixtureSpec::MixtureSpec(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
    if (components_.empty())
        throw std::invalid_argument("MixtureSpec: needs at least one component");
    double wsum = 0.0;
    for (const auto& c : components_) {
        if (!(c.weight > 0.0))
            throw std::invalid_argument("MixtureSpec: weights must be positive");
        if (!(c.variance > 0.0))
            throw std::invalid_argument("MixtureSpec: variances must be positive");
        wsum += c.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("MixtureSpec: weights must sum to 1");
}

MixtureSpec trimodal_mixture() {
    const double w = 1.0 / 3.0;
    return MixtureSpec({{w, 0.0, 1.0}, {w, 10.0, 4.0}, {w, -10.0, 4.0}});
}

SampleSet sample_gaussian(const GaussianBelief& b, std::size_t n_samples,
                          std::uint64_t seed) {
    if (n_samples < 1)
        throw std::invalid_argument("sample_gaussian: n_samples must be >= 1");
    const std::size_t n = b.cov.dim();
    const std::vector<double> L = cholesky_lower(b.cov);

    SampleSet s;
    s.dim = n;
    s.count = n_samples;
    s.seed = seed;
    s.points.resize(n_samples * n);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> z(n);
    for (std::size_t k = 0; k < n_samples; ++k) {
        for (double& x : z) x = nd(rng);
        for (std::size_t i = 0; i < n; ++i) {
            double v = b.mean[i];
            for (std::size_t j = 0; j <= i; ++j) v += L[i * n + j] * z[j];
            s.points[k * n + i] = v;
        }
    }
    return s;
}

SampleSet sample_mixture(const MixtureSpec& m, std::size_t n_samples,
                         std::uint64_t seed) {
    if (n_samples < 1)
        throw std::invalid_argument("sample_mixture: n_samples must be >= 1");
    SampleSet s;
    s.dim = 1;
    s.count = n_samples;
    s.seed = seed;
    s.points.resize(n_samples);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    std::normal_distribution<double> nd(0.0, 1.0);
    const auto& comps = m.components();
    for (std::size_t k = 0; k < n_samples; ++k) {
        double u = ud(rng);
        std::size_t c = comps.size() - 1;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (u < comps[i].weight) {
                c = i;
                break;
            }
            u -= comps[i].weight;
        }
        s.points[k] = comps[c].mean + std::sqrt(comps[c].variance) * nd(rng);
    }
    return s;
}

double mixture_pdf(const MixtureSpec& m, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("mixture_pdf: x not finite");
    double p = 0.0;
    for (const auto& c : m.components()) {
        const double sd = std::sqrt(c.variance);
        p += c.weight * std_pdf((x - c.mean) / sd) / sd;
    }
    return p;
}

}  // namespace altruist
