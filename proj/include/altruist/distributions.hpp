#pragma once

#include <cstdint>
#include <vector>

#include "altruist/closed_form.hpp"
#include "altruist/empirical.hpp"

namespace altruist {

struct MixtureComponent {
    double weight;
    double mean;
    double variance;
};

/// 1-D Gaussian mixture; weights must be positive and sum to 1 within 1e-12.
class MixtureSpec {
public:
    explicit MixtureSpec(std::vector<MixtureComponent> components);
    const std::vector<MixtureComponent>& components() const { return components_; }

private:
    std::vector<MixtureComponent> components_;
};

/// The symmetric trimodal example: N(0,1), N(10,4), N(-10,4), weights 1/3.
MixtureSpec trimodal_mixture();

/// i.i.d. draws via the Cholesky factor of the belief covariance applied to
/// standard normal vectors. PRNG: std::mt19937_64; deterministic per seed.
SampleSet sample_gaussian(const GaussianBelief& b, std::size_t n_samples,
                          std::uint64_t seed);

/// Seeded categorical component choice followed by a scalar Gaussian draw.
SampleSet sample_mixture(const MixtureSpec& m, std::size_t n_samples,
                         std::uint64_t seed);

double mixture_pdf(const MixtureSpec& m, double x);

}  // namespace altruist
