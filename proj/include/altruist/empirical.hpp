#pragma once

#include <cstdint>
#include <vector>

#include "altruist/closed_form.hpp"

namespace altruist {

/// N x dim matrix of i.i.d. draws representing an empirical posterior,
/// with the seed it was generated from as provenance.
struct SampleSet {
    std::size_t dim = 0;
    std::size_t count = 0;
    std::vector<double> points;  // row-major, count x dim
    std::uint64_t seed = 0;

    double at(std::size_t k, std::size_t j) const { return points[k * dim + j]; }
    const double* row(std::size_t k) const { return points.data() + k * dim; }
};

enum class Region : std::uint8_t { one = 1, two = 2 };

struct VoronoiAssignment {
    std::vector<Region> labels;
    double p1 = 0.0;  // fraction labeled region one
};

struct LloydConfig {
    int max_iters = 200;
    double move_tol = 1e-8;  // relative to the largest per-axis sample std
    int restarts = 8;
    std::uint64_t seed = 0;
};

struct LloydResult {
    EstimatorPair pair;
    int iterations = 0;
    bool converged = false;
    double mc_cost = 0.0;
    int restart_index = -1;
};

struct McCost {
    double mean = 0.0;
    double std_error = 0.0;
};

struct FarFieldReport {
    bool pass = false;
    double worst_margin = 0.0;  // min over pairs of cost - 0.99 * empirical MMSE
    double empirical_mmse = 0.0;
    std::vector<double> worst_first;  // pair attaining the worst margin
    std::vector<double> worst_second;
};

/// Labels each sample by the strictly closer estimator via the half-space
/// test sign<theta - midpoint, second - first>; the measure-zero tie goes
/// to region two. Throws on an identical pair.
VoronoiAssignment assign(const SampleSet& samples, const EstimatorPair& pair);

/// Sample mean and standard error of min(|first - theta|^2, |second - theta|^2),
/// accumulated in fixed sequential order. A degenerate (identical) pair is
/// allowed; the cost then reduces to the shared MSE.
McCost mc_cost(const SampleSet& samples, const EstimatorPair& pair);

/// Two-generator Lloyd iteration: alternate Voronoi assignment with
/// recomputing each estimator as its region's sample mean. Multi-start;
/// returns the lowest-cost converged restart.
LloydResult lloyd_heterarchical(const SampleSet& samples, const LloydConfig& cfg);

/// Same, with the first estimator pinned at the global sample mean and
/// only the second updated.
LloydResult lloyd_hierarchical(const SampleSet& samples, const LloydConfig& cfg);

/// Evaluates the cost at 20 seeded pairs with both estimators far from the
/// samples (norm >= radius_factor times the sample norm scale) and checks
/// each exceeds the empirical MMSE minus 1%.
FarFieldReport sanity_far_field(const SampleSet& samples, double radius_factor);

}  // namespace altruist
