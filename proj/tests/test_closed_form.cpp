#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "altruist/altruism_equations.hpp"
#include "altruist/closed_form.hpp"
#include "altruist/distributions.hpp"
#include "altruist/empirical.hpp"
#include "doctest.h"

using namespace altruist;

namespace {

GaussianBelief reference_2d() {
    return GaussianBelief({0.0, 0.0}, CovarianceMatrix(2, {5.0, 1.5, 1.5, 1.0}));
}

CovarianceMatrix random_spd(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> b(n * n);
    for (double& x : b) x = nd(rng);
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += b[i * n + k] * b[j * n + k];
            a[i * n + j] = s;
        }
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] += 0.25;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a[j * n + i] = a[i * n + j];
    return CovarianceMatrix(n, std::move(a));
}

}  // namespace

TEST_CASE("heterarchical pair, 1-D reference example") {
    const GaussianBelief b({0.0}, CovarianceMatrix(1, {100.0}));
    const EstimatorPair p = heterarchical_pair(b);
    CHECK(p.first[0] == doctest::Approx(7.9788456).epsilon(1e-6));
    CHECK(p.second[0] == doctest::Approx(-7.9788456).epsilon(1e-6));
    CHECK(p.midpoint()[0] == doctest::Approx(0.0));
}

TEST_CASE("heterarchical pair, 2-D reference example") {
    const EstimatorPair p = heterarchical_pair(reference_2d());
    // the reference solution is -(1.775, 0.592) for the first estimator; our sign
    // convention puts the +v branch first
    CHECK(std::abs(p.first[0]) == doctest::Approx(1.775).epsilon(2e-3));
    CHECK(std::abs(p.first[1]) == doctest::Approx(0.592).epsilon(2e-3));
    CHECK(p.first[0] == doctest::Approx(-p.second[0]));
    CHECK(p.first[1] == doctest::Approx(-p.second[1]));
    const double dist = std::hypot(p.second[0] - p.first[0], p.second[1] - p.first[1]);
    CHECK(dist == doctest::Approx(2.0 * std::sqrt(2.0 * 5.5 / M_PI)).epsilon(1e-12));
}

TEST_CASE("identity covariance tie-break") {
    const GaussianBelief b({3.0, 3.0}, CovarianceMatrix::identity(2));
    const EstimatorPair p = heterarchical_pair(b);
    CHECK(p.first[0] == doctest::Approx(3.0 + std::sqrt(2.0 / M_PI)));
    CHECK(p.first[1] == doctest::Approx(3.0));
    CHECK(p.second[0] == doctest::Approx(3.0 - std::sqrt(2.0 / M_PI)));
}

TEST_CASE("hierarchical pair") {
    const GaussianBelief b1({0.0}, CovarianceMatrix(1, {100.0}));
    const EstimatorPair p1 = hierarchical_pair(b1, Branch::plus);
    CHECK(p1.first[0] == 0.0);
    CHECK(p1.second[0] == doctest::Approx(12.240).epsilon(1e-4));
    const EstimatorPair m1 = hierarchical_pair(b1, Branch::minus);
    CHECK(m1.second[0] == doctest::Approx(-12.240).epsilon(1e-4));

    const EstimatorPair p2 = hierarchical_pair(reference_2d(), Branch::plus);
    CHECK(p2.first[0] == 0.0);
    CHECK(p2.first[1] == 0.0);
    CHECK(std::abs(p2.second[0]) == doctest::Approx(2.723).epsilon(1e-3));
    CHECK(std::abs(p2.second[1]) == doctest::Approx(0.908).epsilon(1e-3));

    const GaussianBelief b3({1.0, 1.0, 1.0}, CovarianceMatrix::identity(3));
    const EstimatorPair p3 = hierarchical_pair(b3, Branch::plus);
    CHECK(p3.second[0] == doctest::Approx(1.0 + hierarchical_constants().w_hi));
    CHECK(p3.second[1] == doctest::Approx(1.0));
    CHECK(p3.second[2] == doctest::Approx(1.0));
}

TEST_CASE("analytic costs") {
    const GaussianBelief b1({0.0}, CovarianceMatrix(1, {100.0}));
    CHECK(analytic_cost(b1, CostKind::heterarchical).j_value ==
          doctest::Approx(36.338).epsilon(1e-4));
    CHECK(analytic_cost(b1, CostKind::hierarchical).j_value ==
          doctest::Approx(59.5).epsilon(1e-3));

    const CostReport ht2 = analytic_cost(reference_2d(), CostKind::heterarchical);
    CHECK(ht2.j_ms == doctest::Approx(6.0));
    CHECK(ht2.j_value == doctest::Approx(6.0 - (2.0 / M_PI) * 5.5).epsilon(1e-12));
    CHECK(analytic_cost(reference_2d(), CostKind::hierarchical).j_value ==
          doctest::Approx(3.773).epsilon(1e-3));
    CHECK(ht2.upsilon == doctest::Approx((6.0 - ht2.j_value) / 6.0));
}

TEST_CASE("reduction bounds") {
    const ReductionBounds b1 = reduction_bounds(1);
    CHECK(b1.ht_lower == doctest::Approx(2.0 / M_PI));
    CHECK(b1.ht_upper == doctest::Approx(2.0 / M_PI));
    CHECK(b1.hi_lower == doctest::Approx(b1.hi_upper));

    CHECK(reduction_bounds(2).ht_lower == doctest::Approx(1.0 / M_PI));
    CHECK(reduction_bounds(10).hi_lower == doctest::Approx(0.0405).epsilon(2e-2));
    CHECK(std::abs(reduction_bounds(10).hi_lower -
                   hierarchical_constants().c_hi / 10.0) < 1e-15);
    CHECK_THROWS_AS(reduction_bounds(0), std::invalid_argument);
}

TEST_CASE("upsilon") {
    const GaussianBelief b1({0.0}, CovarianceMatrix(1, {100.0}));
    CHECK(upsilon(b1, CostKind::heterarchical) == doctest::Approx(2.0 / M_PI));

    const GaussianBelief b2({0.0, 0.0, 0.0, 0.0}, CovarianceMatrix::identity(4));
    CHECK(upsilon(b2, CostKind::heterarchical) == doctest::Approx(2.0 / (4.0 * M_PI)));

    const GaussianBelief b3({0.0, 0.0, 0.0},
                            CovarianceMatrix::diagonal({1000.0, 1.0, 1.0}));
    CHECK(upsilon(b3, CostKind::heterarchical) ==
          doctest::Approx((2.0 / M_PI) * 1000.0 / 1002.0).epsilon(1e-12));
    CHECK(upsilon(b3, CostKind::heterarchical) == doctest::Approx(0.6354).epsilon(1e-3));
}

TEST_CASE("translation equivariance is exact") {
    std::mt19937_64 rng(5);
    const CovarianceMatrix R = random_spd(3, rng);
    const std::vector<double> t{1.25, -0.5, 8.0};
    const GaussianBelief base({0.0, 0.0, 0.0}, R);
    const GaussianBelief shifted(t, R);
    const EstimatorPair p0 = heterarchical_pair(base);
    const EstimatorPair p1 = heterarchical_pair(shifted);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(p1.first[i] == p0.first[i] + t[i]);
        CHECK(p1.second[i] == p0.second[i] + t[i]);
    }
    const EstimatorPair h0 = hierarchical_pair(base, Branch::plus);
    const EstimatorPair h1 = hierarchical_pair(shifted, Branch::plus);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(h1.second[i] == h0.second[i] + t[i]);
}

TEST_CASE("cost ordering J_HT < J_HI < J_MS for random beliefs") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const CovarianceMatrix R = random_spd(n, rng);
        const GaussianBelief b(std::vector<double>(n, 0.0), R);
        const double jms = trace(R);
        const double jht = analytic_cost(b, CostKind::heterarchical).j_value;
        const double jhi = analytic_cost(b, CostKind::hierarchical).j_value;
        CHECK(jht < jhi);
        CHECK(jhi < jms);
    }
}

TEST_CASE("MC invariants of the closed-form pairs") {
    const GaussianBelief b = reference_2d();
    const std::size_t N = 200000;
    const SampleSet s = sample_gaussian(b, N, 2024);

    const EstimatorPair het = heterarchical_pair(b);
    const EstimatorPair hier = hierarchical_pair(b, Branch::plus);

    // equal split for the heterarchical pair
    const VoronoiAssignment va = assign(s, het);
    CHECK(std::abs(va.p1 - 0.5) <= 4.0 * std::sqrt(0.25 / N));

    for (const EstimatorPair& pair : {het, hier}) {
        const VoronoiAssignment a = assign(s, pair);

        // per-region sample means and their standard errors
        std::vector<double> m1(2, 0.0), m2(2, 0.0);
        std::size_t n1 = 0, n2 = 0;
        for (std::size_t k = 0; k < N; ++k) {
            const bool one = a.labels[k] == Region::one;
            for (int j = 0; j < 2; ++j)
                (one ? m1[j] : m2[j]) += s.at(k, j);
            (one ? n1 : n2) += 1;
        }
        for (int j = 0; j < 2; ++j) {
            m1[j] /= n1;
            m2[j] /= n2;
        }
        std::vector<double> v1(2, 0.0), v2(2, 0.0);
        for (std::size_t k = 0; k < N; ++k) {
            const bool one = a.labels[k] == Region::one;
            for (int j = 0; j < 2; ++j) {
                const double d = s.at(k, j) - (one ? m1[j] : m2[j]);
                (one ? v1[j] : v2[j]) += d * d;
            }
        }
        for (int j = 0; j < 2; ++j) {
            v1[j] /= n1;
            v2[j] /= n2;
        }

        // stationarity: each estimator is its region's conditional mean
        // (heterarchical); for hierarchical only the second region applies
        if (pair.kind == PairKind::heterarchical) {
            for (int j = 0; j < 2; ++j) {
                CHECK(std::abs(m1[j] - pair.first[j]) <= 4.0 * std::sqrt(v1[j] / n1));
                CHECK(std::abs(m2[j] - pair.second[j]) <= 4.0 * std::sqrt(v2[j] / n2));
            }
        } else {
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(m2[j] - pair.second[j]) <= 4.0 * std::sqrt(v2[j] / n2));
        }

        // generalized MMSE identity: P(V1) theta1 + P(V2) theta2 = mu.
        // It requires both estimators to be their regions' conditional
        // means, so it holds only for the heterarchical pair; for the
        // hierarchical one the pinned first estimator is not region one's
        // mean and the identity uses that region's sample mean instead.
        for (int j = 0; j < 2; ++j) {
            const double first_j =
                pair.kind == PairKind::heterarchical ? pair.first[j] : m1[j];
            const double mix = a.p1 * first_j + (1.0 - a.p1) * pair.second[j];
            const double se = 4.0 * std::sqrt(b.cov(j, j) / N) +
                              4.0 * std::sqrt(0.25 / N) *
                                  std::abs(first_j - pair.second[j]);
            CHECK(std::abs(mix - b.mean[j]) <= se);
        }
    }
}

TEST_CASE("conditional error covariance matches R for all four estimators") {
    const GaussianBelief b = reference_2d();
    const std::size_t N = 200000;
    const SampleSet s = sample_gaussian(b, N, 77);
    const EstimatorPair het = heterarchical_pair(b);
    const EstimatorPair hier = hierarchical_pair(b, Branch::plus);

    const std::vector<const std::vector<double>*> estimators = {
        &het.first, &het.second, &hier.first, &hier.second};
    for (const auto* est : estimators) {
        // error e_k = est - theta_k; covariance about its own mean must be R
        std::vector<double> mean(2, 0.0);
        for (std::size_t k = 0; k < N; ++k)
            for (int j = 0; j < 2; ++j) mean[j] += (*est)[j] - s.at(k, j);
        for (double& x : mean) x /= N;
        double cov[2][2] = {{0, 0}, {0, 0}};
        for (std::size_t k = 0; k < N; ++k) {
            double e[2];
            for (int j = 0; j < 2; ++j) e[j] = (*est)[j] - s.at(k, j) - mean[j];
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) cov[i][j] += e[i] * e[j];
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                cov[i][j] /= N;
                // entrywise 4-sigma tolerance; var of a covariance entry is
                // roughly (R_ii R_jj + R_ij^2)/N
                const double se = 4.0 * std::sqrt((b.cov(i, i) * b.cov(j, j) +
                                                   b.cov(i, j) * b.cov(i, j)) /
                                                  N);
                CHECK(std::abs(cov[i][j] - b.cov(i, j)) <= se);
            }
    }
}
