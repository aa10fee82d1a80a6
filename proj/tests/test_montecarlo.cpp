#include <gtest/gtest.h>

#include <cmath>

#include "kou/errors.hpp"
#include "kou/montecarlo.hpp"
#include "oracles.hpp"

namespace kou {
namespace {

struct ConstantStream {
    double normal() { return 0.0; }
    double uniform() { return 0.5; }
};

McConfig small(std::uint64_t seed = 7) { return {400, 4000, seed, 0.95, 1}; }

TEST(SimulatePath, DegeneratePathStaysAtOrigin) {
    KouParams params = oracle::reference_params();
    params.lambda = 0.0;
    params.mu = 0.0;
    ConstantStream stream;
    const PathSummary path = simulate_path(params, 1.0, 100, stream);
    EXPECT_EQ(path.terminal, 0.0);
    EXPECT_EQ(path.running_max, 0.0);
}

TEST(SimulatePath, DriftOnlyPathIsLinear) {
    KouParams params = oracle::reference_params();
    params.lambda = 0.0;
    ConstantStream stream;
    const PathSummary path = simulate_path(params, 2.0, 50, stream);
    EXPECT_NEAR(path.terminal, 0.2, 1e-14);
    EXPECT_NEAR(path.running_max, 0.2, 1e-14);
}

TEST(SimulatePath, RunningMaxDominatesEndpoints) {
    const auto params = oracle::reference_params();
    for (std::uint64_t i = 0; i < 500; ++i) {
        ReplicationStream stream(3, i);
        const PathSummary path = simulate_path(params, 1.0, 200, stream);
        EXPECT_GE(path.running_max, std::max(path.terminal, 0.0));
    }
}

TEST(ReplicationStream, UniformsStayInsideOpenInterval) {
    ReplicationStream stream(11, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = stream.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(ReplicationStream, DependsOnlyOnSeedAndIndex) {
    ReplicationStream a(5, 17), b(5, 17), c(5, 18), d(6, 17);
    const double first = a.normal();
    EXPECT_EQ(first, b.normal());
    EXPECT_NE(first, c.normal());
    EXPECT_NE(first, d.normal());
}

TEST(SimulatePath, JumpSizesHaveKouMoments) {
    // With sigma -> 0 and mu = 0 the increments are pure compound Poisson:
    // E[X_t] = lambda t (p/eta1 - (1-p)/eta2).
    KouParams params = oracle::reference_params();
    params.mu = 0.0;
    params.sigma = 1e-12;
    const int paths = 40000;
    double sum = 0.0;
    for (int i = 0; i < paths; ++i) {
        ReplicationStream stream(13, static_cast<std::uint64_t>(i));
        sum += simulate_path(params, 1.0, 20, stream).terminal;
    }
    const double mean = sum / paths;
    const double expected = 3.0 * (0.5 / 50.0 - 0.5 * 0.03);
    // Var(X_1) = lambda E[Y^2] = 3 (p 2/eta1^2 + (1-p) 2/eta2^2)
    const double sd = std::sqrt(3.0 * (1.0 / 2500.0 + 0.0009) / paths);
    EXPECT_NEAR(mean, expected, 4.0 * sd);
}

TEST(EstimateProbabilities, BrownianBarrierClosedForm) {
    KouParams params = oracle::reference_params();
    params.lambda = 0.0;
    const McResult r = estimate_probabilities(params, 1.0, 0.2, 0.3, {1000, 200000, 2024, 0.95, 1});
    const double exact = oracle::brownian_barrier_probability(0.1, 0.2, 1.0, 0.3);
    const double se = std::sqrt(exact * (1.0 - exact) / 200000.0);
    EXPECT_LE(r.p_fpt, exact + 3.0 * se);
    EXPECT_GE(r.p_fpt, exact - 3.0 * se - 0.01);
}

TEST(EstimateProbabilities, UnreachableBarrier) {
    const McResult r = estimate_probabilities(oracle::reference_params(), 1.0, 0.2, 100.0, small());
    EXPECT_EQ(r.p_fpt, 0.0);
    EXPECT_EQ(r.p_joint, 0.0);
    EXPECT_EQ(r.ci_fpt.low, 0.0);
    EXPECT_LE(r.ci_fpt.high, 1e-3);
}

TEST(EstimateProbabilities, LowThresholdCoincidesWithMarginal) {
    const McResult r = estimate_probabilities(oracle::reference_params(), 1.0, -100.0, 0.3, small());
    EXPECT_EQ(r.hits_joint, r.hits_fpt);
    EXPECT_EQ(r.p_joint, r.p_fpt);
}

TEST(EstimateProbabilities, BitwiseReproducible) {
    const auto params = oracle::reference_params();
    const McResult x = estimate_probabilities(params, 1.0, 0.2, 0.3, small(99));
    const McResult y = estimate_probabilities(params, 1.0, 0.2, 0.3, small(99));
    EXPECT_EQ(x.hits_fpt, y.hits_fpt);
    EXPECT_EQ(x.hits_joint, y.hits_joint);
    EXPECT_EQ(x.ci_fpt.low, y.ci_fpt.low);
    EXPECT_EQ(x.ci_joint.high, y.ci_joint.high);
}

TEST(EstimateProbabilities, IndependentOfWorkerCount) {
    const auto params = oracle::reference_params();
    auto cfg = small(42);
    const McResult serial = estimate_probabilities(params, 1.0, 0.2, 0.3, cfg);
    for (int workers : {2, 3, 8}) {
        cfg.workers = workers;
        const McResult parallel = estimate_probabilities(params, 1.0, 0.2, 0.3, cfg);
        EXPECT_EQ(parallel.hits_fpt, serial.hits_fpt);
        EXPECT_EQ(parallel.hits_joint, serial.hits_joint);
    }
}

TEST(EstimateProbabilities, NestedEventsAndIntervals) {
    const auto params = oracle::reference_params();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const McResult r = estimate_probabilities(params, 1.0, 0.2, 0.3, small(seed));
        EXPECT_LE(r.p_joint, r.p_fpt);
        EXPECT_LE(r.ci_fpt.low, r.p_fpt);
        EXPECT_GE(r.ci_fpt.high, r.p_fpt);
        EXPECT_LE(r.ci_joint.low, r.p_joint);
        EXPECT_GE(r.ci_joint.high, r.p_joint);
    }
}

TEST(EstimateProbabilities, DiscreteMonitoringUnderestimates) {
    const auto params = oracle::reference_params();
    int below = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const McResult r = estimate_probabilities(params, 1.0, 0.2, 0.3, {2000, 20000, seed, 0.95, 1});
        if (r.p_fpt < 0.2558436) ++below;
    }
    EXPECT_GE(below, 8);
}

TEST(EstimateProbabilities, GridRefinementRaisesEstimate) {
    const auto params = oracle::reference_params();
    const McResult coarse = estimate_probabilities(params, 1.0, 0.2, 0.3, {500, 20000, 8, 0.95, 1});
    const McResult fine = estimate_probabilities(params, 1.0, 0.2, 0.3, {4000, 20000, 8, 0.95, 1});
    const double half = 0.5 * (coarse.ci_fpt.high - coarse.ci_fpt.low);
    EXPECT_GE(fine.p_fpt, coarse.p_fpt - 2.0 * half);
}

TEST(WaldInterval, MatchesNormalApproximation) {
    const Interval ci = wald_interval(5039, 20000, 0.95);
    const double p = 5039.0 / 20000.0;
    const double half = 1.959963984540054 * std::sqrt(p * (1 - p) / 20000.0);
    EXPECT_NEAR(ci.low, p - half, 1e-12);
    EXPECT_NEAR(ci.high, p + half, 1e-12);
    const Interval edge = wald_interval(1, 1, 0.95);
    EXPECT_EQ(edge.low, 1.0);
    EXPECT_EQ(edge.high, 1.0);
}

TEST(EstimateProbabilities, RejectsBadInputs) {
    const auto params = oracle::reference_params();
    EXPECT_THROW(estimate_probabilities(params, 1.0, 0.5, 0.3, small()), DomainError);
    EXPECT_THROW(estimate_probabilities(params, 1.0, 0.2, -0.3, small()), DomainError);
    EXPECT_THROW(estimate_probabilities(params, 0.0, 0.2, 0.3, small()), DomainError);
    auto cfg = small();
    cfg.grid_points = 1;
    EXPECT_THROW(estimate_probabilities(params, 1.0, 0.2, 0.3, cfg), DomainError);
    cfg = small();
    cfg.replications = 0;
    EXPECT_THROW(estimate_probabilities(params, 1.0, 0.2, 0.3, cfg), DomainError);
    cfg = small();
    cfg.ci_level = 1.0;
    EXPECT_THROW(estimate_probabilities(params, 1.0, 0.2, 0.3, cfg), DomainError);
}

}  // namespace
}  // namespace kou
