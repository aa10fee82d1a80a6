#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "kou/model.hpp"

namespace kou {

struct McConfig {
    int grid_points = 2000;         ///< time steps m over [0, t], >= 2
    std::int64_t replications = 20000;
    std::uint64_t seed = 1;
    double ci_level = 0.95;
    int workers = 1;                ///< threads; results do not depend on it
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

struct McResult {
    double p_fpt = 0.0;    ///< P(max X >= b) on the grid
    double p_joint = 0.0;  ///< P(X_t >= a, max X >= b) on the grid
    Interval ci_fpt;
    Interval ci_joint;
    std::int64_t hits_fpt = 0;
    std::int64_t hits_joint = 0;
    std::int64_t replications = 0;
};

struct PathSummary {
    double terminal = 0.0;
    double running_max = 0.0;  ///< over the grid, including X_0 = 0
};

/// Random source for one replication: a 64-bit Mersenne twister seeded from
/// (seed, replication index) only.
class ReplicationStream {
public:
    ReplicationStream(std::uint64_t seed, std::uint64_t replication);

    double normal() { return normal_(engine_); }
    /// Uniform on the open interval (0, 1).
    double uniform();

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

/// Euler-grid Kou path: each step adds mu dt + sigma sqrt(dt) Z plus a
/// Poisson(lambda dt) number of double-exponential jumps.
template <class Stream>
PathSummary simulate_path(const KouParams& params, double t, int m, Stream& stream) {
    const double dt = t / m;
    const double drift = params.mu * dt;
    const double vol = params.sigma * std::sqrt(dt);
    const double jump_mean = params.lambda * dt;
    const double no_jump = std::exp(-jump_mean);

    double x = 0.0;
    double running_max = 0.0;
    for (int step = 0; step < m; ++step) {
        x += drift + vol * stream.normal();
        if (jump_mean > 0.0) {
            // Poisson count by CDF inversion.
            const double u = stream.uniform();
            int count = 0;
            double prob = no_jump;
            double cdf = prob;
            while (u > cdf && count < 64) {
                ++count;
                prob *= jump_mean / count;
                cdf += prob;
            }
            for (int j = 0; j < count; ++j) {
                const bool up = stream.uniform() < params.p;
                const double size = -std::log(stream.uniform());
                x += up ? size / params.eta1 : -size / params.eta2;
            }
        }
        if (x > running_max) running_max = x;
    }
    return {x, running_max};
}

/// Normal-approximation (Wald) interval for a binomial proportion, clipped to [0, 1].
Interval wald_interval(std::int64_t hits, std::int64_t n, double level);

/// Fractions of simulated paths with running max >= b, and additionally
/// terminal >= a. Throws DomainError on invalid inputs.
McResult estimate_probabilities(const KouParams& params, double t, double a, double b, const McConfig& cfg);

}  // namespace kou
