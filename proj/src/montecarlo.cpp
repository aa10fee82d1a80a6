#include "kou/montecarlo.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <thread>
#include <vector>

#include "kou/errors.hpp"

namespace kou {

ReplicationStream::ReplicationStream(std::uint64_t seed, std::uint64_t replication) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32)};
    engine_.seed(seq);
}

double ReplicationStream::uniform() {
    // 53 random bits, shifted off zero.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

Interval wald_interval(std::int64_t hits, std::int64_t n, double level) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    const boost::math::normal standard;
    const double z = boost::math::quantile(standard, 0.5 * (1.0 + level));
    const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

McResult estimate_probabilities(const KouParams& params, double t, double a, double b, const McConfig& cfg) {
    validate_params(params);
    if (!(t > 0.0)) throw DomainError("t must be positive");
    if (!(b > 0.0)) throw DomainError("b must be positive");
    if (!(a <= b)) throw DomainError("a must satisfy a <= b");
    if (cfg.grid_points < 2) throw DomainError("grid_points must be at least 2");
    if (cfg.replications < 1) throw DomainError("replications must be at least 1");
    if (!(cfg.ci_level > 0.0 && cfg.ci_level < 1.0)) throw DomainError("ci_level must lie in (0,1)");

    const int workers = std::max(1, cfg.workers);
    std::vector<std::int64_t> fpt(static_cast<std::size_t>(workers), 0);
    std::vector<std::int64_t> joint(static_cast<std::size_t>(workers), 0);

    auto run = [&](int worker) {
        std::int64_t hits_fpt = 0;
        std::int64_t hits_joint = 0;
        for (std::int64_t i = worker; i < cfg.replications; i += workers) {
            ReplicationStream stream(cfg.seed, static_cast<std::uint64_t>(i));
            const PathSummary path = simulate_path(params, t, cfg.grid_points, stream);
            if (path.running_max >= b) {
                ++hits_fpt;
                if (path.terminal >= a) ++hits_joint;
            }
        }
        fpt[static_cast<std::size_t>(worker)] = hits_fpt;
        joint[static_cast<std::size_t>(worker)] = hits_joint;
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }

    McResult out;
    out.replications = cfg.replications;
    for (int w = 0; w < workers; ++w) {
        out.hits_fpt += fpt[static_cast<std::size_t>(w)];
        out.hits_joint += joint[static_cast<std::size_t>(w)];
    }
    const double n = static_cast<double>(cfg.replications);
    out.p_fpt = static_cast<double>(out.hits_fpt) / n;
    out.p_joint = static_cast<double>(out.hits_joint) / n;
    out.ci_fpt = wald_interval(out.hits_fpt, cfg.replications, cfg.ci_level);
    out.ci_joint = wald_interval(out.hits_joint, cfg.replications, cfg.ci_level);
    return out;
}

}  // namespace kou
