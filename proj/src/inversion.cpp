#include "kou/inversion.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "kou/errors.hpp"

namespace kou {

ScopedPrecision::ScopedPrecision(unsigned digits) : saved_(Precise::default_precision()) {
    Precise::default_precision(digits);
}

ScopedPrecision::~ScopedPrecision() { Precise::default_precision(saved_); }

std::int64_t binomial(int n, int k) {
    if (k < 0 || n < k) return 0;
    if (k == 0) return 1;
    if (k > n / 2) return binomial(n, n - k);
    return n * binomial(n - 1, k - 1) / k;
}

Estimate euler_invert(const ComplexTransform& transform, double t, const EulerConfig& cfg) {
    if (!(t > 0.0)) throw DomainError("euler_invert requires t > 0");
    if (!(cfg.A > 0.0)) throw DomainError("euler_invert requires A > 0");
    if (cfg.n < 1 || cfg.n > 60) throw DomainError("euler_invert requires 1 <= n <= 60");
    if (cfg.B < 0) throw DomainError("euler_invert requires B >= 0");

    const int last = cfg.B + cfg.n + 1;
    const double scale = std::exp(cfg.A / 2.0) / t;

    // partial[m] = s_m(t), m = 0..last
    std::vector<double> partial(static_cast<std::size_t>(last) + 1);
    double running = 0.5 * scale * transform(Complex(cfg.A / (2.0 * t), 0.0)).real();
    partial[0] = running;
    for (int j = 1; j <= last; ++j) {
        const Complex node(cfg.A / (2.0 * t), std::numbers::pi * j / t);
        const double term = scale * transform(node).real();
        running += (j % 2 == 0) ? term : -term;
        partial[static_cast<std::size_t>(j)] = running;
    }
    for (double value : partial) {
        if (!std::isfinite(value)) throw NumericalError("euler_invert: non-finite partial sum");
    }

    auto average = [&](int n) {
        double acc = 0.0;
        const double weight = std::ldexp(1.0, -n);
        for (int k = 0; k <= n; ++k) {
            acc += static_cast<double>(binomial(n, k)) * weight * partial[static_cast<std::size_t>(cfg.B + k)];
        }
        return acc;
    };

    Estimate out;
    out.value = average(cfg.n);
    out.err_estimate = std::abs(out.value - average(cfg.n + 1));
    out.discretization_bound = std::exp(-cfg.A);
    return out;
}

namespace {

Precise factorial(int n) {
    Precise acc = 1;
    for (int k = 2; k <= n; ++k) acc *= k;
    return acc;
}

// F((j ln2)/t) cached by integer node index j.
class NodeCache {
public:
    NodeCache(const RealTransform& transform, double t) : transform_(transform), step_(log(Precise(2)) / t) {}

    const Precise& at(int j) {
        auto it = values_.find(j);
        if (it == values_.end()) it = values_.emplace(j, transform_(step_ * j)).first;
        return it->second;
    }

    [[nodiscard]] const Precise& step() const { return step_; }

private:
    const RealTransform& transform_;
    Precise step_;
    std::map<int, Precise> values_;
};

Precise gaver_term(NodeCache& cache, int n) {
    // (2n)! / (n! (n-1)!) * C(n,k) = (2n)! / ((n-1)! k! (n-k)!)
    const Precise lead = factorial(2 * n) / (factorial(n) * factorial(n - 1));
    Precise sum = 0;
    Precise choose = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) choose = choose * (n - k + 1) / k;
        const Precise term = choose * cache.at(n + k);
        sum += (k % 2 == 0) ? term : Precise(-term);
    }
    return cache.step() * lead * sum;
}

}  // namespace

Precise stehfest_weight(int k, int n) {
    Precise w = pow(Precise(k), n) / (factorial(k) * factorial(n - k));
    return ((n - k) % 2 == 0) ? w : Precise(-w);
}

Precise gaver_sequence(const RealTransform& transform, double t, int n) {
    if (!(t > 0.0)) throw DomainError("gaver_sequence requires t > 0");
    if (n < 1) throw DomainError("gaver_sequence requires n >= 1");
    NodeCache cache(transform, t);
    return gaver_term(cache, n);
}

Estimate gaver_stehfest(const RealTransform& transform, double t, const GaverConfig& cfg) {
    if (!(t > 0.0)) throw DomainError("gaver_stehfest requires t > 0");
    if (cfg.n < 1) throw DomainError("gaver_stehfest requires n >= 1");
    if (cfg.B < 0) throw DomainError("gaver_stehfest requires B >= 0");
    if (cfg.precision_digits < 16) throw DomainError("gaver_stehfest requires at least 16 digits");

    const ScopedPrecision precision(static_cast<unsigned>(cfg.precision_digits));
    NodeCache cache(transform, t);
    std::vector<Precise> sequence;
    sequence.reserve(static_cast<std::size_t>(cfg.n));
    for (int k = 1; k <= cfg.n; ++k) sequence.push_back(gaver_term(cache, cfg.B + k));

    auto accelerated = [&](int n) {
        Precise acc = 0;
        for (int k = 1; k <= n; ++k) acc += stehfest_weight(k, n) * sequence[static_cast<std::size_t>(k - 1)];
        return acc;
    };

    const Precise value = accelerated(cfg.n);
    Estimate out;
    out.value = value.convert_to<double>();
    if (!std::isfinite(out.value)) throw NumericalError("gaver_stehfest: non-finite result");
    out.err_estimate = cfg.n > 1 ? abs(value - accelerated(cfg.n - 1)).convert_to<double>() : 0.0;
    out.diverged = std::abs(out.value) > 10.0;
    return out;
}

}  // namespace kou
