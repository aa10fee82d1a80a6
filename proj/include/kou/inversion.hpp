#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <complex>
#include <cstdint>
#include <functional>

namespace kou {

using Complex = std::complex<double>;

/// Variable-precision binary float; precision is taken from the thread's
/// current default (see ScopedPrecision).
using Precise = boost::multiprecision::mpfr_float;

/// Sets the default decimal precision of Precise for the current scope.
class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned digits);
    ~ScopedPrecision();
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

/// Fourier-series (Bromwich trapezoid) inversion with Euler summation.
/// Contour abscissa u = A / (2t).
struct EulerConfig {
    double A = 14.0;
    int n = 12;  ///< Euler average length, 1..60
    int B = 4;   ///< burn-in partial-sum index
};

struct GaverConfig {
    int n = 10;
    int B = 2;
    int precision_digits = 30;
};

struct Estimate {
    double value = 0.0;
    /// Euler: |E(n,B,t) - E(n+1,B,t)|; Gaver: |f*_n - f*_{n-1}|. A heuristic,
    /// not a bound.
    double err_estimate = 0.0;
    /// e^{-A} for Euler (valid when |f| <= 1); zero for Gaver.
    double discretization_bound = 0.0;
    /// Gaver only: |value| > 10, i.e. the weighted sum has blown up.
    bool diverged = false;
};

using ComplexTransform = std::function<Complex(Complex)>;
using RealTransform = std::function<Precise(const Precise&)>;

/// n choose k by the recursive integer formula; exact for n <= 61.
std::int64_t binomial(int n, int k);

/// f(t) ~ E(n,B,t) = sum_k C(n,k) 2^{-n} s_{B+k}(t), where
///   s_m(t) = e^{A/2}/(2t) Re F(A/2t) + e^{A/2}/t sum_{j=1..m} (-1)^j Re F((A + 2 pi j i)/(2t)).
/// F is evaluated exactly once at each of the B + n + 2 nodes.
Estimate euler_invert(const ComplexTransform& transform, double t, const EulerConfig& cfg);

/// Gaver functional
///   f~_n(t) = (ln2/t) (2n)!/(n!(n-1)!) sum_{k=0..n} (-1)^k C(n,k) F((n+k) ln2 / t)
/// in the current Precise precision.
Precise gaver_sequence(const RealTransform& transform, double t, int n);

/// Stehfest weight w(k,n) = (-1)^{n-k} k^n / (k! (n-k)!) in the current precision.
Precise stehfest_weight(int k, int n);

/// f*_n(t) = sum_{k=1..n} w(k,n) f~_{B+k}(t), computed with
/// cfg.precision_digits decimal digits. The transform is called inside the
/// precision scope and must compute in Precise.
Estimate gaver_stehfest(const RealTransform& transform, double t, const GaverConfig& cfg);

}  // namespace kou
