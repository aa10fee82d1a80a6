#pragma once

#include <cmath>
#include <limits>

#include "kou/errors.hpp"
#include "kou/model.hpp"
#include "kou/quartic.hpp"

namespace kou {

/// Barrier b > 0 and terminal threshold a <= b (a is ignored by the
/// first-passage transform).
struct TransformInputs {
    KouParams params;
    double b = 0.0;
    double a = 0.0;
};

/// Throws DomainError unless params are valid, b > 0 and a <= b.
void validate_inputs(const TransformInputs& inputs);

/// Pairs closer than 1e-6 (1 + |x| + |y|) are treated as coincident.
double degeneracy_threshold(Complex x, Complex y);

/// A(alpha) = E[e^{-alpha tau_b} 1{X_tau = b}]. Throws DegenerateRootsError
/// when beta1 and beta2 are (numerically) coincident.
Complex coeff_A(const ClassifiedRoots& roots, double eta1, double b);

/// B(alpha) = E[e^{-alpha tau_b} 1{X_tau > b}].
Complex coeff_B(const ClassifiedRoots& roots, double eta1, double b);

/// C_j = 1 / (beta_j G'(-beta_j)), j in {3, 4}.
Complex coeff_C(const ClassifiedRoots& roots, const KouParams& params, int j);

/// D_j = eta1 / ((eta1 + beta_j) beta_j G'(-beta_j)), j in {3, 4}.
Complex coeff_D(const ClassifiedRoots& roots, const KouParams& params, int j);

/// Laplace transform of t -> P(tau_b <= t) at Re(alpha) > 0.
Complex fpt_transform(const TransformInputs& inputs, Complex alpha);

/// Laplace transform of t -> P(X_t >= a, tau_b <= t) at Re(alpha) > 0.
Complex joint_transform(const TransformInputs& inputs, Complex alpha);

/// Same transforms evaluated from already classified roots. The results are
/// symmetric in (beta1, beta2) and in (beta3, beta4).
Complex fpt_transform_from_roots(const TransformInputs& inputs, Complex alpha, const ClassifiedRoots& roots);
Complex joint_transform_from_roots(const TransformInputs& inputs, Complex alpha, const ClassifiedRoots& roots);

namespace detail {

/// Solves G(x) = alpha on (lo, hi), where G - alpha rises from negative to
/// positive; safeguarded Newton in the working type. The endpoints are never
/// evaluated (one of them is usually a pole of G).
template <class Real>
Real bracketed_root(const KouParams& params, const Real& alpha, Real lo, Real hi, Real guess) {
    using std::abs;
    auto f = [&](const Real& x) { return levy_exponent_real(params, x) - alpha; };
    Real x = guess;
    if (!(x > lo && x < hi)) x = (lo + hi) / 2;
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int iter = 0; iter < 400; ++iter) {
        const Real fx = f(x);
        if (fx == 0) return x;
        if (fx < 0) {
            lo = x;
        } else {
            hi = x;
        }
        Real next = x - fx / levy_exponent_derivative_real(params, x);
        if (!(next > lo && next < hi)) next = (lo + hi) / 2;
        const Real step = abs(next - x);
        x = next;
        if (step <= 4 * eps * abs(x) || hi - lo <= 4 * eps * abs(x)) return x;
    }
    throw NumericalError("bracketed_root did not converge");
}

}  // namespace detail

/// First-passage transform for real alpha > 0 in any floating type (used by
/// the Gaver-Stehfest inverter in extended precision). The two positive roots
/// 0 < beta1 < eta1 < beta2 are located by bracketed Newton in `Real`, seeded
/// from the double-precision quartic solution.
template <class Real>
Real fpt_transform_real(const TransformInputs& inputs, const Real& alpha) {
    using std::exp;
    const KouParams& params = inputs.params;
    if (!(alpha > 0)) throw DomainError("fpt_transform_real requires alpha > 0");
    const Real b = inputs.b;
    const Real eta1 = params.eta1;

    const double alpha_d = static_cast<double>(alpha);
    if (params.lambda == 0.0) {
        // Positive root of mu x + sigma^2 x^2 / 2 = alpha; the model has no overshoot.
        const Real s2 = Real(params.sigma) * params.sigma / 2;
        const Real mu = params.mu;
        using std::sqrt;
        const Real beta = (2 * alpha) / (mu + sqrt(mu * mu + 4 * s2 * alpha));
        return exp(-b * beta) / alpha;
    }

    const ClassifiedRoots seed = characteristic_roots(params, Complex(alpha_d, 0.0));
    const Real beta1 = detail::bracketed_root<Real>(params, alpha, Real(0), eta1, Real(seed.beta1.real()));
    Real upper = 2 * eta1;
    while (levy_exponent_real(params, upper) - alpha < 0) upper *= 2;
    const Real beta2 = detail::bracketed_root<Real>(params, alpha, eta1, upper, Real(seed.beta2.real()));

    const Real num = beta2 * (eta1 - beta1) * exp(-b * beta1) + beta1 * (beta2 - eta1) * exp(-b * beta2);
    return num / (alpha * eta1 * (beta2 - beta1));
}

}  // namespace kou
