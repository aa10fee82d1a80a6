#pragma once

#include <complex>

namespace kou {

using Complex = std::complex<double>;

/// Kou double-exponential jump-diffusion
///   X_t = sigma W_t + mu t + sum_{j <= N_t} Y_j,
/// N a Poisson process of intensity lambda, Y_j with density
///   p eta1 e^{-eta1 y} 1{y>0} + (1-p) eta2 e^{eta2 y} 1{y<0}.
///
/// lambda == 0 is admitted and reduces the model to drifted Brownian motion.
struct KouParams {
    double mu = 0.0;
    double sigma = 0.0;
    double lambda = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double p = 0.5;
};

/// Throws DomainError naming the first violated constraint.
void validate_params(const KouParams& params);

/// Levy exponent G(z) = mu z + sigma^2 z^2 / 2
///   + lambda (p eta1/(eta1 - z) + (1-p) eta2/(eta2 + z) - 1),
/// so that E[exp(s X_t)] = exp(t G(s)) wherever the left side is finite.
/// Throws PoleError when z hits eta1 or -eta2 (lambda > 0 only).
Complex levy_exponent(const KouParams& params, Complex z);

/// Analytic derivative G'(z).
Complex levy_exponent_derivative(const KouParams& params, Complex z);

/// Real-argument G, templated so it can run in extended precision.
template <class Real>
Real levy_exponent_real(const KouParams& params, const Real& x) {
    const Real eta1 = params.eta1;
    const Real eta2 = params.eta2;
    const Real sigma = params.sigma;
    Real g = params.mu * x + sigma * sigma * x * x / 2;
    if (params.lambda != 0.0) {
        const Real p = params.p;
        g += params.lambda * (p * eta1 / (eta1 - x) + (1 - p) * eta2 / (eta2 + x) - 1);
    }
    return g;
}

/// Real-argument G'.
template <class Real>
Real levy_exponent_derivative_real(const KouParams& params, const Real& x) {
    const Real eta1 = params.eta1;
    const Real eta2 = params.eta2;
    const Real sigma = params.sigma;
    Real d = params.mu + sigma * sigma * x;
    if (params.lambda != 0.0) {
        const Real p = params.p;
        const Real up = eta1 - x;
        const Real down = eta2 + x;
        d += params.lambda * (p * eta1 / (up * up) - (1 - p) * eta2 / (down * down));
    }
    return d;
}

}  // namespace kou
