#include "kou/model.hpp"

#include <cmath>
#include <string>

#include "kou/errors.hpp"

namespace kou {

namespace {

void check_poles(const KouParams& params, Complex z) {
    if (params.lambda == 0.0) return;
    const double tol = 1e-12 * (1.0 + params.eta1 + params.eta2);
    if (std::abs(z - params.eta1) < tol) {
        throw PoleError("G evaluated at its pole z = eta1");
    }
    if (std::abs(z + params.eta2) < tol) {
        throw PoleError("G evaluated at its pole z = -eta2");
    }
}

}  // namespace

void validate_params(const KouParams& params) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(params.mu)) throw DomainError("mu must be finite");
    if (!(params.sigma > 0.0) || !finite(params.sigma)) throw DomainError("sigma must be positive");
    if (!(params.lambda >= 0.0) || !finite(params.lambda)) throw DomainError("lambda must be non-negative");
    if (!(params.eta1 > 0.0) || !finite(params.eta1)) throw DomainError("eta1 must be positive");
    if (!(params.eta2 > 0.0) || !finite(params.eta2)) throw DomainError("eta2 must be positive");
    if (!(params.p > 0.0 && params.p < 1.0)) throw DomainError("p must lie in (0,1)");
}

Complex levy_exponent(const KouParams& params, Complex z) {
    check_poles(params, z);
    Complex g = params.mu * z + 0.5 * params.sigma * params.sigma * z * z;
    if (params.lambda != 0.0) {
        g += params.lambda * (params.p * params.eta1 / (params.eta1 - z) +
                              (1.0 - params.p) * params.eta2 / (params.eta2 + z) - 1.0);
    }
    return g;
}

Complex levy_exponent_derivative(const KouParams& params, Complex z) {
    check_poles(params, z);
    Complex d = params.mu + params.sigma * params.sigma * z;
    if (params.lambda != 0.0) {
        const Complex up = params.eta1 - z;
        const Complex down = params.eta2 + z;
        d += params.lambda * (params.p * params.eta1 / (up * up) -
                              (1.0 - params.p) * params.eta2 / (down * down));
    }
    return d;
}

}  // namespace kou
