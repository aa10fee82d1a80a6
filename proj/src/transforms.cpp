#include "kou/transforms.hpp"

#include <cmath>

namespace kou {

namespace {

// (exp(-delta b) - 1) / delta, accurate as delta -> 0.
Complex exp_ratio(Complex delta, double b) {
    const Complex x = delta * b;
    if (std::abs(x) < 1e-2) {
        // -b (1 - x/2 + x^2/6 - x^3/24 + x^4/120 - x^5/720 + x^6/5040)
        Complex series = 1.0;
        Complex term = 1.0;
        for (int k = 2; k <= 7; ++k) {
            term *= -x / static_cast<double>(k);
            series += term;
        }
        return -b * series;
    }
    return (std::exp(-x) - 1.0) / delta;
}

struct FirstPassageCoeffs {
    Complex A, B;
};

// A and B rewritten around beta1 with delta = beta2 - beta1:
//   A = e^{-b beta1} (1 + (beta2 - eta1) phi),
//   B = -e^{-b beta1} (beta2 - eta1)(eta1 - beta1) phi / eta1,
// phi = (e^{-delta b} - 1) / delta. Exact for every delta, stable as delta -> 0.
FirstPassageCoeffs merged_coeffs(const ClassifiedRoots& roots, double eta1, double b) {
    const Complex phi = exp_ratio(roots.beta2 - roots.beta1, b);
    const Complex lead = std::exp(-b * roots.beta1);
    const Complex over = roots.beta2 - eta1;
    return {lead * (1.0 + over * phi), -lead * over * (eta1 - roots.beta1) * phi / eta1};
}

FirstPassageCoeffs first_passage_coeffs(const ClassifiedRoots& roots, double eta1, double b) {
    if (std::abs(roots.beta2 - roots.beta1) < degeneracy_threshold(roots.beta1, roots.beta2)) {
        return merged_coeffs(roots, eta1, b);
    }
    return {coeff_A(roots, eta1, b), coeff_B(roots, eta1, b)};
}

Complex beta_j(const ClassifiedRoots& roots, int j) {
    if (j == 3) return roots.beta3;
    if (j == 4) return roots.beta4;
    throw DomainError("coefficient index j must be 3 or 4");
}

// With lambda = 0 the cleared denominator contributes the root z = -eta2 to
// P_alpha although it is not a root of G = alpha; its residue is zero.
bool spurious_left_root(const KouParams& params, Complex beta) {
    return params.lambda == 0.0 && std::abs(beta - params.eta2) <= 1e-8 * (1.0 + params.eta2);
}

// Tail sum (A C3 + B D3) e^{-c beta3} + (A C4 + B D4) e^{-c beta4} for
// beta3 ~ beta4. Writing 1/G'(-beta_j) through P'/Q turns the sum into
// -(k(beta4) - k(beta3)) / (beta4 - beta3) with
//   k(x) = e^{-c x} (A (eta1 + x) + B eta1)(eta2 - x) / (c4 x (x + beta1)(x + beta2)),
// which is replaced by -k'(midpoint).
Complex merged_tails(const KouParams& params, const ClassifiedRoots& roots, Complex A, Complex B, double c) {
    const double c4 = -0.5 * params.sigma * params.sigma;
    const double eta1 = params.eta1;
    const double eta2 = params.eta2;
    const Complex x = 0.5 * (roots.beta3 + roots.beta4);
    const Complex lin = A * (eta1 + x) + B * eta1;
    const Complex num = lin * (eta2 - x);
    const Complex dnum = A * (eta2 - x) - lin;
    const Complex s1 = x + roots.beta1;
    const Complex s2 = x + roots.beta2;
    const Complex den = x * s1 * s2;
    const Complex dden = s1 * s2 + x * s2 + x * s1;
    const Complex dk = std::exp(-c * x) * (-c * num / den + (dnum * den - num * dden) / (den * den)) / c4;
    return -dk;
}

}  // namespace

void validate_inputs(const TransformInputs& inputs) {
    validate_params(inputs.params);
    if (!(inputs.b > 0.0) || !std::isfinite(inputs.b)) throw DomainError("b must be positive");
    if (!(inputs.a <= inputs.b) || std::isnan(inputs.a)) throw DomainError("a must satisfy a <= b");
}

double degeneracy_threshold(Complex x, Complex y) {
    return 1e-6 * (1.0 + std::abs(x) + std::abs(y));
}

Complex coeff_A(const ClassifiedRoots& roots, double eta1, double b) {
    const Complex delta = roots.beta2 - roots.beta1;
    if (std::abs(delta) < degeneracy_threshold(roots.beta1, roots.beta2)) {
        throw DegenerateRootsError("coeff_A: beta1 and beta2 coincide");
    }
    return (eta1 - roots.beta1) / delta * std::exp(-b * roots.beta1) +
           (roots.beta2 - eta1) / delta * std::exp(-b * roots.beta2);
}

Complex coeff_B(const ClassifiedRoots& roots, double eta1, double b) {
    const Complex delta = roots.beta2 - roots.beta1;
    if (std::abs(delta) < degeneracy_threshold(roots.beta1, roots.beta2)) {
        throw DegenerateRootsError("coeff_B: beta1 and beta2 coincide");
    }
    return (roots.beta2 - eta1) * (eta1 - roots.beta1) / (eta1 * delta) *
           (std::exp(-b * roots.beta1) - std::exp(-b * roots.beta2));
}

Complex coeff_C(const ClassifiedRoots& roots, const KouParams& params, int j) {
    const Complex beta = beta_j(roots, j);
    if (spurious_left_root(params, beta)) return 0.0;
    if (std::abs(roots.beta4 - roots.beta3) < degeneracy_threshold(roots.beta3, roots.beta4)) {
        throw DegenerateRootsError("coeff_C: beta3 and beta4 coincide");
    }
    return 1.0 / (beta * levy_exponent_derivative(params, -beta));
}

Complex coeff_D(const ClassifiedRoots& roots, const KouParams& params, int j) {
    const Complex beta = beta_j(roots, j);
    return coeff_C(roots, params, j) * params.eta1 / (params.eta1 + beta);
}

Complex fpt_transform_from_roots(const TransformInputs& inputs, Complex alpha, const ClassifiedRoots& roots) {
    const double eta1 = inputs.params.eta1;
    const double b = inputs.b;
    const Complex beta1 = roots.beta1;
    const Complex beta2 = roots.beta2;
    const Complex delta = beta2 - beta1;
    if (std::abs(delta) < degeneracy_threshold(beta1, beta2)) {
        // e^{-b beta1} (1 + beta1 (beta2 - eta1) phi / eta1) / alpha
        const Complex phi = exp_ratio(delta, b);
        return std::exp(-b * beta1) * (1.0 + beta1 * (beta2 - eta1) * phi / eta1) / alpha;
    }
    const Complex num = beta2 * (eta1 - beta1) * std::exp(-b * beta1) + beta1 * (beta2 - eta1) * std::exp(-b * beta2);
    return num / (alpha * eta1 * delta);
}

Complex joint_transform_from_roots(const TransformInputs& inputs, Complex alpha, const ClassifiedRoots& roots) {
    const KouParams& params = inputs.params;
    const auto [A, B] = first_passage_coeffs(roots, params.eta1, inputs.b);
    const double c = inputs.b - inputs.a;
    Complex tails;
    if (std::abs(roots.beta4 - roots.beta3) < degeneracy_threshold(roots.beta3, roots.beta4)) {
        tails = merged_tails(params, roots, A, B, c);
    } else {
        tails = (A * coeff_C(roots, params, 3) + B * coeff_D(roots, params, 3)) * std::exp(-c * roots.beta3) +
                (A * coeff_C(roots, params, 4) + B * coeff_D(roots, params, 4)) * std::exp(-c * roots.beta4);
    }
    return (A + B) / alpha + tails;
}

Complex fpt_transform(const TransformInputs& inputs, Complex alpha) {
    if (!(alpha.real() > 0.0)) throw DomainError("fpt_transform requires Re(alpha) > 0");
    return fpt_transform_from_roots(inputs, alpha, characteristic_roots(inputs.params, alpha));
}

Complex joint_transform(const TransformInputs& inputs, Complex alpha) {
    if (!(alpha.real() > 0.0)) throw DomainError("joint_transform requires Re(alpha) > 0");
    return joint_transform_from_roots(inputs, alpha, characteristic_roots(inputs.params, alpha));
}

}  // namespace kou
