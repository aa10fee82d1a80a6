#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "kou/errors.hpp"
#include "kou/transforms.hpp"
#include "oracles.hpp"

namespace kou {
namespace {

TransformInputs reference_inputs() { return {oracle::reference_params(), 0.3, 0.2}; }

double rel(Complex x, Complex y) { return std::abs(x - y) / std::max(1e-300, std::abs(y)); }

ClassifiedRoots brownian_roots(double alpha) {
    auto params = oracle::reference_params();
    params.lambda = 0.0;
    return characteristic_roots(params, alpha);
}

TEST(CoeffA, BrownianCaseReducesToSingleExponential) {
    const auto roots = brownian_roots(7.0);
    ASSERT_NEAR(roots.beta2.real(), 50.0, 1e-10);
    const Complex beta = oracle::brownian_root(0.1, 0.2, 7.0);
    EXPECT_LT(rel(coeff_A(roots, 50.0, 0.3), std::exp(-0.3 * beta)), 1e-10);
    EXPECT_LT(std::abs(coeff_B(roots, 50.0, 0.3)), 1e-12);
}

TEST(CoeffA, SubProbabilityOnTheContourAbscissa) {
    const auto roots = characteristic_roots(oracle::reference_params(), 7.0);
    const Complex A = coeff_A(roots, 50.0, 0.3);
    const Complex B = coeff_B(roots, 50.0, 0.3);
    EXPECT_LE(std::abs(A), 1.0);
    EXPECT_GE(A.real(), 0.0);
    EXPECT_LE(std::abs(A + B), 1.0);
}

TEST(CoeffAB, SymmetricInPositiveRoots) {
    const auto params = oracle::reference_params();
    for (Complex alpha : {Complex(7.0), Complex(7.0, 31.4), Complex(2.0, -90.0)}) {
        auto roots = characteristic_roots(params, alpha);
        auto swapped = roots;
        std::swap(swapped.beta1, swapped.beta2);
        EXPECT_LT(rel(coeff_A(swapped, 50.0, 0.3), coeff_A(roots, 50.0, 0.3)), 1e-12);
        EXPECT_LT(rel(coeff_B(swapped, 50.0, 0.3), coeff_B(roots, 50.0, 0.3)), 1e-12);
    }
}

TEST(CoeffB, RealAndNonNegativeForRealAlpha) {
    const auto params = oracle::reference_params();
    for (double alpha : {0.05, 1.0, 7.0, 60.0, 500.0}) {
        const Complex B = coeff_B(characteristic_roots(params, alpha), 50.0, 0.3);
        EXPECT_LT(std::abs(B.imag()), 1e-12);
        EXPECT_GE(B.real(), 0.0);
    }
}

TEST(CoeffAB, DegenerateRootsSignal) {
    const ClassifiedRoots roots{Complex(3.0), Complex(3.0 + 1e-9), Complex(1.0), Complex(2.0)};
    EXPECT_THROW(coeff_A(roots, 50.0, 0.3), DegenerateRootsError);
    EXPECT_THROW(coeff_B(roots, 50.0, 0.3), DegenerateRootsError);
}

TEST(CoeffC, RealForRealAlphaAndConjugateCovariant) {
    const auto params = oracle::reference_params();
    const auto roots = characteristic_roots(params, 7.0);
    EXPECT_LT(std::abs(coeff_C(roots, params, 3).imag()), 1e-14);
    EXPECT_LT(std::abs(coeff_C(roots, params, 4).imag()), 1e-14);
    const Complex alpha(7.0, 12.0);
    const auto r = characteristic_roots(params, alpha);
    const auto c = characteristic_roots(params, std::conj(alpha));
    for (int j : {3, 4}) {
        EXPECT_LT(rel(coeff_C(c, params, j), std::conj(coeff_C(r, params, j))), 1e-10);
        EXPECT_LT(rel(coeff_D(c, params, j), std::conj(coeff_D(r, params, j))), 1e-10);
    }
}

TEST(CoeffC, DerivativeAgreesWithRationalIdentity) {
    // G'(-beta_j) = P'_alpha(-beta_j) / Q(-beta_j)
    const auto params = oracle::reference_params();
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const Complex alpha = oracle::random_alpha(rng, 0.0, 100.0, 200.0);
        const auto roots = characteristic_roots(params, alpha);
        const auto poly = build_characteristic_quartic(params, alpha);
        for (Complex beta : {roots.beta3, roots.beta4}) {
            const Complex z = -beta;
            const Complex q = (params.eta1 - z) * (params.eta2 + z);
            EXPECT_LT(rel(levy_exponent_derivative(params, z), poly.derivative(z) / q), 1e-9) << alpha;
        }
    }
}

TEST(CoeffD, RelatedToCByEtaRatio) {
    const auto params = oracle::reference_params();
    for (double alpha : {0.5, 7.0, 80.0}) {
        const auto roots = characteristic_roots(params, alpha);
        for (int j : {3, 4}) {
            const Complex beta = j == 3 ? roots.beta3 : roots.beta4;
            const Complex C = coeff_C(roots, params, j);
            const Complex D = coeff_D(roots, params, j);
            EXPECT_LT(rel(D, C * params.eta1 / (params.eta1 + beta)), 1e-14);
            EXPECT_LT(std::abs(D), std::abs(C));
        }
    }
    EXPECT_THROW(coeff_C(characteristic_roots(params, 7.0), params, 2), DomainError);
}

TEST(FptTransform, LaplaceOfBoundedExpectation) {
    // alpha * f1(alpha) = E[exp(-alpha tau_b)] in (0, 1) for real alpha.
    const auto inputs = reference_inputs();
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double alpha = std::pow(10.0, u(rng));
        const Complex value = alpha * fpt_transform(inputs, alpha);
        EXPECT_GT(value.real(), 0.0);
        EXPECT_LT(value.real(), 1.0);
        EXPECT_LT(std::abs(value.imag()), 1e-12);
    }
}

TEST(FptTransform, BrownianSpecialization) {
    auto inputs = reference_inputs();
    inputs.params.lambda = 0.0;
    for (Complex alpha : {Complex(7.0), Complex(7.0, 25.0), Complex(0.4, -3.0)}) {
        const Complex beta = oracle::brownian_root(0.1, 0.2, alpha);
        EXPECT_LT(rel(fpt_transform(inputs, alpha), std::exp(-0.3 * beta) / alpha), 1e-10) << alpha;
    }
}

TEST(FptTransform, MatchesCoefficientForm) {
    // (A + B) / alpha equals the closed form directly.
    const auto inputs = reference_inputs();
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(-2.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double alpha = std::pow(10.0, u(rng));
        const auto roots = characteristic_roots(inputs.params, alpha);
        const Complex via_coeffs = (coeff_A(roots, 50.0, 0.3) + coeff_B(roots, 50.0, 0.3)) / alpha;
        EXPECT_LT(rel(via_coeffs, fpt_transform(inputs, alpha)), 1e-12) << alpha;
    }
}

TEST(FptTransform, RejectsLeftHalfPlane) {
    EXPECT_THROW(fpt_transform(reference_inputs(), Complex(0.0, 1.0)), DomainError);
    EXPECT_THROW(joint_transform(reference_inputs(), Complex(-1.0, 1.0)), DomainError);
}

TEST(FptTransform, BoundedOnRightHalfPlane) {
    const auto inputs = reference_inputs();
    std::mt19937_64 rng(34);
    for (int i = 0; i < 1000; ++i) {
        const Complex alpha = oracle::random_alpha(rng, 0.0, 100.0, 200.0);
        EXPECT_LE(std::abs(alpha * fpt_transform(inputs, alpha)), 1.0 + 1e-12) << alpha;
    }
}

TEST(Transforms, PermutationInvariance) {
    const auto inputs = reference_inputs();
    std::mt19937_64 rng(35);
    for (int i = 0; i < 200; ++i) {
        const Complex alpha = oracle::random_alpha(rng, 0.0, 100.0, 200.0);
        const auto roots = characteristic_roots(inputs.params, alpha);
        const Complex f1 = fpt_transform_from_roots(inputs, alpha, roots);
        const Complex f2 = joint_transform_from_roots(inputs, alpha, roots);
        for (int mask = 1; mask < 4; ++mask) {
            auto shuffled = roots;
            if (mask & 1) std::swap(shuffled.beta1, shuffled.beta2);
            if (mask & 2) std::swap(shuffled.beta3, shuffled.beta4);
            EXPECT_LE(rel(fpt_transform_from_roots(inputs, alpha, shuffled), f1), 1e-12);
            EXPECT_LE(rel(joint_transform_from_roots(inputs, alpha, shuffled), f2), 1e-12);
        }
    }
}

TEST(Transforms, ConjugateSymmetry) {
    const auto inputs = reference_inputs();
    std::mt19937_64 rng(36);
    for (int i = 0; i < 200; ++i) {
        const Complex alpha = oracle::random_alpha(rng, 0.0, 100.0, 200.0);
        EXPECT_LE(rel(fpt_transform(inputs, std::conj(alpha)), std::conj(fpt_transform(inputs, alpha))), 1e-12);
        EXPECT_LE(rel(joint_transform(inputs, std::conj(alpha)), std::conj(joint_transform(inputs, alpha))), 1e-12);
    }
}

TEST(JointTransform, FarThresholdRecoversMarginal) {
    auto inputs = reference_inputs();
    inputs.a = inputs.b - 50.0;
    EXPECT_LE(std::abs(joint_transform(inputs, 7.0) - fpt_transform(inputs, 7.0)), 1e-10);
}

TEST(JointTransform, BrownianCaseHasNoSpuriousTail) {
    auto inputs = reference_inputs();
    inputs.params.lambda = 0.0;
    inputs.a = inputs.b - 50.0;
    EXPECT_LE(std::abs(joint_transform(inputs, 7.0) - fpt_transform(inputs, 7.0)), 1e-10);
    const auto roots = characteristic_roots(inputs.params, 7.0);
    EXPECT_EQ(coeff_C(roots, inputs.params, 4), Complex(0.0));
}

TEST(Transforms, ContinuousAcrossRemovableSingularities) {
    const auto inputs = reference_inputs();
    const auto points = singular_points(inputs.params);
    int right_hits = 0, left_hits = 0;
    for (const Complex star : points) {
        if (star.real() <= 0.0) continue;
        const auto roots = characteristic_roots(inputs.params, star);
        if (std::abs(roots.beta2 - roots.beta1) < degeneracy_threshold(roots.beta1, roots.beta2)) ++right_hits;
        if (std::abs(roots.beta4 - roots.beta3) < degeneracy_threshold(roots.beta3, roots.beta4)) ++left_hits;
        const Complex f1 = fpt_transform(inputs, star);
        const Complex f2 = joint_transform(inputs, star);
        for (int k = 0; k < 10; ++k) {
            const Complex alpha = star + std::polar(1e-4, 2.0 * std::numbers::pi * k / 10.0);
            EXPECT_LT(std::abs(fpt_transform(inputs, alpha) - f1), 1e-6) << star;
            EXPECT_LT(std::abs(joint_transform(inputs, alpha) - f2), 1e-6) << star;
        }
    }
    // Both stable branches are exercised by the reference parameters.
    EXPECT_GE(right_hits, 1);
    EXPECT_GE(left_hits, 1);
}

TEST(FptTransformReal, AgreesWithComplexPathInDouble) {
    const auto inputs = reference_inputs();
    for (double alpha : {0.01, 0.69, 7.0, 55.0, 900.0}) {
        EXPECT_LT(std::abs(fpt_transform_real<double>(inputs, alpha) - fpt_transform(inputs, alpha).real()),
                  1e-12 * std::abs(fpt_transform(inputs, alpha)));
    }
    auto brownian = inputs;
    brownian.params.lambda = 0.0;
    EXPECT_LT(rel(fpt_transform_real<double>(brownian, 3.0), fpt_transform(brownian, 3.0)), 1e-12);
}

TEST(ValidateInputs, RejectsBadLevels) {
    auto inputs = reference_inputs();
    inputs.a = 1.0;
    try {
        validate_inputs(inputs);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "a must satisfy a <= b");
    }
    inputs = reference_inputs();
    inputs.b = 0.0;
    EXPECT_THROW(validate_inputs(inputs), DomainError);
}

}  // namespace
}  // namespace kou
