#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "kou/model.hpp"

namespace kou {

/// P(z) = c4 z^4 + c3 z^3 + c2 z^2 + c1 z + c0.
struct QuarticPoly {
    Complex c4, c3, c2, c1, c0;

    /// Coefficients by increasing power.
    [[nodiscard]] std::array<Complex, 5> ascending() const { return {c0, c1, c2, c3, c4}; }
    [[nodiscard]] Complex operator()(Complex z) const;
    [[nodiscard]] Complex derivative(Complex z) const;
    [[nodiscard]] double max_coefficient() const;
};

using QuarticRoots = std::array<Complex, 4>;

/// Roots of G(z) = alpha split by half-plane. beta1, beta2 are the roots
/// with positive real part; -beta3, -beta4 the roots with negative real part.
/// Each pair is ordered by real part, ties broken by imaginary part.
struct ClassifiedRoots {
    Complex beta1, beta2, beta3, beta4;
};

/// Degree-5 polynomial r5 a^5 + ... + r0 in the Laplace variable.
struct ResultantPoly {
    std::array<Complex, 6> coeffs;  ///< by increasing power: coeffs[k] = r_k

    [[nodiscard]] Complex operator()(Complex alpha) const;
    /// Coefficients divided by r5, by decreasing power (r5/r5, r4/r5, ...).
    [[nodiscard]] std::array<Complex, 6> ratio_normalized() const;
};

/// P_alpha(z) = (G(z) - alpha)(eta1 - z)(eta2 + z), expanded.
QuarticPoly build_characteristic_quartic(const KouParams& params, Complex alpha);

/// Closed-form (Ferrari) roots followed by Newton polishing. Throws
/// NumericalError if the residual contract
///   |P(r)| <= 1e-10 * max|c_k| * max(1, |r|)^4
/// cannot be met even after an Aberth fallback.
QuarticRoots solve_quartic(const QuarticPoly& poly);

/// Requires Re(alpha) > 0. Throws ClassificationError unless exactly two
/// roots lie on each side of the imaginary axis.
ClassifiedRoots classify_roots(const QuarticRoots& roots, Complex alpha);

/// build -> solve -> classify.
ClassifiedRoots characteristic_roots(const KouParams& params, Complex alpha);

/// Determinant of the 7x7 Sylvester matrix of P and dP/dz.
Complex sylvester_resultant(const QuarticPoly& poly);

/// A family alpha -> P_alpha whose coefficients are affine in alpha.
using QuarticFamily = std::function<QuarticPoly(Complex)>;

/// Res_z(P_alpha, dP_alpha/dz) as a polynomial in alpha, recovered by
/// evaluating the Sylvester determinant at six sample points and interpolating.
ResultantPoly resultant_of_family(const QuarticFamily& family);

/// Resultant for the characteristic quartic of `params`: the plain Sylvester
/// determinant of the expanded (G - alpha) Q, without rescaling.
ResultantPoly resultant_in_alpha(const KouParams& params);

/// Roots of a resultant polynomial, Newton-polished against it.
std::vector<Complex> resultant_roots(const ResultantPoly& resultant);

/// Polishes an approximate singular point by Newton iteration on the pair
/// P_alpha(z) = 0, dP_alpha/dz(z) = 0.
Complex refine_singular_point(const QuarticFamily& family, Complex alpha);

/// The alphas at which P_alpha has a multiple root: resultant roots refined
/// with refine_singular_point.
std::vector<Complex> singular_points(const KouParams& params);

/// u = delta ln(10) / (2t), moved up in 1% steps while the line Re = u lies
/// within 1e-6 of the real part of a singular point.
double choose_contour(const KouParams& params, double t, double delta);

/// Same rule against a precomputed singular set.
double choose_contour(std::span<const Complex> singular, double t, double delta);

}  // namespace kou
