#pragma once

#include <complex>
#include <span>
#include <vector>

namespace kou {

using Complex = std::complex<double>;

/// Horner evaluation; coefficients ordered by increasing power.
Complex evaluate_polynomial(std::span<const Complex> coeffs, Complex z);

/// Derivative at z, same coefficient order.
Complex evaluate_polynomial_derivative(std::span<const Complex> coeffs, Complex z);

/// All roots of a polynomial of degree coeffs.size()-1 (leading coefficient
/// nonzero) by simultaneous Aberth-Ehrlich iteration. `seeds`, if non-empty,
/// must hold one starting point per root.
std::vector<Complex> aberth_roots(std::span<const Complex> coeffs,
                                  std::span<const Complex> seeds = {});

/// Newton refinement of one root. Stops after max_steps or when the residual
/// stops decreasing and returns the iterate with the smallest |P|.
Complex newton_polish(std::span<const Complex> coeffs, Complex root, int max_steps = 3);

}  // namespace kou
