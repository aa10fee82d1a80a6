#include "kou/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kou/errors.hpp"

namespace kou {

Complex evaluate_polynomial(std::span<const Complex> coeffs, Complex z) {
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex evaluate_polynomial_derivative(std::span<const Complex> coeffs, Complex z) {
    Complex acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
}

Complex newton_polish(std::span<const Complex> coeffs, Complex root, int max_steps) {
    Complex best = root;
    double best_res = std::abs(evaluate_polynomial(coeffs, root));
    Complex z = root;
    for (int step = 0; step < max_steps && best_res > 0.0; ++step) {
        const Complex d = evaluate_polynomial_derivative(coeffs, z);
        if (d == 0.0) break;
        z -= evaluate_polynomial(coeffs, z) / d;
        const double res = std::abs(evaluate_polynomial(coeffs, z));
        if (!std::isfinite(res)) break;
        if (res < best_res) {
            best_res = res;
            best = z;
        } else if (res > best_res) {
            break;
        }
    }
    return best;
}

std::vector<Complex> aberth_roots(std::span<const Complex> coeffs, std::span<const Complex> seeds) {
    const std::size_t degree = coeffs.size() - 1;
    if (coeffs.size() < 2 || coeffs.back() == 0.0) {
        throw DomainError("aberth_roots: leading coefficient must be nonzero");
    }
    std::vector<Complex> z(degree);
    if (seeds.size() == degree) {
        std::copy(seeds.begin(), seeds.end(), z.begin());
        // Coincident seeds stall the iteration; nudge duplicates apart.
        for (std::size_t i = 0; i < degree; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (std::abs(z[i] - z[j]) <= 1e-12 * (1.0 + std::abs(z[i]))) {
                    z[i] += Complex(1e-6, 1e-6) * (1.0 + std::abs(z[i]));
                }
            }
        }
    } else {
        // Cauchy bound radius, rotated so no seed lands on the real axis.
        double radius = 0.0;
        for (std::size_t k = 0; k < degree; ++k) {
            radius = std::max(radius, std::abs(coeffs[k] / coeffs.back()));
        }
        radius = 0.5 * (1.0 + radius);
        for (std::size_t k = 0; k < degree; ++k) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(degree) + 0.4;
            z[k] = std::polar(radius, angle);
        }
    }

    constexpr int max_iterations = 500;
    for (int iter = 0; iter < max_iterations; ++iter) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < degree; ++i) {
            const Complex value = evaluate_polynomial(coeffs, z[i]);
            if (value == 0.0) continue;
            const Complex ratio = value / evaluate_polynomial_derivative(coeffs, z[i]);
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < degree; ++j) {
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            }
            const Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (max_step < 1e-15) break;
    }
    for (auto& root : z) root = newton_polish(coeffs, root);
    return z;
}

}  // namespace kou
