#include "kou/quartic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "kou/errors.hpp"
#include "kou/polynomial.hpp"

namespace kou {

namespace {

bool meets_contract(const QuarticPoly& poly, Complex root) {
    const double scale = std::pow(std::max(1.0, std::abs(root)), 4);
    const double residual = std::abs(poly(root));
    return std::isfinite(residual) && residual <= 1e-10 * poly.max_coefficient() * scale;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Ferrari via the depressed-quartic resolvent. Of the three cube-root
// branches, keep the one with the largest |S| so that q / S stays finite.
std::optional<QuarticRoots> ferrari(const QuarticPoly& poly) {
    const Complex a = poly.c4, b = poly.c3, c = poly.c2, d = poly.c1, e = poly.c0;
    const Complex delta0 = c * c - 3.0 * b * d + 12.0 * a * e;
    const Complex delta1 = 2.0 * c * c * c - 9.0 * b * c * d + 27.0 * b * b * e + 27.0 * a * d * d -
                           72.0 * a * c * e;
    const Complex disc = std::sqrt(delta1 * delta1 - 4.0 * delta0 * delta0 * delta0);
    Complex wide = delta1 + disc;
    if (std::abs(delta1 - disc) > std::abs(wide)) wide = delta1 - disc;
    const Complex q_base = std::pow(0.5 * wide, 1.0 / 3.0);

    const Complex p = (8.0 * a * c - 3.0 * b * b) / (8.0 * a * a);
    const Complex q = (b * b * b - 4.0 * a * b * c + 8.0 * a * a * d) / (8.0 * a * a * a);

    Complex best_s = 0.0;
    for (int k = 0; k < 3; ++k) {
        const Complex branch = q_base * std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
        Complex inner = -2.0 * p / 3.0;
        if (branch != 0.0) inner += (branch + delta0 / branch) / (3.0 * a);
        const Complex s = 0.5 * std::sqrt(inner);
        if (std::abs(s) > std::abs(best_s)) best_s = s;
    }
    if (best_s == 0.0 || !finite(best_s)) return std::nullopt;

    const Complex shift = -b / (4.0 * a);
    const Complex minus_part = 0.5 * std::sqrt(-4.0 * best_s * best_s - 2.0 * p + q / best_s);
    const Complex plus_part = 0.5 * std::sqrt(-4.0 * best_s * best_s - 2.0 * p - q / best_s);
    QuarticRoots roots{shift - best_s - minus_part, shift - best_s + minus_part,
                       shift + best_s - plus_part, shift + best_s + plus_part};
    for (const auto& r : roots) {
        if (!finite(r)) return std::nullopt;
    }
    return roots;
}

// Real part ascending, then imaginary part ascending.
bool root_order(Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
}

}  // namespace

Complex QuarticPoly::operator()(Complex z) const {
    return (((c4 * z + c3) * z + c2) * z + c1) * z + c0;
}

Complex QuarticPoly::derivative(Complex z) const {
    return ((4.0 * c4 * z + 3.0 * c3) * z + 2.0 * c2) * z + c1;
}

double QuarticPoly::max_coefficient() const {
    return std::max({std::abs(c4), std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
}

Complex ResultantPoly::operator()(Complex alpha) const {
    return evaluate_polynomial(coeffs, alpha);
}

std::array<Complex, 6> ResultantPoly::ratio_normalized() const {
    std::array<Complex, 6> out;
    for (std::size_t k = 0; k < 6; ++k) out[k] = coeffs[5 - k] / coeffs[5];
    return out;
}

QuarticPoly build_characteristic_quartic(const KouParams& params, Complex alpha) {
    // (s2 z^2 + mu z + g0)(q0 + q1 z - z^2) + lambda (p eta1 (eta2 + z) + (1-p) eta2 (eta1 - z))
    const double s2 = 0.5 * params.sigma * params.sigma;
    const double mu = params.mu;
    const double q0 = params.eta1 * params.eta2;
    const double q1 = params.eta1 - params.eta2;
    const double lam = params.lambda;
    const Complex g0 = -lam - alpha;
    QuarticPoly poly;
    poly.c4 = -s2;
    poly.c3 = s2 * q1 - mu;
    poly.c2 = s2 * q0 + mu * q1 - g0;
    poly.c1 = mu * q0 + g0 * q1 + lam * (params.p * params.eta1 - (1.0 - params.p) * params.eta2);
    poly.c0 = g0 * q0 + lam * q0;
    return poly;
}

QuarticRoots solve_quartic(const QuarticPoly& poly) {
    if (poly.c4 == 0.0) throw DomainError("solve_quartic: leading coefficient is zero");
    const auto coeffs = poly.ascending();

    QuarticRoots roots{};
    bool ok = false;
    if (auto closed = ferrari(poly)) {
        roots = *closed;
        ok = true;
        for (auto& r : roots) {
            r = newton_polish(coeffs, r, 3);
            ok = ok && meets_contract(poly, r);
        }
    }
    if (!ok) {
        const auto iterated = aberth_roots(coeffs);
        std::copy(iterated.begin(), iterated.end(), roots.begin());
        for (const auto& r : roots) {
            if (!meets_contract(poly, r)) {
                throw NumericalError("solve_quartic: residual contract not met after polishing");
            }
        }
    }
    return roots;
}

ClassifiedRoots classify_roots(const QuarticRoots& roots, Complex alpha) {
    if (!(alpha.real() > 0.0)) {
        throw ClassificationError("classify_roots requires Re(alpha) > 0");
    }
    std::vector<Complex> right, left;
    for (const auto& r : roots) {
        if (r.real() > 0.0) {
            right.push_back(r);
        } else if (r.real() < 0.0) {
            left.push_back(-r);
        }
    }
    if (right.size() != 2 || left.size() != 2) {
        throw ClassificationError("root split across the imaginary axis is not 2/2");
    }
    std::sort(right.begin(), right.end(), root_order);
    std::sort(left.begin(), left.end(), root_order);
    return {right[0], right[1], left[0], left[1]};
}

ClassifiedRoots characteristic_roots(const KouParams& params, Complex alpha) {
    return classify_roots(solve_quartic(build_characteristic_quartic(params, alpha)), alpha);
}

Complex sylvester_resultant(const QuarticPoly& poly) {
    using Wide = std::complex<long double>;
    const std::array<Wide, 5> p{Wide(poly.c4), Wide(poly.c3), Wide(poly.c2), Wide(poly.c1), Wide(poly.c0)};
    const std::array<Wide, 4> dp{4.0L * p[0], 3.0L * p[1], 2.0L * p[2], p[3]};
    Eigen::Matrix<Wide, 7, 7> m = Eigen::Matrix<Wide, 7, 7>::Zero();
    for (int row = 0; row < 3; ++row) {
        for (int k = 0; k < 5; ++k) m(row, row + k) = p[k];
    }
    for (int row = 0; row < 4; ++row) {
        for (int k = 0; k < 4; ++k) m(3 + row, row + k) = dp[k];
    }
    const Wide det = m.determinant();
    return {static_cast<double>(det.real()), static_cast<double>(det.imag())};
}

ResultantPoly resultant_of_family(const QuarticFamily& family) {
    using Wide = std::complex<long double>;
    const std::array<Complex, 6> samples{Complex(0, 0), Complex(1, 0), Complex(-1, 0),
                                         Complex(0, 2), Complex(0, -2), Complex(3, 0)};
    Eigen::Matrix<Wide, 6, 6> vandermonde;
    Eigen::Matrix<Wide, 6, 1> values;
    for (int i = 0; i < 6; ++i) {
        Wide power = 1.0L;
        for (int k = 0; k < 6; ++k) {
            vandermonde(i, k) = power;
            power *= Wide(samples[i]);
        }
        values(i) = Wide(sylvester_resultant(family(samples[i])));
    }
    const Eigen::Matrix<Wide, 6, 1> solved = vandermonde.partialPivLu().solve(values);
    ResultantPoly out;
    for (int k = 0; k < 6; ++k) {
        out.coeffs[k] = {static_cast<double>(solved(k).real()), static_cast<double>(solved(k).imag())};
    }
    return out;
}

ResultantPoly resultant_in_alpha(const KouParams& params) {
    return resultant_of_family([&params](Complex alpha) { return build_characteristic_quartic(params, alpha); });
}

std::vector<Complex> resultant_roots(const ResultantPoly& resultant) {
    if (resultant.coeffs[5] == 0.0) throw NumericalError("resultant is not of degree 5");
    auto roots = aberth_roots(resultant.coeffs);
    for (auto& r : roots) r = newton_polish(resultant.coeffs, r, 4);
    std::sort(roots.begin(), roots.end(), root_order);
    return roots;
}

Complex refine_singular_point(const QuarticFamily& family, Complex alpha) {
    // Newton on P_alpha(z) = 0, dP_alpha/dz(z) = 0 in (z, alpha). Affinity
    // gives dP/dalpha = P_{alpha+1} - P_alpha exactly.
    auto closest_pair_midpoint = [](const QuarticRoots& roots) {
        Complex mid = roots[0];
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (std::abs(roots[i] - roots[j]) < gap) {
                    gap = std::abs(roots[i] - roots[j]);
                    mid = 0.5 * (roots[i] + roots[j]);
                }
            }
        }
        return mid;
    };
    const QuarticPoly base = family(0.0);
    const QuarticPoly unit = family(1.0);
    const QuarticPoly slope{unit.c4 - base.c4, unit.c3 - base.c3, unit.c2 - base.c2, unit.c1 - base.c1,
                            unit.c0 - base.c0};
    Complex z = closest_pair_midpoint(solve_quartic(family(alpha)));
    Complex a = alpha;
    for (int iter = 0; iter < 20; ++iter) {
        const QuarticPoly poly = family(a);
        const Complex f1 = poly(z);
        const Complex f2 = poly.derivative(z);
        const Complex j11 = f2;
        const Complex j12 = slope(z);
        const Complex j21 = ((12.0 * poly.c4 * z + 6.0 * poly.c3) * z + 2.0 * poly.c2);
        const Complex j22 = slope.derivative(z);
        const Complex det = j11 * j22 - j12 * j21;
        if (det == 0.0) break;
        const Complex dz = (f1 * j22 - j12 * f2) / det;
        const Complex da = (j11 * f2 - j21 * f1) / det;
        if (!finite(dz) || !finite(da)) break;
        z -= dz;
        a -= da;
        if (std::abs(da) <= 1e-15 * (1.0 + std::abs(a)) && std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    // Keep the refinement only if it stayed near the resultant root.
    return std::abs(a - alpha) <= 1e-6 * (1.0 + std::abs(alpha)) ? a : alpha;
}

std::vector<Complex> singular_points(const KouParams& params) {
    const QuarticFamily family = [&params](Complex alpha) { return build_characteristic_quartic(params, alpha); };
    auto points = resultant_roots(resultant_of_family(family));
    for (auto& alpha : points) alpha = refine_singular_point(family, alpha);
    return points;
}

double choose_contour(std::span<const Complex> singular, double t, double delta) {
    if (!(t > 0.0) || !(delta > 0.0)) throw DomainError("choose_contour requires t > 0 and delta > 0");
    double u = delta * std::numbers::ln10 / (2.0 * t);
    constexpr double clearance = 1e-6;
    auto blocked = [&](double line) {
        return std::any_of(singular.begin(), singular.end(),
                           [&](Complex s) { return std::abs(s.real() - line) < clearance; });
    };
    while (blocked(u)) u *= 1.01;
    return u;
}

double choose_contour(const KouParams& params, double t, double delta) {
    const auto singular = singular_points(params);
    return choose_contour(singular, t, delta);
}

}  // namespace kou
