// Gaussian-weighted integration against the dihedral weight function and the
// Dunkl transform built on top of it.
//
// The plane integrals all have the shape
//
//     integral f(x) exp(-|x|^2 / 2) w_k(x) dx,
//
// where w_k(x) = prod_{roots} |<root, x>|^{2 kappa}. In polar coordinates the
// weight splits into r^{2 gamma} (gamma = total multiplicity) times a purely
// angular factor, so the rule is a tensor product of
//
//   * a radial generalized Gauss-Laguerre rule after rho = r^2 / 2, which
//     absorbs r^{1 + 2 gamma} exp(-r^2 / 2) exactly, and
//   * per-sector Gauss-Jacobi rules in the angle. The angular factor is
//     |sin(kt th)|^{2a} |cos(kt th)|^{2b} / 4^{(kt - 1)(a + b)} with kt the
//     number of mirror pairs, and each sector between consecutive multiples
//     of pi / (2 kt) maps onto a (1-x)^{a-1/2} (1+x)^{b-1/2} integral.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dunkl/dihedral.hpp"
#include "dunkl/dunklops.hpp"
#include "dunkl/oracle.hpp"
#include "dunkl/poly2.hpp"
#include "dunkl/special.hpp"

namespace dunkl {

inline constexpr int kDefaultRadialOrder = 48;
inline constexpr int kDefaultAngularOrder = 32;
inline constexpr double kDefaultTransformRadius = 12.0;

// Quadrature in the angle th over [0, 2 pi) against the angular factor of
// w_k(r cos th, r sin th) = r^{2 gamma} * (that factor). Weights carry every
// constant, so summing f(theta_i) w_i approximates the weighted integral.
inline QuadratureRule angular_weight_rule(const DihedralGroup& g, int order = kDefaultAngularOrder) {
    const int kt = g.even() ? g.half_order() : g.k;
    const double ea = g.alpha;
    const double eb = g.even() ? g.beta : 0.0;
    const double pi = std::acos(-1.0);
    // 2^{2(1-kt)(ea+eb)} from writing the root product as sin/cos of kt*th.
    const double fold = std::pow(2.0, 2.0 * (1.0 - kt) * (ea + eb));
    QuadratureRule out;
    out.dim = 1;
    out.descriptor = "angular(k=" + std::to_string(g.k) + ")";
    for (int m = 0; m < 4 * kt; ++m) {
        // Within sector m the sine factor vanishes at the left edge when m is
        // even, the cosine factor when m is odd; swap exponents accordingly.
        const double a = (m % 2 == 0) ? ea : eb;
        const double b = (m % 2 == 0) ? eb : ea;
        const QuadratureRule gj = gauss_jacobi(a - 0.5, b - 0.5, order);
        const double scale = fold * std::pow(2.0, -a - b - 1.0) / kt;
        for (int i = 0; i < gj.size(); ++i) {
            const double phi = std::acos(std::min(1.0, std::max(-1.0, gj.node(i))));
            out.nodes.push_back((m * pi + phi) / (2.0 * kt));
            out.weights.push_back(scale * gj.weights[static_cast<size_t>(i)]);
        }
    }
    return out;
}

// Quadrature in r over (0, R] against r^{1 + 2 gamma} exp(-r^2 / 2) dr.
// Nodes past the truncation radius are dropped, weights are kept as-is; the
// discarded Gaussian tail is negligible for every radius allowed here.
inline QuadratureRule radial_weight_rule(double gamma, int order = kDefaultRadialOrder,
                                         double radius = 0.0) {
    const QuadratureRule lag = laguerre_rule(gamma, order);
    const double scale = std::pow(2.0, gamma);
    QuadratureRule out;
    out.dim = 1;
    out.descriptor = "radial(gamma=" + std::to_string(gamma) + ")";
    for (int i = 0; i < lag.size(); ++i) {
        const double r = std::sqrt(2.0 * lag.node(i));
        if (radius > 0.0 && r > radius) continue;
        out.nodes.push_back(r);
        out.weights.push_back(scale * lag.weights[static_cast<size_t>(i)]);
    }
    return out;
}

// integral f(x1, x2) exp(-|x|^2 / 2) w_k(x) dx over the plane.
inline double gauss_weighted_integral(const DihedralGroup& g,
                                      const std::function<double(double, double)>& f,
                                      int radial_order = kDefaultRadialOrder,
                                      int angular_order = kDefaultAngularOrder) {
    const QuadratureRule rad = radial_weight_rule(g.total_multiplicity(), radial_order);
    const QuadratureRule ang = angular_weight_rule(g, angular_order);
    double total = 0.0;
    for (size_t j = 0; j < ang.size(); ++j) {
        const double th = ang.node(j);
        const double c = std::cos(th), s = std::sin(th);
        double inner = 0.0;
        for (size_t i = 0; i < rad.size(); ++i) {
            const double r = rad.node(i);
            inner += rad.weights[i] * f(r * c, r * s);
        }
        total += ang.weights[j] * inner;
    }
    return total;
}

// Mass of the Gaussian against the weight: c_k = integral exp(-|x|^2/2) w_k dx.
// The radial rule integrates its own weight exactly, so only the angular
// order matters, and that converges geometrically.
inline double macdonald_constant(const DihedralGroup& g, int radial_order = kDefaultRadialOrder,
                                 int angular_order = kDefaultAngularOrder) {
    const QuadratureRule rad = radial_weight_rule(g.total_multiplicity(), radial_order);
    const QuadratureRule ang = angular_weight_rule(g, angular_order);
    return rad.total_mass() * ang.total_mass();
}

// Fischer pairing computed through the Macdonald integral formula:
// [p, q] = c_k^{-1} integral (H p)(x) (H q)(x) exp(-|x|^2/2) w_k dx where
// H = heat_semigroup(1/2). Used as an independent cross-check of the
// operator-based pairing.
inline double fischer_pair_integral(const DunklContext& ctx, const Poly2& p, const Poly2& q,
                                    int radial_order = kDefaultRadialOrder,
                                    int angular_order = kDefaultAngularOrder) {
    const Poly2 hp = heat_semigroup(ctx, 0.5, p);
    const Poly2 hq = heat_semigroup(ctx, 0.5, q);
    const double ck = macdonald_constant(ctx.group, radial_order, angular_order);
    const double num = gauss_weighted_integral(
        ctx.group, [&](double x1, double x2) { return hp.eval(x1, x2) * hq.eval(x1, x2); },
        radial_order, angular_order);
    return num / ck;
}

// Gaussian pairing of a polynomial against the kernel:
//
//   c_k^{-1} integral (H p)(x) E(x, y) exp(-|x|^2/2) w_k(x) dx
//          = exp(|y|^2 / 2) p(y),  H = heat_semigroup(1/2).
//
// The kernel is the truncated oracle series, accurate here because the
// Gaussian suppresses the radii at which the truncation error shows up.
inline double gauss_kernel_pairing(const DunklContext& ctx, const Poly2& p, double y1, double y2,
                                   int truncation = kDefaultKernelTruncation,
                                   int radial_order = kDefaultRadialOrder,
                                   int angular_order = kDefaultAngularOrder) {
    const Poly2 hp = heat_semigroup(ctx, 0.5, p);
    const auto sols = kernel_coefficients(ctx, y1, y2, truncation);
    const double ck = macdonald_constant(ctx.group, radial_order, angular_order);
    const double num = gauss_weighted_integral(
        ctx.group,
        [&](double x1, double x2) {
            return hp.eval(x1, x2) * eval_kernel_coefficients<double>(sols, x1, x2);
        },
        radial_order, angular_order);
    return num / ck;
}

// Dunkl transform of f, truncated to the ball |x| <= radius:
//
//   F(y) = c_k^{-1} integral_{|x| <= R} f(x) E(-i x, y) w_k(x) dx.
//
// The integrand is rewritten as [r^{1+2 gamma} e^{-r^2/2}] * [f e^{r^2/2}]
// so the radial Laguerre rule applies; f must decay like a Gaussian for the
// compensated factor to stay bounded, which holds for the transform's
// intended domain. The truncation keeps exp(r^2/2) well inside range before
// it is ever evaluated.
inline std::complex<double> dunkl_transform(const DihedralGroup& g,
                                            const std::function<double(double, double)>& f,
                                            double y1, double y2,
                                            double radius = kDefaultTransformRadius,
                                            int truncation = kDefaultKernelTruncation,
                                            int radial_order = kDefaultRadialOrder,
                                            int angular_order = kDefaultAngularOrder) {
    if (radius < 8.0)
        throw std::invalid_argument("dunkl_transform: truncation radius must be at least 8");
    DunklContext ctx = make_context(g.k, g.alpha, g.beta);
    const auto sols = kernel_coefficients(ctx, y1, y2, truncation);
    const QuadratureRule rad = radial_weight_rule(g.total_multiplicity(), radial_order, radius);
    const QuadratureRule ang = angular_weight_rule(g, angular_order);
    const double ck = macdonald_constant(g, radial_order, angular_order);
    std::complex<double> total(0.0, 0.0);
    for (size_t j = 0; j < ang.size(); ++j) {
        const double th = ang.node(j);
        const double c = std::cos(th), s = std::sin(th);
        std::complex<double> inner(0.0, 0.0);
        for (size_t i = 0; i < rad.size(); ++i) {
            const double r = rad.node(i);
            const double x1 = r * c, x2 = r * s;
            const std::complex<double> kernel = eval_kernel_coefficients<std::complex<double>>(
                sols, std::complex<double>(0.0, -x1), std::complex<double>(0.0, -x2));
            inner += rad.weights[i] *
                     (f(x1, x2) * std::exp(0.5 * r * r)) * kernel;
        }
        total += ang.weights[j] * inner;
    }
    return total / ck;
}

}  // namespace dunkl
