#pragma once

// Dunkl operators T_xi on bivariate polynomials, the Dunkl Laplacian,
// the Fischer bilinear pairing [p,q] = (p(T)q)(0), and the polynomial
// heat semigroup e^{-s Laplacian}.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dihedral.hpp"
#include "poly2.hpp"

namespace dunkl {

// Immutable evaluation context: the group plus per-root cached data.
struct DunklContext {
    DihedralGroup group;

    explicit DunklContext(DihedralGroup g) : group(std::move(g)) {}
};

inline DunklContext make_context(int k, double alpha, double beta = 0.0) {
    return DunklContext(build_group(k, alpha, beta));
}

// T_xi p = d_xi p + sum over positive roots of kappa * <root, xi> *
// (p - p o sigma_root) / <root, x>.
inline Poly2 apply_dunkl(const DunklContext& ctx, double xi1, double xi2, const Poly2& p) {
    if (std::abs(std::hypot(xi1, xi2) - 1.0) > 1e-12)
        throw std::invalid_argument("apply_dunkl: direction must be a unit vector");
    Poly2 out = p.derivative(1) * xi1 + p.derivative(2) * xi2;
    for (const auto& r : ctx.group.roots) {
        const double kap = ctx.group.kappa(r);
        if (kap == 0.0) continue;
        const double proj = r.dot(xi1, xi2);
        if (proj == 0.0) continue;
        out += (kap * proj) * divided_difference(p, r.a1, r.a2);
    }
    return out;
}

inline Poly2 dunkl_t1(const DunklContext& ctx, const Poly2& p) {
    return apply_dunkl(ctx, 1.0, 0.0, p);
}
inline Poly2 dunkl_t2(const DunklContext& ctx, const Poly2& p) {
    return apply_dunkl(ctx, 0.0, 1.0, p);
}

inline Poly2 dunkl_laplacian(const DunklContext& ctx, const Poly2& p) {
    return dunkl_t1(ctx, dunkl_t1(ctx, p)) + dunkl_t2(ctx, dunkl_t2(ctx, p));
}

// Fischer pairing [p, q] = (p(T) q)(0): substitute T_j for x_j in p and
// apply the resulting operator to q. T_1 and T_2 commute, so the graded
// application order below is a convention, not a constraint.
inline double fischer_pair(const DunklContext& ctx, const Poly2& p, const Poly2& q) {
    if (p.is_zero() || q.is_zero()) return 0.0;
    const int dmax = p.degree();
    // T_2^j q for j = 0..dmax, computed once and shared across monomials.
    std::vector<Poly2> t2pow;
    t2pow.reserve(static_cast<size_t>(dmax) + 1);
    t2pow.push_back(q);
    for (int j = 1; j <= dmax; ++j) t2pow.push_back(dunkl_t2(ctx, t2pow.back()));
    double acc = 0.0;
    for (const auto& [e, c] : p.coeffs()) {
        Poly2 cur = t2pow[static_cast<size_t>(e.second)];
        for (int i = 0; i < e.first && !cur.is_zero(); ++i) cur = dunkl_t1(ctx, cur);
        acc += c * cur.coeff(0, 0);
    }
    return acc;
}

// e^{-s Laplacian} p = sum_{n} (-s)^n Laplacian^n p / n!; the sum is finite
// because each Laplacian application lowers degree by 2.
inline Poly2 heat_semigroup(const DunklContext& ctx, double s, const Poly2& p) {
    Poly2 out = p;
    Poly2 cur = p;
    double coef = 1.0;
    const int nmax = p.degree() / 2;
    for (int n = 1; n <= nmax; ++n) {
        cur = dunkl_laplacian(ctx, cur);
        if (cur.is_zero()) break;
        coef *= -s / n;
        out += coef * cur;
    }
    return out;
}

}  // namespace dunkl
