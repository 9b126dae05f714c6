#pragma once

// Dihedral reflection groups I_k acting on the plane: roots, orbits,
// multiplicities, group elements, and the associated weight function.
//
// The group I_k is generated by reflections in k lines through the origin
// at angles pi*j/k, j = 0..k-1. For even k the mirror lines split into two
// conjugacy orbits (even j / odd j) carrying independent multiplicities
// alpha and beta; for odd k there is a single orbit and beta is ignored.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "poly2.hpp"

namespace dunkl {

struct PlanePoint {
    double x1 = 0.0;
    double x2 = 0.0;

    double r() const { return std::hypot(x1, x2); }
    // Angle in (-pi, pi].
    double phi() const {
        if (x1 == 0.0 && x2 == 0.0) return 0.0;
        double a = std::atan2(x2, x1);
        if (a <= -std::numbers::pi) a = std::numbers::pi;
        return a;
    }
    std::complex<double> as_complex() const { return {x1, x2}; }
    static PlanePoint polar(double r, double phi) {
        return {r * std::cos(phi), r * std::sin(phi)};
    }
};

// Positive root of a dihedral group, normalized to unit length with the
// sign chosen so the root's angle lies in [0, pi).
struct Root {
    double a1 = 0.0;
    double a2 = 0.0;
    int orbit = 0;       // 0 = orbit A (multiplicity alpha), 1 = orbit B (beta)
    int mirror_j = 0;    // mirror line angle is pi*j/k

    double dot(double x1, double x2) const { return a1 * x1 + a2 * x2; }
};

struct DihedralGroup {
    int k = 1;
    double alpha = 0.0;  // multiplicity on orbit A (even-j mirrors)
    double beta = 0.0;   // multiplicity on orbit B (odd-j mirrors; even k only)
    std::vector<Root> roots;
    std::vector<LinearMap2> reflections;  // aligned with roots

    bool even() const { return k % 2 == 0; }
    int half_order() const { return k / 2; }  // k' for even k
    double kappa(const Root& r) const { return r.orbit == 0 ? alpha : beta; }
    // gamma = sum of multiplicities over all positive roots.
    double total_multiplicity() const {
        return even() ? half_order() * (alpha + beta) : k * alpha;
    }

    const LinearMap2& reflection(size_t idx) const { return reflections[idx]; }

    // All 2k group elements: rotations by 2*pi*j/k then the k reflections.
    std::vector<LinearMap2> elements() const {
        std::vector<LinearMap2> out;
        out.reserve(static_cast<size_t>(2 * k));
        for (int j = 0; j < k; ++j)
            out.push_back(LinearMap2::rotation(2.0 * std::numbers::pi * j / k));
        for (const auto& s : reflections) out.push_back(s);
        return out;
    }
};

// Build I_k with the given multiplicities. Mirrors at angles pi*j/k carry
// alternating orbit labels: even j -> orbit A (alpha), odd j -> orbit B
// (beta). For odd k every mirror is labeled orbit A.
inline DihedralGroup build_group(int k, double alpha, double beta = 0.0) {
    if (k < 1) throw std::invalid_argument("build_group: k must be >= 1");
    if (alpha < 0.0 || (k % 2 == 0 && beta < 0.0))
        throw std::invalid_argument("build_group: multiplicities must be >= 0");
    DihedralGroup g;
    g.k = k;
    g.alpha = alpha;
    g.beta = (k % 2 == 0) ? beta : 0.0;
    g.roots.reserve(static_cast<size_t>(k));
    g.reflections.reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
        const double mirror = std::numbers::pi * j / k;
        // Root is normal to the mirror line; angle mirror + pi/2 lies in
        // [pi/2, 3pi/2), so flip the second half back into [0, pi).
        double ra = mirror + std::numbers::pi / 2.0;
        if (ra >= std::numbers::pi) ra -= std::numbers::pi;
        Root r;
        r.a1 = std::cos(ra);
        r.a2 = std::sin(ra);
        r.orbit = (k % 2 == 0) ? (j % 2) : 0;
        r.mirror_j = j;
        g.roots.push_back(r);
        g.reflections.push_back(LinearMap2::reflection(2.0 * mirror));
    }
    return g;
}

// omega_kappa(x) = prod over positive roots of |<alpha_root, x>|^{2 kappa}.
// The convention 0^0 = 1 keeps zero multiplicities harmless on mirrors.
inline double weight(const DihedralGroup& g, double x1, double x2) {
    double w = 1.0;
    for (const auto& r : g.roots) {
        const double kap = g.kappa(r);
        if (kap == 0.0) continue;
        const double d = std::abs(r.dot(x1, x2));
        w *= std::pow(d, 2.0 * kap);
    }
    return w;
}

}  // namespace dunkl
