#pragma once

// Scalar special functions and quadrature rules.
//
// Gauss rules are produced by the Golub-Welsch eigenvalue method from the
// three-term recurrence of the underlying orthogonal polynomials, so
// endpoint singularities of the beta-type densities are absorbed into the
// weights and never sampled. The Humbert Phi2 function is summed by
// total-degree blocks D_n = B_n / (gamma)_n, where the B_n come from the
// generating function prod_i (1 - x_i t)^{-beta_i} = sum_n B_n t^n; the
// blocks satisfy a short recurrence driven by P(t) = prod_i (1 - x_i t)
// and Q(t) = sum_i beta_i x_i prod_{l != i} (1 - x_l t), and dividing by
// the Pochhammer factor on the fly keeps everything in double range.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dihedral.hpp"

namespace dunkl {

inline constexpr int kDefaultJacobiOrder = 48;
inline constexpr int kDefaultSimplexOrder = 32;
inline constexpr double kSeriesTailTol = 1e-18;
inline constexpr int kHumbertMaxDegree = 500;

// Nodes are stored flattened: point i occupies nodes[i*dim .. i*dim+dim).
struct QuadratureRule {
    int dim = 1;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::string descriptor;

    size_t size() const { return weights.size(); }
    double node(size_t i) const { return nodes[i]; }
    const double* point(size_t i) const { return &nodes[i * static_cast<size_t>(dim)]; }
    double total_mass() const {
        double m = 0.0;
        for (double w : weights) m += w;
        return m;
    }
};

namespace detail {

// Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal
// matrix with diagonal a_n and off-diagonal sqrt(b_n); weights come from
// the Christoffel function at each node (see below).
inline QuadratureRule golub_welsch(const std::vector<double>& a, const std::vector<double>& b,
                                   double mu0) {
    const int n = static_cast<int>(a.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) J(i, i) = a[static_cast<size_t>(i)];
    for (int i = 1; i < n; ++i) {
        const double off = std::sqrt(b[static_cast<size_t>(i)]);
        J(i, i - 1) = off;
        J(i - 1, i) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("golub_welsch: eigensolver failed");
    QuadratureRule r;
    r.nodes.resize(static_cast<size_t>(n));
    r.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = es.eigenvalues()(i);
        // Weight through the Christoffel function 1 / sum_j p_j(x)^2 over the
        // orthonormal polynomials. Unlike the squared first eigenvector
        // component this stays accurate for the tiny far-tail weights, where
        // the eigenvector entries sink below eigensolver noise.
        double prev = 0.0;
        double cur = 1.0 / std::sqrt(mu0);
        double sum = cur * cur;
        for (int j = 0; j + 1 < n; ++j) {
            const double off = (j > 0) ? std::sqrt(b[static_cast<size_t>(j)]) : 0.0;
            const double next = ((x - a[static_cast<size_t>(j)]) * cur - off * prev) /
                                std::sqrt(b[static_cast<size_t>(j) + 1]);
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        r.nodes[static_cast<size_t>(i)] = x;
        r.weights[static_cast<size_t>(i)] = 1.0 / sum;
    }
    return r;
}

inline std::mutex& rule_cache_mutex() {
    static std::mutex mu;
    return mu;
}

inline std::shared_ptr<const QuadratureRule> rule_cache_lookup(
    const std::string& key, const std::function<QuadratureRule()>& build) {
    static std::map<std::string, std::shared_ptr<const QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(rule_cache_mutex());
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<const QuadratureRule>(build())).first;
    return it->second;
}

}  // namespace detail

// Gauss rule on [-1,1] for the raw weight (1-x)^a (1+x)^b, a, b > -1.
inline QuadratureRule gauss_jacobi(double a, double b, int order) {
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must be > -1");
    if (order < 1) throw std::invalid_argument("gauss_jacobi: order must be >= 1");
    char key[96];
    std::snprintf(key, sizeof(key), "gj|%.17g|%.17g|%d", a, b, order);
    auto rule = detail::rule_cache_lookup(key, [&] {
        std::vector<double> al(static_cast<size_t>(order));
        std::vector<double> be(static_cast<size_t>(order));
        const double s = a + b;
        al[0] = (b - a) / (s + 2.0);
        be[0] = 0.0;
        for (int n = 1; n < order; ++n) {
            const double d = 2.0 * n + s;
            al[static_cast<size_t>(n)] = (b * b - a * a) / (d * (d + 2.0));
            if (n == 1)
                // Cancelled form; the generic one is 0/0 when a + b = -1.
                be[1] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
            else
                be[static_cast<size_t>(n)] =
                    4.0 * n * (n + a) * (n + b) * (n + s) / (d * d * (d + 1.0) * (d - 1.0));
        }
        const double mu0 = std::exp((s + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                                    std::lgamma(b + 1.0) - std::lgamma(s + 2.0));
        QuadratureRule r = detail::golub_welsch(al, be, mu0);
        r.descriptor = key;
        return r;
    });
    return *rule;
}

// Gauss rule on [0,inf) for the weight x^gamma e^{-x}, gamma > -1.
inline QuadratureRule laguerre_rule(double gamma, int order) {
    if (gamma <= -1.0) throw std::invalid_argument("laguerre_rule: exponent must be > -1");
    if (order < 1) throw std::invalid_argument("laguerre_rule: order must be >= 1");
    char key[64];
    std::snprintf(key, sizeof(key), "lag|%.17g|%d", gamma, order);
    auto rule = detail::rule_cache_lookup(key, [&] {
        std::vector<double> al(static_cast<size_t>(order));
        std::vector<double> be(static_cast<size_t>(order));
        for (int n = 0; n < order; ++n) {
            al[static_cast<size_t>(n)] = 2.0 * n + gamma + 1.0;
            be[static_cast<size_t>(n)] = n * (n + gamma);
        }
        QuadratureRule r = detail::golub_welsch(al, be, std::tgamma(gamma + 1.0));
        r.descriptor = key;
        return r;
    });
    return *rule;
}

enum class BetaVariant { nu, mu };

// Probability rules on [-1,1] for the two beta-type measures:
//   nu: density  Gamma(a+1/2)/(sqrt(pi) Gamma(a)) (1-u^2)^{a-1}
//   mu: density  Gamma(g+1/2)/(sqrt(pi) Gamma(g)) (1+u)(1-u^2)^{g-1}
// Both have total mass exactly 1.
inline QuadratureRule jacobi_rule(double exponent, int order, BetaVariant variant) {
    if (exponent <= 0.0) throw std::invalid_argument("jacobi_rule: exponent must be > 0");
    if (order < 1) throw std::invalid_argument("jacobi_rule: order must be >= 1");
    const double c =
        std::exp(std::lgamma(exponent + 0.5) - std::lgamma(exponent)) / std::sqrt(std::numbers::pi);
    QuadratureRule r = (variant == BetaVariant::nu)
                           ? gauss_jacobi(exponent - 1.0, exponent - 1.0, order)
                           : gauss_jacobi(exponent - 1.0, exponent, order);
    for (double& w : r.weights) w *= c;
    r.descriptor = std::string(variant == BetaVariant::nu ? "nu|" : "mu|") + r.descriptor;
    return r;
}

// Tensor rule on the open simplex T^k = {t_j > 0, sum t_j < 1} for the
// density prod_j t_j^{e_j - 1} (1 - sum t)^{delta - 1}, via the Dirichlet
// substitution t_1 = s_1, t_j = s_j prod_{i<j} (1 - s_i), which sends the
// density to a product of one-dimensional Jacobi weights with exponents
// (e_i - 1) at s = 0 and delta - 1 + sum_{j>i} e_j at s = 1.
inline QuadratureRule simplex_rule(int k, const std::vector<double>& exponents, double delta,
                                   int order) {
    if (k < 1) throw std::invalid_argument("simplex_rule: k must be >= 1");
    if (static_cast<int>(exponents.size()) != k)
        throw std::invalid_argument("simplex_rule: need exactly k exponents");
    for (double e : exponents)
        if (e <= 0.0) throw std::invalid_argument("simplex_rule: exponents must be > 0");
    if (delta <= 0.0) throw std::invalid_argument("simplex_rule: delta must be > 0");
    if (order < 1) throw std::invalid_argument("simplex_rule: order must be >= 1");

    std::vector<QuadratureRule> axes;
    axes.reserve(static_cast<size_t>(k));
    double tail = delta - 1.0;
    for (int i = k - 1; i >= 0; --i) {
        // Axis i weight on [0,1]: s^{e_i-1} (1-s)^{tail}; map to [-1,1]
        // picks up the factor 2^{-(e_i + tail)}.
        const double e = exponents[static_cast<size_t>(i)];
        QuadratureRule ax = gauss_jacobi(tail, e - 1.0, order);
        const double scale = std::pow(2.0, -(e + tail));
        for (size_t q = 0; q < ax.size(); ++q) {
            ax.nodes[q] = 0.5 * (1.0 + ax.nodes[q]);
            ax.weights[q] *= scale;
        }
        axes.push_back(std::move(ax));
        tail += e;
    }
    std::reverse(axes.begin(), axes.end());

    QuadratureRule out;
    out.dim = k;
    size_t total = 1;
    for (const auto& ax : axes) total *= ax.size();
    out.nodes.resize(total * static_cast<size_t>(k));
    out.weights.resize(total);
    std::vector<size_t> idx(static_cast<size_t>(k), 0);
    for (size_t p = 0; p < total; ++p) {
        double w = 1.0;
        double remaining = 1.0;
        for (int i = 0; i < k; ++i) {
            const auto& ax = axes[static_cast<size_t>(i)];
            const double s = ax.nodes[idx[static_cast<size_t>(i)]];
            w *= ax.weights[idx[static_cast<size_t>(i)]];
            out.nodes[p * static_cast<size_t>(k) + static_cast<size_t>(i)] = remaining * s;
            remaining *= 1.0 - s;
        }
        out.weights[p] = w;
        for (int i = k - 1; i >= 0; --i) {
            if (++idx[static_cast<size_t>(i)] < axes[static_cast<size_t>(i)].size()) break;
            idx[static_cast<size_t>(i)] = 0;
        }
    }
    char head[128];
    std::snprintf(head, sizeof(head), "simplex|k=%d|delta=%.17g|order=%d", k, delta, order);
    out.descriptor = head;
    return out;
}

// Modified Bessel function of the first kind by its ascending series,
// summed to a 1e-18 relative tail; intended for |b| <= 50.
inline double bessel_i(double nu, double b) {
    if (nu < 0.0) throw std::invalid_argument("bessel_i: order must be >= 0");
    if (b == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double h = 0.5 * b;
    double term;
    if (h > 0.0)
        term = std::exp(nu * std::log(h) - std::lgamma(nu + 1.0));
    else
        term = std::pow(h, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    const double h2 = h * h;
    for (int n = 1; n < 100000; ++n) {
        term *= h2 / (n * (n + nu));
        sum += term;
        if (std::abs(term) < kSeriesTailTol * std::abs(sum)) break;
    }
    return sum;
}

// Gegenbauer polynomial C_j^{(lambda)}(xi) by the three-term recurrence.
inline double gegenbauer(int j, double lambda, double xi) {
    if (j < 0) throw std::invalid_argument("gegenbauer: degree must be >= 0");
    if (lambda <= 0.0) throw std::invalid_argument("gegenbauer: lambda must be > 0");
    if (j == 0) return 1.0;
    double cm1 = 1.0;
    double c = 2.0 * lambda * xi;
    for (int m = 2; m <= j; ++m) {
        const double next = (2.0 * xi * (m + lambda - 1.0) * c - (m + 2.0 * lambda - 2.0) * cm1) / m;
        cm1 = c;
        c = next;
    }
    return c;
}

namespace detail {

template <typename Scalar>
std::vector<Scalar> poly_mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> r(a.size() + b.size() - 1, Scalar(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Total-degree blocks D_n = B_n / (gamma)_n of the Phi2-type series with
// parameters beta_i and arguments x_i, for n = 0..nmax. The recurrence
// follows from P F' = Q F for F = prod (1 - x_i t)^{-beta_i}:
//   (n+1) D_{n+1} = - sum_{r>=1} p_r (n+1-r) D_{n+1-r} R_r
//                   + sum_{r>=0} q_r D_{n-r} R_{r+1},
// with R_r = prod_{l=1}^{r} 1/(gamma + n + 1 - l).
template <typename Scalar>
std::vector<Scalar> humbert_blocks(const std::vector<double>& betas, double gamma,
                                   const std::vector<Scalar>& xs, int nmax) {
    const int m = static_cast<int>(xs.size());
    if (static_cast<int>(betas.size()) != m)
        throw std::invalid_argument("humbert: betas and xs must have equal length");
    if (gamma <= 0.0) throw std::invalid_argument("humbert: gamma must be > 0");
    std::vector<Scalar> D(static_cast<size_t>(nmax) + 1, Scalar(0));
    D[0] = Scalar(1);
    if (m == 0 || nmax == 0) return D;

    std::vector<Scalar> P{Scalar(1)};
    for (int i = 0; i < m; ++i) P = poly_mul(P, {Scalar(1), -xs[static_cast<size_t>(i)]});
    std::vector<Scalar> Q(static_cast<size_t>(m), Scalar(0));
    for (int i = 0; i < m; ++i) {
        std::vector<Scalar> f{betas[static_cast<size_t>(i)] * xs[static_cast<size_t>(i)]};
        for (int l = 0; l < m; ++l)
            if (l != i) f = poly_mul(f, {Scalar(1), -xs[static_cast<size_t>(l)]});
        for (size_t r = 0; r < f.size(); ++r) Q[r] += f[r];
    }

    std::vector<double> R(static_cast<size_t>(m) + 2, 1.0);
    for (int n = 0; n < nmax; ++n) {
        for (int r = 1; r <= m + 1; ++r)
            R[static_cast<size_t>(r)] = R[static_cast<size_t>(r) - 1] / (gamma + n + 1 - r);
        Scalar acc(0);
        for (int r = 1; r <= std::min(m, n + 1); ++r)
            acc -= P[static_cast<size_t>(r)] * static_cast<double>(n + 1 - r) *
                   D[static_cast<size_t>(n + 1 - r)] * R[static_cast<size_t>(r)];
        for (int r = 0; r <= std::min(m - 1, n); ++r)
            acc += Q[static_cast<size_t>(r)] * D[static_cast<size_t>(n - r)] *
                   R[static_cast<size_t>(r) + 1];
        D[static_cast<size_t>(n) + 1] = acc / static_cast<double>(n + 1);
    }
    return D;
}

// Adaptive block sum of the same series; stops once three consecutive
// blocks fall below the relative tail tolerance.
template <typename Scalar>
Scalar humbert_sum(const std::vector<double>& betas, double gamma, const std::vector<Scalar>& xs,
                   bool* converged = nullptr) {
    const int m = static_cast<int>(xs.size());
    if (converged) *converged = true;
    if (m == 0) return Scalar(1);
    if (static_cast<int>(betas.size()) != m)
        throw std::invalid_argument("humbert: betas and xs must have equal length");
    if (gamma <= 0.0) throw std::invalid_argument("humbert: gamma must be > 0");

    std::vector<Scalar> P{Scalar(1)};
    for (int i = 0; i < m; ++i) P = poly_mul(P, {Scalar(1), -xs[static_cast<size_t>(i)]});
    std::vector<Scalar> Q(static_cast<size_t>(m), Scalar(0));
    for (int i = 0; i < m; ++i) {
        std::vector<Scalar> f{betas[static_cast<size_t>(i)] * xs[static_cast<size_t>(i)]};
        for (int l = 0; l < m; ++l)
            if (l != i) f = poly_mul(f, {Scalar(1), -xs[static_cast<size_t>(l)]});
        for (size_t r = 0; r < f.size(); ++r) Q[r] += f[r];
    }

    // Ring buffer of the last m+1 blocks, win[n % (m+1)] = D_n.
    const int span = m + 1;
    std::vector<Scalar> win(static_cast<size_t>(span), Scalar(0));
    win[0] = Scalar(1);
    Scalar total(1);
    std::vector<double> R(static_cast<size_t>(m) + 2, 1.0);
    int quiet = 0;
    for (int n = 0; n < kHumbertMaxDegree; ++n) {
        for (int r = 1; r <= m + 1; ++r)
            R[static_cast<size_t>(r)] = R[static_cast<size_t>(r) - 1] / (gamma + n + 1 - r);
        Scalar acc(0);
        for (int r = 1; r <= std::min(m, n + 1); ++r)
            acc -= P[static_cast<size_t>(r)] * static_cast<double>(n + 1 - r) *
                   win[static_cast<size_t>((n + 1 - r) % span)] * R[static_cast<size_t>(r)];
        for (int r = 0; r <= std::min(m - 1, n); ++r)
            acc += Q[static_cast<size_t>(r)] * win[static_cast<size_t>((n - r) % span)] *
                   R[static_cast<size_t>(r) + 1];
        const Scalar next = acc / static_cast<double>(n + 1);
        win[static_cast<size_t>((n + 1) % span)] = next;
        total += next;
        if (std::abs(next) < kSeriesTailTol * std::abs(total)) {
            if (++quiet >= 3) return total;
        } else {
            quiet = 0;
        }
    }
    if (converged)
        *converged = false;
    else
        throw std::runtime_error("humbert_phi2: series did not converge within 500 degrees");
    return total;
}

}  // namespace detail

struct HumbertParams {
    std::vector<double> betas;
    double gamma = 1.0;
    std::vector<double> xs;
};

enum class HumbertMethod { series, quadrature };

// Second Humbert function Phi2 of m variables. The series route works for
// any real arguments at desk scale; the quadrature route additionally
// needs gamma - sum(betas) > 0 and betas > 0, in which case it integrates
// C * e^{sum x_j t_j} over the simplex against the Dirichlet density.
inline double humbert_phi2(const HumbertParams& params, HumbertMethod method,
                           int order = kDefaultSimplexOrder) {
    const int m = static_cast<int>(params.xs.size());
    if (static_cast<int>(params.betas.size()) != m)
        throw std::invalid_argument("humbert_phi2: betas and xs must have equal length");
    if (method == HumbertMethod::series) {
        double sx = 0.0;
        for (double x : params.xs) sx += std::abs(x);
        if (sx > 40.0)
            throw std::invalid_argument("humbert_phi2: series arguments outside desk scale");
        return detail::humbert_sum<double>(params.betas, params.gamma, params.xs);
    }
    double sb = 0.0;
    for (double b : params.betas) {
        if (b <= 0.0) throw std::invalid_argument("humbert_phi2: quadrature needs betas > 0");
        sb += b;
    }
    const double delta = params.gamma - sb;
    if (delta <= 0.0)
        throw std::invalid_argument("humbert_phi2: quadrature needs gamma - sum(betas) > 0");
    double lc = std::lgamma(params.gamma) - std::lgamma(delta);
    for (double b : params.betas) lc -= std::lgamma(b);
    const double C = std::exp(lc);
    const QuadratureRule rule = simplex_rule(m, params.betas, delta, order);
    double acc = 0.0;
    for (size_t i = 0; i < rule.size(); ++i) {
        const double* t = rule.point(i);
        double e = 0.0;
        for (int j = 0; j < m; ++j) e += params.xs[static_cast<size_t>(j)] * t[j];
        acc += rule.weights[i] * std::exp(e);
    }
    return C * acc;
}

// Exponents a_j = r cos((q + 2 pi j)/k), j = 0..k-1, optionally followed
// by the linear term a_k; these drive every simplex-type kernel formula.
struct SimplexIntegrand {
    double xi = 1.0;
    double q = 0.0;
    std::vector<double> a;
    bool has_ak = false;

    // v cos(phi1) cos(phi2) + u sin(phi1) sin(phi2), the bilinear angle
    // coupling; always in [-1,1] for u, v in [-1,1].
    static double xi_uv(double u, double v, double phi1, double phi2) {
        return v * std::cos(phi1) * std::cos(phi2) + u * std::sin(phi1) * std::sin(phi2);
    }

    static SimplexIntegrand build(int k, double r, double xi_in) {
        SimplexIntegrand s;
        s.xi = std::clamp(xi_in, -1.0, 1.0);
        s.q = std::acos(s.xi);
        s.a.resize(static_cast<size_t>(k));
        for (int j = 0; j < k; ++j)
            s.a[static_cast<size_t>(j)] =
                r * std::cos((s.q + 2.0 * std::numbers::pi * j) / k);
        return s;
    }

    void append_ak(double ak) {
        a.push_back(ak);
        has_ak = true;
    }
};

// Dihedral series f_{2k,lambda}(b, xi, t): Gegenbauer sum over j of
// ((j+lambda)/lambda) C_j^{(lambda)}(xi) g_j(b,t), where g_j fuses the
// normalizing power (2/b)^{k lambda} into the Bessel series so the b -> 0
// limit is finite:
//   g_j = Gamma(k lambda + 1) sum_n (b/2)^{2n+kj} t^{2n+kj+k lambda}
//                                    / (n! Gamma(n + kj + k lambda + 1)).
inline double f_series(int k, double lambda, double b, double xi, double t) {
    if (k < 2) throw std::invalid_argument("f_series: k must be >= 2");
    if (lambda <= 0.0) throw std::invalid_argument("f_series: lambda must be > 0");
    if (b < 0.0 || t < 0.0) throw std::invalid_argument("f_series: b and t must be >= 0");
    if (xi < -1.0 || xi > 1.0) throw std::invalid_argument("f_series: xi must be in [-1,1]");
    const double kl = k * lambda;
    if (t == 0.0) return 0.0;  // k lambda > 0, so every term carries t^{k lambda}
    if (b == 0.0) return std::pow(t, kl);
    const double lg_head = std::lgamma(kl + 1.0);
    const double lh = std::log(0.5 * b);
    const double lt = std::log(t);
    const double ratio_base = 0.25 * b * b * t * t;
    double sum = 0.0;
    double cjm1 = 0.0, cj = 1.0;  // Gegenbauer C_{j-1}, C_j
    int quiet = 0;
    for (int j = 0; j < 2000; ++j) {
        if (j == 1) {
            cjm1 = cj;
            cj = 2.0 * lambda * xi;
        } else if (j >= 2) {
            const double next =
                (2.0 * xi * (j + lambda - 1.0) * cj - (j + 2.0 * lambda - 2.0) * cjm1) / j;
            cjm1 = cj;
            cj = next;
        }
        const double kj = static_cast<double>(k) * j;
        double term = std::exp(lg_head + kj * lh + (kj + kl) * lt - std::lgamma(kj + kl + 1.0));
        double g = term;
        for (int n = 1; n < 100000; ++n) {
            term *= ratio_base / (n * (n + kj + kl));
            g += term;
            if (std::abs(term) < kSeriesTailTol * std::abs(g)) break;
        }
        const double contrib = (j + lambda) / lambda * cj * g;
        sum += contrib;
        if (std::abs(contrib) < kSeriesTailTol * std::abs(sum) && j >= 1) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    return sum;
}

// The t = 1 value through the shifted Humbert identity:
// f(b, xi, 1) = e^{b_0} Phi2^{(k-1)}(lambda..; k lambda; b_j - b_0) with
// b_j = b cos((q - 2 j pi)/k).
inline double f_humbert(int k, double lambda, double b, double xi,
                        HumbertMethod method = HumbertMethod::series) {
    if (k < 2) throw std::invalid_argument("f_humbert: k must be >= 2");
    if (lambda <= 0.0) throw std::invalid_argument("f_humbert: lambda must be > 0");
    const SimplexIntegrand s = SimplexIntegrand::build(k, b, xi);
    HumbertParams hp;
    hp.gamma = k * lambda;
    hp.betas.assign(static_cast<size_t>(k) - 1, lambda);
    hp.xs.resize(static_cast<size_t>(k) - 1);
    for (int j = 1; j < k; ++j)
        hp.xs[static_cast<size_t>(j) - 1] = s.a[static_cast<size_t>(j)] - s.a[0];
    return std::exp(s.a[0]) * humbert_phi2(hp, method);
}

// Denominator (S+s)^k - 2 b^k xi + (s-S)^k of the Laplace closed form,
// optionally via its factorization 2^k prod_l (s - b cos((q + 2 pi l)/k)).
inline double f_laplace_denominator(int k, double b, double xi, double s, bool factored) {
    const double S = std::sqrt(std::max(0.0, (s - b) * (s + b)));
    if (!factored)
        return std::pow(S + s, k) - 2.0 * std::pow(b, k) * xi + std::pow(s - S, k);
    const SimplexIntegrand si = SimplexIntegrand::build(k, b, xi);
    double prod = 1.0;
    for (double a : si.a) prod *= s - a;
    return std::ldexp(prod, k);
}

// Laplace transform in t of f_{2k,lambda}(b, xi, .), valid for s > b:
// Gamma(k lambda + 1) 2^{k lambda} / S * ((S+s)^k - (s-S)^k) / D^{lambda+1}
// with S = sqrt(s^2 - b^2) and D the denominator above (evaluated in
// factored form for robustness near s = b).
inline double f_laplace(int k, double lambda, double b, double xi, double s) {
    if (k < 1) throw std::invalid_argument("f_laplace: k must be >= 1");
    if (lambda <= 0.0) throw std::invalid_argument("f_laplace: lambda must be > 0");
    if (b < 0.0) throw std::invalid_argument("f_laplace: b must be >= 0");
    if (s <= b) throw std::invalid_argument("f_laplace: requires s > b");
    const double kl = k * lambda;
    if (b == 0.0) return std::exp(std::lgamma(kl + 1.0) - (kl + 1.0) * std::log(s));
    const double S = std::sqrt((s - b) * (s + b));
    const double num = std::pow(S + s, k) - std::pow(s - S, k);
    const double D = f_laplace_denominator(k, b, xi, s, true);
    return std::tgamma(kl + 1.0) * std::pow(2.0, kl) / S * num / std::pow(D, lambda + 1.0);
}

}  // namespace dunkl
