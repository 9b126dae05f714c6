#pragma once

// Ground-truth intertwining operator. v_inverse is the finite operator
// exponential sum_{i,j} x1^i x2^j / (i! j!) (T1^i T2^j p)(0), exact on
// polynomials; v_apply inverts it degree by degree; kernel_series builds
// the Dunkl kernel as sum_n v_apply(<.,w>^n / n!)(z). Everything else in
// the library is tested against these three.
//
// Per-degree matrices are cached per (k, alpha, beta) behind a mutex.
// On homogeneous degree n the basis is x1^{n-j} x2^j, j = 0..n, and the
// functionals p -> (T1^{n-j} T2^j p)(0) are assembled by the row recursion
// u_{n,0} = u_{n-1,0} T1_n, u_{n,j} = u_{n-1,j-1} T2_n, so one pass yields
// the whole v_inverse matrix M_n with row j = u_{n,j} / ((n-j)! j!).

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "dunklops.hpp"

namespace dunkl {

inline constexpr double kSolverCondLimit = 1e12;
inline constexpr int kDefaultKernelTruncation = 40;

namespace detail {

// Matrix of p -> p o M on homogeneous degree n; column l holds the
// coefficients of ((Mx)_1)^{n-l} ((Mx)_2)^l indexed by the power of x2.
inline Eigen::MatrixXd compose_matrix(const LinearMap2& M, int n) {
    const auto pw1 = linear_power_table(M.m00, M.m01, n);
    const auto pw2 = linear_power_table(M.m10, M.m11, n);
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int l = 0; l <= n; ++l) {
        const auto& A = pw1[n - l];
        const auto& B = pw2[l];
        for (size_t l1 = 0; l1 < A.size(); ++l1)
            for (size_t l2 = 0; l2 < B.size(); ++l2)
                C(static_cast<Eigen::Index>(l1 + l2), l) += A[l1] * B[l2];
    }
    return C;
}

struct DegreeSolver {
    Eigen::MatrixXd M;  // v_inverse on homogeneous degree n
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    double cond = 0.0;
};

class GroupSolvers {
  public:
    explicit GroupSolvers(const DihedralGroup& g) : group_(g) {}

    std::shared_ptr<const DegreeSolver> degree(int n) {
        std::lock_guard<std::mutex> lock(mu_);
        while (static_cast<int>(degrees_.size()) <= n) extend_();
        return degrees_[static_cast<size_t>(n)];
    }

  private:
    // Matrix of T_xi restricted to homogeneous degree n (n >= 1): the
    // coordinate derivative plus kappa <root, xi> times the reflection
    // divided difference, the latter assembled as a rotate / shift /
    // rotate-back sandwich shared between the two coordinate directions.
    void t_matrices_(int n, Eigen::MatrixXd& T1, Eigen::MatrixXd& T2) const {
        T1 = Eigen::MatrixXd::Zero(n, n + 1);
        T2 = Eigen::MatrixXd::Zero(n, n + 1);
        for (int l = 0; l < n; ++l) T1(l, l) = n - l;
        for (int l = 1; l <= n; ++l) T2(l - 1, l) = l;
        Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n + 1);
        for (int j = 1; j <= n; j += 2) S(j - 1, j) = 2.0;
        for (const auto& r : group_.roots) {
            const double kap = group_.kappa(r);
            if (kap == 0.0) continue;
            const LinearMap2 R{r.a2, r.a1, -r.a1, r.a2};
            const Eigen::MatrixXd DD =
                compose_matrix(R.transpose(), n - 1) * S * compose_matrix(R, n);
            if (r.a1 != 0.0) T1 += (kap * r.a1) * DD;
            if (r.a2 != 0.0) T2 += (kap * r.a2) * DD;
        }
    }

    void extend_() {
        const int n = static_cast<int>(degrees_.size());
        auto d = std::make_shared<DegreeSolver>();
        if (n == 0) {
            U_ = Eigen::MatrixXd::Ones(1, 1);
            d->M = U_;
        } else {
            Eigen::MatrixXd T1, T2;
            t_matrices_(n, T1, T2);
            Eigen::MatrixXd U(n + 1, n + 1);
            U.row(0) = U_.row(0) * T1;
            U.bottomRows(n) = U_ * T2;
            U_ = U;
            d->M = U;
            double inv_fact_j = 1.0;  // 1 / j!
            for (int j = 0; j <= n; ++j) {
                if (j > 0) inv_fact_j /= j;
                double inv_fact_i = inv_fact_j;  // 1 / ((n-j)! j!)
                for (int i = 1; i <= n - j; ++i) inv_fact_i /= i;
                d->M.row(j) *= inv_fact_i;
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(d->M);
        const auto& sv = svd.singularValues();
        d->cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                          : std::numeric_limits<double>::infinity();
        if (d->cond > kSolverCondLimit)
            throw std::runtime_error("v_apply: degree " + std::to_string(n) +
                                     " system condition number exceeds 1e12");
        d->lu.compute(d->M);
        degrees_.push_back(std::move(d));
    }

    DihedralGroup group_;
    std::mutex mu_;
    std::vector<std::shared_ptr<const DegreeSolver>> degrees_;
    Eigen::MatrixXd U_;  // unscaled functional rows at the highest built degree
};

inline GroupSolvers& group_solvers(const DihedralGroup& g) {
    using Key = std::tuple<int, double, double>;
    static std::mutex map_mu;
    static std::map<Key, std::shared_ptr<GroupSolvers>> cache;
    const Key key{g.k, g.alpha, g.beta};
    std::lock_guard<std::mutex> lock(map_mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_shared<GroupSolvers>(g)).first;
    return *it->second;
}

inline Eigen::VectorXd homogeneous_vector(const Poly2& p, int n) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    for (const auto& [e, v] : p.coeffs())
        if (e.first + e.second == n) c(e.second) = v;
    return c;
}

inline Poly2 vector_to_poly(const Eigen::VectorXd& c, int n) {
    Poly2 out;
    for (int j = 0; j <= n; ++j)
        if (c(j) != 0.0) out += Poly2::monomial(n - j, j, c(j));
    return out;
}

}  // namespace detail

// V^{-1} p: finite, degree-preserving, exact up to rounding.
inline Poly2 v_inverse(const DunklContext& ctx, const Poly2& p) {
    Poly2 out;
    auto& solvers = detail::group_solvers(ctx.group);
    for (int n = 0; n <= p.degree(); ++n) {
        const Eigen::VectorXd c = detail::homogeneous_vector(p, n);
        if (c.isZero(0.0)) continue;
        const auto d = solvers.degree(n);
        out += detail::vector_to_poly(d->M * c, n);
    }
    return out;
}

// V p: inverts v_inverse on each homogeneous component by dense solve.
inline Poly2 v_apply(const DunklContext& ctx, const Poly2& p) {
    Poly2 out;
    auto& solvers = detail::group_solvers(ctx.group);
    for (int n = 0; n <= p.degree(); ++n) {
        const Eigen::VectorXd c = detail::homogeneous_vector(p, n);
        if (c.isZero(0.0)) continue;
        const auto d = solvers.degree(n);
        out += detail::vector_to_poly(d->lu.solve(c), n);
    }
    return out;
}

// Degree-n kernel component V(<.,w>^n / n!) as a polynomial in z.
inline Poly2 kernel_component(const DunklContext& ctx, double w1, double w2, int n) {
    auto& solvers = detail::group_solvers(ctx.group);
    Eigen::VectorXd rhs(n + 1);
    std::vector<double> w1pow(static_cast<size_t>(n) + 1, 1.0);
    std::vector<double> w2pow(static_cast<size_t>(n) + 1, 1.0);
    for (int j = 1; j <= n; ++j) {
        w1pow[j] = w1pow[j - 1] * w1;
        w2pow[j] = w2pow[j - 1] * w2;
    }
    double binom = 1.0, inv_fact = 1.0;  // C(n, j), 1/n!
    for (int j = 1; j <= n; ++j) inv_fact /= j;
    for (int j = 0; j <= n; ++j) {
        rhs(j) = binom * w1pow[n - j] * w2pow[j] * inv_fact;
        binom = binom * (n - j) / (j + 1);
    }
    const auto d = solvers.degree(n);
    return detail::vector_to_poly(d->lu.solve(rhs), n);
}

// Coefficient vectors of V(<.,w>^n/n!) for n = 0..N; entry n holds the
// monomial coefficients indexed by the power of z2. Precomputing these
// once lets the truncated kernel be evaluated at many points cheaply.
inline std::vector<Eigen::VectorXd> kernel_coefficients(const DunklContext& ctx, double w1,
                                                        double w2, int N) {
    if (N < 0) throw std::invalid_argument("kernel_series: N must be >= 0");
    auto& solvers = detail::group_solvers(ctx.group);
    std::vector<double> w1pow(static_cast<size_t>(N) + 1, 1.0);
    std::vector<double> w2pow(static_cast<size_t>(N) + 1, 1.0);
    for (int j = 1; j <= N; ++j) {
        w1pow[j] = w1pow[j - 1] * w1;
        w2pow[j] = w2pow[j - 1] * w2;
    }
    std::vector<Eigen::VectorXd> sols;
    sols.reserve(static_cast<size_t>(N) + 1);
    double inv_fact = 1.0;  // 1/n!
    for (int n = 0; n <= N; ++n) {
        if (n > 0) inv_fact /= n;
        Eigen::VectorXd rhs(n + 1);
        double binom = 1.0;  // C(n, j)
        for (int j = 0; j <= n; ++j) {
            rhs(j) = binom * w1pow[n - j] * w2pow[j] * inv_fact;
            binom = binom * (n - j) / (j + 1);
        }
        sols.push_back(solvers.degree(n)->lu.solve(rhs));
    }
    return sols;
}

template <typename Scalar>
Scalar eval_kernel_coefficients(const std::vector<Eigen::VectorXd>& sols, Scalar z1, Scalar z2) {
    const int N = static_cast<int>(sols.size()) - 1;
    std::vector<Scalar> z1pow(static_cast<size_t>(N) + 1, Scalar(1));
    std::vector<Scalar> z2pow(static_cast<size_t>(N) + 1, Scalar(1));
    for (int j = 1; j <= N; ++j) {
        z1pow[j] = z1pow[j - 1] * z1;
        z2pow[j] = z2pow[j - 1] * z2;
    }
    Scalar total(0);
    for (int n = 0; n <= N; ++n) {
        Scalar block(0);
        for (int j = 0; j <= n; ++j)
            block += sols[static_cast<size_t>(n)](j) * z1pow[n - j] * z2pow[j];
        total += block;
    }
    return total;
}

// Truncated kernel sum_{n<=N} V(<.,w>^n/n!)(z) for real or complex z.
template <typename Scalar>
Scalar kernel_series_eval(const DunklContext& ctx, Scalar z1, Scalar z2, double w1, double w2,
                          int N) {
    return eval_kernel_coefficients<Scalar>(kernel_coefficients(ctx, w1, w2, N), z1, z2);
}

inline double kernel_series(const DunklContext& ctx, PlanePoint z, PlanePoint w,
                            int N = kDefaultKernelTruncation) {
    return kernel_series_eval<double>(ctx, z.x1, z.x2, w.x1, w.x2, N);
}

inline std::complex<double> kernel_series_complex(const DunklContext& ctx,
                                                  std::complex<double> z1,
                                                  std::complex<double> z2, PlanePoint w,
                                                  int N = kDefaultKernelTruncation) {
    return kernel_series_eval<std::complex<double>>(ctx, z1, z2, w.x1, w.x2, N);
}

}  // namespace dunkl
