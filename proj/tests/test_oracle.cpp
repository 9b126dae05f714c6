#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "dunkl/oracle.hpp"
#include "dunkl/special.hpp"

using namespace dunkl;

namespace {

const std::vector<DunklContext>& contexts() {
    static const std::vector<DunklContext> ctxs = {
        make_context(2, 0.6, 1.1), make_context(3, 0.8), make_context(4, 0.75, 0.75),
        make_context(5, 1.3),      make_context(6, 0.5, 1.5),
    };
    return ctxs;
}

}  // namespace

TEST_CASE("v_inverse on simple inputs") {
    REQUIRE(v_inverse(make_context(3, 1.2), Poly2::constant(1.0))
                .almost_equal(Poly2::constant(1.0), 1e-14));

    const DunklContext free_ctx = make_context(4, 0.0, 0.0);
    const Poly2 p = parse_poly("x1^3 - 2*x1*x2 + 5");
    REQUIRE(v_inverse(free_ctx, p).almost_equal(p, 1e-12));
    REQUIRE(v_apply(free_ctx, p).almost_equal(p, 1e-12));

    const double beta = 1.1;
    const DunklContext i2 = make_context(2, 0.6, beta);
    REQUIRE(v_inverse(i2, parse_poly("x1"))
                .almost_equal(parse_poly("x1") * (1.0 + 2.0 * beta), 1e-13));
    REQUIRE(v_apply(i2, parse_poly("x1"))
                .almost_equal(parse_poly("x1") * (1.0 / (1.0 + 2.0 * beta)), 1e-13));
}

TEST_CASE("v_apply and v_inverse are mutually inverse on monomials") {
    for (const auto& ctx : contexts()) {
        for (int n = 0; n <= 8; ++n) {
            for (int j = 0; j <= n; ++j) {
                const Poly2 m = Poly2::monomial(n - j, j);
                REQUIRE(v_inverse(ctx, v_apply(ctx, m)).almost_equal(m, 1e-9));
                REQUIRE(v_apply(ctx, v_inverse(ctx, m)).almost_equal(m, 1e-9));
            }
        }
    }
}

TEST_CASE("v_apply intertwines derivatives with Dunkl operators") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (const auto& ctx : contexts()) {
        for (int n = 1; n <= 8; ++n) {
            for (int j = 0; j <= n; ++j) {
                const Poly2 m = Poly2::monomial(n - j, j, coef(rng));
                const Poly2 vp = v_apply(ctx, m);
                REQUIRE(dunkl_t1(ctx, vp).almost_equal(v_apply(ctx, m.derivative(1)), 1e-9));
                REQUIRE(dunkl_t2(ctx, vp).almost_equal(v_apply(ctx, m.derivative(2)), 1e-9));
            }
        }
    }
}

TEST_CASE("v_inverse intertwines Dunkl operators with derivatives") {
    for (const auto& ctx : contexts()) {
        for (int n = 1; n <= 8; ++n) {
            const Poly2 m = Poly2::monomial(n - n / 2, n / 2);
            const Poly2 vi = v_inverse(ctx, m);
            REQUIRE(vi.derivative(1).almost_equal(v_inverse(ctx, dunkl_t1(ctx, m)), 1e-9));
            REQUIRE(vi.derivative(2).almost_equal(v_inverse(ctx, dunkl_t2(ctx, m)), 1e-9));
        }
    }
}

TEST_CASE("kernel_series at z = 0 is 1") {
    for (const auto& ctx : contexts()) {
        REQUIRE(kernel_series(ctx, {0.0, 0.0}, {0.7, -0.3}, 12) == Catch::Approx(1.0));
    }
}

TEST_CASE("kernel_series with zero multiplicity is the exponential partial sum") {
    const DunklContext ctx = make_context(3, 0.0);
    const double z1 = 0.4, z2 = -0.7, w1 = 1.1, w2 = 0.5;
    const double dot = z1 * w1 + z2 * w2;
    for (int N : {0, 1, 4, 9}) {
        double expect = 0.0, term = 1.0;
        for (int n = 0; n <= N; ++n) {
            if (n > 0) term *= dot / n;
            expect += term;
        }
        REQUIRE(kernel_series(ctx, {z1, z2}, {w1, w2}, N) == Catch::Approx(expect).margin(1e-12));
    }
}

TEST_CASE("I2 kernel matches the rank-one integral form") {
    // At z = w = (1,0) the kernel reduces to int exp(v) dmu_beta(v); with
    // beta = 1 that integral is cosh(1).
    const DunklContext ctx = make_context(2, 1.0, 1.0);
    const double val = kernel_series(ctx, {1.0, 0.0}, {1.0, 0.0}, 40);
    REQUIRE(std::abs(val - std::cosh(1.0)) < 1e-10);

    // Same value from quadrature against the mu measure.
    const QuadratureRule mu = jacobi_rule(1.0, 20, BetaVariant::mu);
    double quad = 0.0;
    for (size_t i = 0; i < mu.nodes.size(); ++i) quad += mu.weights[i] * std::exp(mu.nodes[i]);
    REQUIRE(std::abs(val - quad) < 1e-10);
}

TEST_CASE("kernel_series is symmetric in z and w") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(-1.2, 1.2);
    for (const auto& ctx : contexts()) {
        for (int it = 0; it < 6; ++it) {
            const PlanePoint z{coord(rng), coord(rng)};
            const PlanePoint w{coord(rng), coord(rng)};
            const double zw = kernel_series(ctx, z, w, 30);
            const double wz = kernel_series(ctx, w, z, 30);
            REQUIRE(std::abs(zw - wz) <= 1e-10 * std::max(1.0, std::abs(zw)));
        }
    }
}

TEST_CASE("kernel components satisfy the eigen equation") {
    // T_j applied to the degree-n component reproduces w_j times the
    // degree n-1 component.
    const double w1 = 0.8, w2 = -0.5;
    for (const auto& ctx : contexts()) {
        for (int n = 1; n <= 8; ++n) {
            const Poly2 en = kernel_component(ctx, w1, w2, n);
            const Poly2 em = kernel_component(ctx, w1, w2, n - 1);
            REQUIRE(dunkl_t1(ctx, en).almost_equal(em * w1, 1e-9));
            REQUIRE(dunkl_t2(ctx, en).almost_equal(em * w2, 1e-9));
        }
    }
}

TEST_CASE("kernel_series_complex agrees with the real evaluation on the real axis") {
    const DunklContext ctx = make_context(4, 0.6, 1.1);
    const PlanePoint w{0.7, 0.4};
    const std::complex<double> val =
        kernel_series_complex(ctx, {0.5, 0.0}, {-0.3, 0.0}, w, 30);
    REQUIRE(std::abs(val.imag()) < 1e-14);
    REQUIRE(val.real() == Catch::Approx(kernel_series(ctx, {0.5, -0.3}, w, 30)));
}

TEST_CASE("kernel_series rejects a negative truncation") {
    REQUIRE_THROWS_AS(kernel_series(make_context(2, 0.5, 0.5), {0.1, 0.1}, {0.2, 0.2}, -1),
                      std::invalid_argument);
}
