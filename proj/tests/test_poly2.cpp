#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dunkl/poly2.hpp"

using namespace dunkl;

namespace {

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

Poly2 random_poly(std::mt19937_64& rng, int max_degree, int terms) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_real_distribution<double> coef(-4.0, 4.0);
    Poly2 p;
    for (int t = 0; t < terms; ++t) {
        const int n = deg(rng);
        std::uniform_int_distribution<int> split(0, n);
        const int j = split(rng);
        p = p + Poly2::monomial(n - j, j, coef(rng));
    }
    return p;
}

}  // namespace

TEST_CASE("parse_poly handles the documented grammar") {
    const Poly2 one = parse_poly("1");
    REQUIRE(one.degree() == 0);
    REQUIRE(close(one.coeff(0, 0), 1.0));

    const Poly2 diff = parse_poly("x1^2 - x2^2");
    REQUIRE(close(diff.coeff(2, 0), 1.0));
    REQUIRE(close(diff.coeff(0, 2), -1.0));
    REQUIRE(diff.degree() == 2);

    const Poly2 mixed = parse_poly("3*x1*x2^3 + 0.5");
    REQUIRE(close(mixed.coeff(1, 3), 3.0));
    REQUIRE(close(mixed.coeff(0, 0), 0.5));

    // '*' and '^1' are optional, whitespace ignored.
    const Poly2 a = parse_poly(" - 2 x1 x2 + x1^1 ");
    REQUIRE(close(a.coeff(1, 1), -2.0));
    REQUIRE(close(a.coeff(1, 0), 1.0));
}

TEST_CASE("parse_poly rejects bad input with a byte offset") {
    REQUIRE_THROWS_AS(parse_poly("x3"), PolyParseError);
    REQUIRE_THROWS_AS(parse_poly("1 +"), PolyParseError);
    REQUIRE_THROWS_AS(parse_poly("x1^"), PolyParseError);
    REQUIRE_THROWS_AS(parse_poly(""), PolyParseError);
    try {
        parse_poly("x1 + y");
        FAIL("expected a parse error");
    } catch (const PolyParseError& e) {
        REQUIRE(e.offset == 5);
    }
    // Exponent above the configured maximum degree.
    REQUIRE_THROWS_AS(parse_poly("x1^65"), PolyParseError);
    REQUIRE_NOTHROW(parse_poly("x1^64"));
}

TEST_CASE("eval_poly matches direct arithmetic") {
    REQUIRE(close(parse_poly("x1^2 - x2^2").eval(1.0, 1.0), 0.0));
    REQUIRE(close(parse_poly("1").eval(-3.7, 12.0), 1.0));
    REQUIRE(close(parse_poly("3*x1*x2^3").eval(2.0, 1.0), 6.0));
}

TEST_CASE("compose_linear matches the documented examples") {
    const Poly2 p = parse_poly("x1^2 - x2^2");
    const Poly2 rot = compose_linear(p, LinearMap2::rotation(std::acos(-1.0) / 2.0));
    REQUIRE(rot.almost_equal(parse_poly("x2^2 - x1^2"), 1e-12));

    const Poly2 q = parse_poly("x1*x2");
    REQUIRE(compose_linear(q, LinearMap2::diag(1.0, -1.0)).almost_equal(parse_poly("-x1*x2"), 1e-12));

    REQUIRE(compose_linear(q, LinearMap2::identity()).almost_equal(q, 1e-12));
}

TEST_CASE("compose_linear with an orthogonal map and its inverse is the identity") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 10; ++it) {
        const Poly2 p = random_poly(rng, 6, 8);
        const double th = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
        const LinearMap2 m = LinearMap2::rotation(th);
        const Poly2 back = compose_linear(compose_linear(p, m), m.transpose());
        REQUIRE(back.almost_equal(p, 1e-12 * std::max(1.0, p.max_abs_coeff())));
    }
}

TEST_CASE("divided_difference documented examples") {
    const double s = 1.0 / std::sqrt(2.0);
    // p = <root, x> maps to the constant 2.
    const Poly2 lin = Poly2::monomial(1, 0, s) + Poly2::monomial(0, 1, s);
    const Poly2 dd = divided_difference(lin, s, s);
    REQUIRE(dd.degree() == 0);
    REQUIRE(close(dd.coeff(0, 0), 2.0));

    REQUIRE(divided_difference(Poly2::constant(3.0), 0.0, 1.0).degree() == -1);
    REQUIRE(divided_difference(parse_poly("x1^2"), 0.0, 1.0).degree() == -1);
}

TEST_CASE("divided_difference identity and degree drop") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int it = 0; it < 12; ++it) {
        const Poly2 p = random_poly(rng, 7, 9);
        const double th = ang(rng);
        const double r1 = std::cos(th), r2 = std::sin(th);
        const Poly2 dd = divided_difference(p, r1, r2);
        REQUIRE(dd.degree() <= std::max(-1, p.degree() - 1));
        // dd * <root, x> + p(sigma x) = p
        const Poly2 lin = Poly2::monomial(1, 0, r1) + Poly2::monomial(0, 1, r2);
        const LinearMap2 sigma = LinearMap2::reflection(2.0 * std::atan2(-r1, r2));
        const Poly2 residual = dd * lin + compose_linear(p, sigma) - p;
        REQUIRE(residual.almost_equal(Poly2::zero(), 1e-12 * std::max(1.0, p.max_abs_coeff())));
    }
}

TEST_CASE("divided_difference rejects non-unit roots") {
    REQUIRE_THROWS_AS(divided_difference(parse_poly("x1"), 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("printer and parser are mutually inverse") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 25; ++it) {
        const Poly2 p = random_poly(rng, 6, 10);
        const Poly2 q = parse_poly(print_poly(p));
        REQUIRE(q.almost_equal(p, 1e-12 * std::max(1.0, p.max_abs_coeff())));
    }
    REQUIRE(print_poly(Poly2::zero()) == "0");
    REQUIRE(parse_poly(print_poly(Poly2::zero())).degree() == -1);
}

TEST_CASE("derivative and homogeneous decomposition") {
    const Poly2 p = parse_poly("2*x1^3 + x1*x2 - 4");
    REQUIRE(p.derivative(1).almost_equal(parse_poly("6*x1^2 + x2"), 1e-12));
    REQUIRE(p.derivative(2).almost_equal(parse_poly("x1"), 1e-12));
    REQUIRE(p.homogeneous_part(3).almost_equal(parse_poly("2*x1^3"), 1e-12));
    REQUIRE(p.homogeneous_part(2).almost_equal(parse_poly("x1*x2"), 1e-12));
    REQUIRE(p.homogeneous_part(1).degree() == -1);
    REQUIRE(!p.is_homogeneous());
    REQUIRE(parse_poly("x1*x2 + x2^2").is_homogeneous());
}

TEST_CASE("arithmetic keeps the representation normalized") {
    const Poly2 p = parse_poly("x1 + x2");
    const Poly2 q = p - p;
    REQUIRE(q.degree() == -1);
    const Poly2 r = p * Poly2::zero();
    REQUIRE(r.degree() == -1);
    const Poly2 prod = parse_poly("x1 - x2") * parse_poly("x1 + x2");
    REQUIRE(prod.almost_equal(parse_poly("x1^2 - x2^2"), 1e-12));
}
