#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "jacring/poly_io.hpp"

using namespace jacring;

TEST_CASE("monomial basis sizes and order") {
    CHECK(monomial_basis(2, 0).size() == 1);
    CHECK(monomial_basis(2, 2).size() == 6);
    CHECK(monomial_basis(3, 3).size() == 20);

    // binomial(n+k, n) across the advertised grid
    for (int n = 0; n <= 5; ++n)
        for (int k = 0; k <= 25; ++k)
            CHECK(static_cast<std::uint64_t>(monomial_basis(n, k).size()) == binomial_u64(n + k, n));

    // graded lex, x0 heaviest first
    auto basis = monomial_basis(2, 2);
    CHECK(basis.front().to_string() == "x0^2");
    CHECK(basis.back().to_string() == "x2^2");
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) CHECK(Monomial::before(basis[i], basis[i + 1]));
}

TEST_CASE("multiplication basics") {
    Rationals q;
    auto f = parse_polynomial("x0 + x1", q, 3);
    auto g = parse_polynomial("x0 - x1", q, 3);
    CHECK(f.times(g).to_string() == "x0^2 - x1^2");

    auto one = GradedPolynomial<Rationals>::monomial(Monomial::unit(3), q.one(), q);
    CHECK(f.times(one).to_string() == f.to_string());

    Zp f7(7);
    auto a = parse_polynomial("x0^3*x1^2", f7, 3);
    auto b = parse_polynomial("x0*x1*x2", f7, 3);
    CHECK(a.times(b).to_string() == "x0^4*x1^3*x2");
}

TEST_CASE("multiplication is commutative and associative on random triples") {
    Rng rng(5);
    Zp f(65537);
    for (int trial = 0; trial < 10; ++trial) {
        Rng stream = rng.split(static_cast<std::uint64_t>(trial));
        auto a = random_polynomial(2, 2, f, stream);
        auto b = random_polynomial(2, 3, f, stream);
        auto c = random_polynomial(2, 1, f, stream);
        CHECK(a.times(b).minus(b.times(a)).is_zero());
        CHECK(a.times(b).times(c).minus(a.times(b.times(c))).is_zero());
    }
}

TEST_CASE("partial derivatives") {
    Rationals q;
    auto f = parse_polynomial("x0^4", q, 3);
    CHECK(f.partial_derivative(0).to_string() == "4*x0^3");
    CHECK(parse_polynomial("x0^3", q, 3).partial_derivative(1).is_zero());

    auto g = parse_polynomial("x0^2*x1^2", q, 3);
    CHECK(g.partial_derivative(0).partial_derivative(1).to_string() == "4*x0*x1");
    CHECK_THROWS_AS(g.partial_derivative(5), PreconditionError);
}

TEST_CASE("mixed partials commute on random polynomials") {
    Rng rng(9);
    Rationals q;
    for (int trial = 0; trial < 8; ++trial) {
        Rng stream = rng.split(static_cast<std::uint64_t>(trial));
        auto f = random_polynomial(3, 4, q, stream);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                auto ij = f.partial_derivative(i).partial_derivative(j);
                auto ji = f.partial_derivative(j).partial_derivative(i);
                CHECK(ij.minus(ji).is_zero());
            }
    }
}

TEST_CASE("euler identity") {
    Rationals q;
    CHECK(euler_check(parse_polynomial("x0^3", q, 3)));
    CHECK(euler_check(parse_polynomial("x0*x1*x2", q, 3)));

    Rng rng(13);
    for (int trial = 0; trial < 6; ++trial) {
        Rng stream = rng.split(static_cast<std::uint64_t>(trial));
        CHECK(euler_check(random_polynomial(3, 6, q, stream)));
    }

    Zp small(5);
    CHECK_THROWS_AS(euler_check(fermat(2, 6, small)), CharacteristicTooSmallError);
}

TEST_CASE("fermat and directional derivatives") {
    Rationals q;
    CHECK(fermat(2, 4, q).to_string() == "x0^4 + x1^4 + x2^4");
    CHECK_THROWS_AS(fermat(2, 1, q), PreconditionError);

    auto f4 = fermat(2, 4, q);
    CHECK(directional_derivative(f4, {q.one(), q.zero(), q.zero()}).to_string() == "4*x0^3");

    auto f5 = fermat(2, 5, q);
    auto dv = directional_derivative(f5, {q.one(), q.one(), q.one()});
    CHECK(dv.to_string() == "5*x0^4 + 5*x1^4 + 5*x2^4");
    CHECK_THROWS_AS(directional_derivative(f5, {q.zero(), q.zero(), q.zero()}), ZeroVectorError);
}

TEST_CASE("polynomial grammar round trip") {
    Rationals q;
    auto f = parse_polynomial("x0^4 + x1^4 + x2^4", q);
    CHECK(f.degree() == 4);
    CHECK(f.nvars() == 3);

    auto g = parse_polynomial(" 2*x0^2*x1 - 1/2 * x1^3 + x2^3 ", q, 3);
    CHECK(g.coefficient(Monomial({2, 1, 0})) == mpq_class(2));
    CHECK(g.coefficient(Monomial({0, 3, 0})) == mpq_class(-1, 2));
    auto reparsed = parse_polynomial(g.to_string(), q, 3);
    CHECK(reparsed.minus(g).is_zero());

    Rng rng(23);
    Zp fp(65537);
    for (int trial = 0; trial < 6; ++trial) {
        Rng stream = rng.split(static_cast<std::uint64_t>(trial));
        auto h = random_polynomial(2, 5, fp, stream);
        auto back = parse_polynomial(h.to_string(), fp, 3);
        CHECK(back.minus(h).is_zero());
    }
}

TEST_CASE("parser rejects malformed and inhomogeneous input") {
    Rationals q;
    CHECK_THROWS_AS(parse_polynomial("x0^2 + x1", q, 3), NotHomogeneousError);
    CHECK_THROWS_AS(parse_polynomial("x0 +", q, 3), ParseError);
    CHECK_THROWS_AS(parse_polynomial("3/0*x0", q, 3), ParseError);
    CHECK_THROWS_AS(parse_polynomial("y0 + y1", q, 3), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x7^2", q, 3), ParseError);  // out of declared range
    CHECK_THROWS_AS(parse_polynomial("", q, 3), ParseError);
}

TEST_CASE("zero polynomial keeps its degree tag") {
    Rationals q;
    auto z = GradedPolynomial<Rationals>::zero(3, 5, q);
    CHECK(z.is_zero());
    CHECK(z.degree() == 5);
    CHECK(z.partial_derivative(0).degree() == 4);
    CHECK(z.to_string() == "0");
}

TEST_CASE("reduction mod p of rational polynomials") {
    Rationals q;
    Zp f(65537);
    auto g = parse_polynomial("1/2*x0^2 + 3*x1^2", q, 3);
    auto gp = reduce_mod(g, f);
    CHECK(gp.coefficient(Monomial({2, 0, 0})) == f.div(1, 2));
    auto bad = parse_polynomial("1/65537*x0", q, 3);
    CHECK_THROWS_AS(reduce_mod(bad, f), PrimeReductionError);
}
