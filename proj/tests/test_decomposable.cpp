#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "jacring/poly_io.hpp"

using namespace jacring;

TEST_CASE("Segre split convention") {
    CHECK(SegreSpec(4).left() == 2);
    CHECK(SegreSpec(4).right() == 2);
    CHECK(SegreSpec(7).left() == 3);
    CHECK(SegreSpec(7).right() == 4);
    CHECK(SegreSpec(0).left() + SegreSpec(0).right() == 0);
}

TEST_CASE("f_v rank at p = d-1 is the single point [F_v]") {
    Zp f(65537);
    auto curve = fermat(2, 5, f);
    auto report = f_v_rank(curve, {f.one(), f.from_int(2), f.from_int(3)}, 4);
    CHECK(report.rank == 1);
    CHECK(report.expected == 1);
    CHECK(report.injective);
}

TEST_CASE("f_v rank frozen values and the zero-direction guard") {
    Zp f(65537);
    Rng rng(5);
    auto quintic = fermat(2, 5, f);
    std::vector<Zp::Elem> v{f.uniform(rng), f.uniform(rng), f.uniform(rng)};
    auto r5 = f_v_rank(quintic, v, 5);
    CHECK(r5.rank == 4);  // s_0 + s_1
    CHECK(r5.injective);

    auto sextic = fermat(2, 6, f);
    auto r8 = f_v_rank(sextic, v, 8);
    CHECK(r8.rank == 16);  // s_2 + s_3 = 6 + 10
    CHECK(r8.injective);

    CHECK_THROWS_AS(f_v_rank(quintic, {f.zero(), f.zero(), f.zero()}, 5), ZeroVectorError);
    CHECK_THROWS_AS(f_v_rank(quintic, v, 3), DegreeOutOfRangeError);
}

TEST_CASE("f_v is injective across the relevant degree window") {
    Zp f(65537);
    Rng rng(6);
    for (int d = 5; d <= 7; ++d) {
        Rng curve_rng = rng.split(static_cast<std::uint64_t>(d));
        auto master = random_smooth_hypersurface(2, d, {65537}, curve_rng);
        auto curve = reduce_mod(master, f);
        for (int p = d - 1; p <= 2 * d - 4; ++p) {
            Rng stream = curve_rng.split(static_cast<std::uint64_t>(p));
            std::vector<Zp::Elem> v{f.uniform(stream), f.uniform(stream), f.uniform(stream)};
            CHECK(f_v_rank(curve, v, p).injective);
        }
    }
}

TEST_CASE("Y membership on Fermat curves") {
    Zp f(65537);
    auto d5 = JacobianRing<Zp>::jacobian(fermat(2, 5, f));
    CHECK(membership_Y(d5, parse_polynomial("x0^2", f, 3)));
    CHECK_FALSE(membership_Y(d5, parse_polynomial("x0*x1", f, 3)));

    auto d7 = JacobianRing<Zp>::jacobian(fermat(2, 7, f));
    CHECK(membership_Y(d7, parse_polynomial("x0^4", f, 3)));
    CHECK(membership_Y(d7, parse_polynomial("x0^3*x1", f, 3)));  // (x^3 y)^2 = x^6 y^2 lies in J

    CHECK_THROWS_AS(membership_Y(d5, GradedPolynomial<Zp>::zero(3, 2, f)), AlphaInIdealError);
    CHECK_THROWS_AS(membership_Y(d5, parse_polynomial("x0^3", f, 3)), DegreeOutOfRangeError);
    auto d4 = JacobianRing<Zp>::jacobian(fermat(2, 4, f));
    CHECK_THROWS_AS(membership_Y(d4, parse_polynomial("x0", f, 3)), PreconditionError);
}

TEST_CASE("Y membership is scale invariant") {
    Zp f(65537);
    auto ring = JacobianRing<Zp>::jacobian(fermat(2, 5, f));
    for (const char* text : {"x0^2", "x0*x1", "x0^2 + x1^2"}) {
        auto alpha = parse_polynomial(text, f, 3);
        bool base = membership_Y(ring, alpha);
        CHECK(membership_Y(ring, alpha.scaled(f.from_int(4321))) == base);
    }
}

TEST_CASE("incidence fiber over x^2 on the Fermat quintic") {
    Zp f(65537);
    auto ring = JacobianRing<Zp>::jacobian(fermat(2, 5, f));
    auto report = incidence_fiber(ring, parse_polynomial("x0^2", f, 3));
    CHECK(report.space_dim == 1);
    CHECK(report.ideal_dim == 0);  // J^2 = 0: the ideal starts in degree d-1
    CHECK(report.kernel_dim == 1);
    CHECK(report.fiber_dim == 0);  // minimal fiber: a single point
    CHECK(report.contains_alpha);
}

TEST_CASE("incidence fiber over x^4 on the Fermat septic") {
    Zp f(65537);
    auto ring = JacobianRing<Zp>::jacobian(fermat(2, 7, f));
    auto report = incidence_fiber(ring, parse_polynomial("x0^4", f, 3));
    // beta with x^4 beta in (x^6, y^6, z^6): exactly the degree-4 monomials
    // with x-exponent >= 2
    CHECK(report.space_dim == 6);
    CHECK(report.kernel_dim == 6);
    CHECK(report.fiber_dim == 5);
    CHECK(report.contains_alpha);

    // (x0 x1 x2^2)^2 has every exponent below 6, so it misses the ideal
    CHECK_THROWS_AS(incidence_fiber(ring, parse_polynomial("x0*x1*x2^2", f, 3)), PreconditionError);
}

TEST_CASE("tangent dimension of Y") {
    Zp f(65537);
    auto d5 = JacobianRing<Zp>::jacobian(fermat(2, 5, f));
    CHECK(tangent_dim_Y(d5, parse_polynomial("x0^2", f, 3)).tangent_dim == 0);

    auto d7 = JacobianRing<Zp>::jacobian(fermat(2, 7, f));
    auto report = tangent_dim_Y(d7, parse_polynomial("x0^4", f, 3));
    CHECK(report.tangent_dim == report.kernel_dim - 1);
    CHECK(report.tangent_dim == 5);
}

TEST_CASE("irreducibility probe: x^2 y^2 is detected as decomposable") {
    Zp f(65537);
    auto p = parse_polynomial("x0^2*x1^2", f, 3);
    auto report = irreducibility_probe(p, 5, Rng(1));
    CHECK(report.verdict == ProbeVerdict::DecomposableDetected);
    CHECK(report.nullspace_dim > 0);
}

TEST_CASE("irreducibility probe: generic dense quartic is irreducible") {
    Zp f(65537);
    Rng rng(2);
    auto p = random_polynomial(2, 4, f, rng);
    auto report = irreducibility_probe(p, 5, Rng(3));
    CHECK(report.verdict == ProbeVerdict::NotDecomposableEvidence);
    CHECK(report.nullspace_dim == 0);
}

TEST_CASE("irreducibility probe never clears an explicit product") {
    Zp f(65537);
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Rng stream = rng.split(static_cast<std::uint64_t>(trial));
        int da = 1 + static_cast<int>(stream.below(3));
        int db = 1 + static_cast<int>(stream.below(3));
        GradedPolynomial<Zp> a(3, da, f), b(3, db, f);
        do {
            a = random_polynomial(2, da, f, stream);
        } while (a.is_zero());
        do {
            b = random_polynomial(2, db, f, stream);
        } while (b.is_zero());
        auto report = irreducibility_probe(a.times(b), 5, stream.split("probe"));
        CHECK(report.verdict != ProbeVerdict::NotDecomposableEvidence);
    }
}

TEST_CASE("irreducibility probe: generic E_v element on the Fermat quintic") {
    Zp f(65537);
    Rng rng(13);
    auto curve = fermat(2, 5, f);
    auto fv = directional_derivative(curve, {f.uniform(rng), f.uniform(rng), f.uniform(rng)});
    auto sample = curve.times(random_polynomial(2, 1, f, rng)).plus(fv.times(random_polynomial(2, 2, f, rng)));
    auto report = irreducibility_probe(sample, 5, Rng(14));
    CHECK(report.verdict == ProbeVerdict::NotDecomposableEvidence);
}

TEST_CASE("irreducibility probe guards") {
    Zp f(65537);
    CHECK_THROWS_AS(irreducibility_probe(GradedPolynomial<Zp>::zero(3, 4, f), 3, Rng(0)), PreconditionError);
    Zp tiny(11);
    auto p = parse_polynomial("x0^2*x1^2", tiny, 3);
    CHECK_THROWS_AS(irreducibility_probe(p, 3, Rng(0)), CharacteristicTooSmallError);
}

TEST_CASE("dimension arithmetic: frozen spot values") {
    auto d3 = dimension_arithmetic_check(3);
    CHECK(d3.all_pass);
    CHECK(d3.items[0].lhs == 2);  // s_2 - s_1 - 1
    CHECK(d3.items[0].rhs == 2);  // (27 - 27 + 4) / 2

    auto d4 = dimension_arithmetic_check(4);
    CHECK(d4.all_pass);
    CHECK(d4.items[1].lhs == 10);  // 2(s_2 - 1)
    CHECK(d4.items[1].rhs == 10);  // (d-2)(d+1)

    auto d6 = dimension_arithmetic_check(6);
    CHECK(d6.all_pass);
    bool found = false;
    for (const auto& item : d6.items)
        if (item.name == "upper-bound-formula") {
            found = true;
            CHECK(item.applicable);
            CHECK(item.lhs == 5);  // 28 - 28 - 1 - 3 + 9
            CHECK(item.rhs == 5);  // (d-1)(d-4)/2
        }
    CHECK(found);
}

TEST_CASE("dimension arithmetic passes for every degree up to 50") {
    for (int d = 3; d <= 50; ++d) CHECK(dimension_arithmetic_check(d).all_pass);
    CHECK_THROWS_AS(dimension_arithmetic_check(2), PreconditionError);
}
