#include <catch2/catch_amalgamated.hpp>

#include "symred/expr.hpp"
#include "symred/koszul.hpp"

using namespace symred;

TEST_CASE("koszul complex shapes and binomial ranks") {
    RingPtr R = make_ring({"q1", "q2", "p1", "p2"});
    std::vector<MultiPoly> J = {parse_poly("p1*q2", R), parse_poly("p1*q1 - p2*q2", R),
                                parse_poly("p2*q1", R)};
    KoszulCdga k = KoszulCdga::build(R, J, {Rational(0), Rational(0), Rational(0)});
    const FreeComplex& cx = k.complex();
    CHECK(cx.lo() == -3);
    CHECK(cx.hi() == 0);
    CHECK(cx.rank(-3) == 1);
    CHECK(cx.rank(-2) == 3);
    CHECK(cx.rank(-1) == 3);
    CHECK(cx.rank(0) == 1);
    // alternating rank sum vanishes
    std::int64_t chi = 0;
    int sign = 1;
    for (int d = 0; d >= cx.lo(); --d) {
        chi += sign * static_cast<std::int64_t>(cx.rank(d));
        sign = -sign;
    }
    CHECK(chi == 0);
}

TEST_CASE("koszul on a single regular element") {
    RingPtr R = make_ring({"q", "p"});
    KoszulCdga k = KoszulCdga::build(R, {parse_poly("q*p", R)}, {Rational(0)});
    CHECK(k.complex().rank(-1) == 1);
    CHECK(k.complex().rank(0) == 1);
    CHECK(k.tor(1).is_zero);
    CHECK_FALSE(k.tor(0).is_zero);
    CHECK(k.is_complete_intersection());

    auto ci = k.complete_intersection();
    CHECK(ci.codim_route_ran);
    CHECK(ci.codim_value);
    CHECK(ci.level_set_dim == 1);
}

TEST_CASE("koszul on the zero differential") {
    RingPtr R = make_ring({"q", "p"});
    KoszulCdga k = KoszulCdga::build(R, {MultiPoly::zero(R)}, {Rational(0)});
    ModulePresentation t1 = k.tor(1);
    CHECK_FALSE(t1.is_zero);
    REQUIRE(t1.graded);
    CHECK(t1.graded_dimension(0) == 1);
    CHECK(t1.graded_dimension(1) == 2);
    CHECK(t1.graded_dimension(2) == 3);
    CHECK_FALSE(k.is_complete_intersection());
}

TEST_CASE("nonzero level values shift the classical ideal") {
    RingPtr R = make_ring({"q", "p"});
    KoszulCdga k = KoszulCdga::build(R, {parse_poly("q", R), parse_poly("p", R)},
                                     {Rational(1), Rational(0)});
    GroebnerBasis cls = k.classical_truncation();
    CHECK(cls.contains_poly(parse_poly("q - 1", R)));
    CHECK(cls.contains_poly(parse_poly("p", R)));
    CHECK_FALSE(cls.contains_poly(parse_poly("q", R)));
    CHECK(k.is_complete_intersection());
}

TEST_CASE("sl2 level set is not a complete intersection") {
    RingPtr R = make_ring({"q1", "q2", "p1", "p2"});
    std::vector<MultiPoly> J = {parse_poly("p1*q2", R), parse_poly("p1*q1 - p2*q2", R),
                                parse_poly("p2*q1", R)};
    KoszulCdga k = KoszulCdga::build(R, J, {Rational(0), Rational(0), Rational(0)});

    // codimension oracle: three equations cutting codimension two force
    // nonvanishing first homology
    auto ci = k.complete_intersection();
    CHECK(ci.level_set_dim == 2);
    CHECK_FALSE(ci.value);
    CHECK(ci.codim_route_ran);
    CHECK_FALSE(ci.codim_value);

    CHECK_FALSE(k.tor(1).is_zero);
    CHECK(k.tor(2).is_zero);
    CHECK(k.tor(3).is_zero);
    CHECK_FALSE(k.tor(0).is_zero);
}

TEST_CASE("tor(0) matches the classical truncation") {
    RingPtr R = make_ring({"q", "p"});
    KoszulCdga k = KoszulCdga::build(R, {parse_poly("q*p", R)}, {Rational(0)});
    ModulePresentation h0 = k.tor(0);
    GroebnerBasis cls = k.classical_truncation();
    REQUIRE(h0.ambient_rank == 1);
    // mutual reduction: every relation lies in the classical ideal and back
    for (std::size_t j = 0; j < h0.relations.cols(); ++j)
        REQUIRE(cls.contains_poly(h0.relations.at(0, j)));
    GroebnerBasis relGB = buchberger(R, 1, {ModVec{h0.relations.at(0, 0)}},
                                     ModuleOrder{MonomialOrder::degrevlex()});
    for (const auto& el : cls.elements()) REQUIRE(relGB.contains(el));
}

TEST_CASE("tor(0) of the origin has the point hilbert function") {
    RingPtr R = make_ring({"q", "p"});
    KoszulCdga k = KoszulCdga::build(R, {parse_poly("q", R), parse_poly("p", R)},
                                     {Rational(0), Rational(0)});
    ModulePresentation h0 = k.tor(0);
    REQUIRE(h0.graded);
    CHECK(h0.graded_dimension(0) == 1);
    CHECK(h0.graded_dimension(1) == 0);
    CHECK(h0.graded_dimension(2) == 0);
    CHECK(k.is_complete_intersection());
}

TEST_CASE("tor index range is enforced") {
    RingPtr R = make_ring({"q", "p"});
    KoszulCdga k = KoszulCdga::build(R, {parse_poly("q", R)}, {Rational(0)});
    CHECK_THROWS_AS(k.tor(2), ShapeError);
    CHECK_THROWS_AS(KoszulCdga::build(R, {}, {}), ShapeError);
}
