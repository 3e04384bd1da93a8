#include <catch2/catch_amalgamated.hpp>

#include "symred/chain.hpp"
#include "symred/expr.hpp"

using namespace symred;

namespace {

PolyMatrix mat1(const RingPtr& R, const std::string& e) {
    PolyMatrix m(R, 1, 1);
    m.at(0, 0) = parse_poly(e, R);
    return m;
}

} // namespace

TEST_CASE("complex construction enforces d after d = 0") {
    RingPtr R = make_ring({"q", "p"});
    SECTION("valid two-term complex") {
        FreeComplex cx = FreeComplex::make(R, -1, {1, 1}, {mat1(R, "q*p")});
        CHECK(cx.valid());
        CHECK(cx.lo() == -1);
        CHECK(cx.hi() == 0);
    }
    SECTION("q then p is rejected") {
        ComplexViolation v;
        FreeComplex cx = FreeComplex::make(R, -2, {1, 1, 1}, {mat1(R, "q"), mat1(R, "p")}, {}, &v);
        CHECK_FALSE(cx.valid());
        CHECK(v.entry == parse_poly("q*p", R));
        CHECK_THROWS_AS(
            FreeComplex::make(R, -2, {1, 1, 1}, {mat1(R, "q"), mat1(R, "p")}), ValidationError);
    }
    SECTION("constraints relax the check") {
        // composite is qp, zero modulo the ideal (qp)
        FreeComplex cx = FreeComplex::make(R, -2, {1, 1, 1}, {mat1(R, "q"), mat1(R, "p")},
                                           {parse_poly("q*p", R)});
        CHECK(cx.valid());
    }
}

TEST_CASE("homology of small complexes") {
    RingPtr R = make_ring({"q", "p"});
    FreeComplex cx = FreeComplex::make(R, -1, {1, 1}, {mat1(R, "q*p")});
    SECTION("cokernel is the hypersurface ring") {
        ModulePresentation h0 = cx.homology(0);
        CHECK_FALSE(h0.is_zero);
        // relations of the single generator are exactly the ideal (qp)
        REQUIRE(h0.ambient_rank == 1);
        GroebnerBasis relGB =
            buchberger(R, 1, {ModVec{parse_poly("q*p", R)}}, ModuleOrder{MonomialOrder::degrevlex()});
        REQUIRE(h0.relations.cols() == 1);
        CHECK(relGB.contains(ModVec{h0.relations.at(0, 0)}));
    }
    SECTION("kernel vanishes for a nonzerodivisor") {
        ModulePresentation h1 = cx.homology(-1);
        CHECK(h1.is_zero);
    }
    SECTION("degree out of range") { CHECK_THROWS_AS(cx.homology(2), ShapeError); }
}

TEST_CASE("homology is order independent on small instances") {
    RingPtr R = make_ring({"q", "p"});
    PolyMatrix d(R, 1, 2);
    d.at(0, 0) = parse_poly("q^2", R);
    d.at(0, 1) = parse_poly("q*p", R);
    FreeComplex cx = FreeComplex::make(R, -1, {2, 1}, {d});
    ModulePresentation a = cx.homology(-1, MonomialOrder::degrevlex());
    ModulePresentation b = cx.homology(-1, MonomialOrder::lex());
    CHECK(a.is_zero == b.is_zero);
    ModulePresentation a0 = cx.homology(0, MonomialOrder::degrevlex());
    ModulePresentation b0 = cx.homology(0, MonomialOrder::lex());
    CHECK(a0.is_zero == b0.is_zero);
}

TEST_CASE("mapping cone") {
    RingPtr R = make_ring({"q", "p"});
    FreeComplex pt = FreeComplex::make(R, 0, {1}, {});
    SECTION("cone of the identity is acyclic") {
        std::map<int, PolyMatrix> comps;
        comps[0] = PolyMatrix::identity(R, 1);
        ChainMorphism f = ChainMorphism::make(pt, pt, comps);
        FreeComplex c = cone(f);
        CHECK(c.valid());
        for (int i = c.lo(); i <= c.hi(); ++i) REQUIRE(c.homology(i).is_zero);
    }
    SECTION("cone of the zero map has homology in two degrees") {
        std::map<int, PolyMatrix> comps;
        comps[0] = PolyMatrix::zero(R, 1, 1);
        ChainMorphism f = ChainMorphism::make(pt, pt, comps);
        FreeComplex c = cone(f);
        int nonzero = 0;
        for (int i = c.lo(); i <= c.hi(); ++i)
            if (!c.homology(i).is_zero) ++nonzero;
        CHECK(nonzero == 2);
    }
    SECTION("cone always satisfies the differential identity") {
        FreeComplex cx = FreeComplex::make(R, -1, {1, 1}, {mat1(R, "q*p")});
        std::map<int, PolyMatrix> comps;
        comps[-1] = PolyMatrix::identity(R, 1);
        comps[0] = PolyMatrix::identity(R, 1);
        ChainMorphism f = ChainMorphism::make(cx, cx, comps);
        CHECK(cone(f).valid());
    }
}

TEST_CASE("homology over a constrained coefficient ring") {
    RingPtr R = make_ring({"x"});
    SECTION("multiplication by x over the ring modulo x^2") {
        FreeComplex cx =
            FreeComplex::make(R, -1, {1, 1}, {mat1(R, "x")}, {parse_poly("x^2", R)});
        CHECK_FALSE(cx.homology(-1).is_zero); // kernel contains the class of x
        CHECK_FALSE(cx.homology(0).is_zero);  // cokernel is the ring modulo x
    }
    SECTION("multiplication by a unit modulo x - 1 is acyclic") {
        FreeComplex cx =
            FreeComplex::make(R, -1, {1, 1}, {mat1(R, "x")}, {parse_poly("x - 1", R)});
        CHECK(cx.homology(-1).is_zero);
        CHECK(cx.homology(0).is_zero);
    }
}

TEST_CASE("chain morphism squares are validated") {
    RingPtr R = make_ring({"q", "p"});
    FreeComplex a = FreeComplex::make(R, -1, {1, 1}, {mat1(R, "q")});
    FreeComplex b = FreeComplex::make(R, -1, {1, 1}, {mat1(R, "p")});
    std::map<int, PolyMatrix> comps;
    comps[-1] = PolyMatrix::identity(R, 1);
    comps[0] = PolyMatrix::identity(R, 1);
    SquareViolation v;
    ChainMorphism f = ChainMorphism::make(a, b, comps, &v);
    CHECK_FALSE(f.valid());
    CHECK(v.entry == parse_poly("p - q", R));
}

TEST_CASE("quasi-isomorphism detection") {
    RingPtr R = make_ring({"q", "p"});
    FreeComplex pt = FreeComplex::make(R, 0, {1}, {});
    SECTION("identity is a quasi-isomorphism via the fast path") {
        std::map<int, PolyMatrix> comps;
        comps[0] = PolyMatrix::identity(R, 1);
        ChainMorphism f = ChainMorphism::make(pt, pt, comps);
        QuasiIsoResult res = is_quasi_iso(f);
        CHECK(res.value);
        CHECK(res.fast_path_used);
        CHECK_FALSE(res.homology_path_used);
    }
    SECTION("cross-check runs both routes and agrees") {
        std::map<int, PolyMatrix> comps;
        comps[0] = PolyMatrix::identity(R, 1).scaled(parse_poly("2", R));
        ChainMorphism f = ChainMorphism::make(pt, pt, comps);
        QuasiIsoResult res = is_quasi_iso(f, MonomialOrder::degrevlex(), true);
        CHECK(res.value);
        CHECK(res.fast_path_used);
        CHECK(res.homology_path_used);
    }
    SECTION("zero map between nonzero complexes fails with a witness") {
        std::map<int, PolyMatrix> comps;
        comps[0] = PolyMatrix::zero(R, 1, 1);
        ChainMorphism f = ChainMorphism::make(pt, pt, comps);
        QuasiIsoResult res = is_quasi_iso(f);
        CHECK_FALSE(res.value);
        REQUIRE(res.witness.has_value());
    }
    SECTION("degreewise multiplication by a variable is not a quasi-isomorphism") {
        std::map<int, PolyMatrix> comps;
        comps[0] = mat1(R, "q");
        ChainMorphism f = ChainMorphism::make(pt, pt, comps);
        QuasiIsoResult res = is_quasi_iso(f);
        CHECK_FALSE(res.value);
        CHECK(res.homology_path_used);
    }
}
