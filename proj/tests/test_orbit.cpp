#include <catch2/catch_amalgamated.hpp>

#include "symred/orbit.hpp"
#include "symred/pipeline.hpp"
#include "test_util.hpp"

using namespace symred;
using namespace testutil;

namespace {

OrbitPresentation point_orbit(const Rational& mu) {
    RingPtr Y = make_ring({"y"});
    std::vector<MultiPoly> ideal = {MultiPoly::variable(Y, 0) - MultiPoly::constant(Y, mu)};
    PolyMatrix form(Y, 1, 1);
    return OrbitPresentation::make(Y, ideal, form, MultiPoly::constant(Y, Rational(1)));
}

/// Regular sl2 orbit {y_h^2 + 4 y_e y_f = c} on the chart y_e != 0, with the
/// chart form dy_e ^ dy_h / (2 y_e).
OrbitPresentation sl2_orbit(std::int64_t c, const Rational& scale = Rational(1)) {
    RingPtr Y = make_ring({"ye", "yh", "yf"});
    MultiPoly cas = parse_poly("yh^2 + 4*ye*yf", Y) - MultiPoly::constant(Y, Rational(c));
    PolyMatrix form(Y, 3, 3);
    form.at(0, 1) = MultiPoly::constant(Y, scale);
    form.at(1, 0) = MultiPoly::constant(Y, -scale);
    MultiPoly den = parse_poly("2*ye", Y);
    return OrbitPresentation::make(Y, {cas}, form, den);
}

} // namespace

TEST_CASE("lie poisson fields") {
    SECTION("abelian fields vanish") {
        RingPtr Y = make_ring({"y"});
        auto fields = lie_poisson_fields(abelian_one(), Y);
        CHECK(fields[0][0].is_zero());
    }
    SECTION("sl2 weights on the dual") {
        RingPtr Y = make_ring({"ye", "yh", "yf"});
        auto fields = lie_poisson_fields(sl2(), Y);
        // the semisimple direction scales the two root coordinates oppositely
        CHECK(fields[1][0] == parse_poly("-2*ye", Y));
        CHECK(fields[1][2] == parse_poly("2*yf", Y));
        CHECK(fields[1][1].is_zero());
    }
    SECTION("the casimir is killed by every field") {
        RingPtr Y = make_ring({"ye", "yh", "yf"});
        auto fields = lie_poisson_fields(sl2(), Y);
        MultiPoly cas = parse_poly("yh^2 + 4*ye*yf", Y);
        for (const auto& f : fields) {
            MultiPoly applied = MultiPoly::zero(Y);
            for (std::size_t j = 0; j < 3; ++j) applied += f[j] * cas.derivative(j);
            REQUIRE(applied.is_zero());
        }
    }
}

TEST_CASE("orbit validation") {
    SECTION("point orbit of the abelian algebra") {
        CHECK_NOTHROW(validate_orbit(point_orbit(Rational(1, 2)), abelian_one()));
    }
    SECTION("sl2 regular orbit") { CHECK_NOTHROW(validate_orbit(sl2_orbit(1), sl2())); }
    SECTION("non-stable ideal is rejected") {
        RingPtr Y = make_ring({"ye", "yh", "yf"});
        PolyMatrix form(Y, 3, 3);
        OrbitPresentation bad = OrbitPresentation::make(
            Y, {parse_poly("ye - 1", Y)}, form, MultiPoly::constant(Y, Rational(1)));
        CHECK_THROWS_AS(validate_orbit(bad, sl2()), ValidationError);
    }
    SECTION("vanishing denominator is rejected") {
        RingPtr Y = make_ring({"ye", "yh", "yf"});
        MultiPoly cas = parse_poly("yh^2 + 4*ye*yf - 1", Y);
        PolyMatrix form(Y, 3, 3);
        OrbitPresentation bad =
            OrbitPresentation::make(Y, {cas}, form, parse_poly("yh^2 + 4*ye*yf - 1", Y));
        CHECK_THROWS_AS(validate_orbit(bad, sl2()), ValidationError);
    }
    SECTION("positive-dimensional locus for a trivial coadjoint action is not an orbit") {
        RingPtr Y = make_ring({"y"});
        PolyMatrix form(Y, 1, 1);
        OrbitPresentation bad =
            OrbitPresentation::make(Y, {MultiPoly::zero(Y)}, form, MultiPoly::constant(Y, Rational(1)));
        // zero generator: the ideal is (0), dimension 1
        CHECK_THROWS_AS(validate_orbit(bad, abelian_one()), ValidationError);
    }
}

TEST_CASE("kks certification") {
    SECTION("point orbit passes vacuously") {
        CHECK(certify_kks(point_orbit(Rational(1, 2)), abelian_one()).ok);
    }
    SECTION("sl2 chart form passes") { CHECK(certify_kks(sl2_orbit(1), sl2()).ok); }
    SECTION("scaled form fails for every nonunit scale") {
        for (Rational lambda : {Rational(2), Rational(-1), Rational(3), Rational(1, 2)}) {
            Check c = certify_kks(sl2_orbit(1, lambda), sl2());
            CHECK_FALSE(c.ok);
            REQUIRE(c.witness.has_value());
        }
    }
}

TEST_CASE("shifted space assembly") {
    HamiltonianSpace H = gm_tstar_c();
    OrbitPresentation orbit = point_orbit(Rational(1, 2));
    ShiftedSpace s = build_shifted(H, orbit);
    CHECK(s.ring->arity() == 3);
    CHECK(s.orbit_dim == 0);
    CHECK(s.moment[0] == parse_poly("q*p - y", s.ring));
    ShiftedCertificates sc = validate_shifted(H, orbit, s);
    CHECK(sc.all_ok());
}

TEST_CASE("shifted sl2 space") {
    HamiltonianSpace H = sl2_tstar_c2();
    OrbitPresentation orbit = sl2_orbit(1);
    ShiftedSpace s = build_shifted(H, orbit);
    CHECK(s.ring->arity() == 7);
    CHECK(s.orbit_dim == 2);
    ShiftedCertificates sc = validate_shifted(H, orbit, s);
    CHECK(sc.antisymmetric.ok);
    CHECK(sc.closed.ok);
    CHECK(sc.nondegenerate.ok);
    CHECK(sc.moment_condition.ok);
    CHECK(sc.equivariance.ok);
    CHECK(sc.action_bracket.ok);
}

TEST_CASE("classical consistency") {
    SECTION("abelian point orbit: substitution ideal") {
        CHECK(classical_consistency(gm_tstar_c(), point_orbit(Rational(1, 2))).ok);
    }
    SECTION("sl2 orbit: casimir of the moment map") {
        CHECK(classical_consistency(sl2_tstar_c2(), sl2_orbit(1)).ok);
    }
    SECTION("mismatched orbits fail") {
        // eliminating against the level c=1 but composing with c=2 must differ
        HamiltonianSpace H = sl2_tstar_c2();
        OrbitPresentation o1 = sl2_orbit(1);
        OrbitPresentation o2 = sl2_orbit(2);
        // build a hybrid check by comparing the two composed ideals directly
        MultiPoly comp1 = o1.ideal[0].substitute(H.moment, H.ring);
        MultiPoly comp2 = o2.ideal[0].substitute(H.moment, H.ring);
        GroebnerBasis g1 = gb_of_ideal(H.ring, {comp1}, MonomialOrder::degrevlex());
        CHECK_FALSE(g1.contains_poly(comp2));
    }
}

TEST_CASE("orbit pipeline reports") {
    PipelineOptions opt;
    SECTION("point orbit round trip") {
        ReductionReport rep =
            verify_orbit_reduction(gm_tstar_c(), point_orbit(Rational(1, 2)), opt, "pt");
        CHECK(rep.overall_pass);
        CHECK(rep.kks.passed());
        CHECK(rep.classical_consistency.passed());
        REQUIRE(rep.round_trip_consistent.has_value());
        CHECK(*rep.round_trip_consistent);
        CHECK(*rep.virtual_dimension == 0);
        CHECK(rep.tor[1].is_zero);
        CHECK(*rep.complete_intersection);
    }
    SECTION("sl2 orbit report") {
        ReductionReport rep = verify_orbit_reduction(sl2_tstar_c2(), sl2_orbit(1), opt, "sl2o");
        CHECK(rep.overall_pass);
        CHECK(rep.kks.passed());
        CHECK(rep.classical_consistency.passed());
        CHECK(rep.theta_squares.passed());
        CHECK(rep.quasi_iso.passed());
        CHECK(*rep.virtual_dimension == 0); // 4 + 2 - 6
        CHECK(rep.strictly_closed.state == CertificateEntry::State::skipped);
    }
    SECTION("scaled form mutant fails exactly the kks certificate") {
        ReductionReport rep = verify_orbit_reduction(sl2_tstar_c2(), sl2_orbit(1, Rational(2)),
                                                     opt, "mutant");
        CHECK_FALSE(rep.overall_pass);
        CHECK(rep.kks.failed());
        CHECK(rep.symplectic.passed());
        CHECK(rep.hamiltonian.passed());
        CHECK(rep.theta_squares.state == CertificateEntry::State::skipped);
    }
}
