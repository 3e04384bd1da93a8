#include <catch2/catch_amalgamated.hpp>

#include "symred/hamspace.hpp"
#include "test_util.hpp"

using namespace symred;
using namespace testutil;

TEST_CASE("lie algebra validation") {
    SECTION("sl2 table is accepted") { CHECK_NOTHROW(sl2()); }
    SECTION("perturbed table is rejected") {
        auto bad = [&] {
            std::vector<std::vector<std::vector<Rational>>> c(
                3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, Rational(0))));
            auto set = [&](std::size_t i, std::size_t j, std::size_t k, std::int64_t v) {
                c[i][j][k] = Rational(v);
                c[j][i][k] = Rational(-v);
            };
            set(1, 0, 0, 2);
            set(1, 2, 2, -2);
            set(0, 2, 1, 1);
            set(0, 2, 0, 1); // [e,f] = h + e breaks Jacobi for (e,h,f)
            return LieAlgebraData::make({"e", "h", "f"}, std::move(c));
        };
        CHECK_THROWS_AS(bad(), ValidationError);
    }
    SECTION("antisymmetry enforced") {
        std::vector<std::vector<std::vector<Rational>>> c(
            1, std::vector<std::vector<Rational>>(1, std::vector<Rational>(1, Rational(1))));
        CHECK_THROWS_AS(LieAlgebraData::make({"t"}, std::move(c)), ValidationError);
    }
}

TEST_CASE("symplectic certificates") {
    SECTION("standard form passes") {
        SymplecticCertificate c = validate_symplectic(gm_tstar_c());
        CHECK(c.antisymmetric.ok);
        CHECK(c.closed.ok);
        CHECK(c.nondegenerate.ok);
        CHECK(c.determinant == "1");
    }
    SECTION("variable coefficient breaks nondegeneracy") {
        RingPtr R = make_ring({"q", "p"});
        PolyMatrix o(R, 2, 2);
        o.at(0, 1) = parse_poly("-q", R);
        o.at(1, 0) = parse_poly("q", R);
        HamiltonianSpace H = HamiltonianSpace::make(R, o, abelian_one(),
                                                    {{MultiPoly::zero(R), MultiPoly::zero(R)}},
                                                    {MultiPoly::zero(R)});
        SymplecticCertificate c = validate_symplectic(H);
        CHECK(c.antisymmetric.ok);
        CHECK(c.closed.ok); // two variables admit no 3-forms
        CHECK_FALSE(c.nondegenerate.ok);
        CHECK(c.nondegenerate.witness->value == "q^2");
    }
    SECTION("unit plus variable entry: closed vacuously, degenerate") {
        RingPtr R = make_ring({"q", "p"});
        PolyMatrix o(R, 2, 2);
        o.at(0, 1) = parse_poly("-1 - q", R);
        o.at(1, 0) = parse_poly("1 + q", R);
        HamiltonianSpace H = HamiltonianSpace::make(R, o, abelian_one(),
                                                    {{MultiPoly::zero(R), MultiPoly::zero(R)}},
                                                    {MultiPoly::zero(R)});
        SymplecticCertificate c = validate_symplectic(H);
        CHECK(c.closed.ok);
        CHECK_FALSE(c.nondegenerate.ok);
    }
    SECTION("four variables detect a non-closed form") {
        RingPtr R = make_ring({"q1", "q2", "p1", "p2"});
        PolyMatrix o = standard_omega(R);
        // add a q2-dependent term in the (q1, p2) slot; determinant stays 1
        o.at(0, 3) = parse_poly("-q2", R);
        o.at(3, 0) = parse_poly("q2", R);
        HamiltonianSpace H = HamiltonianSpace::make(
            R, o, abelian_one(),
            {{MultiPoly::zero(R), MultiPoly::zero(R), MultiPoly::zero(R), MultiPoly::zero(R)}},
            {MultiPoly::zero(R)});
        SymplecticCertificate c = validate_symplectic(H);
        CHECK(c.antisymmetric.ok);
        CHECK_FALSE(c.closed.ok);
        CHECK(c.nondegenerate.ok);
    }
}

TEST_CASE("action certificates") {
    SECTION("abelian scaling action") { CHECK(validate_action(gm_tstar_c()).ok); }
    SECTION("sl2 cotangent lift satisfies the bracket relations") {
        CHECK(validate_action(sl2_tstar_c2()).ok);
    }
    SECTION("perturbed field fails with a witness") {
        HamiltonianSpace H = sl2_tstar_c2();
        H.action[0][0] += parse_poly("q1^2", H.ring);
        Check c = validate_action(H);
        CHECK_FALSE(c.ok);
        REQUIRE(c.witness.has_value());
    }
}

TEST_CASE("hamiltonian certificates") {
    SECTION("scaling action with its invariant") {
        HamiltonianCertificate c = validate_hamiltonian(gm_tstar_c());
        CHECK(c.moment_condition.ok);
        CHECK(c.equivariance.ok);
    }
    SECTION("linear shift of the moment map fails") {
        HamiltonianSpace H = gm_tstar_c();
        H.moment[0] += parse_poly("q", H.ring);
        HamiltonianCertificate c = validate_hamiltonian(H);
        CHECK_FALSE(c.moment_condition.ok);
        REQUIRE(c.moment_condition.witness.has_value());
        CHECK(c.moment_condition.witness->location == std::vector<std::int64_t>{0, 0});
    }
    SECTION("zero moment map with the trivial action passes") {
        HamiltonianCertificate c = validate_hamiltonian(trivial_action_space());
        CHECK(c.moment_condition.ok);
        CHECK(c.equivariance.ok);
    }
    SECTION("sl2 lift is hamiltonian and equivariant") {
        HamiltonianCertificate c = validate_hamiltonian(sl2_tstar_c2());
        CHECK(c.moment_condition.ok);
        CHECK(c.equivariance.ok);
    }
}

TEST_CASE("cotangent lift family validates across representations") {
    // weight-k scaling actions on the plane, lifted: a = (k q, -k p), J = k q p
    for (std::int64_t k : {1, 2, -3}) {
        RingPtr R = make_ring({"q", "p"});
        HamiltonianSpace H = HamiltonianSpace::make(
            R, standard_omega(R), abelian_one(),
            {{MultiPoly::variable(R, 0).scaled(Rational(k)),
              MultiPoly::variable(R, 1).scaled(Rational(-k))}},
            {(MultiPoly::variable(R, 0) * MultiPoly::variable(R, 1)).scaled(Rational(k))});
        CHECK(validate_symplectic(H).all_ok());
        CHECK(validate_action(H).ok);
        CHECK(validate_hamiltonian(H).all_ok());
    }
}

TEST_CASE("mutation robustness") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        HamiltonianSpace H = trial % 2 == 0 ? gm_tstar_c() : sl2_tstar_c2();
        std::uniform_int_distribution<std::size_t> pickGen(0, H.dim_g() - 1);
        std::size_t g = pickGen(rng);
        if (trial % 3 == 0) {
            // nonconstant perturbation of one moment component
            MultiPoly pert = testutil::random_nonzero_poly(rng, H.ring, 2);
            if (pert.is_constant()) pert = pert * MultiPoly::variable(H.ring, 0);
            H.moment[g] += pert;
        } else {
            std::uniform_int_distribution<std::size_t> pickComp(0, H.dim_x() - 1);
            H.action[g][pickComp(rng)] += testutil::random_nonzero_poly(rng, H.ring, 2);
        }
        bool anyFail = !validate_symplectic(H).all_ok() || !validate_action(H).ok ||
                       !validate_hamiltonian(H).all_ok();
        REQUIRE(anyFail);
    }
}

TEST_CASE("coadjoint fixed levels") {
    CHECK(coadjoint_fixes(abelian_one(), {Rational(5)}));
    LieAlgebraData g = sl2();
    CHECK(coadjoint_fixes(g, {Rational(0), Rational(0), Rational(0)}));
    CHECK_FALSE(coadjoint_fixes(g, {Rational(1), Rational(0), Rational(0)}));
    CHECK_THROWS_AS(coadjoint_fixes(g, {Rational(0)}), ShapeError);
}
