#pragma once

#include <random>
#include <vector>

#include "symred/expr.hpp"
#include "symred/hamspace.hpp"
#include "symred/poly.hpp"

namespace testutil {

using namespace symred;

inline Rational random_rational(std::mt19937_64& rng, int lo = -4, int hi = 4) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 3);
    return Rational(num(rng), den(rng));
}

inline MultiPoly random_poly(std::mt19937_64& rng, const RingPtr& ring, unsigned maxDegree = 3,
                             unsigned maxTerms = 4, bool allowZero = true) {
    std::uniform_int_distribution<unsigned> terms(allowZero ? 0 : 1, maxTerms);
    std::uniform_int_distribution<unsigned> deg(0, maxDegree);
    MultiPoly p = MultiPoly::zero(ring);
    unsigned t = terms(rng);
    for (unsigned k = 0; k < t; ++k) {
        Exponents e(ring->arity(), 0);
        unsigned budget = deg(rng);
        std::uniform_int_distribution<std::size_t> pick(0, ring->arity() - 1);
        for (unsigned b = 0; b < budget; ++b) e[pick(rng)] += 1;
        Rational c = random_rational(rng);
        p += MultiPoly::monomial(ring, e, c);
    }
    return p;
}

inline MultiPoly random_nonzero_poly(std::mt19937_64& rng, const RingPtr& ring,
                                     unsigned maxDegree = 2) {
    for (int tries = 0; tries < 50; ++tries) {
        MultiPoly p = random_poly(rng, ring, maxDegree, 3, false);
        if (!p.is_zero()) return p;
    }
    return MultiPoly::constant(ring, Rational(1));
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n) {
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < n; ++i) pt.push_back(random_rational(rng, -3, 3));
    return pt;
}

/// Standard pairing matrix on (q_1..q_m, p_1..p_m): omega(dq_i, dp_i) = -1,
/// omega(dp_i, dq_i) = +1, matching the corpus convention omega . a = grad J.
inline PolyMatrix standard_omega(const RingPtr& R) {
    std::size_t n = R->arity();
    std::size_t m = n / 2;
    PolyMatrix o(R, n, n);
    for (std::size_t i = 0; i < m; ++i) {
        o.at(i, m + i) = MultiPoly::constant(R, Rational(-1));
        o.at(m + i, i) = MultiPoly::constant(R, Rational(1));
    }
    return o;
}

inline LieAlgebraData abelian_one() {
    return LieAlgebraData::make({"t"}, {{{Rational(0)}}});
}

inline LieAlgebraData sl2() {
    std::size_t r = 3;
    std::vector<std::vector<std::vector<Rational>>> c(
        r, std::vector<std::vector<Rational>>(r, std::vector<Rational>(r, Rational(0))));
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, std::int64_t v) {
        c[i][j][k] = Rational(v);
        c[j][i][k] = Rational(-v);
    };
    // basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
    set(1, 0, 0, 2);
    set(1, 2, 2, -2);
    set(0, 2, 1, 1);
    return LieAlgebraData::make({"e", "h", "f"}, std::move(c));
}

/// Scaling action of weight (1,-1) on the plane with its quadratic invariant.
inline HamiltonianSpace gm_tstar_c() {
    RingPtr R = make_ring({"q", "p"});
    return HamiltonianSpace::make(
        R, standard_omega(R), abelian_one(),
        {{parse_poly("q", R), parse_poly("-p", R)}}, {parse_poly("q*p", R)});
}

/// Diagonal weight-(1,1) action on the four-dimensional phase space.
inline HamiltonianSpace gm_tstar_c2() {
    RingPtr R = make_ring({"q1", "q2", "p1", "p2"});
    return HamiltonianSpace::make(
        R, standard_omega(R), abelian_one(),
        {{parse_poly("q1", R), parse_poly("q2", R), parse_poly("-p1", R), parse_poly("-p2", R)}},
        {parse_poly("q1*p1 + q2*p2", R)});
}

inline HamiltonianSpace trivial_action_space() {
    RingPtr R = make_ring({"q", "p"});
    return HamiltonianSpace::make(R, standard_omega(R), abelian_one(),
                                  {{MultiPoly::zero(R), MultiPoly::zero(R)}},
                                  {MultiPoly::zero(R)});
}

/// Cotangent lift of the defining representation: a_xi = (A q, -A^T p),
/// J_xi = <p, A q> for A in {e, h, f}.
inline HamiltonianSpace sl2_tstar_c2() {
    RingPtr R = make_ring({"q1", "q2", "p1", "p2"});
    std::vector<std::vector<MultiPoly>> action = {
        {parse_poly("q2", R), parse_poly("0", R), parse_poly("0", R), parse_poly("-p1", R)},
        {parse_poly("q1", R), parse_poly("-q2", R), parse_poly("-p1", R), parse_poly("p2", R)},
        {parse_poly("0", R), parse_poly("q1", R), parse_poly("-p2", R), parse_poly("0", R)}};
    std::vector<MultiPoly> moment = {parse_poly("p1*q2", R), parse_poly("p1*q1 - p2*q2", R),
                                     parse_poly("p2*q1", R)};
    return HamiltonianSpace::make(R, standard_omega(R), sl2(), action, moment);
}

} // namespace testutil
