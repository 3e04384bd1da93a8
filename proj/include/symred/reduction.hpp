#pragma once

#include <optional>
#include <vector>

#include "symred/chain.hpp"
#include "symred/hamspace.hpp"
#include "symred/koszul.hpp"

namespace symred {

/// Tangent and cotangent complexes of the derived level set: the Jacobian of
/// the moment map in degrees [0,1] and its transpose in degrees [-1,0], with
/// coefficients constrained to the level ideal.
struct LevelSetComplexes {
    FreeComplex tangent;
    FreeComplex cotangent;
};

inline std::vector<MultiPoly> level_ideal(const HamiltonianSpace& H, const std::vector<Rational>& mu,
                                          const std::vector<MultiPoly>& extra = {}) {
    if (mu.size() != H.dim_g()) throw ShapeError("mu must have one value per basis element");
    std::vector<MultiPoly> gens;
    for (std::size_t i = 0; i < H.dim_g(); ++i) {
        MultiPoly g = H.moment[i] - MultiPoly::constant(H.ring, mu[i]);
        if (!g.is_zero()) gens.push_back(std::move(g));
    }
    for (const auto& g : extra)
        if (!g.is_zero()) gens.push_back(g);
    return gens;
}

inline LevelSetComplexes level_set_complexes(const HamiltonianSpace& H,
                                             const std::vector<Rational>& mu,
                                             const std::vector<MultiPoly>& extraConstraints = {}) {
    std::size_t n = H.dim_x(), r = H.dim_g();
    std::vector<MultiPoly> ideal = level_ideal(H, mu, extraConstraints);
    PolyMatrix jac = H.moment_jacobian();
    LevelSetComplexes out;
    out.tangent = FreeComplex::make(H.ring, 0, {n, r}, {jac}, ideal);
    out.cotangent = FreeComplex::make(H.ring, -1, {r, n}, {jac.transpose()}, ideal);
    return out;
}

/// Three-term tangent complex of the reduced space, [action | Jacobian] in
/// degrees [-1,0,1], and its dual with the degree-0 differential negated so
/// that both pairing squares commute exactly when the moment condition holds.
struct ReducedComplexes {
    FreeComplex tangent;
    FreeComplex cotangent;
    Check composite; // d(0) d(-1) = 0 modulo the level ideal
    std::int64_t virtual_dimension = 0;
    bool valid = false;
};

/// Euler characteristic of the reduced tangent complex over the ambient
/// space: dim(ambient) - 2 dim(g). The ambient dimension comes from the
/// constraint ideal (the full affine space when there is none).
inline std::int64_t virtual_dimension(const HamiltonianSpace& H,
                                      const std::vector<MultiPoly>& ambientIdeal = {}) {
    GroebnerBasis gb = gb_of_ideal(H.ring, ambientIdeal, MonomialOrder::degrevlex());
    std::int64_t ambient = ideal_dimension(gb);
    return ambient - 2 * static_cast<std::int64_t>(H.dim_g());
}

inline ReducedComplexes reduced_tangent_complex(const HamiltonianSpace& H,
                                                const std::vector<Rational>& mu,
                                                const std::vector<MultiPoly>& extraConstraints = {},
                                                const std::vector<MultiPoly>& ambientIdeal = {}) {
    std::size_t n = H.dim_x(), r = H.dim_g();
    std::vector<MultiPoly> ideal = level_ideal(H, mu, extraConstraints);
    PolyMatrix A = H.action_matrix();
    PolyMatrix jac = H.moment_jacobian();

    ReducedComplexes out;
    out.virtual_dimension = virtual_dimension(H, ambientIdeal);

    ComplexViolation v;
    out.tangent = FreeComplex::make(H.ring, -1, {r, n, r}, {A, jac}, ideal, &v);
    if (!out.tangent.valid()) {
        out.composite = Check::fail({"reduced_complex_composite",
                                     {static_cast<std::int64_t>(v.row), static_cast<std::int64_t>(v.col)},
                                     v.entry.str()});
        return out;
    }
    out.cotangent =
        FreeComplex::make(H.ring, -1, {r, n, r}, {jac.transpose(), A.transpose().negated()}, ideal);
    out.composite = Check::pass();
    out.valid = true;
    return out;
}

/// The pairing map from the reduced tangent complex to its dual, with
/// components (identity, omega, identity). The two commuting squares are
/// exact polynomial identities:
///   left:   omega . A = Jac^T      (one column per basis element)
///   right:  -A^T . omega = Jac     (the transpose of the left square)
struct ThetaMap {
    Check left_square;   // witness location: (basis index, coordinate)
    Check right_square;  // witness location: (basis index, coordinate)
    std::optional<ChainMorphism> morphism;

    bool squares_ok() const { return left_square.ok && right_square.ok; }
};

inline ThetaMap build_theta(const HamiltonianSpace& H, const std::vector<Rational>& mu,
                            const ReducedComplexes& reduced) {
    std::size_t n = H.dim_x(), r = H.dim_g();
    PolyMatrix A = H.action_matrix();
    PolyMatrix jac = H.moment_jacobian();

    ThetaMap theta;
    PolyMatrix left = H.omega * A - jac.transpose();
    for (std::size_t j = 0; j < r && theta.left_square.ok; ++j)
        for (std::size_t m = 0; m < n; ++m) {
            if (!left.at(m, j).is_zero()) {
                theta.left_square = Check::fail(
                    {"theta_left_square",
                     {static_cast<std::int64_t>(j), static_cast<std::int64_t>(m)},
                     left.at(m, j).str()});
                break;
            }
        }
    PolyMatrix right = A.transpose().negated() * H.omega - jac;
    for (std::size_t i = 0; i < r && theta.right_square.ok; ++i)
        for (std::size_t m = 0; m < n; ++m) {
            if (!right.at(i, m).is_zero()) {
                theta.right_square = Check::fail(
                    {"theta_right_square",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(m)},
                     right.at(i, m).str()});
                break;
            }
        }

    if (theta.squares_ok() && reduced.valid) {
        std::map<int, PolyMatrix> comps;
        comps[-1] = PolyMatrix::identity(H.ring, r);
        comps[0] = H.omega;
        comps[1] = PolyMatrix::identity(H.ring, r);
        theta.morphism = ChainMorphism::make(reduced.tangent, reduced.cotangent, std::move(comps));
    }
    (void)mu;
    return theta;
}

} // namespace symred
