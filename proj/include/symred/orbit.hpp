#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symred/reduction.hpp"

namespace symred {

/// Coadjoint orbit in the dual of the Lie algebra, given by its ideal in the
/// dual coordinates together with a chart presentation of the orbit form:
/// an antisymmetric matrix of numerators over one declared denominator.
struct OrbitPresentation {
    RingPtr y_ring;               // dual coordinates
    std::vector<MultiPoly> ideal; // generators, coadjoint-stable
    PolyMatrix form_num;          // r x r numerators of the chart form
    MultiPoly denominator;        // common denominator, nonzero on the orbit

    static OrbitPresentation make(RingPtr y_ring, std::vector<MultiPoly> ideal, PolyMatrix form_num,
                                  MultiPoly denominator) {
        OrbitPresentation o;
        o.y_ring = std::move(y_ring);
        o.ideal = std::move(ideal);
        o.form_num = std::move(form_num);
        o.denominator = std::move(denominator);
        std::size_t r = o.y_ring->arity();
        if (o.form_num.rows() != r || o.form_num.cols() != r)
            throw ShapeError("orbit form must be square of the dual dimension");
        require_same_ring(o.y_ring, o.form_num.ring(), "orbit form");
        require_same_ring(o.y_ring, o.denominator.ring(), "orbit denominator");
        for (const auto& g : o.ideal) require_same_ring(o.y_ring, g.ring(), "orbit ideal");
        if (!o.form_num.is_antisymmetric())
            throw ValidationError("orbit form numerators must be antisymmetric");
        if (o.denominator.is_zero()) throw ValidationError("orbit denominator is zero");
        return o;
    }
};

/// Infinitesimal coadjoint fields on the dual: field i sends y_j to
/// -sum_k c[i][j][k] y_k, matching the moment-map conventions of hamspace.
inline std::vector<std::vector<MultiPoly>> lie_poisson_fields(const LieAlgebraData& lie,
                                                              const RingPtr& y_ring) {
    if (y_ring->arity() != lie.dim) throw ShapeError("dual coordinate count must match the algebra");
    std::vector<std::vector<MultiPoly>> fields;
    for (std::size_t i = 0; i < lie.dim; ++i) {
        std::vector<MultiPoly> v;
        for (std::size_t j = 0; j < lie.dim; ++j) {
            MultiPoly comp = MultiPoly::zero(y_ring);
            for (std::size_t k = 0; k < lie.dim; ++k) {
                if (lie.c[i][j][k].is_zero()) continue;
                comp -= MultiPoly::variable(y_ring, k).scaled(lie.c[i][j][k]);
            }
            v.push_back(std::move(comp));
        }
        fields.push_back(std::move(v));
    }
    return fields;
}

/// Structural orbit invariants: the coadjoint fields are tangent to the
/// ideal, and the chart denominator does not vanish on the orbit. Violations
/// are malformed input.
inline void validate_orbit(const OrbitPresentation& orbit, const LieAlgebraData& lie) {
    GroebnerBasis gb = gb_of_ideal(orbit.y_ring, orbit.ideal, MonomialOrder::degrevlex());
    auto fields = lie_poisson_fields(lie, orbit.y_ring);
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t g = 0; g < orbit.ideal.size(); ++g) {
            MultiPoly applied = MultiPoly::zero(orbit.y_ring);
            for (std::size_t j = 0; j < orbit.y_ring->arity(); ++j)
                applied += fields[i][j] * orbit.ideal[g].derivative(j);
            if (!gb.contains_poly(applied))
                throw ValidationError("orbit ideal is not coadjoint-stable (field " +
                                      std::to_string(i) + ", generator " + std::to_string(g) + ")");
        }
    if (gb.contains_poly(orbit.denominator))
        throw ValidationError("orbit chart denominator vanishes on the orbit");

    // a trivial (pointwise-fixed) coadjoint action only has point orbits
    bool allZero = true;
    for (const auto& f : fields)
        for (const auto& comp : f)
            if (!gb.contains_poly(comp)) { allZero = false; break; }
    if (allZero && ideal_dimension(gb) != 0)
        throw ValidationError("coadjoint action is trivial on this orbit locus but the ideal is "
                              "positive-dimensional; not an orbit");
}

/// The chart form is the orbit form iff the inclusion into the dual is a
/// moment map for the coadjoint action; pairing that identity against the
/// generating tangent fields gives, for all i, j:
///   v_j^T N v_i = D * sum_k c[i][j][k] y_k   (mod the orbit ideal).
/// Scaling the form breaks this, so the certificate detects a wrong scale.
inline Check certify_kks(const OrbitPresentation& orbit, const LieAlgebraData& lie) {
    GroebnerBasis gb = gb_of_ideal(orbit.y_ring, orbit.ideal, MonomialOrder::degrevlex());
    auto fields = lie_poisson_fields(lie, orbit.y_ring);
    std::size_t r = lie.dim;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            MultiPoly lhs = MultiPoly::zero(orbit.y_ring);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) {
                    if (orbit.form_num.at(a, b).is_zero()) continue;
                    lhs += fields[j][a] * orbit.form_num.at(a, b) * fields[i][b];
                }
            MultiPoly rhs = MultiPoly::zero(orbit.y_ring);
            for (std::size_t k = 0; k < r; ++k) {
                if (lie.c[i][j][k].is_zero()) continue;
                rhs += MultiPoly::variable(orbit.y_ring, k).scaled(lie.c[i][j][k]);
            }
            rhs = rhs * orbit.denominator;
            MultiPoly diff = gb.normal_form_poly(lhs - rhs);
            if (!diff.is_zero())
                return Check::fail({"kks_moment_identity",
                                    {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)},
                                    diff.str()});
        }
    return Check::pass();
}

/// Product space X x O with the difference form in cleared-denominator
/// presentation, the product action, and the shifted moment map J - y.
/// All downstream identities hold modulo the orbit ideal.
struct ShiftedSpace {
    RingPtr ring; // x variables then y variables
    std::size_t n_x = 0;
    std::size_t r = 0;
    PolyMatrix omega_cleared; // block(D * omega_X, -N)
    MultiPoly denominator;    // D in the product ring
    LieAlgebraData lie;
    std::vector<std::vector<MultiPoly>> action; // (a_i ; ad*_i)
    std::vector<MultiPoly> moment;              // J_i(x) - y_i
    std::vector<MultiPoly> constraints;         // orbit ideal in the product ring
    std::int64_t orbit_dim = 0;

    std::vector<Rational> zero_level() const { return std::vector<Rational>(r, Rational(0)); }

    PolyMatrix action_matrix() const {
        PolyMatrix A(ring, n_x + r, r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < n_x + r; ++i) A.at(i, j) = action[j][i];
        return A;
    }

    PolyMatrix moment_jacobian() const {
        PolyMatrix J(ring, r, n_x + r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < n_x + r; ++k) J.at(i, k) = moment[i].derivative(k);
        return J;
    }
};

inline ShiftedSpace build_shifted(const HamiltonianSpace& H, const OrbitPresentation& orbit) {
    validate_orbit(orbit, H.lie);
    if (orbit.y_ring->arity() != H.lie.dim)
        throw ShapeError("orbit dual dimension must match the acting algebra");

    std::vector<std::string> vars = H.ring->vars;
    for (const auto& y : orbit.y_ring->vars) vars.push_back(y);
    RingPtr ring = make_ring(vars); // throws on a name clash

    std::size_t n = H.dim_x(), r = H.lie.dim;
    std::vector<MultiPoly> xImages, yImages;
    for (std::size_t i = 0; i < n; ++i) xImages.push_back(MultiPoly::variable(ring, i));
    for (std::size_t i = 0; i < r; ++i) yImages.push_back(MultiPoly::variable(ring, n + i));
    auto mapX = [&](const MultiPoly& p) { return p.substitute(xImages, ring); };
    auto mapY = [&](const MultiPoly& p) { return p.substitute(yImages, ring); };

    ShiftedSpace s;
    s.ring = ring;
    s.n_x = n;
    s.r = r;
    s.lie = H.lie;
    s.denominator = mapY(orbit.denominator);

    PolyMatrix top(ring, n, n), bot(ring, r, r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) top.at(i, j) = mapX(H.omega.at(i, j)) * s.denominator;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) bot.at(i, j) = -mapY(orbit.form_num.at(i, j));
    s.omega_cleared = PolyMatrix::block_diag(top, bot);

    auto fields = lie_poisson_fields(H.lie, orbit.y_ring);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<MultiPoly> a;
        for (std::size_t j = 0; j < n; ++j) a.push_back(mapX(H.action[i][j]));
        for (std::size_t j = 0; j < r; ++j) a.push_back(mapY(fields[i][j]));
        s.action.push_back(std::move(a));
    }
    for (std::size_t i = 0; i < r; ++i)
        s.moment.push_back(mapX(H.moment[i]) - MultiPoly::variable(ring, n + i));
    for (const auto& g : orbit.ideal) s.constraints.push_back(mapY(g));

    GroebnerBasis gbY = gb_of_ideal(orbit.y_ring, orbit.ideal, MonomialOrder::degrevlex());
    s.orbit_dim = ideal_dimension(gbY);
    return s;
}

struct ShiftedCertificates {
    Check antisymmetric;
    Check closed;       // orbit block paired against tangent triples, mod ideal
    Check nondegenerate; // chart Gram certificate: orbit form has full rank on the chart
    Check moment_condition; // paired against the chart tangent frame, mod ideal
    Check equivariance;
    Check action_bracket;

    bool all_ok() const {
        return antisymmetric.ok && closed.ok && nondegenerate.ok && moment_condition.ok &&
               equivariance.ok && action_bracket.ok;
    }
};

/// Weak-mode validation of a shifted space: every identity is paired against
/// the chart tangent frame (coordinate fields on the X factor, coadjoint
/// fields on the orbit factor), reduced modulo the orbit ideal, with the
/// declared denominator cleared.
inline ShiftedCertificates validate_shifted(const HamiltonianSpace& H,
                                            const OrbitPresentation& orbit, const ShiftedSpace& s) {
    ShiftedCertificates cert;
    const RingPtr& yring = orbit.y_ring;
    std::size_t n = s.n_x, r = s.r;
    GroebnerBasis gbY = gb_of_ideal(yring, orbit.ideal, MonomialOrder::degrevlex());
    auto fields = lie_poisson_fields(H.lie, yring);

    if (!s.omega_cleared.is_antisymmetric())
        cert.antisymmetric = Check::fail({"shifted_antisymmetry", {}, "cleared form not antisymmetric"});

    // closedness of the orbit block: D^2 d(N/D) paired with tangent triples
    if (r >= 3) {
        for (std::size_t a = 0; a < r && cert.closed.ok; ++a)
            for (std::size_t b = a + 1; b < r && cert.closed.ok; ++b)
                for (std::size_t c = b + 1; c < r; ++c) {
                    MultiPoly val = MultiPoly::zero(yring);
                    for (std::size_t j = 0; j < r; ++j)
                        for (std::size_t k = j + 1; k < r; ++k)
                            for (std::size_t l = k + 1; l < r; ++l) {
                                // cleared coefficient of dy_j dy_k dy_l in d(N/D)
                                auto term = [&](std::size_t p, std::size_t q, std::size_t t) {
                                    return orbit.form_num.at(q, t).derivative(p) * orbit.denominator -
                                           orbit.form_num.at(q, t) * orbit.denominator.derivative(p);
                                };
                                MultiPoly coef = term(j, k, l) - term(k, j, l) + term(l, j, k);
                                if (coef.is_zero()) continue;
                                // pair with det of the (j,k,l) rows of [v_a v_b v_c]
                                PolyMatrix m3(yring, 3, 3);
                                std::size_t rowsIdx[3] = {j, k, l};
                                std::size_t colsIdx[3] = {a, b, c};
                                for (int ri = 0; ri < 3; ++ri)
                                    for (int ci = 0; ci < 3; ++ci)
                                        m3.at(ri, ci) = fields[colsIdx[ci]][rowsIdx[ri]];
                                val += coef * m3.determinant();
                            }
                    MultiPoly nf = gbY.normal_form_poly(val);
                    if (!nf.is_zero()) {
                        cert.closed = Check::fail({"shifted_closedness",
                                                   {static_cast<std::int64_t>(a),
                                                    static_cast<std::int64_t>(b),
                                                    static_cast<std::int64_t>(c)},
                                                   nf.str()});
                        break;
                    }
                }
    }

    // chart Gram certificate: W = V^T N V must have rank >= dim O wherever
    // D is invertible on the orbit: 1 in I_O + minors_dimO(W) + (1 - t D)
    {
        std::size_t d = static_cast<std::size_t>(std::max<std::int64_t>(s.orbit_dim, 0));
        bool ok = true;
        if (d > 0) {
            PolyMatrix V(yring, r, r);
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t i = 0; i < r; ++i) V.at(i, j) = fields[j][i];
            PolyMatrix W = V.transpose() * orbit.form_num * V;

            std::vector<std::string> tvars = yring->vars;
            tvars.push_back("_t_chart");
            RingPtr tring = make_ring(tvars);
            std::vector<MultiPoly> toT;
            for (std::size_t i = 0; i < r; ++i) toT.push_back(MultiPoly::variable(tring, i));
            auto mapT = [&](const MultiPoly& p) { return p.substitute(toT, tring); };

            std::vector<MultiPoly> gens;
            for (const auto& g : orbit.ideal) gens.push_back(mapT(g));
            auto subsets = index_subsets(r, d);
            for (const auto& rowsPick : subsets)
                for (const auto& colsPick : subsets) {
                    MultiPoly det = W.submatrix(rowsPick, colsPick).determinant();
                    if (!det.is_zero()) gens.push_back(mapT(det));
                }
            MultiPoly one = MultiPoly::constant(tring, Rational(1));
            gens.push_back(one - MultiPoly::variable(tring, r) * mapT(orbit.denominator));
            GroebnerBasis gb = gb_of_ideal(tring, gens, MonomialOrder::degrevlex());
            ok = gb.contains_poly(one);
        }
        if (!ok)
            cert.nondegenerate = Check::fail(
                {"shifted_nondegeneracy", {}, "orbit form rank below orbit dimension on the chart"});
    }

    // moment condition, x block: exact difference, reused from the base space
    for (std::size_t i = 0; i < r && cert.moment_condition.ok; ++i) {
        std::vector<MultiPoly> lhs = H.omega.apply(H.action[i]);
        std::vector<MultiPoly> rhs = H.gradient(H.moment[i]);
        for (std::size_t m = 0; m < n; ++m) {
            MultiPoly diff = lhs[m] - rhs[m];
            if (!diff.is_zero()) {
                cert.moment_condition = Check::fail(
                    {"shifted_moment_x",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(m)},
                     diff.str()});
                break;
            }
        }
    }
    // moment condition, orbit block paired with tangent fields:
    // -v_j^T N v_i + D (v_j)_i = 0 mod ideal
    for (std::size_t i = 0; i < r && cert.moment_condition.ok; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            MultiPoly pairing = MultiPoly::zero(yring);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) {
                    if (orbit.form_num.at(a, b).is_zero()) continue;
                    pairing -= fields[j][a] * orbit.form_num.at(a, b) * fields[i][b];
                }
            pairing += orbit.denominator * fields[j][i];
            MultiPoly nf = gbY.normal_form_poly(pairing);
            if (!nf.is_zero()) {
                cert.moment_condition = Check::fail(
                    {"shifted_moment_orbit",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)},
                     nf.str()});
                break;
            }
        }

    GroebnerBasis gbXY = gb_of_ideal(s.ring, s.constraints, MonomialOrder::degrevlex());
    auto applyField = [&](const std::vector<MultiPoly>& a, const MultiPoly& f) {
        MultiPoly acc = MultiPoly::zero(s.ring);
        for (std::size_t idx = 0; idx < a.size(); ++idx) acc += a[idx] * f.derivative(idx);
        return acc;
    };
    for (std::size_t i = 0; i < r && cert.equivariance.ok; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            MultiPoly lhs = applyField(s.action[i], s.moment[j]);
            for (std::size_t k = 0; k < r; ++k) {
                if (s.lie.c[i][j][k].is_zero()) continue;
                lhs += s.moment[k].scaled(s.lie.c[i][j][k]);
            }
            MultiPoly nf = gbXY.normal_form_poly(lhs);
            if (!nf.is_zero()) {
                cert.equivariance = Check::fail(
                    {"shifted_equivariance",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)},
                     nf.str()});
                break;
            }
        }
    for (std::size_t i = 0; i < r && cert.action_bracket.ok; ++i)
        for (std::size_t j = i + 1; j < r && cert.action_bracket.ok; ++j)
            for (std::size_t m = 0; m < n + r; ++m) {
                MultiPoly bracket = applyField(s.action[i], s.action[j][m]) -
                                    applyField(s.action[j], s.action[i][m]);
                for (std::size_t k = 0; k < r; ++k) {
                    if (s.lie.c[i][j][k].is_zero()) continue;
                    bracket += s.action[k][m].scaled(s.lie.c[i][j][k]);
                }
                MultiPoly nf = gbXY.normal_form_poly(bracket);
                if (!nf.is_zero()) {
                    cert.action_bracket = Check::fail(
                        {"shifted_action_bracket",
                         {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j),
                          static_cast<std::int64_t>(m)},
                         nf.str()});
                    break;
                }
            }
    return cert;
}

/// The classical level-set identity for orbit reduction: eliminating the dual
/// coordinates from <J_i - y_i> + I_O recovers exactly the ideal generated by
/// the orbit equations composed with the moment map.
inline Check classical_consistency(const HamiltonianSpace& H, const OrbitPresentation& orbit) {
    std::size_t n = H.dim_x(), r = H.lie.dim;
    // elimination ring: dual coordinates first so they dominate
    std::vector<std::string> vars = orbit.y_ring->vars;
    for (const auto& x : H.ring->vars) vars.push_back(x);
    RingPtr ering = make_ring(vars);
    std::vector<MultiPoly> yImg, xImg;
    for (std::size_t i = 0; i < r; ++i) yImg.push_back(MultiPoly::variable(ering, i));
    for (std::size_t i = 0; i < n; ++i) xImg.push_back(MultiPoly::variable(ering, r + i));

    std::vector<MultiPoly> gens;
    for (std::size_t i = 0; i < r; ++i)
        gens.push_back(H.moment[i].substitute(xImg, ering) - MultiPoly::variable(ering, i));
    for (const auto& g : orbit.ideal) gens.push_back(g.substitute(yImg, ering));
    GroebnerBasis egb = gb_of_ideal(ering, gens, MonomialOrder::eliminate_first(r));

    // project the y-free part back to the base ring
    std::vector<MultiPoly> backImg;
    for (std::size_t i = 0; i < r; ++i) backImg.push_back(MultiPoly::zero(H.ring)); // never used
    for (std::size_t i = 0; i < n; ++i) backImg.push_back(MultiPoly::variable(H.ring, i));
    std::vector<MultiPoly> eliminated;
    for (const auto& el : egb.elements()) {
        const MultiPoly& p = el[0];
        bool pure = true;
        for (const auto& [e, c] : p.terms()) {
            for (std::size_t i = 0; i < r; ++i)
                if (e[i] > 0) { pure = false; break; }
            if (!pure) break;
        }
        if (pure) eliminated.push_back(p.substitute(backImg, H.ring));
    }

    std::vector<MultiPoly> composed;
    for (const auto& g : orbit.ideal) composed.push_back(g.substitute(H.moment, H.ring));

    GroebnerBasis lhs = gb_of_ideal(H.ring, eliminated, MonomialOrder::degrevlex());
    GroebnerBasis rhs = gb_of_ideal(H.ring, composed, MonomialOrder::degrevlex());
    for (std::size_t k = 0; k < eliminated.size(); ++k)
        if (!rhs.contains_poly(eliminated[k]))
            return Check::fail({"classical_consistency_eliminated_not_in_composed",
                                {static_cast<std::int64_t>(k)},
                                rhs.normal_form_poly(eliminated[k]).str()});
    for (std::size_t k = 0; k < composed.size(); ++k)
        if (!lhs.contains_poly(composed[k]))
            return Check::fail({"classical_consistency_composed_not_in_eliminated",
                                {static_cast<std::int64_t>(k)},
                                lhs.normal_form_poly(composed[k]).str()});
    return Check::pass();
}

} // namespace symred
