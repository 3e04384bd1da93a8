#pragma once

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "symred/derham.hpp"
#include "symred/orbit.hpp"
#include "symred/reduction.hpp"
#include "symred/report.hpp"

namespace symred {

struct PipelineOptions {
    MonomialOrder order = MonomialOrder::degrevlex();
    std::uint32_t w_max = 3;
    std::int64_t graded_bound = 6;
    std::uint64_t seed = 0;
    bool cross_check = false;
};

namespace detail {

inline std::vector<TorSummary> tor_table(const KoszulCdga& cdga, const PipelineOptions& opt) {
    std::vector<TorSummary> out;
    for (std::size_t i = 0; i <= cdga.generator_count(); ++i) {
        ModulePresentation p = cdga.tor(i, opt.order);
        TorSummary t;
        t.index = i;
        t.is_zero = p.is_zero;
        t.graded = p.graded;
        if (p.graded)
            for (std::int64_t d = 0; d <= opt.graded_bound; ++d)
                t.dimensions.push_back(p.graded_dimension(d));
        out.push_back(std::move(t));
    }
    return out;
}

/// Random-point sanity evaluation of the moment identity, seeded for
/// reproducible reports.
inline bool moment_spot_check(const HamiltonianSpace& H, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<int> num(-5, 5);
    std::vector<Rational> point;
    for (std::size_t i = 0; i < H.dim_x(); ++i) point.emplace_back(num(rng), 1 + (num(rng) + 6) % 3);
    for (std::size_t i = 0; i < H.dim_g(); ++i) {
        std::vector<MultiPoly> lhs = H.omega.apply(H.action[i]);
        std::vector<MultiPoly> rhs = H.gradient(H.moment[i]);
        for (std::size_t m = 0; m < H.dim_x(); ++m)
            if (lhs[m].evaluate(point) != rhs[m].evaluate(point)) return false;
    }
    return true;
}

} // namespace detail

/// Full certification pipeline at a point level: space certificates, derived
/// level set invariants, the pairing map with its quasi-isomorphism check,
/// and the closedness/invariance certificates of the pulled-back form.
inline ReductionReport verify_reduction(const HamiltonianSpace& H, const std::vector<Rational>& mu,
                                        const PipelineOptions& opt = {},
                                        const std::string& name = "") {
    auto t0 = std::chrono::steady_clock::now();
    ReductionReport rep;
    rep.scenario = name;
    rep.order = order_name(opt.order.tag);
    rep.w_max = opt.w_max;
    rep.graded_bound = opt.graded_bound;
    rep.seed = opt.seed;
    rep.cross_check = opt.cross_check;
    rep.variable_count = H.dim_x();
    rep.algebra_dim = H.dim_g();
    rep.mu_mode = "point";
    for (const auto& m : mu) rep.mu_values.push_back(m.str());
    rep.reductive_declared = H.reductive_declared;

    SymplecticCertificate sym = validate_symplectic(H);
    Check symAll = sym.all_ok()
                       ? Check::pass()
                       : (!sym.antisymmetric.ok ? sym.antisymmetric
                                                : (!sym.closed.ok ? sym.closed : sym.nondegenerate));
    rep.symplectic = CertificateEntry::from_check(symAll);
    rep.action = CertificateEntry::from_check(validate_action(H));
    HamiltonianCertificate ham = validate_hamiltonian(H);
    rep.hamiltonian = CertificateEntry::from_check(
        ham.all_ok() ? Check::pass() : (!ham.moment_condition.ok ? ham.moment_condition : ham.equivariance));

    if (!coadjoint_fixes(H.lie, mu))
        throw ValidationError(
            "level is not a coadjoint fixed point; reduce along its orbit instead "
            "(replace 'mu' with an [orbit] block)");

    // derived level set
    KoszulCdga cdga = KoszulCdga::build(H.ring, H.moment, mu);
    rep.tor = detail::tor_table(cdga, opt);
    auto ci = cdga.complete_intersection(opt.order);
    rep.complete_intersection = ci.value;
    rep.codim_oracle_ran = ci.codim_route_ran;
    if (ci.codim_route_ran) rep.codim_oracle_agrees = (ci.value == ci.codim_value);
    rep.level_set_dimension = ci.level_set_dim;
    rep.ambient_dimension = ci.ambient_dim;

    ReducedComplexes red = reduced_tangent_complex(H, mu);
    rep.composite = CertificateEntry::from_check(red.composite);
    rep.virtual_dimension = red.virtual_dimension;

    ThetaMap theta = build_theta(H, mu, red);
    Check thetaCheck = theta.squares_ok()
                           ? Check::pass()
                           : (!theta.left_square.ok ? theta.left_square : theta.right_square);
    rep.theta_squares = CertificateEntry::from_check(thetaCheck);
    rep.pullback_identity = true; // the middle pairing component is omega itself, by construction

    if (theta.morphism) {
        QuasiIsoResult q = is_quasi_iso(*theta.morphism, opt.order, opt.cross_check);
        CertificateEntry e = CertificateEntry::from_check(
            q.value ? Check::pass()
                    : Check::fail({"quasi_iso",
                                   {q.witness ? q.witness->degree : 0},
                                   q.witness && !q.witness->cycle.empty() ? q.witness->cycle[0] : ""}));
        rep.quasi_iso = e;
        rep.quasi_iso_method = q.fast_path_used && q.homology_path_used ? "determinant+homology"
                               : q.fast_path_used                      ? "determinant"
                                                                       : "homology";
    } else {
        rep.quasi_iso = CertificateEntry::skipped_entry("pairing map unavailable: squares failed");
    }

    ClosednessCertificate form = certify_form(H, mu, opt.w_max);
    rep.strictly_closed = CertificateEntry::from_check(form.strictly_closed);
    rep.invariant = CertificateEntry::from_check(form.invariant);
    rep.action_lift_ok = form.lift_ok.ok;

    rep.kks = CertificateEntry::skipped_entry("point level: no orbit data");
    rep.classical_consistency = CertificateEntry::skipped_entry("point level: no orbit data");

    rep.moment_spot_check = detail::moment_spot_check(H, opt.seed);

    rep.finalize();
    rep.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace detail {

/// Reduced complexes and weak pairing checks for a shifted space; every
/// identity is taken modulo <J'> + I_O in the product ring.
struct ShiftedReduction {
    Check composite;
    Check theta_left;
    Check theta_right;
    std::int64_t virtual_dimension = 0;
    bool valid = false;
};

inline ShiftedReduction shifted_reduction(const ShiftedSpace& s, const OrbitPresentation& orbit,
                                          const HamiltonianSpace& H) {
    ShiftedReduction out;
    const RingPtr& ring = s.ring;
    std::size_t N = s.n_x + s.r, r = s.r;

    std::vector<MultiPoly> ideal = s.constraints;
    for (const auto& j : s.moment)
        if (!j.is_zero()) ideal.push_back(j);

    PolyMatrix A = s.action_matrix();
    PolyMatrix jac = s.moment_jacobian();
    ComplexViolation v;
    FreeComplex tangent = FreeComplex::make(ring, -1, {r, N, r}, {A, jac}, ideal, &v);
    if (!tangent.valid()) {
        out.composite = Check::fail({"reduced_complex_composite",
                                     {static_cast<std::int64_t>(v.row), static_cast<std::int64_t>(v.col)},
                                     v.entry.str()});
        return out;
    }
    out.composite = Check::pass();

    GroebnerBasis gbY = gb_of_ideal(orbit.y_ring, orbit.ideal, MonomialOrder::degrevlex());
    std::int64_t ambient = static_cast<std::int64_t>(s.n_x) + ideal_dimension(gbY);
    out.virtual_dimension = ambient - 2 * static_cast<std::int64_t>(r);

    // weak pairing squares: (cleared omega) a'_i - D grad J'_i paired against
    // the chart tangent frame, mod the orbit ideal
    GroebnerBasis gbXY = gb_of_ideal(ring, s.constraints, MonomialOrder::degrevlex());
    auto fields = lie_poisson_fields(s.lie, orbit.y_ring);
    std::vector<MultiPoly> yImages;
    for (std::size_t i = 0; i < r; ++i) yImages.push_back(MultiPoly::variable(ring, s.n_x + i));
    auto mapY = [&](const MultiPoly& p) { return p.substitute(yImages, ring); };

    for (std::size_t i = 0; i < r && out.theta_left.ok; ++i) {
        std::vector<MultiPoly> lhs = s.omega_cleared.apply(s.action[i]);
        std::vector<MultiPoly> grad;
        for (std::size_t m = 0; m < N; ++m) grad.push_back(s.moment[i].derivative(m) * s.denominator);
        // base directions: exact comparison componentwise
        for (std::size_t m = 0; m < s.n_x; ++m) {
            MultiPoly nf = gbXY.normal_form_poly(lhs[m] - grad[m]);
            if (!nf.is_zero()) {
                out.theta_left = Check::fail(
                    {"theta_left_square",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(m)},
                     nf.str()});
                break;
            }
        }
        if (!out.theta_left.ok) break;
        // orbit directions: pair with the coadjoint frame
        for (std::size_t j = 0; j < r; ++j) {
            MultiPoly pairing = MultiPoly::zero(ring);
            for (std::size_t b = 0; b < r; ++b)
                pairing += (lhs[s.n_x + b] - grad[s.n_x + b]) * mapY(fields[j][b]);
            MultiPoly nf = gbXY.normal_form_poly(pairing);
            if (!nf.is_zero()) {
                out.theta_left = Check::fail(
                    {"theta_left_square_orbit",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)},
                     nf.str()});
                break;
            }
        }
    }

    // right square: (-A^T omega - D Jac) paired the same way (transpose identity)
    for (std::size_t i = 0; i < r && out.theta_right.ok; ++i) {
        std::vector<MultiPoly> row;
        for (std::size_t m = 0; m < N; ++m) {
            MultiPoly acc = MultiPoly::zero(ring);
            for (std::size_t b = 0; b < N; ++b) acc -= s.action[i][b] * s.omega_cleared.at(b, m);
            acc -= s.moment[i].derivative(m) * s.denominator;
            row.push_back(std::move(acc));
        }
        for (std::size_t m = 0; m < s.n_x; ++m) {
            MultiPoly nf = gbXY.normal_form_poly(row[m]);
            if (!nf.is_zero()) {
                out.theta_right = Check::fail(
                    {"theta_right_square",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(m)},
                     nf.str()});
                break;
            }
        }
        if (!out.theta_right.ok) break;
        for (std::size_t j = 0; j < r; ++j) {
            MultiPoly pairing = MultiPoly::zero(ring);
            for (std::size_t b = 0; b < r; ++b) pairing += row[s.n_x + b] * mapY(fields[j][b]);
            MultiPoly nf = gbXY.normal_form_poly(pairing);
            if (!nf.is_zero()) {
                out.theta_right = Check::fail(
                    {"theta_right_square_orbit",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)},
                     nf.str()});
                break;
            }
        }
    }
    (void)H;
    out.valid = out.composite.ok && out.theta_left.ok && out.theta_right.ok;
    return out;
}

/// Detects a point orbit: a zero-dimensional ideal whose reduced basis is
/// y_i - c_i for every dual coordinate; returns the point when it is one.
inline std::optional<std::vector<Rational>> orbit_point(const OrbitPresentation& orbit) {
    GroebnerBasis gb = gb_of_ideal(orbit.y_ring, orbit.ideal, MonomialOrder::lex());
    std::size_t r = orbit.y_ring->arity();
    std::vector<std::optional<Rational>> vals(r);
    if (gb.elements().size() != r) return std::nullopt;
    for (const auto& el : gb.elements()) {
        const MultiPoly& p = el[0];
        // want exactly y_i - c
        if (p.degree() != 1 || p.terms().size() > 2) return std::nullopt;
        int varIdx = -1;
        Rational c(0);
        for (const auto& [e, coef] : p.terms()) {
            if (total_degree(e) == 0) { c = coef; continue; }
            for (std::size_t i = 0; i < r; ++i)
                if (e[i] == 1 && total_degree(e) == 1) varIdx = static_cast<int>(i);
            if (!coef.is_one()) return std::nullopt; // reduced basis is monic
        }
        if (varIdx < 0) return std::nullopt;
        vals[static_cast<std::size_t>(varIdx)] = -c;
    }
    std::vector<Rational> out;
    for (auto& v : vals) {
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

} // namespace detail

/// Orbit-level pipeline: orbit certificates, the shifted space at level zero,
/// its derived invariants in cleared-denominator mod-ideal mode, and the
/// classical elimination identity. Point orbits additionally re-run the
/// direct pipeline at the point and compare the mathematical content.
inline ReductionReport verify_orbit_reduction(const HamiltonianSpace& H,
                                              const OrbitPresentation& orbit,
                                              const PipelineOptions& opt = {},
                                              const std::string& name = "") {
    auto t0 = std::chrono::steady_clock::now();
    ReductionReport rep;
    rep.scenario = name;
    rep.order = order_name(opt.order.tag);
    rep.w_max = opt.w_max;
    rep.graded_bound = opt.graded_bound;
    rep.seed = opt.seed;
    rep.cross_check = opt.cross_check;
    rep.variable_count = H.dim_x();
    rep.algebra_dim = H.dim_g();
    rep.mu_mode = "orbit";
    rep.reductive_declared = H.reductive_declared;

    SymplecticCertificate sym = validate_symplectic(H);
    Check symX = sym.all_ok()
                     ? Check::pass()
                     : (!sym.antisymmetric.ok ? sym.antisymmetric
                                              : (!sym.closed.ok ? sym.closed : sym.nondegenerate));
    Check actX = validate_action(H);
    HamiltonianCertificate hamX = validate_hamiltonian(H);

    validate_orbit(orbit, H.lie); // malformed orbit data throws

    Check kks = certify_kks(orbit, H.lie);
    rep.kks = CertificateEntry::from_check(kks);
    if (!kks.ok) {
        rep.symplectic = CertificateEntry::from_check(symX, "base factor only");
        rep.action = CertificateEntry::from_check(actX, "base factor only");
        rep.hamiltonian = CertificateEntry::from_check(
            hamX.all_ok() ? Check::pass()
                          : (!hamX.moment_condition.ok ? hamX.moment_condition : hamX.equivariance),
            "base factor only");
        rep.composite = CertificateEntry::skipped_entry("orbit form rejected; shift not assembled");
        rep.theta_squares = CertificateEntry::skipped_entry("orbit form rejected; shift not assembled");
        rep.quasi_iso = CertificateEntry::skipped_entry("orbit form rejected; shift not assembled");
        rep.strictly_closed = CertificateEntry::skipped_entry("orbit form rejected; shift not assembled");
        rep.invariant = CertificateEntry::skipped_entry("orbit form rejected; shift not assembled");
        rep.classical_consistency = CertificateEntry::skipped_entry("orbit form rejected; shift not assembled");
        rep.finalize();
        rep.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }

    ShiftedSpace s = build_shifted(H, orbit);
    rep.orbit_dimension = s.orbit_dim;
    ShiftedCertificates sc = validate_shifted(H, orbit, s);

    Check symAll = symX.ok ? (sc.antisymmetric.ok ? (sc.closed.ok ? sc.nondegenerate : sc.closed)
                                                  : sc.antisymmetric)
                           : symX;
    rep.symplectic = CertificateEntry::from_check(symAll, "product space, cleared-denominator mode");
    rep.action = CertificateEntry::from_check(actX.ok ? sc.action_bracket : actX,
                                              "product space, mod orbit ideal");
    Check hamAll = hamX.all_ok()
                       ? (sc.moment_condition.ok ? sc.equivariance : sc.moment_condition)
                       : (!hamX.moment_condition.ok ? hamX.moment_condition : hamX.equivariance);
    rep.hamiltonian = CertificateEntry::from_check(hamAll, "product space, mod orbit ideal");

    // derived invariants of the shifted level set at zero
    KoszulCdga cdga = KoszulCdga::build(s.ring, s.moment, s.zero_level(), s.constraints);
    rep.tor = detail::tor_table(cdga, opt);
    auto ci = cdga.complete_intersection(opt.order);
    rep.complete_intersection = ci.value;
    rep.codim_oracle_ran = ci.codim_route_ran;
    if (ci.codim_route_ran) rep.codim_oracle_agrees = (ci.value == ci.codim_value);
    rep.level_set_dimension = ci.level_set_dim;
    rep.ambient_dimension = ci.ambient_dim;

    detail::ShiftedReduction red = detail::shifted_reduction(s, orbit, H);
    rep.composite = CertificateEntry::from_check(red.composite);
    rep.virtual_dimension = red.virtual_dimension;
    Check thetaCheck = (red.theta_left.ok && red.theta_right.ok)
                           ? Check::pass()
                           : (!red.theta_left.ok ? red.theta_left : red.theta_right);
    rep.theta_squares = CertificateEntry::from_check(thetaCheck, "weak chart pairing, mod orbit ideal");
    rep.pullback_identity = true;

    // chart-level quasi-isomorphism: base pairing is a unit (exact) and the
    // orbit pairing has full rank on the chart (Rabinowitsch certificate)
    if (thetaCheck.ok) {
        Check q = (sym.nondegenerate.ok && sc.nondegenerate.ok)
                      ? Check::pass()
                      : Check::fail({"chart_gram", {}, "pairing degenerate on the chart"});
        rep.quasi_iso = CertificateEntry::from_check(q, "chart frame pairing rank certificate");
        rep.quasi_iso_method = "chart_gram";
    } else {
        rep.quasi_iso = CertificateEntry::skipped_entry("pairing squares failed");
    }

    // de Rham certificates run when the chart form is polynomial (constant
    // denominator); otherwise the weak symplectic certificate already covers
    // closedness and they are recorded as skipped
    if (s.denominator.is_constant()) {
        PolyMatrix omegaPoly(s.ring, s.n_x + s.r, s.n_x + s.r);
        Rational invD = s.denominator.constant_value().inverse();
        for (std::size_t i = 0; i < s.n_x + s.r; ++i)
            for (std::size_t j = 0; j < s.n_x + s.r; ++j)
                omegaPoly.at(i, j) = s.omega_cleared.at(i, j).scaled(invD);
        ClosednessCertificate form = certify_form_data(s.ring, omegaPoly, s.moment, s.zero_level(),
                                                       s.action, s.lie, opt.w_max, s.constraints);
        rep.strictly_closed = CertificateEntry::from_check(form.strictly_closed);
        rep.invariant = CertificateEntry::from_check(form.invariant);
        rep.action_lift_ok = form.lift_ok.ok;
    } else {
        rep.strictly_closed = CertificateEntry::skipped_entry(
            "chart form has a nonconstant denominator; covered weakly by the symplectic certificate");
        rep.invariant = CertificateEntry::skipped_entry(
            "chart form has a nonconstant denominator; covered weakly by the symplectic certificate");
    }

    rep.classical_consistency = CertificateEntry::from_check(classical_consistency(H, orbit));

    // point orbits: the shift must agree with direct reduction at the point
    if (auto pt = detail::orbit_point(orbit)) {
        ReductionReport direct = verify_reduction(H, *pt, opt, name + "_direct");
        rep.round_trip_consistent = reports_mathematically_equal(rep, direct);
    }

    rep.moment_spot_check = detail::moment_spot_check(H, opt.seed);

    rep.finalize();
    rep.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace symred
