#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "symred/hamspace.hpp"
#include "symred/koszul.hpp"

namespace symred {

/// Monomial in the generators of the weight-graded de Rham algebra of a
/// Koszul CDGA. Odd generators are the one-form coordinates dx_j (bidegree
/// (0,1)) and the level-set generators eta_i (bidegree (-1,0)); the dEta_i
/// (bidegree (-1,1)) are even and may appear with any exponent. Polynomial
/// content in the x_j lives in the coefficient.
struct FormMonomial {
    std::uint64_t dx_mask = 0;
    std::uint64_t eta_mask = 0;
    Exponents deta_exp;

    friend bool operator<(const FormMonomial& a, const FormMonomial& b) {
        return std::tie(a.dx_mask, a.eta_mask, a.deta_exp) <
               std::tie(b.dx_mask, b.eta_mask, b.deta_exp);
    }
    friend bool operator==(const FormMonomial& a, const FormMonomial& b) {
        return a.dx_mask == b.dx_mask && a.eta_mask == b.eta_mask && a.deta_exp == b.deta_exp;
    }
};

/// Generator table and truncation weight for the form algebra of one Koszul
/// CDGA. Sign conventions, fixed once and locked by the d^2 = 0 property
/// tests:
///   parity(generator) = (cohomological degree + weight) mod 2,
///   odd generator order dx_1 < ... < dx_n < eta_1 < ... < eta_r,
///   d_internal:  eta_i -> J_i - mu_i,  dEta_i -> -sum_j dJ_i/dx_j dx_j,
///   d_derham:    x_j -> dx_j,  eta_i -> dEta_i,
/// so the two differentials anticommute.
class FormAlgebra {
public:
    static std::shared_ptr<const FormAlgebra> make(const KoszulCdga& cdga, std::uint32_t w_max) {
        auto alg = std::make_shared<FormAlgebra>();
        alg->ring_ = cdga.ring();
        alg->n_ = cdga.ring()->arity();
        alg->r_ = cdga.generator_count();
        if (alg->n_ > 60 || alg->r_ > 60) throw ShapeError("form algebra generator count too large");
        alg->deta_values_ = cdga.differential_values();
        alg->jac_.resize(alg->r_);
        for (std::size_t i = 0; i < alg->r_; ++i)
            for (std::size_t j = 0; j < alg->n_; ++j)
                alg->jac_[i].push_back(cdga.moment()[i].derivative(j));
        alg->w_max_ = w_max;
        return alg;
    }

    const RingPtr& ring() const { return ring_; }
    std::size_t var_count() const { return n_; }
    std::size_t eta_count() const { return r_; }
    std::uint32_t weight_truncation() const { return w_max_; }
    const MultiPoly& deta_value(std::size_t i) const { return deta_values_[i]; }
    const MultiPoly& jacobian_entry(std::size_t i, std::size_t j) const { return jac_[i][j]; }

    std::uint32_t weight(const FormMonomial& m) const {
        return static_cast<std::uint32_t>(__builtin_popcountll(m.dx_mask)) + total_degree(m.deta_exp);
    }
    std::int32_t coh_degree(const FormMonomial& m) const {
        return -static_cast<std::int32_t>(__builtin_popcountll(m.eta_mask)) -
               static_cast<std::int32_t>(total_degree(m.deta_exp));
    }
    // parity of the whole monomial = number of odd generators mod 2
    int parity(const FormMonomial& m) const {
        return (__builtin_popcountll(m.dx_mask) + __builtin_popcountll(m.eta_mask)) & 1;
    }

    std::string monomial_str(const FormMonomial& m) const {
        std::string out;
        auto app = [&](const std::string& s) {
            if (!out.empty()) out += "^";
            out += s;
        };
        for (std::size_t j = 0; j < n_; ++j)
            if (m.dx_mask & (1ull << j)) app("d" + ring_->vars[j]);
        for (std::size_t i = 0; i < r_; ++i)
            if (m.eta_mask & (1ull << i)) app("eta" + std::to_string(i + 1));
        for (std::size_t i = 0; i < r_; ++i)
            if (m.deta_exp[i] > 0) {
                std::string s = "deta" + std::to_string(i + 1);
                if (m.deta_exp[i] > 1) s += "**" + std::to_string(m.deta_exp[i]);
                app(s);
            }
        return out;
    }

private:
    RingPtr ring_;
    std::size_t n_ = 0, r_ = 0;
    std::vector<MultiPoly> deta_values_;
    std::vector<std::vector<MultiPoly>> jac_;
    std::uint32_t w_max_ = 3;
};

using FormAlgebraPtr = std::shared_ptr<const FormAlgebra>;

/// Element of the weight-truncated form algebra: finite sum of monomials with
/// polynomial coefficients, kept in canonical normal form under the sign
/// rules. Terms above the truncation weight are dropped on every operation.
class FormElement {
public:
    FormElement() = default;
    explicit FormElement(FormAlgebraPtr alg) : alg_(std::move(alg)) {}

    static FormElement zero(const FormAlgebraPtr& alg) { return FormElement(alg); }

    static FormElement from_poly(const FormAlgebraPtr& alg, const MultiPoly& f) {
        FormElement e(alg);
        FormMonomial one;
        one.deta_exp.assign(alg->eta_count(), 0);
        e.add_term(one, f);
        return e;
    }

    static FormElement generator_dx(const FormAlgebraPtr& alg, std::size_t j) {
        FormElement e(alg);
        FormMonomial m;
        m.dx_mask = 1ull << j;
        m.deta_exp.assign(alg->eta_count(), 0);
        e.add_term(m, MultiPoly::constant(alg->ring(), Rational(1)));
        return e;
    }

    static FormElement generator_eta(const FormAlgebraPtr& alg, std::size_t i) {
        FormElement e(alg);
        FormMonomial m;
        m.eta_mask = 1ull << i;
        m.deta_exp.assign(alg->eta_count(), 0);
        e.add_term(m, MultiPoly::constant(alg->ring(), Rational(1)));
        return e;
    }

    static FormElement generator_deta(const FormAlgebraPtr& alg, std::size_t i) {
        FormElement e(alg);
        FormMonomial m;
        m.deta_exp.assign(alg->eta_count(), 0);
        m.deta_exp[i] = 1;
        e.add_term(m, MultiPoly::constant(alg->ring(), Rational(1)));
        return e;
    }

    const FormAlgebraPtr& algebra() const { return alg_; }
    const std::map<FormMonomial, MultiPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::uint32_t max_weight() const {
        std::uint32_t w = 0;
        for (const auto& [m, c] : terms_) w = std::max(w, alg_->weight(m));
        return w;
    }

    FormElement operator-() const {
        FormElement e(alg_);
        for (const auto& [m, c] : terms_) e.terms_[m] = -c;
        return e;
    }

    FormElement& operator+=(const FormElement& o) {
        check_alg(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    FormElement& operator-=(const FormElement& o) {
        check_alg(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend FormElement operator+(FormElement a, const FormElement& b) { return a += b; }
    friend FormElement operator-(FormElement a, const FormElement& b) { return a -= b; }

    FormElement scaled(const MultiPoly& f) const {
        FormElement e(alg_);
        for (const auto& [m, c] : terms_) e.add_term(m, c * f);
        return e;
    }

    friend FormElement operator*(const FormElement& a, const FormElement& b) {
        a.check_alg(b);
        FormElement out(a.alg_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                FormMonomial prod;
                int sign = merge_monomials(ma, mb, prod);
                if (sign == 0) continue;
                MultiPoly coef = ca * cb;
                if (sign < 0) coef = -coef;
                out.add_term(prod, coef);
            }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            std::string mono = alg_->monomial_str(m);
            if (mono.empty()) out += "(" + c.str() + ")";
            else out += "(" + c.str() + ") " + mono;
        }
        return out;
    }

    // internal: used by the derivation engine
    void add_term(const FormMonomial& m, const MultiPoly& c) {
        if (c.is_zero()) return;
        if (alg_->weight(m) > alg_->weight_truncation()) return; // truncated away
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_.emplace(m, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Sign to merge two monomials into canonical order; 0 when an odd
    /// generator repeats. Inversions are counted between the two sorted odd
    /// generator lists (dx index j, eta index n + i).
    static int merge_monomials(const FormMonomial& a, const FormMonomial& b, FormMonomial& out) {
        if ((a.dx_mask & b.dx_mask) || (a.eta_mask & b.eta_mask)) return 0;
        out.dx_mask = a.dx_mask | b.dx_mask;
        out.eta_mask = a.eta_mask | b.eta_mask;
        out.deta_exp = a.deta_exp;
        for (std::size_t i = 0; i < out.deta_exp.size(); ++i) out.deta_exp[i] += b.deta_exp[i];
        // inversions: pairs (odd gen of a) > (odd gen of b)
        int inversions = 0;
        std::vector<unsigned> aIdx, bIdx;
        collect_odd_indices(a, aIdx);
        collect_odd_indices(b, bIdx);
        for (unsigned bi : bIdx)
            for (unsigned ai : aIdx)
                if (ai > bi) ++inversions;
        return (inversions & 1) ? -1 : 1;
    }

private:
    static void collect_odd_indices(const FormMonomial& m, std::vector<unsigned>& out) {
        for (unsigned j = 0; j < 64; ++j)
            if (m.dx_mask & (1ull << j)) out.push_back(j);
        for (unsigned i = 0; i < 64; ++i)
            if (m.eta_mask & (1ull << i)) out.push_back(64 + i);
    }

    void check_alg(const FormElement& o) const {
        if (alg_ != o.alg_) throw RingMismatchError("form elements over different algebras");
    }

    FormAlgebraPtr alg_;
    std::map<FormMonomial, MultiPoly> terms_;
};

namespace detail {

/// Applies an odd derivation given by its generator images. Images of x_j
/// (for the coefficient rule) may be null when the derivation kills the base
/// polynomials.
struct OddDerivation {
    FormAlgebraPtr alg;
    // image of a coefficient polynomial (nullptr-like: empty optional means zero)
    std::function<FormElement(const MultiPoly&)> on_coefficient;
    std::function<FormElement(std::size_t)> on_dx;   // image of dx_j
    std::function<FormElement(std::size_t)> on_eta;  // image of eta_i
    std::function<FormElement(std::size_t)> on_deta; // image of dEta_i

    FormElement apply(const FormElement& f) const {
        FormElement out(alg);
        for (const auto& [m, coef] : f.terms()) {
            // coefficient rule
            if (on_coefficient) {
                FormElement dc = on_coefficient(coef);
                if (!dc.is_zero()) {
                    FormElement mono(alg);
                    mono.add_term(m, MultiPoly::constant(alg->ring(), Rational(1)));
                    out += dc * mono;
                }
            }
            // odd generators, canonical order: dx block then eta block
            std::vector<std::pair<char, std::size_t>> odd;
            for (std::size_t j = 0; j < alg->var_count(); ++j)
                if (m.dx_mask & (1ull << j)) odd.push_back({'x', j});
            for (std::size_t i = 0; i < alg->eta_count(); ++i)
                if (m.eta_mask & (1ull << i)) odd.push_back({'e', i});

            for (std::size_t t = 0; t < odd.size(); ++t) {
                FormElement img = odd[t].first == 'x' ? on_dx(odd[t].second) : on_eta(odd[t].second);
                if (img.is_zero()) continue;
                // prefix (odd gens before t) * img * suffix (odd gens after t, dEta block)
                FormMonomial prefix, suffix;
                prefix.deta_exp.assign(alg->eta_count(), 0);
                suffix.deta_exp = m.deta_exp;
                for (std::size_t s = 0; s < odd.size(); ++s) {
                    FormMonomial& dst = s < t ? prefix : suffix;
                    if (s == t) continue;
                    if (odd[s].first == 'x') dst.dx_mask |= (1ull << odd[s].second);
                    else dst.eta_mask |= (1ull << odd[s].second);
                }
                MultiPoly c = coef;
                if (t & 1) c = -c;
                FormElement pre(alg);
                pre.add_term(prefix, c);
                FormElement suf(alg);
                suf.add_term(suffix, MultiPoly::constant(alg->ring(), Rational(1)));
                out += pre * (img * suf);
            }

            // even dEta generators; passing the whole odd block costs the block parity
            for (std::size_t i = 0; i < alg->eta_count(); ++i) {
                if (m.deta_exp[i] == 0) continue;
                FormElement img = on_deta(i);
                if (img.is_zero()) continue;
                FormMonomial rest = m;
                rest.deta_exp[i] -= 1;
                MultiPoly c = coef.scaled(Rational(static_cast<std::int64_t>(m.deta_exp[i])));
                if (odd.size() & 1) c = -c;
                FormElement restEl(alg);
                restEl.add_term(rest, c);
                out += restEl * img;
            }
        }
        return out;
    }
};

} // namespace detail

/// Koszul differential extended to forms: raises cohomological degree by one
/// and preserves weight.
inline FormElement d_internal(const FormElement& f) {
    const FormAlgebraPtr& alg = f.algebra();
    detail::OddDerivation D;
    D.alg = alg;
    D.on_coefficient = nullptr;
    D.on_dx = [&](std::size_t) { return FormElement::zero(alg); };
    D.on_eta = [&](std::size_t i) { return FormElement::from_poly(alg, alg->deta_value(i)); };
    D.on_deta = [&](std::size_t i) {
        FormElement e = FormElement::zero(alg);
        for (std::size_t j = 0; j < alg->var_count(); ++j) {
            const MultiPoly& dj = alg->jacobian_entry(i, j);
            if (dj.is_zero()) continue;
            e += FormElement::generator_dx(alg, j).scaled(-dj);
        }
        return e;
    };
    return D.apply(f);
}

/// de Rham differential: raises weight by one. Errors when a term already
/// sits at the truncation weight, since the result would silently vanish.
inline FormElement d_derham(const FormElement& f) {
    const FormAlgebraPtr& alg = f.algebra();
    for (const auto& [m, c] : f.terms())
        if (alg->weight(m) >= alg->weight_truncation())
            throw ValidationError("d_derham would overflow the weight truncation");
    detail::OddDerivation D;
    D.alg = alg;
    D.on_coefficient = [&](const MultiPoly& c) {
        FormElement e = FormElement::zero(alg);
        for (std::size_t j = 0; j < alg->var_count(); ++j) {
            MultiPoly dj = c.derivative(j);
            if (dj.is_zero()) continue;
            e += FormElement::generator_dx(alg, j).scaled(dj);
        }
        return e;
    };
    D.on_dx = [&](std::size_t) { return FormElement::zero(alg); };
    D.on_eta = [&](std::size_t i) { return FormElement::generator_deta(alg, i); };
    D.on_deta = [&](std::size_t) { return FormElement::zero(alg); };
    return D.apply(f);
}

/// Polynomial vector field on the base extended by a linear action on the
/// level-set generators; the eta part records d(eta_j) = sum_k coeff[j][k] eta_k.
struct ExtendedField {
    std::vector<MultiPoly> x_parts;
    std::vector<std::vector<Rational>> eta_parts; // [i][k]: coefficient of eta_k in image of dEta_i
};

/// Interior product: odd derivation of weight -1 with dx_j -> v_j and
/// dEta_i -> (eta part)_i.
inline FormElement contract(const ExtendedField& v, const FormElement& f) {
    const FormAlgebraPtr& alg = f.algebra();
    if (v.x_parts.size() != alg->var_count())
        throw ShapeError("contract: field has wrong number of base components");
    detail::OddDerivation D;
    D.alg = alg;
    D.on_coefficient = nullptr;
    D.on_dx = [&](std::size_t j) { return FormElement::from_poly(alg, v.x_parts[j]); };
    D.on_eta = [&](std::size_t) { return FormElement::zero(alg); };
    D.on_deta = [&](std::size_t i) {
        FormElement e = FormElement::zero(alg);
        if (i < v.eta_parts.size())
            for (std::size_t k = 0; k < v.eta_parts[i].size(); ++k) {
                if (v.eta_parts[i][k].is_zero()) continue;
                e += FormElement::generator_eta(alg, k)
                         .scaled(MultiPoly::constant(alg->ring(), v.eta_parts[i][k]));
            }
        return e;
    };
    return D.apply(f);
}

/// Cartan construction of the Lie derivative along an extended field.
inline FormElement lie_derivative(const ExtendedField& v, const FormElement& f) {
    return d_derham(contract(v, f)) + contract(v, d_derham(f));
}

struct ActionLift {
    std::vector<ExtendedField> fields;
    Check commutes; // [delta_i, d_internal] = 0, checked on generators
};

/// Extends each action field to the Koszul CDGA. The eta coefficients are
/// the coadjoint ones, lambda[i][j][k] = -c[i][j][k]; the defining identity
/// a_i(J_j - mu_j) = sum_k lambda (J_k - mu_k) is verified exactly and holds
/// precisely for equivariant data at a coadjoint-fixed level.
inline ActionLift lift_action(const HamiltonianSpace& H, const std::vector<Rational>& mu) {
    if (!coadjoint_fixes(H.lie, mu))
        throw ValidationError("lift_action requires a coadjoint-fixed level; use the orbit shift");
    ActionLift out;
    std::size_t r = H.dim_g();
    for (std::size_t i = 0; i < r; ++i) {
        ExtendedField f;
        f.x_parts = H.action[i];
        f.eta_parts.assign(r, std::vector<Rational>(r, Rational(0)));
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) f.eta_parts[j][k] = -H.lie.c[i][j][k];
        out.fields.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < r && out.commutes.ok; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            MultiPoly lhs = H.apply_field(H.action[i], H.moment[j]);
            MultiPoly rhs = MultiPoly::zero(H.ring);
            for (std::size_t k = 0; k < r; ++k) {
                if (out.fields[i].eta_parts[j][k].is_zero()) continue;
                rhs += (H.moment[k] - MultiPoly::constant(H.ring, mu[k]))
                           .scaled(out.fields[i].eta_parts[j][k]);
            }
            MultiPoly diff = lhs - rhs;
            if (!diff.is_zero()) {
                out.commutes = Check::fail({"action_lift_commutation",
                                            {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)},
                                            diff.str()});
                break;
            }
        }
    return out;
}

struct ClosednessCertificate {
    Check strictly_closed; // d_derham and d_internal both vanish on the form
    Check invariant;       // Lie derivative along every action field vanishes
    Check lift_ok;         // the action extended to the CDGA commutes with d_internal
};

/// Builds the weight-2 element representing the pulled-back pairing form and
/// certifies strict closedness plus invariance under the (extended) action.
/// Raw-data variant shared by plain spaces and (point-orbit) shifted spaces.
inline ClosednessCertificate certify_form_data(const RingPtr& ring, const PolyMatrix& omegaMat,
                                               const std::vector<MultiPoly>& moment,
                                               const std::vector<Rational>& mu,
                                               const std::vector<std::vector<MultiPoly>>& action,
                                               const LieAlgebraData& lie, std::uint32_t w_max,
                                               const std::vector<MultiPoly>& constraints = {}) {
    KoszulCdga cdga = KoszulCdga::build(ring, moment, mu, constraints);
    FormAlgebraPtr alg = FormAlgebra::make(cdga, w_max);
    std::size_t n = ring->arity();
    std::size_t r = lie.dim;

    FormElement omega = FormElement::zero(alg);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            const MultiPoly& c = omegaMat.at(j, k);
            if (c.is_zero()) continue;
            omega += (FormElement::generator_dx(alg, j) * FormElement::generator_dx(alg, k)).scaled(c);
        }

    ClosednessCertificate cert;
    FormElement dR = d_derham(omega);
    if (!dR.is_zero()) cert.strictly_closed = Check::fail({"derham_closedness", {}, dR.str()});
    if (cert.strictly_closed.ok) {
        FormElement dI = d_internal(omega);
        if (!dI.is_zero()) cert.strictly_closed = Check::fail({"internal_closedness", {}, dI.str()});
    }

    // invariance: the eta extension is irrelevant for an eta-free form, so a
    // failed lift does not block the Lie derivative computation
    std::vector<ExtendedField> fields;
    for (std::size_t i = 0; i < r; ++i) {
        ExtendedField f;
        f.x_parts = action[i];
        f.eta_parts.assign(r, std::vector<Rational>(r, Rational(0)));
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) f.eta_parts[j][k] = -lie.c[i][j][k];
        fields.push_back(std::move(f));
    }
    if (coadjoint_fixes(lie, mu)) {
        for (std::size_t i = 0; i < r && cert.lift_ok.ok; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                MultiPoly lhs = MultiPoly::zero(ring);
                for (std::size_t idx = 0; idx < n; ++idx)
                    lhs += action[i][idx] * moment[j].derivative(idx);
                for (std::size_t k = 0; k < r; ++k) {
                    if (fields[i].eta_parts[j][k].is_zero()) continue;
                    lhs -= (moment[k] - MultiPoly::constant(ring, mu[k]))
                               .scaled(fields[i].eta_parts[j][k]);
                }
                if (!cdga.complex().constraints_gb().normal_form_poly(lhs).is_zero()) {
                    cert.lift_ok = Check::fail({"action_lift_commutation",
                                                {static_cast<std::int64_t>(i),
                                                 static_cast<std::int64_t>(j)},
                                                lhs.str()});
                    break;
                }
            }
    } else {
        cert.lift_ok = Check::fail({"action_lift_precondition", {}, "level not coadjoint-fixed"});
    }
    for (std::size_t i = 0; i < fields.size() && cert.invariant.ok; ++i) {
        FormElement L = lie_derivative(fields[i], omega);
        if (!L.is_zero())
            cert.invariant = Check::fail({"form_invariance", {static_cast<std::int64_t>(i)}, L.str()});
    }
    return cert;
}

inline ClosednessCertificate certify_form(const HamiltonianSpace& H, const std::vector<Rational>& mu,
                                          std::uint32_t w_max = 3) {
    return certify_form_data(H.ring, H.omega, H.moment, mu, H.action, H.lie, w_max);
}

} // namespace symred
