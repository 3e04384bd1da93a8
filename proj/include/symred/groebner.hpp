#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "symred/matrix.hpp"
#include "symred/poly.hpp"

namespace symred {

/// Element of a free module R^rank, stored as one polynomial per slot.
using ModVec = std::vector<MultiPoly>;

inline bool modvec_is_zero(const ModVec& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

inline ModVec modvec_zero(const RingPtr& ring, std::size_t rank) {
    return ModVec(rank, MultiPoly::zero(ring));
}

inline ModVec modvec_sub(const ModVec& a, const ModVec& b) {
    ModVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline ModVec modvec_scale_mono(const ModVec& v, const Exponents& m, const Rational& c) {
    ModVec r;
    r.reserve(v.size());
    for (const auto& p : v) r.push_back(p.times_monomial(m, c));
    return r;
}

/// Leading term of a module element: slot index, monomial, coefficient.
struct ModLeadTerm {
    std::size_t pos = 0;
    Exponents exp;
    Rational coef;
};

/// Position-over-term order: lower slot index dominates, ties broken by the
/// monomial order. With this order a Groebner basis of elements tracked in a
/// trailing block eliminates the leading block, which is how syzygies and
/// membership expressions are computed below.
struct ModuleOrder {
    MonomialOrder mono;

    int compare(std::size_t pa, const Exponents& ea, std::size_t pb, const Exponents& eb) const {
        if (pa != pb) return pa < pb ? 1 : -1;
        return mono.compare(ea, eb);
    }
};

/// Leading term among slots < posLimit; nullopt if those slots all vanish.
inline std::optional<ModLeadTerm> mod_leading_term(const ModVec& v, const ModuleOrder& order,
                                                   std::size_t posLimit = SIZE_MAX) {
    std::optional<ModLeadTerm> best;
    std::size_t limit = std::min(posLimit, v.size());
    for (std::size_t pos = 0; pos < limit; ++pos) {
        for (const auto& [e, c] : v[pos].terms()) {
            if (!best || order.compare(pos, e, best->pos, best->exp) > 0) {
                best = ModLeadTerm{pos, e, c};
            }
        }
    }
    return best;
}

struct ReductionResult {
    ModVec remainder; // terms in slots < posLimit that no basis leading term divides,
                      // merged with the untouched slots >= posLimit
    bool reduced_to_zero = false;
};

namespace detail {

inline void move_term(ModVec& from, ModVec& to, const ModLeadTerm& t) {
    MultiPoly term = MultiPoly::monomial(from[t.pos].ring(), t.exp, t.coef);
    from[t.pos] -= term;
    to[t.pos] += term;
}

} // namespace detail

/// Full normal form of `f` against `basis`: every term in slots < posLimit is
/// reduced; slots >= posLimit ride along arithmetically (expression tracking).
inline ReductionResult mod_reduce(const ModVec& f, const std::vector<ModVec>& basis,
                                  const std::vector<ModLeadTerm>& basisLT, const ModuleOrder& order,
                                  std::size_t posLimit = SIZE_MAX) {
    ModVec work = f;
    ModVec rem = modvec_zero(work.empty() ? RingPtr() : work[0].ring(), work.size());
    if (work.empty()) return {rem, true};
    while (true) {
        auto lt = mod_leading_term(work, order, posLimit);
        if (!lt) break;
        bool divided = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const auto& blt = basisLT[k];
            if (blt.pos != lt->pos) continue;
            if (!divides(blt.exp, lt->exp)) continue;
            Exponents q = exp_div(lt->exp, blt.exp);
            Rational c = lt->coef / blt.coef;
            ModVec sub = modvec_scale_mono(basis[k], q, c);
            for (std::size_t i = 0; i < work.size(); ++i) work[i] -= sub[i];
            divided = true;
            break;
        }
        if (!divided) detail::move_term(work, rem, *lt);
    }
    // slots >= posLimit still live in `work`; merge them into the result
    for (std::size_t i = std::min(posLimit, work.size()); i < work.size(); ++i) rem[i] += work[i];
    bool zero = true;
    for (std::size_t i = 0; i < std::min(posLimit, rem.size()); ++i)
        if (!rem[i].is_zero()) { zero = false; break; }
    return {rem, zero};
}

/// Groebner basis of a submodule of R^rank (rank 1 = ideal). When `reduced`
/// is set the basis is the unique reduced one for its order: monic, minimal,
/// tail-reduced, sorted by decreasing leading term.
class GroebnerBasis {
public:
    GroebnerBasis() = default;
    GroebnerBasis(RingPtr ring, std::size_t rank, ModuleOrder order)
        : ring_(std::move(ring)), rank_(rank), order_(order) {}

    const RingPtr& ring() const { return ring_; }
    std::size_t rank() const { return rank_; }
    const ModuleOrder& order() const { return order_; }
    bool reduced() const { return reduced_; }
    const std::vector<ModVec>& elements() const { return elems_; }
    const std::vector<ModLeadTerm>& leading_terms() const { return lts_; }
    bool empty() const { return elems_.empty(); }

    ModVec normal_form(const ModVec& f) const {
        if (f.size() != rank_) throw ShapeError("normal_form: rank mismatch");
        return mod_reduce(f, elems_, lts_, order_).remainder;
    }

    bool contains(const ModVec& f) const {
        return modvec_is_zero(normal_form(f));
    }

    MultiPoly normal_form_poly(const MultiPoly& f) const {
        if (rank_ != 1) throw ShapeError("normal_form_poly on module basis");
        return normal_form(ModVec{f})[0];
    }

    bool contains_poly(const MultiPoly& f) const { return normal_form_poly(f).is_zero(); }

    // Internal: append an element already known to extend the basis.
    void push(ModVec v, ModLeadTerm lt) {
        elems_.push_back(std::move(v));
        lts_.push_back(std::move(lt));
    }
    void set_reduced(bool r) { reduced_ = r; }
    void clear() { elems_.clear(); lts_.clear(); }

private:
    RingPtr ring_;
    std::size_t rank_ = 1;
    ModuleOrder order_;
    std::vector<ModVec> elems_;
    std::vector<ModLeadTerm> lts_;
    bool reduced_ = false;
};

namespace detail {

struct PairKey {
    std::uint64_t lcmDeg;
    std::size_t pos;
    Exponents lcm;
    std::size_t i, j;
};

struct PairKeyLess {
    MonomialOrder mono;
    bool operator()(const PairKey& a, const PairKey& b) const {
        if (a.lcmDeg != b.lcmDeg) return a.lcmDeg < b.lcmDeg;
        if (a.pos != b.pos) return a.pos < b.pos;
        int c = mono.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

} // namespace detail

/// Buchberger's algorithm over a free module, normal selection strategy
/// (smallest lcm degree first). The product criterion applies in the ideal
/// case; the chain criterion applies generally. Output is the unique reduced
/// basis, so the result is independent of input order and scheduling.
inline GroebnerBasis buchberger(const RingPtr& ring, std::size_t rank,
                                const std::vector<ModVec>& generators, const ModuleOrder& order) {
    GroebnerBasis gb(ring, rank, order);
    std::vector<ModVec> G;
    std::vector<ModLeadTerm> LT;

    auto add_element = [&](ModVec v) -> bool {
        auto lt = mod_leading_term(v, order);
        if (!lt) return false;
        // monic
        Rational inv = lt->coef.inverse();
        for (auto& p : v) p = p.scaled(inv);
        lt->coef = Rational(1);
        G.push_back(std::move(v));
        LT.push_back(*lt);
        return true;
    };

    for (const auto& g : generators) {
        if (g.size() != rank) throw ShapeError("buchberger: generator rank mismatch");
        for (const auto& p : g) require_same_ring(ring, p.ring(), "buchberger generator");
        add_element(g);
    }

    std::set<detail::PairKey, detail::PairKeyLess> queue{detail::PairKeyLess{order.mono}};
    std::set<std::pair<std::size_t, std::size_t>> done;

    auto push_pairs_for = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (LT[i].pos != LT[j].pos) continue;
            Exponents l = exp_lcm(LT[i].exp, LT[j].exp);
            queue.insert({total_degree(l), LT[i].pos, l, i, j});
        }
    };
    for (std::size_t j = 0; j < G.size(); ++j) push_pairs_for(j);

    while (!queue.empty()) {
        auto key = *queue.begin();
        queue.erase(queue.begin());
        std::size_t i = key.i, j = key.j;
        done.insert({i, j});

        // product criterion (ideal case only)
        if (rank == 1 && exp_coprime(LT[i].exp, LT[j].exp)) continue;

        // chain criterion: some k with LT_k | lcm(i,j) and both supporting
        // pairs already handled earlier
        bool skip = false;
        for (std::size_t k = 0; k < G.size() && !skip; ++k) {
            if (k == i || k == j) continue;
            if (LT[k].pos != key.pos) continue;
            if (!divides(LT[k].exp, key.lcm)) continue;
            auto p1 = std::minmax(i, k);
            auto p2 = std::minmax(j, k);
            if (done.count({p1.first, p1.second}) && done.count({p2.first, p2.second})) skip = true;
        }
        if (skip) continue;

        // S-vector
        Exponents qi = exp_div(key.lcm, LT[i].exp);
        Exponents qj = exp_div(key.lcm, LT[j].exp);
        ModVec s = modvec_sub(modvec_scale_mono(G[i], qi, Rational(1)),
                              modvec_scale_mono(G[j], qj, Rational(1)));
        auto red = mod_reduce(s, G, LT, order);
        if (!red.reduced_to_zero) {
            if (add_element(std::move(red.remainder))) push_pairs_for(G.size() - 1);
        }
    }

    // minimalize: drop elements whose leading term another leading term divides
    std::vector<bool> keep(G.size(), true);
    for (std::size_t a = 0; a < G.size(); ++a) {
        if (!keep[a]) continue;
        for (std::size_t b = 0; b < G.size(); ++b) {
            if (a == b || !keep[b]) continue;
            if (LT[b].pos == LT[a].pos && divides(LT[b].exp, LT[a].exp) &&
                !(LT[b].exp == LT[a].exp && b > a)) {
                keep[a] = false;
                break;
            }
        }
    }
    std::vector<ModVec> M;
    std::vector<ModLeadTerm> MLT;
    for (std::size_t a = 0; a < G.size(); ++a)
        if (keep[a]) { M.push_back(G[a]); MLT.push_back(LT[a]); }

    // tail-reduce each element against the others
    std::vector<ModVec> R(M.size());
    for (std::size_t a = 0; a < M.size(); ++a) {
        std::vector<ModVec> others;
        std::vector<ModLeadTerm> othersLT;
        for (std::size_t b = 0; b < M.size(); ++b) {
            if (b == a) continue;
            others.push_back(M[b]);
            othersLT.push_back(MLT[b]);
        }
        R[a] = mod_reduce(M[a], others, othersLT, order).remainder;
    }

    // canonical output order: decreasing leading term
    std::vector<std::size_t> idx(R.size());
    for (std::size_t a = 0; a < idx.size(); ++a) idx[a] = a;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return order.compare(MLT[a].pos, MLT[a].exp, MLT[b].pos, MLT[b].exp) > 0;
    });
    for (std::size_t a : idx) gb.push(std::move(R[a]), MLT[a]);
    gb.set_reduced(true);
    return gb;
}

inline GroebnerBasis gb_of_ideal(const RingPtr& ring, const std::vector<MultiPoly>& gens,
                                 const MonomialOrder& order) {
    std::vector<ModVec> g;
    for (const auto& p : gens) {
        require_same_ring(ring, p.ring(), "ideal generator");
        if (!p.is_zero()) g.push_back(ModVec{p});
    }
    return buchberger(ring, 1, g, ModuleOrder{order});
}

/// Presentation of a finitely generated module: ambient free rank and a matrix
/// whose columns generate the relation submodule. Quotient observables
/// (is_zero, graded dimensions) are attached when constructed via
/// quotient_presentation.
struct ModulePresentation {
    std::size_t ambient_rank = 0;
    PolyMatrix relations; // ambient_rank x (number of relation generators)
    bool is_zero = true;
    bool graded = false;
    std::vector<std::int64_t> generator_degrees; // shifts, when graded
    GroebnerBasis relation_gb;

    /// Count of standard monomials of weighted degree d; requires graded.
    std::int64_t graded_dimension(std::int64_t d) const {
        if (!graded) throw ValidationError("graded_dimension on non-graded presentation");
        if (ambient_rank == 0) return 0;
        const RingPtr& ring = relations.ring();
        std::size_t n = ring->arity();
        std::int64_t count = 0;
        for (std::size_t i = 0; i < ambient_rank; ++i) {
            std::int64_t target = d - generator_degrees[i];
            if (target < 0) continue;
            count += count_standard_monomials(i, static_cast<std::uint32_t>(target), n);
        }
        return count;
    }

private:
    std::int64_t count_standard_monomials(std::size_t pos, std::uint32_t deg, std::size_t n) const {
        std::int64_t count = 0;
        Exponents e(n, 0);
        enumerate(pos, e, 0, deg, count);
        return count;
    }

    void enumerate(std::size_t pos, Exponents& e, std::size_t var, std::uint32_t remaining,
                   std::int64_t& count) const {
        if (var + 1 == e.size() || e.empty()) {
            if (!e.empty()) e[var] = remaining;
            if (is_standard(pos, e)) ++count;
            if (!e.empty()) e[var] = 0;
            return;
        }
        for (std::uint32_t k = 0; k <= remaining; ++k) {
            e[var] = k;
            enumerate(pos, e, var + 1, remaining - k, count);
        }
        e[var] = 0;
    }

    bool is_standard(std::size_t pos, const Exponents& e) const {
        for (const auto& lt : relation_gb.leading_terms()) {
            if (lt.pos == pos && divides(lt.exp, e)) return false;
        }
        return true;
    }
};

/// Generators of {v : M v = 0}, computed by a Groebner basis of the columns
/// augmented with tracking slots; the trailing block of basis elements whose
/// leading block vanished generates the syzygy module. Every returned
/// generator is substitution-checked against M before it is released.
inline ModulePresentation syzygy_module(const PolyMatrix& M, const MonomialOrder& order) {
    const RingPtr& ring = M.ring();
    std::size_t r = M.rows(), c = M.cols();
    std::vector<ModVec> gens;
    for (std::size_t j = 0; j < c; ++j) {
        ModVec h = modvec_zero(ring, r + c);
        for (std::size_t i = 0; i < r; ++i) h[i] = M.at(i, j);
        h[r + j] = MultiPoly::constant(ring, Rational(1));
        gens.push_back(std::move(h));
    }
    GroebnerBasis aug = buchberger(ring, r + c, gens, ModuleOrder{order});

    std::vector<ModVec> syz;
    for (const auto& el : aug.elements()) {
        bool leadingZero = true;
        for (std::size_t i = 0; i < r; ++i)
            if (!el[i].is_zero()) { leadingZero = false; break; }
        if (!leadingZero) continue;
        ModVec v(el.begin() + static_cast<std::ptrdiff_t>(r), el.end());
        // substitution check, always on
        std::vector<MultiPoly> image = M.apply(v);
        for (const auto& p : image)
            if (!p.is_zero()) throw ValidationError("internal: syzygy substitution check failed");
        syz.push_back(std::move(v));
    }

    ModulePresentation pres;
    pres.ambient_rank = c;
    pres.relations = PolyMatrix(ring, c, syz.size());
    for (std::size_t j = 0; j < syz.size(); ++j)
        for (std::size_t i = 0; i < c; ++i) pres.relations.at(i, j) = syz[j][i];
    pres.is_zero = syz.empty();
    return pres;
}

/// Krull dimension of R/I from a reduced Groebner basis of I: the dimension
/// of the leading-term ideal, computed over maximal independent variable
/// sets. Returns -1 for the unit ideal and arity for the zero ideal.
inline std::int64_t ideal_dimension(const GroebnerBasis& gb) {
    if (gb.rank() != 1) throw ShapeError("ideal_dimension expects an ideal basis");
    const RingPtr& ring = gb.ring();
    std::size_t n = ring->arity();
    if (n > 16) throw ShapeError("ideal_dimension: too many variables");
    std::vector<Exponents> lts;
    for (const auto& lt : gb.leading_terms()) {
        if (total_degree(lt.exp) == 0) return -1; // unit ideal
        lts.push_back(lt.exp);
    }
    if (lts.empty()) return static_cast<std::int64_t>(n);

    std::int64_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const auto& e : lts) {
            bool supported = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (e[i] > 0 && !(mask & (1u << i))) { supported = false; break; }
            }
            if (supported) { independent = false; break; }
        }
        if (independent) best = size;
    }
    return best;
}

struct ContainmentWitness {
    std::size_t generator_index;
    ModVec normal_form;
};

/// Presentation of (submodule generated by `num`) / (submodule generated by
/// `den`), both inside R^rank. Checks den is contained in num first; on
/// violation reports the offending generator.
inline ModulePresentation quotient_presentation(const RingPtr& ring, std::size_t rank,
                                                const std::vector<ModVec>& num,
                                                const std::vector<ModVec>& den,
                                                const MonomialOrder& order,
                                                ContainmentWitness* violation = nullptr) {
    ModuleOrder morder{order};
    GroebnerBasis gbNum = buchberger(ring, rank, num, morder);
    for (std::size_t j = 0; j < den.size(); ++j) {
        ModVec nf = gbNum.normal_form(den[j]);
        if (!modvec_is_zero(nf)) {
            if (violation) {
                *violation = ContainmentWitness{j, std::move(nf)};
                return {};
            }
            throw ValidationError("quotient_presentation: denominator not contained in numerator");
        }
    }

    std::size_t s = num.size();
    // relations among the chosen generators: v with sum v_i num_i inside den
    PolyMatrix combined(ring, rank, s + den.size());
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < rank; ++i) combined.at(i, j) = num[j][i];
    for (std::size_t j = 0; j < den.size(); ++j)
        for (std::size_t i = 0; i < rank; ++i) combined.at(i, s + j) = den[j][i];

    ModulePresentation pres;
    pres.ambient_rank = s;
    if (s == 0) {
        pres.relations = PolyMatrix(ring, 0, 0);
        pres.is_zero = true;
        pres.graded = true;
        pres.relation_gb = GroebnerBasis(ring, 0, morder);
        return pres;
    }

    ModulePresentation bigSyz = syzygy_module(combined, order);
    std::vector<ModVec> rel;
    for (std::size_t j = 0; j < bigSyz.relations.cols(); ++j) {
        ModVec v = modvec_zero(ring, s);
        bool nonzero = false;
        for (std::size_t i = 0; i < s; ++i) {
            v[i] = bigSyz.relations.at(i, j);
            if (!v[i].is_zero()) nonzero = true;
        }
        if (nonzero) rel.push_back(std::move(v));
    }
    pres.relations = PolyMatrix(ring, s, rel.size());
    for (std::size_t j = 0; j < rel.size(); ++j)
        for (std::size_t i = 0; i < s; ++i) pres.relations.at(i, j) = rel[j][i];

    // is_zero: every numerator generator reduces to zero against den
    GroebnerBasis gbDen = buchberger(ring, rank, den, morder);
    pres.is_zero = true;
    for (const auto& g : num) {
        if (!modvec_is_zero(gbDen.normal_form(g))) { pres.is_zero = false; break; }
    }

    // grading: meaningful only when every generator is a homogeneous vector
    pres.graded = true;
    pres.generator_degrees.assign(s, 0);
    for (std::size_t i = 0; i < s && pres.graded; ++i) {
        std::optional<std::int64_t> deg;
        for (const auto& comp : num[i]) {
            if (comp.is_zero()) continue;
            if (!comp.is_homogeneous()) { pres.graded = false; break; }
            std::int64_t d = comp.degree();
            if (!deg) deg = d;
            else if (*deg != d) { pres.graded = false; break; }
        }
        if (pres.graded) pres.generator_degrees[i] = deg.value_or(0);
    }
    for (const auto& dgen : den) {
        if (!pres.graded) break;
        std::optional<std::int64_t> deg;
        for (const auto& comp : dgen) {
            if (comp.is_zero()) continue;
            if (!comp.is_homogeneous()) { pres.graded = false; break; }
            std::int64_t d = comp.degree();
            if (!deg) deg = d;
            else if (*deg != d) { pres.graded = false; break; }
        }
    }
    if (pres.graded) pres.relation_gb = buchberger(ring, s, rel, morder);
    return pres;
}

} // namespace symred
