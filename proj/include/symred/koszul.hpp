#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symred/chain.hpp"

namespace symred {

inline std::vector<std::vector<std::size_t>> index_subsets(std::size_t r, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) { out.push_back(cur); return; }
        for (std::size_t v = start; v < r; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// Free graded-commutative algebra on odd degree -1 generators over a
/// polynomial ring, with differential sending the i-th odd generator to
/// J_i - mu_i. Its underlying complex computes the derived level set of the
/// moment values: homology in degree -i is Tor_i. An optional constraint
/// ideal moves the whole construction to a quotient of the base ring.
class KoszulCdga {
public:
    static KoszulCdga build(const RingPtr& ring, std::vector<MultiPoly> moment,
                            std::vector<Rational> mu, std::vector<MultiPoly> constraints = {}) {
        if (moment.empty() || moment.size() != mu.size())
            throw ShapeError("moment components and level values must match and be nonempty");
        for (const auto& p : moment) require_same_ring(ring, p.ring(), "moment component");
        KoszulCdga k;
        k.ring_ = ring;
        k.moment_ = std::move(moment);
        k.mu_ = std::move(mu);
        k.constraints_ = std::move(constraints);
        std::size_t r = k.moment_.size();
        for (std::size_t i = 0; i < r; ++i)
            k.dEta_.push_back(k.moment_[i] - MultiPoly::constant(ring, k.mu_[i]));

        // slot at degree -i has one basis element per i-subset, lex ordered
        std::vector<std::size_t> ranks;
        for (std::size_t i = 0; i <= r; ++i)
            ranks.push_back(static_cast<std::size_t>(binomial(r, r - i)));
        std::vector<PolyMatrix> diffs;
        for (std::size_t i = r; i >= 1; --i) {
            auto cols = index_subsets(r, i);
            auto rows = index_subsets(r, i - 1);
            PolyMatrix d(ring, rows.size(), cols.size());
            for (std::size_t cj = 0; cj < cols.size(); ++cj) {
                const auto& S = cols[cj];
                for (std::size_t pos = 0; pos < S.size(); ++pos) {
                    std::vector<std::size_t> T = S;
                    T.erase(T.begin() + static_cast<std::ptrdiff_t>(pos));
                    std::size_t ri = 0;
                    while (ri < rows.size() && rows[ri] != T) ++ri;
                    MultiPoly val = k.dEta_[S[pos]];
                    if (pos % 2 == 1) val = -val;
                    d.at(ri, cj) = std::move(val);
                }
            }
            diffs.push_back(std::move(d));
        }
        k.complex_ = FreeComplex::make(ring, -static_cast<int>(r), std::move(ranks),
                                       std::move(diffs), k.constraints_);
        return k;
    }

    const RingPtr& ring() const { return ring_; }
    std::size_t generator_count() const { return moment_.size(); }
    const std::vector<MultiPoly>& moment() const { return moment_; }
    const std::vector<Rational>& level() const { return mu_; }
    const std::vector<MultiPoly>& differential_values() const { return dEta_; }
    const std::vector<MultiPoly>& constraints() const { return constraints_; }
    const FreeComplex& complex() const { return complex_; }

    /// Tor_i of the derived level set: homology of the complex at degree -i.
    ModulePresentation tor(std::size_t i, const MonomialOrder& order = MonomialOrder::degrevlex()) const {
        if (i > generator_count()) throw ShapeError("tor index out of range");
        return complex_.homology(-static_cast<int>(i), order);
    }

    /// Reduced basis of the ideal of the underived level set.
    GroebnerBasis classical_truncation(const MonomialOrder& order = MonomialOrder::degrevlex()) const {
        std::vector<MultiPoly> gens = dEta_;
        for (const auto& g : constraints_) gens.push_back(g);
        return gb_of_ideal(ring_, gens, order);
    }

    struct CompleteIntersectionCheck {
        bool value = false;           // all higher Tor vanish
        bool codim_route_ran = false; // codimension comparison was meaningful
        bool codim_value = false;     // level set codimension equals generator count
        std::int64_t level_set_dim = 0;
        std::int64_t ambient_dim = 0;
    };

    /// Higher Tor vanishing, cross-checked against the codimension criterion
    /// whenever the level set is nonempty.
    CompleteIntersectionCheck complete_intersection(const MonomialOrder& order = MonomialOrder::degrevlex()) const {
        CompleteIntersectionCheck out;
        out.value = true;
        for (std::size_t i = 1; i <= generator_count(); ++i) {
            if (!tor(i, order).is_zero) { out.value = false; break; }
        }
        GroebnerBasis cls = classical_truncation(order);
        out.level_set_dim = ideal_dimension(cls);
        GroebnerBasis ambient = gb_of_ideal(ring_, constraints_, order);
        out.ambient_dim = ideal_dimension(ambient);
        if (out.level_set_dim >= 0) {
            out.codim_route_ran = true;
            out.codim_value = (out.ambient_dim - out.level_set_dim ==
                               static_cast<std::int64_t>(generator_count()));
        }
        return out;
    }

    bool is_complete_intersection(const MonomialOrder& order = MonomialOrder::degrevlex()) const {
        return complete_intersection(order).value;
    }

private:
    RingPtr ring_;
    std::vector<MultiPoly> moment_;
    std::vector<Rational> mu_;
    std::vector<MultiPoly> dEta_;
    std::vector<MultiPoly> constraints_;
    FreeComplex complex_;
};

} // namespace symred
