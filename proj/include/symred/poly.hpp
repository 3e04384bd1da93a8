#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "symred/errors.hpp"
#include "symred/rational.hpp"
#include "symred/ring.hpp"

namespace symred {

/// Sparse multivariate polynomial over the rationals. Terms map exponent
/// vectors to nonzero coefficients; the map never stores a zero coefficient,
/// so equality of representations is equality of polynomials.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational>;

    MultiPoly() = default;
    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static MultiPoly zero(const RingPtr& ring) { return MultiPoly(ring); }

    static MultiPoly constant(const RingPtr& ring, const Rational& c) {
        MultiPoly p(ring);
        if (!c.is_zero()) p.terms_[Exponents(ring->arity(), 0)] = c;
        return p;
    }

    static MultiPoly variable(const RingPtr& ring, std::size_t index) {
        if (index >= ring->arity()) throw ShapeError("variable index out of range");
        MultiPoly p(ring);
        Exponents e(ring->arity(), 0);
        e[index] = 1;
        p.terms_[e] = Rational(1);
        return p;
    }

    static MultiPoly monomial(const RingPtr& ring, Exponents e, const Rational& c) {
        if (e.size() != ring->arity()) throw ShapeError("exponent vector arity mismatch");
        MultiPoly p(ring);
        if (!c.is_zero()) p.terms_[std::move(e)] = c;
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    // Zero polynomial reports constant value 0.
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw ValidationError("polynomial is not constant");
        return terms_.begin()->second;
    }

    std::int64_t degree() const {
        std::int64_t d = -1;
        for (const auto& [e, c] : terms_) {
            auto td = static_cast<std::int64_t>(total_degree(e));
            if (td > d) d = td;
        }
        return d; // -1 for the zero polynomial
    }

    bool is_homogeneous() const {
        std::optional<std::uint32_t> d;
        for (const auto& [e, c] : terms_) {
            auto td = total_degree(e);
            if (!d) d = td;
            else if (*d != td) return false;
        }
        return true;
    }

    MultiPoly operator-() const {
        MultiPoly r(ring_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        require_same_ring(ring_, o.ring_, "polynomial addition");
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        require_same_ring(ring_, o.ring_, "polynomial subtraction");
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        require_same_ring(a.ring_, b.ring_, "polynomial multiplication");
        MultiPoly r(a.ring_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term(exp_mul(ea, eb), ca * cb);
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }

    MultiPoly scaled(const Rational& c) const {
        MultiPoly r(ring_);
        if (c.is_zero()) return r;
        for (const auto& [e, coef] : terms_) r.terms_[e] = coef * c;
        return r;
    }

    MultiPoly times_monomial(const Exponents& m, const Rational& c) const {
        MultiPoly r(ring_);
        if (c.is_zero()) return r;
        for (const auto& [e, coef] : terms_) r.terms_[exp_mul(e, m)] = coef * c;
        return r;
    }

    MultiPoly pow(unsigned e) const {
        MultiPoly acc = MultiPoly::constant(ring_, Rational(1));
        MultiPoly base = *this;
        for (unsigned k = e; k > 0; k >>= 1) {
            if (k & 1u) acc = acc * base;
            if (k > 1) base = base * base;
        }
        return acc;
    }

    MultiPoly derivative(std::size_t var) const {
        if (var >= ring_->arity()) throw ShapeError("derivative: variable index out of range");
        MultiPoly r(ring_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            r.add_term(d, c * Rational(static_cast<std::int64_t>(e[var])));
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (point.size() != ring_->arity()) throw ShapeError("evaluate: point arity mismatch");
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t *= point[i].pow(e[i]);
            acc += t;
        }
        return acc;
    }

    // Ring homomorphism sending variable i to images[i] (all over one target ring).
    MultiPoly substitute(const std::vector<MultiPoly>& images, const RingPtr& target) const {
        if (images.size() != ring_->arity()) throw ShapeError("substitute: image count mismatch");
        MultiPoly acc = MultiPoly::zero(target);
        for (const auto& [e, c] : terms_) {
            MultiPoly t = MultiPoly::constant(target, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t = t * images[i].pow(e[i]);
            acc += t;
        }
        return acc;
    }

    const std::pair<const Exponents, Rational>* leading_term(const MonomialOrder& order) const {
        const std::pair<const Exponents, Rational>* best = nullptr;
        for (const auto& term : terms_)
            if (!best || order.greater(term.first, best->first)) best = &term;
        return best;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    std::string str(const MonomialOrder& order = MonomialOrder::degrevlex()) const {
        if (terms_.empty()) return "0";
        std::vector<const std::pair<const Exponents, Rational>*> sorted;
        sorted.reserve(terms_.size());
        for (const auto& t : terms_) sorted.push_back(&t);
        std::sort(sorted.begin(), sorted.end(),
                  [&](auto* a, auto* b) { return order.greater(a->first, b->first); });
        std::string out;
        bool first = true;
        for (auto* t : sorted) {
            Rational c = t->second;
            if (first) {
                if (c.sign() < 0) { out += "-"; c = -c; }
            } else {
                out += c.sign() < 0 ? " - " : " + ";
                if (c.sign() < 0) c = -c;
            }
            first = false;
            std::string mono = monomial_str(t->first);
            if (mono.empty()) {
                out += c.str();
            } else {
                if (!c.is_one()) { out += c.str(); out += "*"; }
                out += mono;
            }
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

private:
    void add_term(const Exponents& e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::string monomial_str(const Exponents& e) const {
        std::string out;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += ring_->vars[i];
            if (e[i] > 1) { out += "^"; out += std::to_string(e[i]); }
        }
        return out;
    }

    RingPtr ring_;
    TermMap terms_;
};

} // namespace symred
