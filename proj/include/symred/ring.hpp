#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "symred/errors.hpp"

namespace symred {

/// Exponent vector of a monomial; length always equals the ring arity.
using Exponents = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

inline bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exponents exp_mul(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// b must divide a.
inline Exponents exp_div(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] > b[i] ? a[i] : b[i];
    return r;
}

inline bool exp_coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

/// Ambient variable list. Polynomials carry a shared pointer to one of these;
/// two polynomials combine only when their rings agree (same object or same
/// variable list).
struct PolyRing {
    std::vector<std::string> vars;

    std::size_t arity() const { return vars.size(); }

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return static_cast<int>(i);
        return -1;
    }
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(std::vector<std::string> vars) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j])
                throw ValidationError("duplicate variable name '" + vars[i] + "'");
    auto r = std::make_shared<PolyRing>();
    r->vars = std::move(vars);
    return r;
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->vars == b->vars;
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b, const char* what) {
    if (!same_ring(a, b)) throw RingMismatchError(std::string("ring mismatch in ") + what);
}

enum class OrderTag { degrevlex, lex };

inline const char* order_name(OrderTag t) {
    return t == OrderTag::degrevlex ? "degrevlex" : "lex";
}

/// Total order on monomials of one ring. `block_split` > 0 selects a block
/// elimination order: exponents of the first `block_split` variables are
/// compared first (by the base order), so those variables dominate and a
/// Groebner basis eliminates them.
struct MonomialOrder {
    OrderTag tag = OrderTag::degrevlex;
    std::size_t block_split = 0;

    static MonomialOrder degrevlex() { return {OrderTag::degrevlex, 0}; }
    static MonomialOrder lex() { return {OrderTag::lex, 0}; }
    static MonomialOrder eliminate_first(std::size_t k, OrderTag base = OrderTag::degrevlex) {
        return {base, k};
    }

    // -1 if a < b, 0 if equal, +1 if a > b.
    int compare(const Exponents& a, const Exponents& b) const {
        if (block_split > 0) {
            int lead = compare_range(a, b, 0, block_split);
            if (lead != 0) return lead;
            return compare_range(a, b, block_split, a.size());
        }
        return compare_range(a, b, 0, a.size());
    }

    bool less(const Exponents& a, const Exponents& b) const { return compare(a, b) < 0; }
    bool greater(const Exponents& a, const Exponents& b) const { return compare(a, b) > 0; }

private:
    int compare_range(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi) const {
        if (tag == OrderTag::lex) {
            for (std::size_t i = lo; i < hi; ++i) {
                if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
            }
            return 0;
        }
        std::uint64_t da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) { da += a[i]; db += b[i]; }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = hi; i-- > lo;) {
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        }
        return 0;
    }
};

} // namespace symred
