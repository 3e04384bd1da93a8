#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symred/groebner.hpp"

namespace symred {

struct ComplexViolation {
    int degree;      // composite out of this degree fails
    std::size_t row;
    std::size_t col;
    MultiPoly entry; // normal form of the offending composite entry
};

/// Bounded cochain complex of free modules with degree +1 differentials.
/// An optional constraint ideal relaxes every chain identity to "zero after
/// normal-form reduction against the ideal", which is how complexes whose
/// coefficients conceptually live on a level set are handled while staying
/// inside free modules.
class FreeComplex {
public:
    FreeComplex() = default;

    static FreeComplex make(const RingPtr& ring, int lo, std::vector<std::size_t> ranks,
                            std::vector<PolyMatrix> diffs,
                            std::vector<MultiPoly> constraints = {},
                            ComplexViolation* violation = nullptr) {
        FreeComplex cx;
        cx.ring_ = ring;
        cx.lo_ = lo;
        cx.ranks_ = std::move(ranks);
        cx.diffs_ = std::move(diffs);
        if (cx.ranks_.empty()) throw ShapeError("complex needs at least one slot");
        if (cx.diffs_.size() + 1 != cx.ranks_.size())
            throw ShapeError("complex needs one differential per adjacent slot pair");
        for (std::size_t k = 0; k < cx.diffs_.size(); ++k) {
            if (cx.diffs_[k].rows() != cx.ranks_[k + 1] || cx.diffs_[k].cols() != cx.ranks_[k])
                throw ShapeError("differential shape mismatch at degree " +
                                 std::to_string(lo + static_cast<int>(k)));
            require_same_ring(ring, cx.diffs_[k].ring(), "complex differential");
        }
        for (const auto& g : constraints) {
            require_same_ring(ring, g.ring(), "complex constraint");
            if (!g.is_zero()) cx.constraints_.push_back(g);
        }
        cx.constraintsGB_ = gb_of_ideal(ring, cx.constraints_, MonomialOrder::degrevlex());

        // d after d must vanish (modulo the constraint ideal when present)
        for (std::size_t k = 0; k + 1 < cx.diffs_.size(); ++k) {
            PolyMatrix comp = cx.diffs_[k + 1] * cx.diffs_[k];
            for (std::size_t i = 0; i < comp.rows(); ++i)
                for (std::size_t j = 0; j < comp.cols(); ++j) {
                    MultiPoly nf = cx.constraintsGB_.normal_form_poly(comp.at(i, j));
                    if (!nf.is_zero()) {
                        ComplexViolation v{lo + static_cast<int>(k), i, j, nf};
                        if (violation) { *violation = v; return FreeComplex(); }
                        throw ValidationError(
                            "d();d() != 0 at degree " + std::to_string(v.degree) + ", entry (" +
                            std::to_string(i) + "," + std::to_string(j) + "): " + nf.str());
                    }
                }
        }
        cx.valid_ = true;
        return cx;
    }

    bool valid() const { return valid_; }
    const RingPtr& ring() const { return ring_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    const std::vector<MultiPoly>& constraints() const { return constraints_; }
    const GroebnerBasis& constraints_gb() const { return constraintsGB_; }

    std::size_t rank(int degree) const {
        if (degree < lo_ || degree > hi()) return 0;
        return ranks_[static_cast<std::size_t>(degree - lo_)];
    }

    // Differential out of `degree`; a zero matrix of the right shape when the
    // degree sits at or beyond the top.
    PolyMatrix diff(int degree) const {
        if (degree >= lo_ && degree < hi())
            return diffs_[static_cast<std::size_t>(degree - lo_)];
        return PolyMatrix::zero(ring_, rank(degree + 1), rank(degree));
    }

    /// Presentation of ker(d_i) / im(d_{i-1}) as a module over the ambient
    /// polynomial ring (relations include the constraint ideal, so this is
    /// homology of the complex over the constrained coefficients).
    ModulePresentation homology(int degree, const MonomialOrder& order = MonomialOrder::degrevlex()) const {
        if (degree < lo_ || degree > hi())
            throw ShapeError("homology degree out of range");
        std::size_t n = rank(degree);
        ModulePresentation pres;
        if (n == 0) {
            pres.ambient_rank = 0;
            pres.relations = PolyMatrix(ring_, 0, 0);
            pres.is_zero = true;
            pres.graded = true;
            pres.relation_gb = GroebnerBasis(ring_, 0, ModuleOrder{order});
            return pres;
        }
        std::vector<ModVec> kernelGens = kernel_generators(degree, order);
        std::vector<ModVec> imageGens = image_generators(degree, order);
        return quotient_presentation(ring_, n, kernelGens, imageGens, order);
    }

    /// Generators of {v : d_i v = 0 mod constraints}.
    std::vector<ModVec> kernel_generators(int degree, const MonomialOrder& order) const {
        std::size_t n = rank(degree);
        std::size_t m = rank(degree + 1);
        PolyMatrix d = diff(degree);
        // augment with constraint multiples of the target basis
        std::size_t extra = constraints_.size() * m;
        PolyMatrix aug(ring_, m, n + extra);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = d.at(i, j);
        std::size_t col = n;
        for (const auto& g : constraints_)
            for (std::size_t i = 0; i < m; ++i) {
                aug.at(i, col) = g;
                ++col;
            }
        ModulePresentation syz = syzygy_module(aug, order);
        std::vector<ModVec> gens;
        for (std::size_t j = 0; j < syz.relations.cols(); ++j) {
            ModVec v = modvec_zero(ring_, n);
            bool nonzero = false;
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = syz.relations.at(i, j);
                if (!v[i].is_zero()) nonzero = true;
            }
            if (nonzero) gens.push_back(std::move(v));
        }
        return gens;
    }

    /// Generators of im(d_{i-1}) + constraints * (ambient basis).
    std::vector<ModVec> image_generators(int degree, const MonomialOrder&) const {
        std::size_t n = rank(degree);
        std::vector<ModVec> gens;
        if (degree > lo_) {
            PolyMatrix d = diff(degree - 1);
            for (std::size_t j = 0; j < d.cols(); ++j) {
                ModVec v = d.column(j);
                if (!modvec_is_zero(v)) gens.push_back(std::move(v));
            }
        }
        for (const auto& g : constraints_)
            for (std::size_t i = 0; i < n; ++i) {
                ModVec v = modvec_zero(ring_, n);
                v[i] = g;
                gens.push_back(std::move(v));
            }
        return gens;
    }

private:
    RingPtr ring_;
    int lo_ = 0;
    std::vector<std::size_t> ranks_;
    std::vector<PolyMatrix> diffs_;
    std::vector<MultiPoly> constraints_;
    GroebnerBasis constraintsGB_;
    bool valid_ = false;
};

struct SquareViolation {
    int degree;
    std::size_t row;
    std::size_t col;
    MultiPoly entry;
};

/// Degreewise map of complexes whose squares commute (modulo the shared
/// constraint ideal). Components default to zero outside the stored range.
class ChainMorphism {
public:
    static ChainMorphism make(FreeComplex source, FreeComplex target,
                              std::map<int, PolyMatrix> components,
                              SquareViolation* violation = nullptr) {
        ChainMorphism f;
        f.source_ = std::move(source);
        f.target_ = std::move(target);
        f.components_ = std::move(components);
        if (f.source_.constraints().size() != f.target_.constraints().size())
            throw ShapeError("chain morphism between differently constrained complexes");
        for (std::size_t k = 0; k < f.source_.constraints().size(); ++k)
            if (!(f.source_.constraints()[k] == f.target_.constraints()[k]))
                throw ShapeError("chain morphism between differently constrained complexes");
        for (const auto& [deg, mat] : f.components_) {
            if (mat.rows() != f.target_.rank(deg) || mat.cols() != f.source_.rank(deg))
                throw ShapeError("chain morphism component shape mismatch at degree " +
                                 std::to_string(deg));
        }
        const GroebnerBasis& gb = f.source_.constraints_gb();
        int lo = std::min(f.source_.lo(), f.target_.lo());
        int hi = std::max(f.source_.hi(), f.target_.hi());
        for (int i = lo; i < hi; ++i) {
            PolyMatrix lhs = f.target_.diff(i) * f.component(i);
            PolyMatrix rhs = f.component(i + 1) * f.source_.diff(i);
            for (std::size_t a = 0; a < lhs.rows(); ++a)
                for (std::size_t b = 0; b < lhs.cols(); ++b) {
                    MultiPoly nf = gb.normal_form_poly(lhs.at(a, b) - rhs.at(a, b));
                    if (!nf.is_zero()) {
                        SquareViolation v{i, a, b, nf};
                        if (violation) { *violation = v; return ChainMorphism(); }
                        throw ValidationError("chain morphism square fails at degree " +
                                              std::to_string(i) + ", entry (" + std::to_string(a) +
                                              "," + std::to_string(b) + "): " + nf.str());
                    }
                }
        }
        f.valid_ = true;
        return f;
    }

    bool valid() const { return valid_; }
    const FreeComplex& source() const { return source_; }
    const FreeComplex& target() const { return target_; }

    PolyMatrix component(int degree) const {
        auto it = components_.find(degree);
        if (it != components_.end()) return it->second;
        return PolyMatrix::zero(source_.ring(), target_.rank(degree), source_.rank(degree));
    }

private:
    FreeComplex source_;
    FreeComplex target_;
    std::map<int, PolyMatrix> components_;
    bool valid_ = false;
};

/// Mapping cone with differential [[-d_src(i+1), 0], [f(i+1), d_tgt(i)]] on
/// cone(f)^i = src^{i+1} (+) tgt^i.
inline FreeComplex cone(const ChainMorphism& f) {
    const FreeComplex& S = f.source();
    const FreeComplex& T = f.target();
    const RingPtr& ring = S.ring();
    int lo = std::min(S.lo() - 1, T.lo());
    int hi = std::max(S.hi() - 1, T.hi());
    std::vector<std::size_t> ranks;
    for (int i = lo; i <= hi; ++i) ranks.push_back(S.rank(i + 1) + T.rank(i));
    std::vector<PolyMatrix> diffs;
    for (int i = lo; i < hi; ++i) {
        std::size_t srcTop = S.rank(i + 2), srcBot = S.rank(i + 1);
        std::size_t tgtTop = T.rank(i + 1), tgtBot = T.rank(i);
        PolyMatrix d(ring, srcTop + tgtTop, srcBot + tgtBot);
        PolyMatrix dS = S.diff(i + 1);
        PolyMatrix dT = T.diff(i);
        PolyMatrix F = f.component(i + 1);
        for (std::size_t a = 0; a < srcTop; ++a)
            for (std::size_t b = 0; b < srcBot; ++b) d.at(a, b) = -dS.at(a, b);
        for (std::size_t a = 0; a < tgtTop; ++a)
            for (std::size_t b = 0; b < srcBot; ++b) d.at(srcTop + a, b) = F.at(a, b);
        for (std::size_t a = 0; a < tgtTop; ++a)
            for (std::size_t b = 0; b < tgtBot; ++b) d.at(srcTop + a, srcBot + b) = dT.at(a, b);
        diffs.push_back(std::move(d));
    }
    return FreeComplex::make(ring, lo, std::move(ranks), std::move(diffs), S.constraints());
}

struct QuasiIsoWitness {
    int degree;
    std::vector<std::string> cycle; // homology class representative, one entry per slot
};

struct QuasiIsoResult {
    bool value = false;
    bool fast_path_used = false;
    bool homology_path_used = false;
    std::optional<QuasiIsoWitness> witness;
};

/// True iff all homology of cone(f) vanishes. If every component is square
/// with nonzero constant determinant the map is a degreewise isomorphism and
/// the homology computation is skipped; `cross_check` forces both routes and
/// insists they agree.
inline QuasiIsoResult is_quasi_iso(const ChainMorphism& f,
                                   const MonomialOrder& order = MonomialOrder::degrevlex(),
                                   bool cross_check = false) {
    QuasiIsoResult res;
    const FreeComplex& S = f.source();
    const FreeComplex& T = f.target();
    int lo = std::min(S.lo(), T.lo());
    int hi = std::max(S.hi(), T.hi());
    bool fastOk = true;
    for (int i = lo; i <= hi && fastOk; ++i) {
        if (S.rank(i) != T.rank(i)) { fastOk = false; break; }
        if (S.rank(i) == 0) continue;
        PolyMatrix c = f.component(i);
        MultiPoly det = c.determinant();
        if (!det.is_constant() || det.constant_value().is_zero()) fastOk = false;
    }
    if (fastOk) {
        res.value = true;
        res.fast_path_used = true;
        if (!cross_check) return res;
    }

    FreeComplex C = cone(f);
    res.homology_path_used = true;
    bool acyclic = true;
    for (int i = C.lo(); i <= C.hi() && acyclic; ++i) {
        ModulePresentation h = C.homology(i, order);
        if (!h.is_zero) {
            acyclic = false;
            // surface one nonvanishing cycle as the witness
            auto kern = C.kernel_generators(i, order);
            auto imgs = C.image_generators(i, order);
            GroebnerBasis gbIm = buchberger(C.ring(), C.rank(i), imgs, ModuleOrder{order});
            for (const auto& k : kern) {
                ModVec nf = gbIm.normal_form(k);
                if (!modvec_is_zero(nf)) {
                    QuasiIsoWitness w;
                    w.degree = i;
                    for (const auto& p : nf) w.cycle.push_back(p.str());
                    res.witness = w;
                    break;
                }
            }
        }
    }
    if (fastOk && cross_check && !acyclic)
        throw ValidationError("internal: determinant and homology routes disagree on quasi-isomorphism");
    res.value = fastOk || acyclic;
    return res;
}

} // namespace symred
