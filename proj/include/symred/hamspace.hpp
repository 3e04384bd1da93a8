#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symred/matrix.hpp"

namespace symred {

/// Location + value of a failed polynomial identity; indices are
/// check-specific (documented per certificate).
struct Witness {
    std::string label;
    std::vector<std::int64_t> location;
    std::string value;
};

struct Check {
    bool ok = true;
    std::optional<Witness> witness;

    static Check pass() { return {}; }
    static Check fail(Witness w) { return {false, std::move(w)}; }
};

/// Finite-dimensional Lie algebra given by structure constants over the
/// rationals: [e_i, e_j] = sum_k c[i][j][k] e_k. Antisymmetry and the Jacobi
/// identity are enforced at construction; a table violating them is malformed
/// input, not a certificate failure.
struct LieAlgebraData {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<std::vector<Rational>>> c; // c[i][j][k]

    static LieAlgebraData make(std::vector<std::string> labels,
                               std::vector<std::vector<std::vector<Rational>>> c) {
        LieAlgebraData g;
        g.dim = labels.size();
        g.labels = std::move(labels);
        g.c = std::move(c);
        if (g.dim == 0) throw ValidationError("Lie algebra must have positive dimension");
        if (g.c.size() != g.dim) throw ShapeError("structure constant table shape");
        for (const auto& row : g.c) {
            if (row.size() != g.dim) throw ShapeError("structure constant table shape");
            for (const auto& cell : row)
                if (cell.size() != g.dim) throw ShapeError("structure constant table shape");
        }
        for (std::size_t i = 0; i < g.dim; ++i)
            for (std::size_t j = 0; j < g.dim; ++j)
                for (std::size_t k = 0; k < g.dim; ++k)
                    if (g.c[i][j][k] != -g.c[j][i][k])
                        throw ValidationError("structure constants not antisymmetric at (" +
                                              std::to_string(i) + "," + std::to_string(j) + "," +
                                              std::to_string(k) + ")");
        // Jacobi: [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0
        for (std::size_t i = 0; i < g.dim; ++i)
            for (std::size_t j = 0; j < g.dim; ++j)
                for (std::size_t k = 0; k < g.dim; ++k)
                    for (std::size_t l = 0; l < g.dim; ++l) {
                        Rational s(0);
                        for (std::size_t m = 0; m < g.dim; ++m) {
                            s += g.c[i][j][m] * g.c[m][k][l];
                            s += g.c[j][k][m] * g.c[m][i][l];
                            s += g.c[k][i][m] * g.c[m][j][l];
                        }
                        if (!s.is_zero())
                            throw ValidationError("Jacobi identity fails at (" + std::to_string(i) +
                                                  "," + std::to_string(j) + "," + std::to_string(k) +
                                                  ")");
                    }
        return g;
    }

    bool is_abelian() const {
        for (const auto& row : c)
            for (const auto& cell : row)
                for (const auto& v : cell)
                    if (!v.is_zero()) return false;
        return true;
    }
};

/// Affine symplectic space with an infinitesimal group action and candidate
/// moment map, all polynomial. Construction checks shapes only; every
/// mathematical condition is a certificate so that deliberately broken data
/// can be represented and diagnosed.
struct HamiltonianSpace {
    RingPtr ring;                               // coordinates of X
    PolyMatrix omega;                           // n x n pairing matrix
    LieAlgebraData lie;                         // g
    std::vector<std::vector<MultiPoly>> action; // per basis element, n field components
    std::vector<MultiPoly> moment;              // per basis element
    bool reductive_declared = true;

    static HamiltonianSpace make(RingPtr ring, PolyMatrix omega, LieAlgebraData lie,
                                 std::vector<std::vector<MultiPoly>> action,
                                 std::vector<MultiPoly> moment, bool reductive_declared = true) {
        HamiltonianSpace h;
        h.ring = std::move(ring);
        h.omega = std::move(omega);
        h.lie = std::move(lie);
        h.action = std::move(action);
        h.moment = std::move(moment);
        h.reductive_declared = reductive_declared;
        std::size_t n = h.ring->arity();
        if (n == 0 || n % 2 != 0) throw ShapeError("phase space needs a positive even variable count");
        if (h.omega.rows() != n || h.omega.cols() != n)
            throw ShapeError("omega must be square of size the variable count");
        require_same_ring(h.ring, h.omega.ring(), "omega");
        if (h.action.size() != h.lie.dim || h.moment.size() != h.lie.dim)
            throw ShapeError("action and moment must have one entry per basis element");
        for (const auto& a : h.action) {
            if (a.size() != n) throw ShapeError("action field must have one component per variable");
            for (const auto& p : a) require_same_ring(h.ring, p.ring(), "action field");
        }
        for (const auto& j : h.moment) require_same_ring(h.ring, j.ring(), "moment component");
        return h;
    }

    std::size_t dim_x() const { return ring->arity(); }
    std::size_t dim_g() const { return lie.dim; }

    std::vector<MultiPoly> gradient(const MultiPoly& f) const {
        std::vector<MultiPoly> g;
        for (std::size_t i = 0; i < ring->arity(); ++i) g.push_back(f.derivative(i));
        return g;
    }

    // derivation along an action field: a(f) = sum_i a_i df/dx_i
    MultiPoly apply_field(const std::vector<MultiPoly>& a, const MultiPoly& f) const {
        MultiPoly s = MultiPoly::zero(ring);
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * f.derivative(i);
        return s;
    }

    PolyMatrix action_matrix() const {
        PolyMatrix A(ring, dim_x(), dim_g());
        for (std::size_t j = 0; j < dim_g(); ++j)
            for (std::size_t i = 0; i < dim_x(); ++i) A.at(i, j) = action[j][i];
        return A;
    }

    PolyMatrix moment_jacobian() const {
        PolyMatrix J(ring, dim_g(), dim_x());
        for (std::size_t i = 0; i < dim_g(); ++i)
            for (std::size_t k = 0; k < dim_x(); ++k) J.at(i, k) = moment[i].derivative(k);
        return J;
    }
};

struct SymplecticCertificate {
    Check antisymmetric;
    Check closed;
    Check nondegenerate;
    std::string determinant;

    bool all_ok() const { return antisymmetric.ok && closed.ok && nondegenerate.ok; }
};

/// Antisymmetry, the coefficientwise cocycle identity for closedness, and
/// non-degeneracy of det(omega) as a nonzero constant. With two variables
/// there are no 3-forms, so closedness holds vacuously.
inline SymplecticCertificate validate_symplectic(const HamiltonianSpace& H) {
    SymplecticCertificate cert;
    std::size_t n = H.dim_x();

    for (std::size_t i = 0; i < n && cert.antisymmetric.ok; ++i)
        for (std::size_t j = i; j < n; ++j) {
            MultiPoly s = H.omega.at(i, j) + H.omega.at(j, i);
            if (!s.is_zero()) {
                cert.antisymmetric = Check::fail(
                    {"omega_antisymmetry",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)},
                     s.str()});
                break;
            }
        }

    for (std::size_t i = 0; i < n && cert.closed.ok; ++i)
        for (std::size_t j = i + 1; j < n && cert.closed.ok; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                MultiPoly s = H.omega.at(j, k).derivative(i) - H.omega.at(i, k).derivative(j) +
                              H.omega.at(i, j).derivative(k);
                if (!s.is_zero()) {
                    cert.closed = Check::fail(
                        {"omega_closedness",
                         {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j),
                          static_cast<std::int64_t>(k)},
                         s.str()});
                    break;
                }
            }

    MultiPoly det = H.omega.determinant();
    cert.determinant = det.str();
    bool unit = det.is_constant() && !det.constant_value().is_zero();
    if (!unit) cert.nondegenerate = Check::fail({"omega_determinant", {}, det.str()});
    return cert;
}

/// Vector field bracket [a,b]_m = a(b_m) - b(a_m). The infinitesimal action
/// convention here is the left-action one: [a_xi, a_eta] = -a_[xi,eta], which
/// is what cotangent lifts (A q, -A^T p) of a matrix representation satisfy.
inline Check validate_action(const HamiltonianSpace& H) {
    std::size_t r = H.dim_g(), n = H.dim_x();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            for (std::size_t m = 0; m < n; ++m) {
                MultiPoly bracket = H.apply_field(H.action[i], H.action[j][m]) -
                                    H.apply_field(H.action[j], H.action[i][m]);
                MultiPoly expected = MultiPoly::zero(H.ring);
                for (std::size_t k = 0; k < r; ++k) {
                    if (H.lie.c[i][j][k].is_zero()) continue;
                    expected += H.action[k][m].scaled(H.lie.c[i][j][k]);
                }
                MultiPoly diff = bracket + expected; // bracket = -sum c a
                if (!diff.is_zero())
                    return Check::fail({"action_bracket",
                                        {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j),
                                         static_cast<std::int64_t>(m)},
                                        diff.str()});
            }
        }
    return Check::pass();
}

struct HamiltonianCertificate {
    Check moment_condition; // omega . a_xi = grad J_xi, location (xi, coordinate)
    Check equivariance;     // a_xi(J_eta) = -J_[xi,eta], location (xi, eta)

    bool all_ok() const { return moment_condition.ok && equivariance.ok; }
};

inline HamiltonianCertificate validate_hamiltonian(const HamiltonianSpace& H) {
    HamiltonianCertificate cert;
    std::size_t r = H.dim_g(), n = H.dim_x();

    for (std::size_t i = 0; i < r && cert.moment_condition.ok; ++i) {
        std::vector<MultiPoly> lhs = H.omega.apply(H.action[i]);
        std::vector<MultiPoly> rhs = H.gradient(H.moment[i]);
        for (std::size_t m = 0; m < n; ++m) {
            MultiPoly diff = lhs[m] - rhs[m];
            if (!diff.is_zero()) {
                cert.moment_condition = Check::fail(
                    {"moment_condition",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(m)},
                     diff.str()});
                break;
            }
        }
    }

    for (std::size_t i = 0; i < r && cert.equivariance.ok; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            MultiPoly lhs = H.apply_field(H.action[i], H.moment[j]);
            MultiPoly expected = MultiPoly::zero(H.ring);
            for (std::size_t k = 0; k < r; ++k) {
                if (H.lie.c[i][j][k].is_zero()) continue;
                expected += H.moment[k].scaled(H.lie.c[i][j][k]);
            }
            MultiPoly diff = lhs + expected; // a_xi(J_eta) = -sum c J
            if (!diff.is_zero()) {
                cert.equivariance = Check::fail(
                    {"moment_equivariance",
                     {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)},
                     diff.str()});
                break;
            }
        }
    return cert;
}

/// mu is fixed by the coadjoint action iff it kills every bracket.
inline bool coadjoint_fixes(const LieAlgebraData& lie, const std::vector<Rational>& mu) {
    if (mu.size() != lie.dim) throw ShapeError("mu must have one value per basis element");
    for (std::size_t i = 0; i < lie.dim; ++i)
        for (std::size_t j = 0; j < lie.dim; ++j) {
            Rational s(0);
            for (std::size_t k = 0; k < lie.dim; ++k) s += lie.c[i][j][k] * mu[k];
            if (!s.is_zero()) return false;
        }
    return true;
}

} // namespace symred
