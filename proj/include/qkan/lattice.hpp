#pragma once
// Finite complete lattices with explicit tables, monotone maps between them,
// and Galois adjoints.
//
// Everything downstream stores lattice elements as plain int indices; a
// FiniteLattice owns the order relation and the derived join/meet tables.
// Sizes stay small (hom-sets of the structures we care about have at most a
// few dozen elements), so full n*n tables are the right representation: no
// cleverness, every query is a lookup.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qkan {

using Elem = int;

class FiniteLattice {
public:
    FiniteLattice() = default;

    /// Build from an order relation given row-major (leq[x*n+y] != 0 means
    /// x <= y).  Rejects anything that is not a lattice order: missing
    /// reflexivity/antisymmetry/transitivity, or a pair without a least
    /// upper or greatest lower bound.
    static FiniteLattice from_leq(int n, const std::vector<uint8_t>& leq) {
        if (n <= 0) throw structure_error("lattice must have at least one element");
        if ((int)leq.size() != n * n) throw structure_error("leq table has wrong size");
        for (int x = 0; x < n; ++x)
            if (!leq[x * n + x])
                throw structure_error("order not reflexive at element " + std::to_string(x));
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (x != y && leq[x * n + y] && leq[y * n + x])
                    throw structure_error("order not antisymmetric on {" + std::to_string(x) +
                                          "," + std::to_string(y) + "}");
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (leq[x * n + y])
                    for (int z = 0; z < n; ++z)
                        if (leq[y * n + z] && !leq[x * n + z])
                            throw structure_error("order not transitive via " + std::to_string(x) +
                                                  "<=" + std::to_string(y) + "<=" + std::to_string(z));
        FiniteLattice L;
        L.n_ = n;
        L.leq_ = leq;
        L.join_.assign(n * n, -1);
        L.meet_.assign(n * n, -1);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                L.join_[x * n + y] = bound_of_pair(n, leq, x, y, /*upper=*/true);
                L.meet_[x * n + y] = bound_of_pair(n, leq, x, y, /*upper=*/false);
            }
        L.bot_ = L.top_ = 0;
        for (int x = 1; x < n; ++x) {
            L.bot_ = L.meet_[L.bot_ * n + x];
            L.top_ = L.join_[L.top_ * n + x];
        }
        return L;
    }

    /// The n-element chain 0 < 1 < ... < n-1.
    static FiniteLattice chain(int n) {
        std::vector<uint8_t> leq(n * n, 0);
        for (int x = 0; x < n; ++x)
            for (int y = x; y < n; ++y) leq[x * n + y] = 1;
        return from_leq(n, leq);
    }

    /// Powerset of `atoms` generators; element index is the subset bitmask.
    static FiniteLattice boolean_algebra(int atoms) {
        if (atoms < 0 || atoms > 20) throw structure_error("unsupported atom count");
        int n = 1 << atoms;
        std::vector<uint8_t> leq(n * n, 0);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) leq[x * n + y] = ((x & y) == x);
        return from_leq(n, leq);
    }

    /// Product order; element index is a*|B|+b for a in A, b in B.
    static FiniteLattice product(const FiniteLattice& A, const FiniteLattice& B) {
        int n = A.size() * B.size(), m = B.size();
        std::vector<uint8_t> leq(n * n, 0);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                leq[x * n + y] = A.leq(x / m, y / m) && B.leq(x % m, y % m);
        return from_leq(n, leq);
    }

    /// Same elements, order turned upside down.
    static FiniteLattice reverse(const FiniteLattice& A) {
        int n = A.size();
        std::vector<uint8_t> leq(n * n, 0);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) leq[x * n + y] = A.leq(y, x);
        return from_leq(n, leq);
    }

    /// Restriction to a subset of elements, which must again be a lattice
    /// under the inherited order (joins/meets are recomputed inside the
    /// subset and may differ from the ambient ones).
    static FiniteLattice from_subset(const FiniteLattice& A, const std::vector<Elem>& elems) {
        int n = (int)elems.size();
        std::vector<uint8_t> leq(n * n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) leq[i * n + j] = A.leq(elems[i], elems[j]);
        return from_leq(n, leq);
    }

    int size() const { return n_; }
    bool leq(Elem x, Elem y) const { return leq_[x * n_ + y] != 0; }
    Elem join(Elem x, Elem y) const { return join_[x * n_ + y]; }
    Elem meet(Elem x, Elem y) const { return meet_[x * n_ + y]; }
    Elem bottom() const { return bot_; }
    Elem top() const { return top_; }

    bool operator==(const FiniteLattice& o) const { return n_ == o.n_ && leq_ == o.leq_; }

private:
    static Elem bound_of_pair(int n, const std::vector<uint8_t>& leq, Elem x, Elem y, bool upper) {
        Elem found = -1;
        for (int z = 0; z < n; ++z) {
            bool bounds = upper ? (leq[x * n + z] && leq[y * n + z])
                                : (leq[z * n + x] && leq[z * n + y]);
            if (!bounds) continue;
            bool extreme = true;
            for (int w = 0; w < n; ++w) {
                bool wb = upper ? (leq[x * n + w] && leq[y * n + w])
                                : (leq[w * n + x] && leq[w * n + y]);
                if (wb && !(upper ? leq[z * n + w] : leq[w * n + z])) { extreme = false; break; }
            }
            if (extreme) { found = z; break; }
        }
        if (found < 0)
            throw structure_error(std::string("no ") + (upper ? "least upper" : "greatest lower") +
                                  " bound for {" + std::to_string(x) + "," + std::to_string(y) + "}");
        return found;
    }

    int n_ = 0;
    std::vector<uint8_t> leq_;
    std::vector<Elem> join_, meet_;
    Elem bot_ = 0, top_ = 0;
};

enum class BoundKind { Join, Meet };

/// Join or meet of an arbitrary (possibly empty) family; the empty join is
/// bottom, the empty meet is top.
inline Elem bound(const FiniteLattice& L, BoundKind kind, const std::vector<Elem>& elems) {
    Elem acc = (kind == BoundKind::Join) ? L.bottom() : L.top();
    for (Elem e : elems) acc = (kind == BoundKind::Join) ? L.join(acc, e) : L.meet(acc, e);
    return acc;
}

struct MonotoneMap {
    FiniteLattice dom, cod;
    std::vector<Elem> table;  // table[x] in cod

    static MonotoneMap make(FiniteLattice dom, FiniteLattice cod, std::vector<Elem> table) {
        if ((int)table.size() != dom.size()) throw structure_error("map table has wrong size");
        for (Elem v : table)
            if (v < 0 || v >= cod.size()) throw structure_error("map value out of range");
        for (int x = 0; x < dom.size(); ++x)
            for (int y = 0; y < dom.size(); ++y)
                if (dom.leq(x, y) && !cod.leq(table[x], table[y]))
                    throw structure_error("map not monotone on " + std::to_string(x) +
                                          "<=" + std::to_string(y));
        return MonotoneMap{std::move(dom), std::move(cod), std::move(table)};
    }

    Elem operator()(Elem x) const { return table[x]; }
};

enum class AdjointSide { Left, Right };

/// Galois adjoint of a monotone map, if one exists.
///
/// Left: g with g(y) <= x  iff  y <= f(x).  The only possible candidate is
/// g(y) = meet{x : y <= f(x)}; we build it and then check the equivalence on
/// every pair, so a returned map is certified and Absent is a definite no.
/// Right: dually, candidate g(y) = join{x : f(x) <= y} with f(x) <= y iff
/// x <= g(y).
inline std::optional<MonotoneMap> find_adjoint(const MonotoneMap& f, AdjointSide side) {
    const FiniteLattice &A = f.dom, &B = f.cod;
    std::vector<Elem> g(B.size());
    for (int y = 0; y < B.size(); ++y) {
        std::vector<Elem> xs;
        for (int x = 0; x < A.size(); ++x) {
            bool in = (side == AdjointSide::Left) ? B.leq(y, f(x)) : B.leq(f(x), y);
            if (in) xs.push_back(x);
        }
        g[y] = bound(A, side == AdjointSide::Left ? BoundKind::Meet : BoundKind::Join, xs);
    }
    for (int y = 0; y < B.size(); ++y)
        for (int x = 0; x < A.size(); ++x) {
            bool lhs = (side == AdjointSide::Left) ? A.leq(g[y], x) : B.leq(f(x), y);
            bool rhs = (side == AdjointSide::Left) ? B.leq(y, f(x)) : A.leq(x, g[y]);
            if (lhs != rhs) return std::nullopt;
        }
    return MonotoneMap::make(B, A, std::move(g));
}

}  // namespace qkan
