#pragma once
// Finite quantaloids: a set of objects, a complete lattice of arrows between
// each ordered pair, a composition table that preserves joins on both sides,
// and an identity per object.  Residuation, cyclic dualizing families, and
// the stock constructions (t-norm chains, frames, diagonal quantaloids,
// Girard envelopes, opposites) all live here.
//
// Arrows are (src, dst, element) triples; the element is an index into the
// hom lattice of that pair.  All operations are table lookups and small
// scans; nothing here allocates once a quantaloid is built.

#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"

namespace qkan {

struct QArrow {
    int src = 0, dst = 0;
    Elem e = 0;
    bool operator==(const QArrow&) const = default;
};

enum class TNorm { Godel, Lukasiewicz };

// Axiom-check outcome: ok, or the first violated law with a witness.
struct Report {
    bool ok = true;
    std::string detail;
    explicit operator bool() const { return ok; }
};

class Quantaloid {
public:
    struct Data {
        std::vector<std::string> objects;
        std::vector<FiniteLattice> homs;                 // [X*n+Y]
        std::vector<std::vector<std::string>> elem_names;  // parallel to homs
        std::vector<std::vector<Elem>> comp;             // [(X*n+Y)*n+Z][g*|XY|+f]
        std::vector<Elem> ids;                           // [X] in hom(X,X)
    };

    static Quantaloid from_tables(Data d) {
        Quantaloid Q;
        int n = (int)d.objects.size();
        if (n <= 0) throw structure_error("quantaloid needs at least one object");
        if ((int)d.homs.size() != n * n) throw structure_error("hom table count mismatch");
        if ((int)d.comp.size() != n * n * n) throw structure_error("composition table count mismatch");
        if ((int)d.ids.size() != n) throw structure_error("identity count mismatch");
        if (d.elem_names.empty()) {
            d.elem_names.resize(n * n);
            for (int i = 0; i < n * n; ++i)
                for (int e = 0; e < d.homs[i].size(); ++e)
                    d.elem_names[i].push_back("e" + std::to_string(e));
        }
        for (int i = 0; i < n * n; ++i)
            if ((int)d.elem_names[i].size() != d.homs[i].size())
                throw structure_error("element name count mismatch");
        for (int X = 0; X < n; ++X)
            for (int Y = 0; Y < n; ++Y)
                for (int Z = 0; Z < n; ++Z) {
                    auto& t = d.comp[(X * n + Y) * n + Z];
                    size_t want = (size_t)d.homs[X * n + Y].size() * d.homs[Y * n + Z].size();
                    if (t.size() != want)
                        throw structure_error("composition table for " + d.objects[X] + "->" +
                                              d.objects[Y] + "->" + d.objects[Z] + " has wrong size");
                    for (Elem v : t)
                        if (v < 0 || v >= d.homs[X * n + Z].size())
                            throw structure_error("composition value out of range");
                }
        for (int X = 0; X < n; ++X)
            if (d.ids[X] < 0 || d.ids[X] >= d.homs[X * n + X].size())
                throw structure_error("identity out of range at " + d.objects[X]);
        Q.n_ = n;
        Q.d_ = std::move(d);
        return Q;
    }

    int objects() const { return n_; }
    const std::string& object_name(int X) const { return d_.objects[X]; }
    std::optional<int> find_object(const std::string& name) const {
        for (int X = 0; X < n_; ++X)
            if (d_.objects[X] == name) return X;
        return std::nullopt;
    }

    const FiniteLattice& hom(int X, int Y) const { return d_.homs[X * n_ + Y]; }
    const std::string& elem_name(int X, int Y, Elem e) const { return d_.elem_names[X * n_ + Y][e]; }
    std::optional<Elem> find_elem(int X, int Y, const std::string& name) const {
        const auto& v = d_.elem_names[X * n_ + Y];
        for (Elem e = 0; e < (int)v.size(); ++e)
            if (v[e] == name) return e;
        return std::nullopt;
    }

    Elem compose_elem(int X, int Y, int Z, Elem g, Elem f) const {
        return d_.comp[(X * n_ + Y) * n_ + Z][(size_t)g * hom(X, Y).size() + f];
    }
    Elem id_elem(int X) const { return d_.ids[X]; }

    QArrow identity(int X) const { return {X, X, d_.ids[X]}; }
    QArrow bottom(int X, int Y) const { return {X, Y, hom(X, Y).bottom()}; }
    QArrow top(int X, int Y) const { return {X, Y, hom(X, Y).top()}; }

    QArrow compose(const QArrow& g, const QArrow& f) const {
        if (g.src != f.dst) throw type_error("compose: endpoints do not match");
        return {f.src, g.dst, compose_elem(f.src, f.dst, g.dst, g.e, f.e)};
    }
    bool leq(const QArrow& a, const QArrow& b) const {
        require_parallel(a, b);
        return hom(a.src, a.dst).leq(a.e, b.e);
    }
    QArrow join(const QArrow& a, const QArrow& b) const {
        require_parallel(a, b);
        return {a.src, a.dst, hom(a.src, a.dst).join(a.e, b.e)};
    }
    QArrow meet(const QArrow& a, const QArrow& b) const {
        require_parallel(a, b);
        return {a.src, a.dst, hom(a.src, a.dst).meet(a.e, b.e)};
    }

    /// h over f: the greatest g with g . f <= h, computed as the join of all
    /// such g (composition preserves joins, so the join still satisfies the
    /// inequality).  Element form: f in hom(X,Y), h in hom(X,Z), result in
    /// hom(Y,Z).
    Elem lda_elem(int X, int Y, int Z, Elem h, Elem f) const {
        const FiniteLattice &HYZ = hom(Y, Z), &HXZ = hom(X, Z);
        Elem acc = HYZ.bottom();
        for (Elem g = 0; g < HYZ.size(); ++g)
            if (HXZ.leq(compose_elem(X, Y, Z, g, f), h)) acc = HYZ.join(acc, g);
        return acc;
    }
    /// g under h: the greatest f with g . f <= h.  Element form: g in
    /// hom(Y,Z), h in hom(X,Z), result in hom(X,Y).
    Elem rda_elem(int X, int Y, int Z, Elem g, Elem h) const {
        const FiniteLattice &HXY = hom(X, Y), &HXZ = hom(X, Z);
        Elem acc = HXY.bottom();
        for (Elem f = 0; f < HXY.size(); ++f)
            if (HXZ.leq(compose_elem(X, Y, Z, g, f), h)) acc = HXY.join(acc, f);
        return acc;
    }

    QArrow lda(const QArrow& h, const QArrow& f) const {
        if (h.src != f.src) throw type_error("lda: arrows must share their source");
        return {f.dst, h.dst, lda_elem(h.src, f.dst, h.dst, h.e, f.e)};
    }
    QArrow rda(const QArrow& g, const QArrow& h) const {
        if (g.dst != h.dst) throw type_error("rda: arrows must share their target");
        return {h.src, g.src, rda_elem(h.src, g.src, g.dst, g.e, h.e)};
    }

    /// Check associativity, unitality, and join preservation on both sides
    /// of composition.  Hom lattices were already certified at construction.
    Report validate() const {
        for (int X = 0; X < n_; ++X)
            for (int Y = 0; Y < n_; ++Y) {
                const auto& H = hom(X, Y);
                for (Elem f = 0; f < H.size(); ++f) {
                    if (compose_elem(X, Y, Y, d_.ids[Y], f) != f)
                        return {false, "left identity fails at " + arrow_name({X, Y, f})};
                    if (compose_elem(X, X, Y, f, d_.ids[X]) != f)
                        return {false, "right identity fails at " + arrow_name({X, Y, f})};
                }
            }
        for (int X = 0; X < n_; ++X)
            for (int Y = 0; Y < n_; ++Y)
                for (int Z = 0; Z < n_; ++Z) {
                    const auto &HXY = hom(X, Y), &HYZ = hom(Y, Z), &HXZ = hom(X, Z);
                    for (Elem f = 0; f < HXY.size(); ++f) {
                        for (Elem g = 0; g < HYZ.size(); ++g)
                            for (Elem g2 = 0; g2 < HYZ.size(); ++g2)
                                if (compose_elem(X, Y, Z, HYZ.join(g, g2), f) !=
                                    HXZ.join(compose_elem(X, Y, Z, g, f), compose_elem(X, Y, Z, g2, f)))
                                    return {false, "composition does not preserve joins on the left at " +
                                                       arrow_name({X, Y, f})};
                        if (compose_elem(X, Y, Z, HYZ.bottom(), f) != HXZ.bottom())
                            return {false, "composition does not preserve the empty join on the left at " +
                                               arrow_name({X, Y, f})};
                    }
                    for (Elem g = 0; g < HYZ.size(); ++g) {
                        for (Elem f = 0; f < HXY.size(); ++f)
                            for (Elem f2 = 0; f2 < HXY.size(); ++f2)
                                if (compose_elem(X, Y, Z, g, HXY.join(f, f2)) !=
                                    HXZ.join(compose_elem(X, Y, Z, g, f), compose_elem(X, Y, Z, g, f2)))
                                    return {false, "composition does not preserve joins on the right at " +
                                                       arrow_name({Y, Z, g})};
                        if (compose_elem(X, Y, Z, g, HXY.bottom()) != HXZ.bottom())
                            return {false, "composition does not preserve the empty join on the right at " +
                                               arrow_name({Y, Z, g})};
                    }
                }
        for (int X = 0; X < n_; ++X)
            for (int Y = 0; Y < n_; ++Y)
                for (int Z = 0; Z < n_; ++Z)
                    for (int W = 0; W < n_; ++W)
                        for (Elem f = 0; f < hom(X, Y).size(); ++f)
                            for (Elem g = 0; g < hom(Y, Z).size(); ++g)
                                for (Elem h = 0; h < hom(Z, W).size(); ++h) {
                                    Elem a = compose_elem(X, Z, W, h, compose_elem(X, Y, Z, g, f));
                                    Elem b = compose_elem(X, Y, W, compose_elem(Y, Z, W, h, g), f);
                                    if (a != b)
                                        return {false, "associativity fails on " + arrow_name({X, Y, f}) +
                                                           ", " + arrow_name({Y, Z, g}) + ", " +
                                                           arrow_name({Z, W, h})};
                                }
        return {};
    }

    std::string arrow_name(const QArrow& a) const {
        return elem_name(a.src, a.dst, a.e) + ":" + object_name(a.src) + "->" + object_name(a.dst);
    }

    bool one_object() const { return n_ == 1; }
    bool commutative() const {
        if (n_ != 1) return false;
        const auto& H = hom(0, 0);
        for (Elem f = 0; f < H.size(); ++f)
            for (Elem g = 0; g < H.size(); ++g)
                if (compose_elem(0, 0, 0, g, f) != compose_elem(0, 0, 0, f, g)) return false;
        return true;
    }
    bool integral() const {
        for (int X = 0; X < n_; ++X)
            if (d_.ids[X] != hom(X, X).top()) return false;
        return true;
    }

    void for_each_arrow(const std::function<void(const QArrow&)>& fn) const {
        for (int X = 0; X < n_; ++X)
            for (int Y = 0; Y < n_; ++Y)
                for (Elem e = 0; e < hom(X, Y).size(); ++e) fn({X, Y, e});
    }

    bool operator==(const Quantaloid& o) const {
        return n_ == o.n_ && d_.homs == o.d_.homs && d_.comp == o.d_.comp && d_.ids == o.d_.ids &&
               d_.objects == o.d_.objects && d_.elem_names == o.d_.elem_names;
    }

private:
    void require_parallel(const QArrow& a, const QArrow& b) const {
        if (a.src != b.src || a.dst != b.dst) throw type_error("arrows are not parallel");
    }

    int n_ = 0;
    Data d_;
};

// ---------------------------------------------------------------------------
// Stock constructions.

namespace detail {
inline std::string fraction_name(int i, int den) {
    if (i == 0) return "0";
    if (i == den) return "1";
    int g = std::gcd(i, den);
    return std::to_string(i / g) + "/" + std::to_string(den / g);
}
inline std::string subset_name(int mask) {
    if (mask == 0) return "0";
    std::string s;
    for (int i = 0; i < 20; ++i)
        if (mask >> i & 1) s += char('a' + i);
    return s;
}
}  // namespace detail

/// One-object quantaloid on the n-chain with a t-norm as composition.
/// Elements are named as fractions of the unit interval: "0", "1/2", "1".
inline Quantaloid make_chain_tnorm(int size, TNorm t) {
    if (size < 1) throw structure_error("chain size must be positive");
    Quantaloid::Data d;
    d.objects = {"*"};
    d.homs = {FiniteLattice::chain(size)};
    d.elem_names.resize(1);
    for (int i = 0; i < size; ++i) d.elem_names[0].push_back(detail::fraction_name(i, size - 1 ? size - 1 : 1));
    std::vector<Elem> comp((size_t)size * size);
    for (Elem g = 0; g < size; ++g)
        for (Elem f = 0; f < size; ++f)
            comp[(size_t)g * size + f] =
                t == TNorm::Godel ? std::min(g, f) : std::max(0, g + f - (size - 1));
    d.comp = {std::move(comp)};
    d.ids = {size - 1};
    return Quantaloid::from_tables(std::move(d));
}

/// One-object quantaloid on the powerset of `atoms` generators, with meet as
/// composition and the whole set as identity.
inline Quantaloid make_boolean_frame(int atoms) {
    auto L = FiniteLattice::boolean_algebra(atoms);
    int n = L.size();
    Quantaloid::Data d;
    d.objects = {"*"};
    d.homs = {L};
    d.elem_names.resize(1);
    for (int m = 0; m < n; ++m) d.elem_names[0].push_back(detail::subset_name(m));
    std::vector<Elem> comp((size_t)n * n);
    for (Elem g = 0; g < n; ++g)
        for (Elem f = 0; f < n; ++f) comp[(size_t)g * n + f] = L.meet(g, f);
    d.comp = {std::move(comp)};
    d.ids = {L.top()};
    return Quantaloid::from_tables(std::move(d));
}

/// Diagonal quantaloid of the Boolean algebra with `atoms` generators:
/// objects are the algebra's elements, an arrow X -> Y is an element below
/// X meet Y, composition is meet, and the identity at X is X itself.
inline Quantaloid make_diagonals(int atoms) {
    auto L = FiniteLattice::boolean_algebra(atoms);
    int n = L.size();
    Quantaloid::Data d;
    for (int X = 0; X < n; ++X) d.objects.push_back(detail::subset_name(X));
    // hom(X,Y) carries the elements below X&Y, indexed in ascending mask
    // order; carrier[X*n+Y][i] is the mask of local element i.
    std::vector<std::vector<Elem>> carrier(n * n);
    d.homs.resize(n * n);
    d.elem_names.resize(n * n);
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y) {
            int cap = L.meet(X, Y);
            for (int m = 0; m < n; ++m)
                if (L.leq(m, cap)) carrier[X * n + Y].push_back(m);
            d.homs[X * n + Y] = FiniteLattice::from_subset(L, carrier[X * n + Y]);
            for (Elem m : carrier[X * n + Y])
                d.elem_names[X * n + Y].push_back(detail::subset_name(m));
        }
    auto local_index = [&](int X, int Y, int mask) {
        const auto& c = carrier[X * n + Y];
        for (int i = 0; i < (int)c.size(); ++i)
            if (c[i] == mask) return (Elem)i;
        throw internal_error("diagonal element fell outside its hom");
    };
    d.comp.resize((size_t)n * n * n);
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y)
            for (int Z = 0; Z < n; ++Z) {
                const auto &cf = carrier[X * n + Y], &cg = carrier[Y * n + Z];
                auto& t = d.comp[(size_t)(X * n + Y) * n + Z];
                t.resize(cf.size() * cg.size());
                for (size_t g = 0; g < cg.size(); ++g)
                    for (size_t f = 0; f < cf.size(); ++f)
                        t[g * cf.size() + f] = local_index(X, Z, L.meet(cg[g], cf[f]));
            }
    for (int X = 0; X < n; ++X) d.ids.push_back(local_index(X, X, X));
    return Quantaloid::from_tables(std::move(d));
}

/// Girard envelope: same objects, hom(X,Y) = Q(X,Y) x Q(Y,X)-reversed, with
/// composition (g,g') . (f,f') = (g.f, (f' over g) meet (f under g')) and
/// identity (1, true-top).  The result is always a Girard quantaloid.
inline Quantaloid make_girard_envelope(const Quantaloid& Q) {
    int n = Q.objects();
    Quantaloid::Data d;
    for (int X = 0; X < n; ++X) d.objects.push_back(Q.object_name(X));
    d.homs.resize(n * n);
    d.elem_names.resize(n * n);
    auto fwd = [&](int X, int Y, Elem pair) { return pair / Q.hom(Y, X).size(); };
    auto bwd = [&](int X, int Y, Elem pair) { return pair % Q.hom(Y, X).size(); };
    auto mk = [&](int X, int Y, Elem f, Elem fp) { return f * Q.hom(Y, X).size() + fp; };
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y) {
            d.homs[X * n + Y] =
                FiniteLattice::product(Q.hom(X, Y), FiniteLattice::reverse(Q.hom(Y, X)));
            for (Elem e = 0; e < d.homs[X * n + Y].size(); ++e)
                d.elem_names[X * n + Y].push_back("(" + Q.elem_name(X, Y, fwd(X, Y, e)) + "," +
                                                  Q.elem_name(Y, X, bwd(X, Y, e)) + ")");
        }
    d.comp.resize((size_t)n * n * n);
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y)
            for (int Z = 0; Z < n; ++Z) {
                auto& t = d.comp[(size_t)(X * n + Y) * n + Z];
                size_t nf = d.homs[X * n + Y].size(), ng = d.homs[Y * n + Z].size();
                t.resize(nf * ng);
                for (Elem gp = 0; gp < (Elem)ng; ++gp)
                    for (Elem fp = 0; fp < (Elem)nf; ++fp) {
                        Elem f = fwd(X, Y, fp), f2 = bwd(X, Y, fp);
                        Elem g = fwd(Y, Z, gp), g2 = bwd(Y, Z, gp);
                        Elem first = Q.compose_elem(X, Y, Z, g, f);
                        // f2 in Q(Y,X) over g in Q(Y,Z): lands in Q(Z,X)
                        Elem r1 = Q.lda_elem(Y, Z, X, f2, g);
                        // f in Q(X,Y) under g2 in Q(Z,Y): lands in Q(Z,X)
                        Elem r2 = Q.rda_elem(Z, X, Y, f, g2);
                        Elem second = Q.hom(Z, X).meet(r1, r2);
                        t[(size_t)gp * nf + fp] = mk(X, Z, first, second);
                    }
            }
    for (int X = 0; X < n; ++X) d.ids.push_back(mk(X, X, Q.id_elem(X), Q.hom(X, X).top()));
    return Quantaloid::from_tables(std::move(d));
}

/// Same objects and hom lattices with source and target swapped; element
/// indices and names carry over, so taking the opposite twice gives back a
/// table-identical quantaloid.
inline Quantaloid make_opposite(const Quantaloid& Q) {
    int n = Q.objects();
    Quantaloid::Data d;
    for (int X = 0; X < n; ++X) d.objects.push_back(Q.object_name(X));
    d.homs.resize(n * n);
    d.elem_names.resize(n * n);
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y) {
            d.homs[X * n + Y] = Q.hom(Y, X);
            for (Elem e = 0; e < Q.hom(Y, X).size(); ++e)
                d.elem_names[X * n + Y].push_back(Q.elem_name(Y, X, e));
        }
    d.comp.resize((size_t)n * n * n);
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y)
            for (int Z = 0; Z < n; ++Z) {
                auto& t = d.comp[(size_t)(X * n + Y) * n + Z];
                size_t nf = Q.hom(Y, X).size(), ng = Q.hom(Z, Y).size();
                t.resize(nf * ng);
                for (Elem g = 0; g < (Elem)ng; ++g)
                    for (Elem f = 0; f < (Elem)nf; ++f)
                        t[(size_t)g * nf + f] = Q.compose_elem(Z, Y, X, f, g);
            }
    for (int X = 0; X < n; ++X) d.ids.push_back(Q.id_elem(X));
    return Quantaloid::from_tables(std::move(d));
}

// ---------------------------------------------------------------------------
// Cyclic dualizing families.

struct GirardFamily {
    std::vector<Elem> d;  // one element of hom(X,X) per object X
};

/// Is {d_X} cyclic (d_X over f = f under d_Y for every f: X -> Y) and
/// dualizing (both double complements give f back)?
inline bool is_cyclic_dualizing(const Quantaloid& Q, const GirardFamily& fam) {
    int n = Q.objects();
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y)
            for (Elem f = 0; f < Q.hom(X, Y).size(); ++f) {
                Elem c1 = Q.lda_elem(X, Y, X, fam.d[X], f);
                Elem c2 = Q.rda_elem(Y, X, Y, f, fam.d[Y]);
                if (c1 != c2) return false;
                if (Q.rda_elem(X, Y, X, c1, fam.d[X]) != f) return false;
                if (Q.lda_elem(Y, X, Y, fam.d[Y], c2) != f) return false;
            }
    return true;
}

/// Search for a cyclic dualizing family, visiting candidate tuples in
/// lexicographic order (object 0 most significant) and returning the least
/// one that works.  The candidate space is the product of the endo-hom
/// sizes; if it exceeds `budget` the search refuses to start.
inline std::optional<GirardFamily> girard_search(const Quantaloid& Q, long long budget = 1'000'000) {
    int n = Q.objects();
    long long space = 1;
    for (int X = 0; X < n; ++X) {
        space *= Q.hom(X, X).size();
        if (space > budget)
            throw budget_error("cyclic dualizing family search space exceeds budget", space);
    }
    std::vector<Elem> d(n, 0);
    std::optional<GirardFamily> found;
    std::function<void(int)> rec = [&](int X) {
        if (found) return;
        if (X == n) {
            GirardFamily fam{d};
            if (is_cyclic_dualizing(Q, fam)) found = fam;
            return;
        }
        for (Elem e = 0; e < Q.hom(X, X).size() && !found; ++e) {
            d[X] = e;
            rec(X + 1);
        }
    };
    rec(0);
    // For a commutative integral one-object quantaloid, existence must agree
    // with "bottom is dualizing": (q -> bot) -> bot = q for every q.
    if (Q.one_object() && Q.commutative() && Q.integral()) {
        const auto& H = Q.hom(0, 0);
        bool bot_dualizing = true;
        for (Elem q = 0; q < H.size(); ++q) {
            Elem nq = Q.lda_elem(0, 0, 0, H.bottom(), q);
            if (Q.lda_elem(0, 0, 0, H.bottom(), nq) != q) { bot_dualizing = false; break; }
        }
        if (bot_dualizing != found.has_value())
            throw internal_error("family search disagrees with the double-complement criterion");
    }
    return found;
}

/// Complement of an arrow with respect to a cyclic dualizing family; the two
/// residual routes must coincide, and we insist on it.
inline QArrow complement(const Quantaloid& Q, const GirardFamily& fam, const QArrow& f) {
    Elem c1 = Q.lda_elem(f.src, f.dst, f.src, fam.d[f.src], f.e);
    Elem c2 = Q.rda_elem(f.dst, f.src, f.dst, f.e, fam.d[f.dst]);
    if (c1 != c2) throw internal_error("family is not cyclic at " + Q.arrow_name(f));
    return {f.dst, f.src, c1};
}

}  // namespace qkan
