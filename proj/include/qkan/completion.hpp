#pragma once
// The arrow category of a quantaloid, its quotient by the diagonal
// congruence, the restrictions of that quotient to regular and to
// idempotent loops together with the equivalence between them, and the
// quantaloid of all distributors between a chosen family of categories —
// so that the same arrow-level machinery can run one level up.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdist.hpp"

namespace qkan {

// ---------------------------------------------------------------------------
// Arrow-level regularity.

/// The greatest g with f.g.f <= f.
inline QArrow arrow_bar(const Quantaloid& Q, const QArrow& f) {
    return Q.lda(Q.rda(f, f), f);
}

inline bool arrow_regular(const Quantaloid& Q, const QArrow& f) {
    return Q.compose(f, Q.compose(arrow_bar(Q, f), f)) == f;
}

inline bool arrow_idempotent(const Quantaloid& Q, const QArrow& f) {
    return f.src == f.dst && Q.compose(f, f) == f;
}

// ---------------------------------------------------------------------------
// Commuting squares and their diagonals.

/// An arrow of the arrow category: a pair (u,v) making the square from
/// `src` to `dst` commute.
struct Square {
    QArrow src, dst;  // the two endpoint arrows
    QArrow u, v;      // components, with dst.u = v.src

    bool operator==(const Square&) const = default;
};

inline Square make_square(const Quantaloid& Q, const QArrow& f, const QArrow& g,
                          const QArrow& u, const QArrow& v) {
    if (u.src != f.src || u.dst != g.src || v.src != f.dst || v.dst != g.dst)
        throw type_error("square components do not match the endpoints");
    if (!(Q.compose(g, u) == Q.compose(v, f)))
        throw structure_error("square does not commute");
    return {f, g, u, v};
}

inline Square identity_square(const Quantaloid& Q, const QArrow& f) {
    return {f, f, Q.identity(f.src), Q.identity(f.dst)};
}

inline Square square_compose(const Quantaloid& Q, const Square& s2, const Square& s1) {
    if (!(s1.dst == s2.src)) throw type_error("squares do not share the middle arrow");
    Square out{s1.src, s2.dst, Q.compose(s2.u, s1.u), Q.compose(s2.v, s1.v)};
    if (!(Q.compose(out.dst, out.u) == Q.compose(out.v, out.src)))
        throw internal_error("composite square does not commute");
    return out;
}

/// Squares with the same diagonal are identified; a class is determined by
/// its endpoints and the common composite.
struct DiagonalClass {
    QArrow src, dst;
    QArrow diagonal;

    bool operator==(const DiagonalClass&) const = default;
};

inline DiagonalClass diagonal_class(const Quantaloid& Q, const Square& s) {
    return {s.src, s.dst, Q.compose(s.dst, s.u)};
}

inline DiagonalClass identity_class(const Quantaloid& Q, const QArrow& f) {
    return diagonal_class(Q, identity_square(Q, f));
}

/// The componentwise greatest square in a class.
inline Square class_representative(const Quantaloid& Q, const DiagonalClass& c) {
    if (c.diagonal.src != c.src.src || c.diagonal.dst != c.dst.dst)
        throw type_error("diagonal endpoints do not match");
    QArrow u = Q.rda(c.dst, c.diagonal);
    QArrow v = Q.lda(c.diagonal, c.src);
    if (!(Q.compose(c.dst, u) == c.diagonal) || !(Q.compose(v, c.src) == c.diagonal))
        throw structure_error("diagonal is not realizable by a commuting square");
    return {c.src, c.dst, u, v};
}

/// Composition in the quotient goes through representatives; that the
/// result does not depend on the choice is a tested property.
inline DiagonalClass class_compose(const Quantaloid& Q, const DiagonalClass& c2,
                                   const DiagonalClass& c1) {
    if (!(c1.dst == c2.src)) throw type_error("classes do not share the middle arrow");
    return diagonal_class(
        Q, square_compose(Q, class_representative(Q, c2), class_representative(Q, c1)));
}

/// All diagonals of commuting squares from f to g, in increasing element
/// order: the hom-set of the quotient between those objects.
inline std::vector<Elem> dq_hom(const Quantaloid& Q, const QArrow& f, const QArrow& g) {
    const FiniteLattice& HU = Q.hom(f.src, g.src);
    const FiniteLattice& HV = Q.hom(f.dst, g.dst);
    const FiniteLattice& HD = Q.hom(f.src, g.dst);
    std::vector<char> seen(HD.size(), 0);
    for (Elem u = 0; u < HU.size(); ++u)
        for (Elem v = 0; v < HV.size(); ++v) {
            Elem gu = Q.compose_elem(f.src, g.src, g.dst, g.e, u);
            Elem vf = Q.compose_elem(f.src, f.dst, g.dst, v, f.e);
            if (gu == vf) seen[gu] = 1;
        }
    std::vector<Elem> out;
    for (Elem d = 0; d < HD.size(); ++d)
        if (seen[d]) out.push_back(d);
    return out;
}

// ---------------------------------------------------------------------------
// Regular and idempotent loops, and the equivalence between their
// restrictions of the quotient.

inline std::vector<QArrow> rq_objects(const Quantaloid& Q) {
    std::vector<QArrow> out;
    Q.for_each_arrow([&](const QArrow& f) {
        if (arrow_regular(Q, f)) out.push_back(f);
    });
    return out;
}

inline std::vector<QArrow> idmq_objects(const Quantaloid& Q) {
    std::vector<QArrow> out;
    Q.for_each_arrow([&](const QArrow& f) {
        if (arrow_idempotent(Q, f)) out.push_back(f);
    });
    return out;
}

/// For a regular arrow f, the squares exhibiting f and the idempotent
/// bar(f).f as isomorphic objects of the quotient.
struct RegularWitness {
    QArrow f;
    QArrow idem;       // bar(f).f
    Square to_idem;    // f -> idem, components (bar(f).f, bar(f))
    Square from_idem;  // idem -> f, components (identity, f)
};

inline RegularWitness regular_witness(const Quantaloid& Q, const QArrow& f) {
    if (!arrow_regular(Q, f)) throw structure_error("witness needs a regular arrow");
    QArrow fbar = arrow_bar(Q, f);
    QArrow idem = Q.compose(fbar, f);
    if (!arrow_idempotent(Q, idem)) throw internal_error("bar(f).f is not idempotent");
    RegularWitness w{f, idem, make_square(Q, f, idem, idem, fbar),
                     make_square(Q, idem, f, Q.identity(f.src), f)};
    if (!(diagonal_class(Q, square_compose(Q, w.from_idem, w.to_idem)) ==
          identity_class(Q, f)) ||
        !(diagonal_class(Q, square_compose(Q, w.to_idem, w.from_idem)) ==
          identity_class(Q, idem)))
        throw internal_error("witness squares do not compose to identities");
    return w;
}

inline std::vector<RegularWitness> rq_idmq_equivalence(const Quantaloid& Q) {
    std::vector<RegularWitness> out;
    for (const QArrow& f : rq_objects(Q)) out.push_back(regular_witness(Q, f));
    return out;
}

// ---------------------------------------------------------------------------
// The quantaloid of all distributors between a family of categories.

inline std::string dist_label(const QDistributor& d) {
    std::string s = "[";
    for (int x = 0; x < d.dom().size(); ++x) {
        if (x) s += ";";
        for (int y = 0; y < d.cod().size(); ++y) {
            if (y) s += ",";
            s += d.base().elem_name(d.dom().type(x), d.cod().type(y), d.at(x, y));
        }
    }
    return s + "]";
}

/// Objects are the given categories; the hom-lattice at (i,j) holds every
/// distributor cats[i] -|-> cats[j] in enumeration order, with entrywise
/// order and composition by matrix composition.
struct DistSubquantaloid {
    std::vector<QCategoryPtr> cats;
    std::vector<std::vector<QDistributor>> arrows;  // [i * cats.size() + j]
    Quantaloid Q;

    std::optional<Elem> arrow_index(int i, int j, const QDistributor& d) const {
        const auto& v = arrows[(size_t)i * cats.size() + j];
        for (Elem e = 0; e < (int)v.size(); ++e)
            if (v[e].matrix() == d.matrix()) return e;
        return std::nullopt;
    }
};

inline DistSubquantaloid dist_subquantaloid(std::vector<QCategoryPtr> cats,
                                            long long budget = 100'000) {
    int n = (int)cats.size();
    if (n == 0) throw structure_error("distributor quantaloid needs at least one category");
    for (int i = 1; i < n; ++i)
        if (!(cats[0]->base_ptr() == cats[i]->base_ptr() || cats[0]->base() == cats[i]->base()))
            throw type_error("categories disagree on the base");

    std::vector<std::vector<QDistributor>> arrows((size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            enumerate_distributors(cats[i], cats[j], budget,
                                   [&](const QDistributor& d) { arrows[i * n + j].push_back(d); });
    auto index_of = [&](int i, int j, const QDistributor& d) -> std::optional<Elem> {
        const auto& v = arrows[(size_t)i * n + j];
        for (Elem e = 0; e < (int)v.size(); ++e)
            if (v[e].matrix() == d.matrix()) return e;
        return std::nullopt;
    };

    Quantaloid::Data d;
    for (int i = 0; i < n; ++i) d.objects.push_back("C" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& v = arrows[(size_t)i * n + j];
            int m = (int)v.size();
            std::vector<uint8_t> leq((size_t)m * m);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) leq[a * m + b] = dist_leq(v[a], v[b]);
            d.homs.push_back(FiniteLattice::from_leq(m, leq));
            std::vector<std::string> names;
            for (const auto& dd : v) names.push_back(dist_label(dd));
            d.elem_names.push_back(std::move(names));
        }
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y)
            for (int Z = 0; Z < n; ++Z) {
                const auto& FXY = arrows[(size_t)X * n + Y];
                const auto& GYZ = arrows[(size_t)Y * n + Z];
                std::vector<Elem> t;
                t.reserve(FXY.size() * GYZ.size());
                for (const auto& g : GYZ)
                    for (const auto& f : FXY) {
                        auto idx = index_of(X, Z, dist_compose(g, f));
                        if (!idx) throw internal_error("composite escapes the enumeration");
                        t.push_back(*idx);
                    }
                d.comp.push_back(std::move(t));
            }
    for (int i = 0; i < n; ++i) {
        auto idx = index_of(i, i, identity_dist(cats[i]));
        if (!idx) throw internal_error("identity distributor escapes the enumeration");
        d.ids.push_back(*idx);
    }
    return {std::move(cats), std::move(arrows), Quantaloid::from_tables(std::move(d))};
}

/// The complement hom-distributor of a category over a base with a cyclic
/// dualizing family.
inline QDistributor neg_category(const QCategoryPtr& A, const GirardFamily& fam) {
    const Quantaloid& Q = A->base();
    int n = A->size();
    std::vector<Elem> mat((size_t)n * n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            mat[(size_t)y * n + x] = complement(Q, fam, A->hom(x, y)).e;
    return QDistributor::make(A, A, std::move(mat));
}

/// Lift a cyclic dualizing family of the base to the candidate family of
/// complement hom-distributors on a distributor quantaloid.
inline GirardFamily lift_girard_family(const DistSubquantaloid& D, const GirardFamily& fam) {
    GirardFamily out;
    for (int i = 0; i < (int)D.cats.size(); ++i) {
        auto idx = D.arrow_index(i, i, neg_category(D.cats[i], fam));
        if (!idx) throw structure_error("complement distributor is not in the enumeration");
        out.d.push_back(*idx);
    }
    return out;
}

}  // namespace qkan
