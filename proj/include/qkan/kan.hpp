#pragma once
// Adjunctions between presheaf categories induced by a distributor, the
// fixed-point categories of the resulting (co)monads, the comparison
// functors attached to commutative squares of distributors, and the
// canonical idempotent carried by every completely distributive category.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "presheaf.hpp"

namespace qkan {

// ---------------------------------------------------------------------------
// Pointwise matrix actions on (co)presheaves.

/// lam on cod(phi) pulled back to dom(phi): (lam.phi)(x) = join over y of
/// lam(y) . phi(x,y).
inline Presheaf restrict_presheaf(const QDistributor& phi, const Presheaf& lam) {
    const QCategory& A = phi.dom();
    const QCategory& B = phi.cod();
    const Quantaloid& Q = A.base();
    std::vector<Elem> v(A.size());
    for (int x = 0; x < A.size(); ++x) {
        const FiniteLattice& H = Q.hom(A.type(x), lam.type);
        Elem acc = H.bottom();
        for (int y = 0; y < B.size(); ++y)
            acc = H.join(acc, Q.compose_elem(A.type(x), B.type(y), lam.type, lam.values[y],
                                             phi.at(x, y)));
        v[x] = acc;
    }
    return {lam.type, std::move(v)};
}

/// mu on dom(phi) pushed to cod(phi) as the greatest solution of
/// (result).phi <= mu.
inline Presheaf extend_presheaf(const QDistributor& phi, const Presheaf& mu) {
    const QCategory& A = phi.dom();
    const QCategory& B = phi.cod();
    const Quantaloid& Q = A.base();
    std::vector<Elem> v(B.size());
    for (int y = 0; y < B.size(); ++y) {
        const FiniteLattice& H = Q.hom(B.type(y), mu.type);
        Elem acc = H.top();
        for (int x = 0; x < A.size(); ++x)
            acc = H.meet(acc, Q.lda_elem(A.type(x), B.type(y), mu.type, mu.values[x],
                                         phi.at(x, y)));
        v[y] = acc;
    }
    return {mu.type, std::move(v)};
}

/// lam on cod(phi) pulled back on the copresheaf side: the greatest rho
/// with phi.rho <= lam.
inline Copresheaf restrict_copresheaf(const QDistributor& phi, const Copresheaf& lam) {
    const QCategory& A = phi.dom();
    const QCategory& B = phi.cod();
    const Quantaloid& Q = A.base();
    std::vector<Elem> v(A.size());
    for (int x = 0; x < A.size(); ++x) {
        const FiniteLattice& H = Q.hom(lam.type, A.type(x));
        Elem acc = H.top();
        for (int y = 0; y < B.size(); ++y)
            acc = H.meet(acc, Q.rda_elem(lam.type, A.type(x), B.type(y), phi.at(x, y),
                                         lam.values[y]));
        v[x] = acc;
    }
    return {lam.type, std::move(v)};
}

/// mu on dom(phi) pushed forward: (phi.mu)(y) = join over x of
/// phi(x,y) . mu(x).
inline Copresheaf extend_copresheaf(const QDistributor& phi, const Copresheaf& mu) {
    const QCategory& A = phi.dom();
    const QCategory& B = phi.cod();
    const Quantaloid& Q = A.base();
    std::vector<Elem> v(B.size());
    for (int y = 0; y < B.size(); ++y) {
        const FiniteLattice& H = Q.hom(mu.type, B.type(y));
        Elem acc = H.bottom();
        for (int x = 0; x < A.size(); ++x)
            acc = H.join(acc, Q.compose_elem(mu.type, A.type(x), B.type(y), phi.at(x, y),
                                             mu.values[x]));
        v[y] = acc;
    }
    return {mu.type, std::move(v)};
}

// ---------------------------------------------------------------------------

/// Restriction (left adjoint) and extension (right adjoint) between the
/// presheaf categories of the endpoints of a distributor.
struct KanPair {
    QFunctor restriction;  // presheaves on cod -> presheaves on dom
    QFunctor extension;    // presheaves on dom -> presheaves on cod
};

inline KanPair kan_pair(const PresheafCat& onDom, const PresheafCat& onCod,
                        const QDistributor& phi) {
    if (!onDom.contravariant() || !onCod.contravariant())
        throw type_error("the adjunction lives between presheaf categories");
    if (!same_category(onDom.source(), phi.dom_ptr()) ||
        !same_category(onCod.source(), phi.cod_ptr()))
        throw type_error("presheaf categories do not match the distributor endpoints");
    std::vector<int> res(onCod.size()), ext(onDom.size());
    for (int i = 0; i < onCod.size(); ++i) {
        Presheaf r = restrict_presheaf(phi, onCod.presheaf_at(i));
        auto j = onDom.find(r.type, r.values);
        if (!j) throw internal_error("restriction escapes the presheaf enumeration");
        res[i] = *j;
    }
    for (int i = 0; i < onDom.size(); ++i) {
        Presheaf e = extend_presheaf(phi, onDom.presheaf_at(i));
        auto j = onCod.find(e.type, e.values);
        if (!j) throw internal_error("extension escapes the presheaf enumeration");
        ext[i] = *j;
    }
    KanPair out{QFunctor::make(onCod.cat_ptr(), onDom.cat_ptr(), std::move(res)),
                QFunctor::make(onDom.cat_ptr(), onCod.cat_ptr(), std::move(ext))};
    if (!validate_functor(out.restriction) || !validate_functor(out.extension))
        throw internal_error("induced adjoints are not functorial");
    for (int l = 0; l < onCod.size(); ++l)
        for (int m = 0; m < onDom.size(); ++m)
            if (onDom.cat().hom_elem(out.restriction(l), m) !=
                onCod.cat().hom_elem(l, out.extension(m)))
                throw internal_error("adjunction hom-equality fails");
    return out;
}

/// The copresheaf-side pair: restriction is again the left adjoint.
struct DualKanPair {
    QFunctor restriction;  // copresheaves on cod -> copresheaves on dom
    QFunctor extension;    // copresheaves on dom -> copresheaves on cod
};

inline DualKanPair dual_kan_pair(const PresheafCat& onDom, const PresheafCat& onCod,
                                 const QDistributor& phi) {
    if (onDom.contravariant() || onCod.contravariant())
        throw type_error("the dual adjunction lives between copresheaf categories");
    if (!same_category(onDom.source(), phi.dom_ptr()) ||
        !same_category(onCod.source(), phi.cod_ptr()))
        throw type_error("copresheaf categories do not match the distributor endpoints");
    std::vector<int> res(onCod.size()), ext(onDom.size());
    for (int i = 0; i < onCod.size(); ++i) {
        Copresheaf r = restrict_copresheaf(phi, onCod.copresheaf_at(i));
        auto j = onDom.find(r.type, r.values);
        if (!j) throw internal_error("restriction escapes the copresheaf enumeration");
        res[i] = *j;
    }
    for (int i = 0; i < onDom.size(); ++i) {
        Copresheaf e = extend_copresheaf(phi, onDom.copresheaf_at(i));
        auto j = onCod.find(e.type, e.values);
        if (!j) throw internal_error("extension escapes the copresheaf enumeration");
        ext[i] = *j;
    }
    DualKanPair out{QFunctor::make(onCod.cat_ptr(), onDom.cat_ptr(), std::move(res)),
                    QFunctor::make(onDom.cat_ptr(), onCod.cat_ptr(), std::move(ext))};
    if (!validate_functor(out.restriction) || !validate_functor(out.extension))
        throw internal_error("induced adjoints are not functorial");
    for (int l = 0; l < onCod.size(); ++l)
        for (int m = 0; m < onDom.size(); ++m)
            if (onDom.cat().hom_elem(out.restriction(l), m) !=
                onCod.cat().hom_elem(l, out.extension(m)))
                throw internal_error("dual adjunction hom-equality fails");
    return out;
}

// ---------------------------------------------------------------------------

enum class FixKind { monad, comonad };

/// Fixed points of an idempotent inflationary (monad) or deflationary
/// (comonad) endofunctor on a skeletal complete category.  Suprema and
/// infima of weights are resolved through the parent — reflected by the
/// operator on the side the subcategory is not closed under — and verified
/// against the defining equations inside the subcategory.
struct FixCategory {
    QCategoryPtr parent;
    QFunctor op;
    FixKind kind = FixKind::monad;
    std::vector<int> members;    // parent objects fixed by op, increasing
    QCategoryPtr cat;            // full subcategory on the members
    PresheafCat weights;         // presheaves on cat
    PresheafCat coweights;       // copresheaves on cat
    std::vector<int> sup_table;  // weight index -> member position
    std::vector<int> inf_table;  // coweight index -> member position

    std::optional<int> member_of(int parent_index) const {
        for (int b = 0; b < (int)members.size(); ++b)
            if (members[b] == parent_index) return b;
        return std::nullopt;
    }
};

inline FixCategory fix_category(const QFunctor& F, FixKind kind,
                                long long budget = default_presheaf_budget) {
    if (!same_category(F.dom_ptr(), F.cod_ptr()))
        throw type_error("fixed points need an endofunctor");
    const QCategoryPtr& C = F.dom_ptr();
    if (!validate_functor(F)) throw structure_error("fixed points of a non-functor");
    if (!C->is_skeletal()) throw structure_error("parent category is not skeletal");
    std::vector<int> idmap(C->size());
    for (int i = 0; i < C->size(); ++i) idmap[i] = i;
    auto id = QFunctor::make(C, C, std::move(idmap));
    if (kind == FixKind::monad ? !functor_leq(id, F) : !functor_leq(F, id))
        throw structure_error(kind == FixKind::monad ? "operator must dominate the identity"
                                                     : "operator must stay below the identity");
    if (!(functor_compose(F, F) == F)) throw structure_error("operator is not idempotent");

    FixCategory out;
    out.parent = C;
    out.op = F;
    out.kind = kind;
    for (int x = 0; x < C->size(); ++x)
        if (F(x) == x) out.members.push_back(x);
    out.cat = ptr(full_subcategory(*C, out.members));
    out.weights = PresheafCat::presheaves(out.cat, budget);
    out.coweights = PresheafCat::copresheaves(out.cat, budget);

    const Quantaloid& Q = C->base();
    int n = C->size(), m = (int)out.members.size();

    // the operator restricts to a (co)reflection adjoint to the inclusion
    for (int a = 0; a < n; ++a) {
        if (!out.member_of(F(a))) throw internal_error("operator image is not fixed");
        for (int b = 0; b < m; ++b) {
            bool ok = kind == FixKind::monad
                          ? C->hom_elem(F(a), out.members[b]) == C->hom_elem(a, out.members[b])
                          : C->hom_elem(out.members[b], F(a)) == C->hom_elem(out.members[b], a);
            if (!ok) throw internal_error("inclusion adjunction fails");
        }
    }

    for (int w = 0; w < out.weights.size(); ++w) {
        Presheaf theta = out.weights.presheaf_at(w);
        std::vector<Elem> ext(n);
        for (int a = 0; a < n; ++a) {
            const FiniteLattice& H = Q.hom(C->type(a), theta.type);
            Elem acc = H.bottom();
            for (int b = 0; b < m; ++b)
                acc = H.join(acc, Q.compose_elem(C->type(a), out.cat->type(b), theta.type,
                                                 theta.values[b],
                                                 C->hom_elem(a, out.members[b])));
            ext[a] = acc;
        }
        auto s = sup_object(*C, {theta.type, std::move(ext)});
        if (!s) throw structure_error("parent category is missing a supremum");
        int target = kind == FixKind::monad ? F(*s) : *s;
        auto pos = out.member_of(target);
        if (!pos) throw internal_error("fixed points are not closed under suprema");
        if (sup_object(*out.cat, theta) != pos)
            throw internal_error("fixed-point suprema break the defining equations");
        out.sup_table.push_back(*pos);
    }

    for (int w = 0; w < out.coweights.size(); ++w) {
        Copresheaf lam = out.coweights.copresheaf_at(w);
        std::vector<Elem> ext(n);
        for (int a = 0; a < n; ++a) {
            const FiniteLattice& H = Q.hom(lam.type, C->type(a));
            Elem acc = H.bottom();
            for (int b = 0; b < m; ++b)
                acc = H.join(acc, Q.compose_elem(lam.type, out.cat->type(b), C->type(a),
                                                 C->hom_elem(out.members[b], a),
                                                 lam.values[b]));
            ext[a] = acc;
        }
        auto i = inf_object(*C, {lam.type, std::move(ext)});
        if (!i) throw structure_error("parent category is missing an infimum");
        int target = kind == FixKind::comonad ? F(*i) : *i;
        auto pos = out.member_of(target);
        if (!pos) throw internal_error("fixed points are not closed under infima");
        if (inf_object(*out.cat, lam) != pos)
            throw internal_error("fixed-point infima break the defining equations");
        out.inf_table.push_back(*pos);
    }

    // tensors (monad) resp. cotensors (comonad) factor through the operator
    for (int b = 0; b < m; ++b)
        for (int Y = 0; Y < Q.objects(); ++Y) {
            if (kind == FixKind::monad) {
                for (Elem e = 0; e < Q.hom(out.cat->type(b), Y).size(); ++e) {
                    QArrow f{out.cat->type(b), Y, e};
                    auto t = tensor_object(*C, f, out.members[b]);
                    if (!t) throw structure_error("parent category is missing a tensor");
                    auto pos = out.member_of(F(*t));
                    if (!pos || tensor_object(*out.cat, f, b) != pos)
                        throw internal_error("fixed-point tensors do not factor through the operator");
                }
            } else {
                for (Elem e = 0; e < Q.hom(Y, out.cat->type(b)).size(); ++e) {
                    QArrow g{Y, out.cat->type(b), e};
                    auto c = cotensor_object(*C, g, out.members[b]);
                    if (!c) throw structure_error("parent category is missing a cotensor");
                    auto pos = out.member_of(F(*c));
                    if (!pos || cotensor_object(*out.cat, g, b) != pos)
                        throw internal_error("fixed-point cotensors do not factor through the operator");
                }
            }
        }
    return out;
}

// ---------------------------------------------------------------------------

/// Fixed points of lam -> (lam.phi extended back along phi) among the
/// presheaves on the codomain.
struct KPhi {
    QDistributor phi;
    PresheafCat presheaves;  // on cod(phi); the parent of fix
    QFunctor monad;
    FixCategory fix;
};

inline KPhi kphi(const QDistributor& phi, long long budget = default_presheaf_budget) {
    auto P = PresheafCat::presheaves(phi.cod_ptr(), budget);
    std::vector<int> map(P.size());
    for (int i = 0; i < P.size(); ++i) {
        Presheaf t = extend_presheaf(phi, restrict_presheaf(phi, P.presheaf_at(i)));
        auto j = P.find(t.type, t.values);
        if (!j) throw internal_error("closure image escapes the enumeration");
        map[i] = *j;
    }
    auto M = QFunctor::make(P.cat_ptr(), P.cat_ptr(), std::move(map));
    std::vector<int> idmap(P.size());
    for (int i = 0; i < P.size(); ++i) idmap[i] = i;
    if (!validate_functor(M) || !functor_leq(QFunctor::make(P.cat_ptr(), P.cat_ptr(), idmap), M) ||
        !(functor_compose(M, M) == M))
        throw internal_error("induced closure operator is not a monad");
    return {phi, std::move(P), M, fix_category(M, FixKind::monad, budget)};
}

/// The dual construction: fixed points of mu -> (mu extended along phi,
/// pulled back) among the presheaves on the domain.
struct RPhi {
    QDistributor phi;
    PresheafCat presheaves;  // on dom(phi); the parent of fix
    QFunctor comonad;
    FixCategory fix;
};

inline RPhi rphi(const QDistributor& phi, long long budget = default_presheaf_budget) {
    auto P = PresheafCat::presheaves(phi.dom_ptr(), budget);
    std::vector<int> map(P.size());
    for (int i = 0; i < P.size(); ++i) {
        Presheaf t = restrict_presheaf(phi, extend_presheaf(phi, P.presheaf_at(i)));
        auto j = P.find(t.type, t.values);
        if (!j) throw internal_error("interior image escapes the enumeration");
        map[i] = *j;
    }
    auto G = QFunctor::make(P.cat_ptr(), P.cat_ptr(), std::move(map));
    std::vector<int> idmap(P.size());
    for (int i = 0; i < P.size(); ++i) idmap[i] = i;
    if (!validate_functor(G) || !functor_leq(G, QFunctor::make(P.cat_ptr(), P.cat_ptr(), idmap)) ||
        !(functor_compose(G, G) == G))
        throw internal_error("induced interior operator is not a comonad");
    RPhi out{phi, std::move(P), G, fix_category(G, FixKind::comonad, budget)};

    // Cross-check the interior formulas: with gamma(x,b) the value at x of
    // member b, suprema are weight-composites along gamma and infima are
    // the operator applied to the residual against gamma.
    const QCategory& A = *phi.dom_ptr();
    const Quantaloid& Q = A.base();
    int m = (int)out.fix.members.size();
    for (int w = 0; w < out.fix.weights.size(); ++w) {
        Presheaf theta = out.fix.weights.presheaf_at(w);
        const std::vector<Elem>& sup_vals =
            out.presheaves.values(out.fix.members[out.fix.sup_table[w]]);
        for (int x = 0; x < A.size(); ++x) {
            const FiniteLattice& H = Q.hom(A.type(x), theta.type);
            Elem acc = H.bottom();
            for (int b = 0; b < m; ++b)
                acc = H.join(acc, Q.compose_elem(A.type(x), out.fix.cat->type(b), theta.type,
                                                 theta.values[b],
                                                 out.presheaves.values(out.fix.members[b])[x]));
            if (acc != sup_vals[x]) throw internal_error("interior supremum formula fails");
        }
    }
    for (int w = 0; w < out.fix.coweights.size(); ++w) {
        Copresheaf lam = out.fix.coweights.copresheaf_at(w);
        std::vector<Elem> rho(A.size());
        for (int x = 0; x < A.size(); ++x) {
            const FiniteLattice& H = Q.hom(A.type(x), lam.type);
            Elem acc = H.top();
            for (int b = 0; b < m; ++b)
                acc = H.meet(acc, Q.rda_elem(A.type(x), lam.type, out.fix.cat->type(b),
                                             lam.values[b],
                                             out.presheaves.values(out.fix.members[b])[x]));
            rho[x] = acc;
        }
        auto j = out.presheaves.find(lam.type, rho);
        if (!j) throw internal_error("interior infimum formula leaves the enumeration");
        if (out.comonad(*j) != out.fix.members[out.fix.inf_table[w]])
            throw internal_error("interior infimum formula fails");
    }
    return out;
}

/// The two fixed-point categories of one distributor are isomorphic, by
/// restriction one way and extension the other; both directions are
/// produced and the round trips checked.
struct KRIso {
    QFunctor forward;   // members of the codomain side -> domain side
    QFunctor backward;
};

inline KRIso kr_isomorphism(const KPhi& K, const RPhi& R) {
    if (!(K.phi == R.phi)) throw type_error("fixed-point categories of different distributors");
    int m = (int)K.fix.members.size();
    if (m != (int)R.fix.members.size())
        throw internal_error("fixed-point categories have different sizes");
    std::vector<int> fwd(m), bwd(m);
    for (int b = 0; b < m; ++b) {
        Presheaf r = restrict_presheaf(K.phi, K.presheaves.presheaf_at(K.fix.members[b]));
        auto j = R.presheaves.find(r.type, r.values);
        std::optional<int> pos;
        if (j) pos = R.fix.member_of(*j);
        if (!pos) throw internal_error("restriction misses the dual fixed points");
        fwd[b] = *pos;
    }
    for (int b = 0; b < m; ++b) {
        Presheaf e = extend_presheaf(R.phi, R.presheaves.presheaf_at(R.fix.members[b]));
        auto j = K.presheaves.find(e.type, e.values);
        std::optional<int> pos;
        if (j) pos = K.fix.member_of(*j);
        if (!pos) throw internal_error("extension misses the fixed points");
        bwd[b] = *pos;
    }
    for (int b = 0; b < m; ++b)
        if (bwd[fwd[b]] != b || fwd[bwd[b]] != b)
            throw internal_error("fixed-point categories fail to be mutually inverse");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (K.fix.cat->hom_elem(i, j) != R.fix.cat->hom_elem(fwd[i], fwd[j]))
                throw internal_error("fixed-point isomorphism does not preserve homs");
    return {QFunctor::make(K.fix.cat, R.fix.cat, std::move(fwd)),
            QFunctor::make(R.fix.cat, K.fix.cat, std::move(bwd))};
}

/// The fixed points only see the matrix: recomputing over discretized
/// endpoints yields the same members and the same homs.
inline bool kphi_matches_discrete(const KPhi& K, long long budget = default_presheaf_budget) {
    auto Kd = kphi(discretize(K.phi), budget);
    if (K.fix.members.size() != Kd.fix.members.size()) return false;
    for (size_t b = 0; b < K.fix.members.size(); ++b) {
        if (K.presheaves.type_of(K.fix.members[b]) !=
            Kd.presheaves.type_of(Kd.fix.members[b]))
            return false;
        if (K.presheaves.values(K.fix.members[b]) != Kd.presheaves.values(Kd.fix.members[b]))
            return false;
    }
    return *K.fix.cat == *Kd.fix.cat;
}

// ---------------------------------------------------------------------------

/// The right adjoint of a functor between skeletal categories, found by
/// exhaustive search over the hom identities, if it exists.
inline std::optional<QFunctor> find_right_adjoint_functor(const QFunctor& F) {
    const QCategory& A = F.dom();
    const QCategory& B = F.cod();
    std::vector<int> g(B.size());
    for (int y = 0; y < B.size(); ++y) {
        int found = -1;
        for (int w = 0; w < A.size(); ++w) {
            if (A.type(w) != B.type(y)) continue;
            bool good = true;
            for (int x = 0; x < A.size(); ++x)
                if (B.hom_elem(F(x), y) != A.hom_elem(x, w)) {
                    good = false;
                    break;
                }
            if (good) {
                found = w;
                break;
            }
        }
        if (found < 0) return std::nullopt;
        g[y] = found;
    }
    return QFunctor::make(F.cod_ptr(), F.dom_ptr(), std::move(g));
}

/// The comparison induced by a commutative square (zeta, eta) from the
/// distributor underlying `from` to the one underlying `to`: pull back
/// along eta, then close.  It is a left adjoint; the right adjoint extends
/// along eta and is returned alongside.
struct KSquareResult {
    QFunctor action;         // to.fix.cat -> from.fix.cat
    QFunctor right_adjoint;  // from.fix.cat -> to.fix.cat
};

inline KSquareResult k_square(const KPhi& from, const KPhi& to, const QDistributor& zeta,
                              const QDistributor& eta) {
    const QDistributor& phi = from.phi;
    const QDistributor& psi = to.phi;
    if (!same_category(zeta.dom_ptr(), phi.dom_ptr()) ||
        !same_category(zeta.cod_ptr(), psi.dom_ptr()) ||
        !same_category(eta.dom_ptr(), phi.cod_ptr()) ||
        !same_category(eta.cod_ptr(), psi.cod_ptr()))
        throw type_error("square endpoints do not match");
    auto via_bottom = dist_compose(psi, zeta);
    auto via_top = dist_compose(eta, phi);
    if (!(via_bottom == via_top)) {
        for (int x = 0; x < phi.dom().size(); ++x)
            for (int y = 0; y < psi.cod().size(); ++y)
                if (via_bottom.at(x, y) != via_top.at(x, y))
                    throw structure_error("square does not commute at (" +
                                          phi.dom().object_id(x) + "," +
                                          psi.cod().object_id(y) + ")");
    }

    int mFrom = (int)from.fix.members.size(), mTo = (int)to.fix.members.size();
    std::vector<int> act(mTo), radj(mFrom);
    for (int b = 0; b < mTo; ++b) {
        Presheaf pulled = restrict_presheaf(eta, to.presheaves.presheaf_at(to.fix.members[b]));
        auto j = from.presheaves.find(pulled.type, pulled.values);
        if (!j) throw internal_error("pullback escapes the enumeration");
        auto pos = from.fix.member_of(from.monad(*j));
        if (!pos) throw internal_error("closure misses the fixed points");
        act[b] = *pos;
    }
    for (int b = 0; b < mFrom; ++b) {
        Presheaf pushed = extend_presheaf(eta, from.presheaves.presheaf_at(from.fix.members[b]));
        auto j = to.presheaves.find(pushed.type, pushed.values);
        std::optional<int> pos;
        if (j) pos = to.fix.member_of(*j);
        if (!pos) throw internal_error("extension misses the fixed points");
        radj[b] = *pos;
    }
    KSquareResult out{QFunctor::make(to.fix.cat, from.fix.cat, std::move(act)),
                      QFunctor::make(from.fix.cat, to.fix.cat, std::move(radj))};
    if (!validate_functor(out.action) || !validate_functor(out.right_adjoint))
        throw internal_error("square comparison is not functorial");
    for (int l = 0; l < mTo; ++l)
        for (int r = 0; r < mFrom; ++r)
            if (from.fix.cat->hom_elem(out.action(l), r) !=
                to.fix.cat->hom_elem(l, out.right_adjoint(r)))
                throw internal_error("square comparison adjunction fails");
    return out;
}

/// Reconstruct a commutative square inducing a given left adjoint
/// comparison, available whenever the target distributor is regular; the
/// reconstruction is checked to reproduce the comparison exactly.
struct KSquare {
    QDistributor zeta, eta;
};

inline KSquare k_preimage(const KPhi& from, const KPhi& to, const QFunctor& F,
                          long long budget = default_presheaf_budget) {
    if (!same_category(F.dom_ptr(), to.fix.cat) || !same_category(F.cod_ptr(), from.fix.cat))
        throw type_error("comparison endpoints do not match the fixed-point categories");
    if (!is_regular(to.phi).regular) throw structure_error("target distributor is not regular");
    if (!validate_functor(F)) throw structure_error("comparison is not a functor");
    if (!find_right_adjoint_functor(F)) throw structure_error("comparison is not a left adjoint");

    const QDistributor& phi = from.phi;
    const QDistributor& psi = to.phi;
    const QCategory& B = phi.cod();
    const QCategory& Bp = psi.cod();
    std::vector<Elem> xi_mat((size_t)B.size() * Bp.size());
    for (int yp = 0; yp < Bp.size(); ++yp) {
        std::vector<Elem> v(Bp.size());
        for (int z = 0; z < Bp.size(); ++z) v[z] = Bp.hom_elem(z, yp);
        auto rep = to.presheaves.find(Bp.type(yp), v);
        if (!rep) throw internal_error("representable presheaf missing from the enumeration");
        auto pos = to.fix.member_of(to.monad(*rep));
        if (!pos) throw internal_error("closure misses the fixed points");
        const auto& vals = from.presheaves.values(from.fix.members[F(*pos)]);
        for (int b = 0; b < B.size(); ++b) xi_mat[(size_t)b * Bp.size() + yp] = vals[b];
    }
    auto xi = QDistributor::make(phi.cod_ptr(), psi.cod_ptr(), std::move(xi_mat));
    auto psibar = phi_bar(psi);
    KSquare out{dist_compose(psibar, dist_compose(xi, phi)),
                dist_compose(psi, dist_compose(psibar, xi))};
    auto back = k_square(from, to, out.zeta, out.eta);
    if (!(back.action == F))
        throw internal_error("reconstructed square does not reproduce the comparison");
    (void)budget;
    return out;
}

// ---------------------------------------------------------------------------

/// The idempotent distributor carried by a skeletal completely distributive
/// category: columns are the values of the left adjoint to taking suprema.
/// Its fixed points recover the category itself, through the representable
/// presheaves; the isomorphism is returned as `embedding`.
struct CanonicalTheta {
    QDistributor theta;
    KPhi fixed;
    QFunctor embedding;  // source category -> fixed.fix.cat
};

inline CanonicalTheta canonical_theta(const QCategoryPtr& A,
                                      long long budget = default_presheaf_budget) {
    if (!A->is_skeletal()) throw structure_error("canonical idempotent needs a skeletal category");
    auto r = is_ccd(A, budget);
    if (!r) throw structure_error("category is not completely distributive: " + r.detail);
    auto P = PresheafCat::presheaves(A, budget);
    int n = A->size();
    std::vector<Elem> mat((size_t)n * n);
    for (int x = 0; x < n; ++x) {
        const auto& vals = P.values(r.left_adjoint[x]);
        for (int y = 0; y < n; ++y) mat[(size_t)y * n + x] = vals[y];
    }
    auto theta = QDistributor::make(A, A, std::move(mat));
    if (!(dist_compose(theta, theta) == theta))
        throw internal_error("canonical distributor is not idempotent");
    for (int x = 0; x < n; ++x)
        if (r.sup_table[r.left_adjoint[x]] != x)
            throw internal_error("supremum does not retract its left adjoint");

    auto K = kphi(theta, budget);
    if ((int)K.fix.members.size() != n)
        throw internal_error("fixed points disagree with the category");
    std::vector<int> emb(n);
    std::vector<char> hit(n, 0);
    for (int x = 0; x < n; ++x) {
        std::vector<Elem> v(n);
        for (int z = 0; z < n; ++z) v[z] = A->hom_elem(z, x);
        auto j = K.presheaves.find(A->type(x), v);
        std::optional<int> pos;
        if (j) pos = K.fix.member_of(*j);
        if (!pos) throw internal_error("representable presheaf escapes the fixed points");
        emb[x] = *pos;
        if (hit[*pos]) throw internal_error("embedding is not injective");
        hit[*pos] = 1;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (K.fix.cat->hom_elem(emb[x], emb[y]) != A->hom_elem(x, y))
                throw internal_error("embedding does not preserve homs");
    auto iso = QFunctor::make(A, K.fix.cat, std::move(emb));
    return {std::move(theta), std::move(K), std::move(iso)};
}

}  // namespace qkan
