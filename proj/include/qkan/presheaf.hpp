#pragma once
// Presheaves and copresheaves on an enriched category, the categories they
// form, weighted (co)limits, and the distributivity checks built on top.
//
// A presheaf mu of type X gives each object x an arrow mu(x): tx -> X with
// mu(x) . A(x',x) <= mu(x'); viewed as a distributor it is a single column
// A -|-> *_X.  A copresheaf lam of type X gives lam(x): X -> tx with
// A(x,x') . lam(x) <= lam(x'), a single row *_X -|-> A.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdist.hpp"

namespace qkan {

inline constexpr long long default_presheaf_budget = 1'000'000;

struct Presheaf {
    int type = 0;              // object of the base
    std::vector<Elem> values;  // values[x] in hom(tx, type)
    bool operator==(const Presheaf&) const = default;
};

struct Copresheaf {
    int type = 0;
    std::vector<Elem> values;  // values[x] in hom(type, tx)
    bool operator==(const Copresheaf&) const = default;
};

inline bool presheaf_law(const QCategory& A, const Presheaf& mu) {
    const Quantaloid& Q = A.base();
    for (int x = 0; x < A.size(); ++x)
        for (int x2 = 0; x2 < A.size(); ++x2) {
            Elem v =
                Q.compose_elem(A.type(x2), A.type(x), mu.type, mu.values[x], A.hom_elem(x2, x));
            if (!Q.hom(A.type(x2), mu.type).leq(v, mu.values[x2])) return false;
        }
    return true;
}

inline bool copresheaf_law(const QCategory& A, const Copresheaf& lam) {
    const Quantaloid& Q = A.base();
    for (int x = 0; x < A.size(); ++x)
        for (int x2 = 0; x2 < A.size(); ++x2) {
            Elem v =
                Q.compose_elem(lam.type, A.type(x), A.type(x2), A.hom_elem(x, x2), lam.values[x]);
            if (!Q.hom(lam.type, A.type(x2)).leq(v, lam.values[x2])) return false;
        }
    return true;
}

inline QDistributor presheaf_dist(const QCategoryPtr& A, const Presheaf& mu) {
    auto star = ptr(singleton_category(A->base_ptr(), mu.type));
    return QDistributor::make(A, std::move(star), mu.values);
}

inline QDistributor copresheaf_dist(const QCategoryPtr& A, const Copresheaf& lam) {
    auto star = ptr(singleton_category(A->base_ptr(), lam.type));
    return QDistributor::make(std::move(star), A, lam.values);
}

/// A base arrow as a distributor between one-object categories.
inline QDistributor arrow_dist(const QuantaloidPtr& base, const QArrow& f) {
    auto s = ptr(singleton_category(base, f.src));
    auto t = ptr(singleton_category(base, f.dst));
    return QDistributor::make(std::move(s), std::move(t), {f.e});
}

/// All presheaves (or copresheaves) on a category, arranged into a category
/// of their own.  Objects are enumerated per base object in lexicographic
/// value order, so indices are canonical; homs are the pointwise residual
/// meets.  The result is skeletal by construction: distinct objects have
/// distinct value tables.
class PresheafCat {
public:
    static PresheafCat presheaves(const QCategoryPtr& A,
                                  long long budget = default_presheaf_budget) {
        return build(A, true, budget);
    }
    static PresheafCat copresheaves(const QCategoryPtr& A,
                                    long long budget = default_presheaf_budget) {
        return build(A, false, budget);
    }

    const QCategory& cat() const { return *cat_; }
    const QCategoryPtr& cat_ptr() const { return cat_; }
    const QCategoryPtr& source() const { return source_; }
    bool contravariant() const { return contravariant_; }
    int size() const { return cat_->size(); }
    int type_of(int i) const { return cat_->type(i); }
    const std::vector<Elem>& values(int i) const { return values_[i]; }

    std::optional<int> find(int type, const std::vector<Elem>& vals) const {
        for (int i = 0; i < size(); ++i)
            if (cat_->type(i) == type && values_[i] == vals) return i;
        return std::nullopt;
    }

    Presheaf presheaf_at(int i) const {
        if (!contravariant_) throw type_error("not a presheaf category");
        return {type_of(i), values_[i]};
    }
    Copresheaf copresheaf_at(int i) const {
        if (contravariant_) throw type_error("not a copresheaf category");
        return {type_of(i), values_[i]};
    }

private:
    static PresheafCat build(const QCategoryPtr& A, bool contra, long long budget) {
        const Quantaloid& Q = A->base();
        int n = A->size();
        long long space = 0;
        for (int X = 0; X < Q.objects(); ++X) {
            long long here = 1;
            for (int x = 0; x < n; ++x) {
                here *= contra ? Q.hom(A->type(x), X).size() : Q.hom(X, A->type(x)).size();
                if (here > budget) break;
            }
            space += here;
            if (space > budget)
                throw budget_error("presheaf enumeration exceeds budget", space);
        }

        PresheafCat P;
        P.source_ = A;
        P.contravariant_ = contra;
        std::vector<std::string> ids;
        std::vector<int> ptypes;
        for (int X = 0; X < Q.objects(); ++X) {
            std::vector<int> sizes(n);
            for (int x = 0; x < n; ++x)
                sizes[x] = contra ? Q.hom(A->type(x), X).size() : Q.hom(X, A->type(x)).size();
            std::vector<Elem> v(n, 0);
            while (true) {
                bool ok = contra ? presheaf_law(*A, {X, v}) : copresheaf_law(*A, {X, v});
                if (ok) {
                    P.values_.push_back(v);
                    ptypes.push_back(X);
                    ids.push_back(label(Q, *A, X, v, contra));
                }
                int i = n - 1;
                while (i >= 0 && v[i] + 1 >= sizes[i]) v[i--] = 0;
                if (i < 0) break;
                ++v[i];
            }
        }

        int m = (int)P.values_.size();
        std::vector<Elem> hom((size_t)m * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const FiniteLattice& H = Q.hom(ptypes[i], ptypes[j]);
                Elem acc = H.top();
                for (int x = 0; x < n; ++x)
                    acc = H.meet(acc, contra ? Q.lda_elem(A->type(x), ptypes[i], ptypes[j],
                                                          P.values_[j][x], P.values_[i][x])
                                             : Q.rda_elem(ptypes[i], ptypes[j], A->type(x),
                                                          P.values_[j][x], P.values_[i][x]));
                hom[i * m + j] = acc;
            }
        P.cat_ = ptr(QCategory::make(A->base_ptr(), std::move(ids), std::move(ptypes),
                                     std::move(hom)));
        return P;
    }

    static std::string label(const Quantaloid& Q, const QCategory& A, int X,
                             const std::vector<Elem>& v, bool contra) {
        std::string s = contra ? "[" : "<";
        for (int x = 0; x < (int)v.size(); ++x) {
            if (x) s += ",";
            s += contra ? Q.elem_name(A.type(x), X, v[x]) : Q.elem_name(X, A.type(x), v[x]);
        }
        s += contra ? "]" : ">";
        return s + "@" + Q.object_name(X);
    }

    QCategoryPtr source_, cat_;
    std::vector<std::vector<Elem>> values_;
    bool contravariant_ = true;
};

/// x |-> A(-,x), fully faithful into the presheaves.
inline QFunctor yoneda(const PresheafCat& P) {
    if (!P.contravariant()) throw type_error("yoneda lands in the presheaf side");
    const QCategory& A = *P.source();
    std::vector<int> map(A.size());
    for (int x = 0; x < A.size(); ++x) {
        std::vector<Elem> v(A.size());
        for (int z = 0; z < A.size(); ++z) v[z] = A.hom_elem(z, x);
        auto i = P.find(A.type(x), v);
        if (!i) throw internal_error("representable presheaf missing from the enumeration");
        map[x] = *i;
    }
    return QFunctor::make(P.source(), P.cat_ptr(), std::move(map));
}

/// x |-> A(x,-), fully faithful into the copresheaves.
inline QFunctor co_yoneda(const PresheafCat& P) {
    if (P.contravariant()) throw type_error("co-yoneda lands in the copresheaf side");
    const QCategory& A = *P.source();
    std::vector<int> map(A.size());
    for (int x = 0; x < A.size(); ++x) {
        std::vector<Elem> v(A.size());
        for (int z = 0; z < A.size(); ++z) v[z] = A.hom_elem(x, z);
        auto i = P.find(A.type(x), v);
        if (!i) throw internal_error("corepresentable copresheaf missing from the enumeration");
        map[x] = *i;
    }
    return QFunctor::make(P.source(), P.cat_ptr(), std::move(map));
}

/// A distributor A -|-> B, read columnwise: y |-> phi(-,y), a functor from B
/// into the presheaves on A.
inline QFunctor transpose_into_presheaves(const PresheafCat& P, const QDistributor& phi) {
    if (!P.contravariant()) throw type_error("transpose lands in the presheaf side");
    if (!same_category(P.source(), phi.dom_ptr()))
        throw type_error("transpose needs the presheaves on the domain");
    const QCategory& B = phi.cod();
    std::vector<int> map(B.size());
    for (int y = 0; y < B.size(); ++y) {
        std::vector<Elem> v(phi.dom().size());
        for (int x = 0; x < phi.dom().size(); ++x) v[x] = phi.at(x, y);
        auto i = P.find(B.type(y), v);
        if (!i) throw type_error("matrix column violates the presheaf law");
        map[y] = *i;
    }
    return QFunctor::make(phi.cod_ptr(), P.cat_ptr(), std::move(map));
}

/// The same distributor read rowwise: x |-> phi(x,-), a functor from A into
/// the copresheaves on B.
inline QFunctor transpose_into_copresheaves(const PresheafCat& P, const QDistributor& phi) {
    if (P.contravariant()) throw type_error("transpose lands in the copresheaf side");
    if (!same_category(P.source(), phi.cod_ptr()))
        throw type_error("transpose needs the copresheaves on the codomain");
    const QCategory& A = phi.dom();
    std::vector<int> map(A.size());
    for (int x = 0; x < A.size(); ++x) {
        std::vector<Elem> v(phi.cod().size());
        for (int y = 0; y < phi.cod().size(); ++y) v[y] = phi.at(x, y);
        auto i = P.find(A.type(x), v);
        if (!i) throw type_error("matrix row violates the copresheaf law");
        map[x] = *i;
    }
    return QFunctor::make(phi.dom_ptr(), P.cat_ptr(), std::move(map));
}

// ---------------------------------------------------------------------------
// Weighted (co)limits by their defining equations.  Each search returns the
// first object realizing the required hom identities, or nothing.

/// The supremum of mu: an object s of the same type with
/// A(s,z) = meet over x of A(x,z) over mu(x), for every z.
inline std::optional<int> sup_object(const QCategory& A, const Presheaf& mu) {
    const Quantaloid& Q = A.base();
    std::vector<Elem> want(A.size());
    for (int z = 0; z < A.size(); ++z) {
        const FiniteLattice& H = Q.hom(mu.type, A.type(z));
        Elem acc = H.top();
        for (int x = 0; x < A.size(); ++x)
            acc = H.meet(acc, Q.lda_elem(A.type(x), mu.type, A.type(z), A.hom_elem(x, z),
                                         mu.values[x]));
        want[z] = acc;
    }
    for (int s = 0; s < A.size(); ++s) {
        if (A.type(s) != mu.type) continue;
        bool good = true;
        for (int z = 0; z < A.size(); ++z)
            if (A.hom_elem(s, z) != want[z]) { good = false; break; }
        if (good) return s;
    }
    return std::nullopt;
}

/// The infimum of lam: an object i with
/// A(x,i) = meet over z of lam(z) under A(x,z), for every x.
inline std::optional<int> inf_object(const QCategory& A, const Copresheaf& lam) {
    const Quantaloid& Q = A.base();
    std::vector<Elem> want(A.size());
    for (int x = 0; x < A.size(); ++x) {
        const FiniteLattice& H = Q.hom(A.type(x), lam.type);
        Elem acc = H.top();
        for (int z = 0; z < A.size(); ++z)
            acc = H.meet(acc, Q.rda_elem(A.type(x), lam.type, A.type(z), lam.values[z],
                                         A.hom_elem(x, z)));
        want[x] = acc;
    }
    for (int i = 0; i < A.size(); ++i) {
        if (A.type(i) != lam.type) continue;
        bool good = true;
        for (int x = 0; x < A.size(); ++x)
            if (A.hom_elem(x, i) != want[x]) { good = false; break; }
        if (good) return i;
    }
    return std::nullopt;
}

/// The tensor of x by f: tx -> Y, characterized by A(f.x, z) = A(x,z) over f.
inline std::optional<int> tensor_object(const QCategory& A, const QArrow& f, int x) {
    if (f.src != A.type(x)) throw type_error("tensor arrow must start at the object type");
    const Quantaloid& Q = A.base();
    std::vector<Elem> want(A.size());
    for (int z = 0; z < A.size(); ++z)
        want[z] = Q.lda_elem(A.type(x), f.dst, A.type(z), A.hom_elem(x, z), f.e);
    for (int t = 0; t < A.size(); ++t) {
        if (A.type(t) != f.dst) continue;
        bool good = true;
        for (int z = 0; z < A.size(); ++z)
            if (A.hom_elem(t, z) != want[z]) { good = false; break; }
        if (good) return t;
    }
    return std::nullopt;
}

/// The cotensor of x by g: Y -> tx, characterized by A(z, g.x) = g under A(z,x).
inline std::optional<int> cotensor_object(const QCategory& A, const QArrow& g, int x) {
    if (g.dst != A.type(x)) throw type_error("cotensor arrow must end at the object type");
    const Quantaloid& Q = A.base();
    std::vector<Elem> want(A.size());
    for (int z = 0; z < A.size(); ++z)
        want[z] = Q.rda_elem(A.type(z), g.src, A.type(x), g.e, A.hom_elem(z, x));
    for (int c = 0; c < A.size(); ++c) {
        if (A.type(c) != g.src) continue;
        bool good = true;
        for (int z = 0; z < A.size(); ++z)
            if (A.hom_elem(z, c) != want[z]) { good = false; break; }
        if (good) return c;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Closed forms for the structure of the presheaf categories themselves:
// tensors compose pointwise, cotensors residuate pointwise, and (co)limits
// of weights reduce to matrix algebra against the (co-)Yoneda graph.

inline Presheaf presheaf_tensor(const PresheafCat& P, const QArrow& f, int i) {
    if (!P.contravariant()) throw type_error("need the presheaf side");
    if (f.src != P.type_of(i)) throw type_error("tensor arrow must start at the presheaf type");
    const QCategory& A = *P.source();
    std::vector<Elem> v(A.size());
    for (int x = 0; x < A.size(); ++x)
        v[x] = A.base().compose_elem(A.type(x), f.src, f.dst, f.e, P.values(i)[x]);
    return {f.dst, std::move(v)};
}

inline Presheaf presheaf_cotensor(const PresheafCat& P, const QArrow& g, int i) {
    if (!P.contravariant()) throw type_error("need the presheaf side");
    if (g.dst != P.type_of(i)) throw type_error("cotensor arrow must end at the presheaf type");
    const QCategory& A = *P.source();
    std::vector<Elem> v(A.size());
    for (int x = 0; x < A.size(); ++x)
        v[x] = A.base().rda_elem(A.type(x), g.src, g.dst, g.e, P.values(i)[x]);
    return {g.src, std::move(v)};
}

inline Copresheaf copresheaf_tensor(const PresheafCat& P, const QArrow& f, int i) {
    if (P.contravariant()) throw type_error("need the copresheaf side");
    if (f.src != P.type_of(i)) throw type_error("tensor arrow must start at the copresheaf type");
    const QCategory& A = *P.source();
    std::vector<Elem> v(A.size());
    for (int x = 0; x < A.size(); ++x)
        v[x] = A.base().lda_elem(f.src, f.dst, A.type(x), P.values(i)[x], f.e);
    return {f.dst, std::move(v)};
}

inline Copresheaf copresheaf_cotensor(const PresheafCat& P, const QArrow& g, int i) {
    if (P.contravariant()) throw type_error("need the copresheaf side");
    if (g.dst != P.type_of(i)) throw type_error("cotensor arrow must end at the copresheaf type");
    const QCategory& A = *P.source();
    std::vector<Elem> v(A.size());
    for (int x = 0; x < A.size(); ++x)
        v[x] = A.base().compose_elem(g.src, g.dst, A.type(x), P.values(i)[x], g.e);
    return {g.src, std::move(v)};
}

/// Supremum of a weight on the presheaf category: compose the weight with
/// the Yoneda graph, pointwise (sup Theta)(x) = join over mu of
/// Theta(mu) . mu(x).
inline Presheaf presheaf_sup(const PresheafCat& P, const Presheaf& Theta) {
    if (!P.contravariant()) throw type_error("need the presheaf side");
    if ((int)Theta.values.size() != P.size()) throw type_error("weight is on the wrong category");
    const QCategory& A = *P.source();
    const Quantaloid& Q = A.base();
    std::vector<Elem> v(A.size());
    for (int x = 0; x < A.size(); ++x) {
        const FiniteLattice& H = Q.hom(A.type(x), Theta.type);
        Elem acc = H.bottom();
        for (int m = 0; m < P.size(); ++m)
            acc = H.join(acc, Q.compose_elem(A.type(x), P.type_of(m), Theta.type,
                                             Theta.values[m], P.values(m)[x]));
        v[x] = acc;
    }
    return {Theta.type, std::move(v)};
}

/// (inf Lambda)(x) = meet over mu of Lambda(mu) under mu(x).
inline Presheaf presheaf_inf(const PresheafCat& P, const Copresheaf& Lambda) {
    if (!P.contravariant()) throw type_error("need the presheaf side");
    if ((int)Lambda.values.size() != P.size()) throw type_error("weight is on the wrong category");
    const QCategory& A = *P.source();
    const Quantaloid& Q = A.base();
    std::vector<Elem> v(A.size());
    for (int x = 0; x < A.size(); ++x) {
        const FiniteLattice& H = Q.hom(A.type(x), Lambda.type);
        Elem acc = H.top();
        for (int m = 0; m < P.size(); ++m)
            acc = H.meet(acc, Q.rda_elem(A.type(x), Lambda.type, P.type_of(m), Lambda.values[m],
                                         P.values(m)[x]));
        v[x] = acc;
    }
    return {Lambda.type, std::move(v)};
}

/// (sup Theta)(x) = meet over lam of lam(x) over Theta(lam).
inline Copresheaf copresheaf_sup(const PresheafCat& P, const Presheaf& Theta) {
    if (P.contravariant()) throw type_error("need the copresheaf side");
    if ((int)Theta.values.size() != P.size()) throw type_error("weight is on the wrong category");
    const QCategory& A = *P.source();
    const Quantaloid& Q = A.base();
    std::vector<Elem> v(A.size());
    for (int x = 0; x < A.size(); ++x) {
        const FiniteLattice& H = Q.hom(Theta.type, A.type(x));
        Elem acc = H.top();
        for (int m = 0; m < P.size(); ++m)
            acc = H.meet(acc, Q.lda_elem(P.type_of(m), Theta.type, A.type(x), P.values(m)[x],
                                         Theta.values[m]));
        v[x] = acc;
    }
    return {Theta.type, std::move(v)};
}

/// (inf Lambda)(x) = join over lam of lam(x) . Lambda(lam).
inline Copresheaf copresheaf_inf(const PresheafCat& P, const Copresheaf& Lambda) {
    if (P.contravariant()) throw type_error("need the copresheaf side");
    if ((int)Lambda.values.size() != P.size()) throw type_error("weight is on the wrong category");
    const QCategory& A = *P.source();
    const Quantaloid& Q = A.base();
    std::vector<Elem> v(A.size());
    for (int x = 0; x < A.size(); ++x) {
        const FiniteLattice& H = Q.hom(Lambda.type, A.type(x));
        Elem acc = H.bottom();
        for (int m = 0; m < P.size(); ++m)
            acc = H.join(acc, Q.compose_elem(Lambda.type, P.type_of(m), A.type(x),
                                             P.values(m)[x], Lambda.values[m]));
        v[x] = acc;
    }
    return {Lambda.type, std::move(v)};
}

// ---------------------------------------------------------------------------

struct CompletenessReport {
    bool complete = true;
    std::string detail;
    explicit operator bool() const { return complete; }
};

/// Every presheaf has a supremum; equivalently every copresheaf has an
/// infimum; equivalently the category is tensored, cotensored, and every
/// family of objects of one type has an underlying-order join.  All three
/// readings are computed and must agree — a split would be a bug here, not
/// a property of the input.
inline CompletenessReport is_complete(const QCategoryPtr& A,
                                      long long budget = default_presheaf_budget) {
    const Quantaloid& Q = A->base();

    auto P = PresheafCat::presheaves(A, budget);
    std::optional<std::string> no_sup;
    for (int i = 0; i < P.size() && !no_sup; ++i)
        if (!sup_object(*A, P.presheaf_at(i)))
            no_sup = "no supremum for " + P.cat().object_id(i);

    auto Pd = PresheafCat::copresheaves(A, budget);
    std::optional<std::string> no_inf;
    for (int i = 0; i < Pd.size() && !no_inf; ++i)
        if (!inf_object(*A, Pd.copresheaf_at(i)))
            no_inf = "no infimum for " + Pd.cat().object_id(i);

    std::optional<std::string> no_structure;
    for (int x = 0; x < A->size() && !no_structure; ++x)
        for (int Y = 0; Y < Q.objects() && !no_structure; ++Y) {
            for (Elem e = 0; e < Q.hom(A->type(x), Y).size(); ++e)
                if (!tensor_object(*A, {A->type(x), Y, e}, x)) {
                    no_structure = "no tensor of " + A->object_id(x) + " by " +
                                   Q.arrow_name({A->type(x), Y, e});
                    break;
                }
            if (no_structure) break;
            for (Elem e = 0; e < Q.hom(Y, A->type(x)).size(); ++e)
                if (!cotensor_object(*A, {Y, A->type(x), e}, x)) {
                    no_structure = "no cotensor of " + A->object_id(x) + " by " +
                                   Q.arrow_name({Y, A->type(x), e});
                    break;
                }
        }
    for (int T = 0; T < Q.objects() && !no_structure; ++T) {
        std::vector<int> fiber;
        for (int x = 0; x < A->size(); ++x)
            if (A->type(x) == T) fiber.push_back(x);
        if ((int)fiber.size() > 20)
            throw budget_error("underlying-order sweep too large", (long long)fiber.size());
        for (uint64_t mask = 0; mask < (1ull << fiber.size()); ++mask) {
            bool found = false;
            for (int z : fiber) {
                bool ub = true;
                for (size_t k = 0; k < fiber.size(); ++k)
                    if ((mask >> k & 1) && !A->obj_leq(fiber[k], z)) { ub = false; break; }
                if (!ub) continue;
                bool least = true;
                for (int w : fiber) {
                    bool wub = true;
                    for (size_t k = 0; k < fiber.size(); ++k)
                        if ((mask >> k & 1) && !A->obj_leq(fiber[k], w)) { wub = false; break; }
                    if (wub && !A->obj_leq(z, w)) { least = false; break; }
                }
                if (least) { found = true; break; }
            }
            if (!found) {
                no_structure = "a family of type " + Q.object_name(T) + " has no join";
                break;
            }
        }
    }

    bool r1 = !no_sup, r2 = !no_inf, r3 = !no_structure;
    if (r1 != r2 || r1 != r3) throw internal_error("completeness criteria disagree");
    if (r1) return {};
    return {false, *no_sup};
}

struct CcdReport {
    bool ccd = false;
    std::string detail;
    std::vector<int> sup_table;      // presheaf index -> object of A
    std::vector<int> left_adjoint;   // object of A -> presheaf index
    explicit operator bool() const { return ccd; }
};

/// Completely distributive: taking suprema of presheaves has a left
/// adjoint.  The witness for each object is found by exhaustive search; it
/// is unique because the presheaf category is skeletal, and automatically
/// functorial — both are asserted.
inline CcdReport is_ccd(const QCategoryPtr& A, long long budget = default_presheaf_budget) {
    auto P = PresheafCat::presheaves(A, budget);
    CcdReport r;
    r.sup_table.assign(P.size(), -1);
    for (int i = 0; i < P.size(); ++i) {
        auto s = sup_object(*A, P.presheaf_at(i));
        if (!s) {
            r.detail = "no supremum for " + P.cat().object_id(i);
            return r;
        }
        r.sup_table[i] = *s;
    }
    r.left_adjoint.assign(A->size(), -1);
    for (int a = 0; a < A->size(); ++a) {
        int found = -1;
        for (int w = 0; w < P.size(); ++w) {
            if (P.type_of(w) != A->type(a)) continue;
            bool good = true;
            for (int nu = 0; nu < P.size(); ++nu)
                if (P.cat().hom_elem(w, nu) != A->hom_elem(a, r.sup_table[nu])) {
                    good = false;
                    break;
                }
            if (!good) continue;
            if (found >= 0) throw internal_error("two left-adjoint witnesses in a skeletal category");
            found = w;
        }
        if (found < 0) {
            r.detail = "no left-adjoint witness at " + A->object_id(a);
            return r;
        }
        r.left_adjoint[a] = found;
    }
    const Quantaloid& Q = A->base();
    for (int a = 0; a < A->size(); ++a)
        for (int b = 0; b < A->size(); ++b)
            if (!Q.hom(A->type(a), A->type(b))
                     .leq(A->hom_elem(a, b),
                          P.cat().hom_elem(r.left_adjoint[a], r.left_adjoint[b])))
                throw internal_error("left-adjoint witness is not functorial");
    r.ccd = true;
    return r;
}

struct OpCcdReport {
    bool opccd = false;
    std::string detail;
    std::vector<int> inf_table;       // copresheaf index -> object of A
    std::vector<int> right_adjoint;   // object of A -> copresheaf index
    explicit operator bool() const { return opccd; }
};

/// Dual distributivity: taking infima of copresheaves has a right adjoint.
/// Besides the direct witness search this also runs the ccd check on the
/// dual category over the opposite base, and the two answers must agree.
inline OpCcdReport is_opccd(const QCategoryPtr& A, long long budget = default_presheaf_budget) {
    auto P = PresheafCat::copresheaves(A, budget);
    OpCcdReport r;
    r.inf_table.assign(P.size(), -1);
    bool done = false;
    for (int i = 0; i < P.size() && !done; ++i) {
        auto v = inf_object(*A, P.copresheaf_at(i));
        if (!v) {
            r.detail = "no infimum for " + P.cat().object_id(i);
            done = true;
        } else {
            r.inf_table[i] = *v;
        }
    }
    if (!done) {
        r.right_adjoint.assign(A->size(), -1);
        for (int a = 0; a < A->size() && !done; ++a) {
            int found = -1;
            for (int w = 0; w < P.size(); ++w) {
                if (P.type_of(w) != A->type(a)) continue;
                bool good = true;
                for (int nu = 0; nu < P.size(); ++nu)
                    if (P.cat().hom_elem(nu, w) != A->hom_elem(r.inf_table[nu], a)) {
                        good = false;
                        break;
                    }
                if (!good) continue;
                if (found >= 0)
                    throw internal_error("two right-adjoint witnesses in a skeletal category");
                found = w;
            }
            if (found < 0) {
                r.detail = "no right-adjoint witness at " + A->object_id(a);
                done = true;
            } else {
                r.right_adjoint[a] = found;
            }
        }
    }
    if (!done) {
        const Quantaloid& Q = A->base();
        for (int a = 0; a < A->size(); ++a)
            for (int b = 0; b < A->size(); ++b)
                if (!Q.hom(A->type(a), A->type(b))
                         .leq(A->hom_elem(a, b),
                              P.cat().hom_elem(r.right_adjoint[a], r.right_adjoint[b])))
                    throw internal_error("right-adjoint witness is not functorial");
        r.opccd = true;
    }

    auto dual = is_ccd(ptr(dualize(*A)), budget);
    if (dual.ccd != r.opccd) throw internal_error("distributivity duality cross-check failed");
    return r;
}

// ---------------------------------------------------------------------------

struct ComplementIsoReport {
    bool ok = false;
    std::string detail;
    std::vector<int> map;  // presheaf index -> copresheaf index
    explicit operator bool() const { return ok; }
};

/// Over a base with a cyclic dualizing family, pointwise complement should
/// carry presheaves to copresheaves bijectively, preserving homs and
/// undoing itself; report how far that gets.
inline ComplementIsoReport complement_iso(const PresheafCat& P, const PresheafCat& Pd,
                                          const GirardFamily& fam) {
    if (!P.contravariant() || Pd.contravariant())
        throw type_error("need presheaves then copresheaves");
    if (!same_category(P.source(), Pd.source())) throw type_error("sources differ");
    const QCategory& A = *P.source();
    const Quantaloid& Q = A.base();
    ComplementIsoReport r;
    if (P.size() != Pd.size()) {
        r.detail = "the two sides have different sizes";
        return r;
    }
    r.map.assign(P.size(), -1);
    for (int i = 0; i < P.size(); ++i) {
        std::vector<Elem> neg(A.size()), back(A.size());
        for (int x = 0; x < A.size(); ++x)
            neg[x] = complement(Q, fam, {A.type(x), P.type_of(i), P.values(i)[x]}).e;
        auto j = Pd.find(P.type_of(i), neg);
        if (!j) {
            r.detail = "complement of " + P.cat().object_id(i) + " is not a copresheaf";
            return r;
        }
        r.map[i] = *j;
        for (int x = 0; x < A.size(); ++x)
            back[x] = complement(Q, fam, {P.type_of(i), A.type(x), neg[x]}).e;
        if (back != P.values(i)) {
            r.detail = "complement does not undo itself on " + P.cat().object_id(i);
            return r;
        }
    }
    std::vector<char> hit(Pd.size(), 0);
    for (int j : r.map) {
        if (hit[j]) {
            r.detail = "complement is not injective";
            return r;
        }
        hit[j] = 1;
    }
    for (int i = 0; i < P.size(); ++i)
        for (int j = 0; j < P.size(); ++j)
            if (P.cat().hom_elem(i, j) != Pd.cat().hom_elem(r.map[i], r.map[j])) {
                r.detail = "homs differ at (" + P.cat().object_id(i) + "," +
                           P.cat().object_id(j) + ")";
                return r;
            }
    r.ok = true;
    return r;
}

}  // namespace qkan
