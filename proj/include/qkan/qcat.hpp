#pragma once
// Categories enriched over a quantaloid: a typed object set and a hom matrix
// of base arrows, subject to the usual identity and composition laws.
// Functors, the underlying (pre)order, skeletal quotients, and dualization.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quantaloid.hpp"

namespace qkan {

using QuantaloidPtr = std::shared_ptr<const Quantaloid>;

class QCategory;
using QCategoryPtr = std::shared_ptr<const QCategory>;

class QCategory {
public:
    static QCategory make(QuantaloidPtr base, std::vector<std::string> ids, std::vector<int> types,
                          std::vector<Elem> hom) {
        if (!base) throw structure_error("category needs a base");
        int n = (int)ids.size();
        if ((int)types.size() != n) throw structure_error("type count mismatch");
        if ((int)hom.size() != n * n) throw structure_error("hom matrix has wrong size");
        for (int t : types)
            if (t < 0 || t >= base->objects()) throw structure_error("object type out of range");
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (hom[x * n + y] < 0 || hom[x * n + y] >= base->hom(types[x], types[y]).size())
                    throw structure_error("hom entry out of range at (" + ids[x] + "," + ids[y] + ")");
        QCategory A;
        A.base_ = std::move(base);
        A.ids_ = std::move(ids);
        A.types_ = std::move(types);
        A.hom_ = std::move(hom);
        return A;
    }

    const Quantaloid& base() const { return *base_; }
    const QuantaloidPtr& base_ptr() const { return base_; }
    int size() const { return (int)ids_.size(); }
    int type(int x) const { return types_[x]; }
    const std::vector<int>& types() const { return types_; }
    const std::string& object_id(int x) const { return ids_[x]; }
    std::optional<int> find_object(const std::string& id) const {
        for (int x = 0; x < size(); ++x)
            if (ids_[x] == id) return x;
        return std::nullopt;
    }

    Elem hom_elem(int x, int y) const { return hom_[x * size() + y]; }
    QArrow hom(int x, int y) const { return {types_[x], types_[y], hom_elem(x, y)}; }
    const std::vector<Elem>& hom_matrix() const { return hom_; }

    /// Identity inequality and the composition law, with a witness on
    /// failure.
    Report validate() const {
        int n = size();
        for (int x = 0; x < n; ++x)
            if (!base_->hom(types_[x], types_[x]).leq(base_->id_elem(types_[x]), hom_elem(x, x)))
                return {false, "identity not below the endo-hom at " + ids_[x]};
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    Elem c = base_->compose_elem(types_[x], types_[y], types_[z], hom_elem(y, z),
                                                 hom_elem(x, y));
                    if (!base_->hom(types_[x], types_[z]).leq(c, hom_elem(x, z)))
                        return {false, "composition law fails on (" + ids_[x] + "," + ids_[y] + "," +
                                           ids_[z] + ")"};
                }
        return {};
    }

    /// x <= y in the underlying preorder: same type and the identity is
    /// below the hom from x to y.
    bool obj_leq(int x, int y) const {
        return types_[x] == types_[y] &&
               base_->hom(types_[x], types_[x]).leq(base_->id_elem(types_[x]), hom_elem(x, y));
    }
    bool obj_iso(int x, int y) const { return obj_leq(x, y) && obj_leq(y, x); }
    bool is_skeletal() const {
        for (int x = 0; x < size(); ++x)
            for (int y = x + 1; y < size(); ++y)
                if (obj_iso(x, y)) return false;
        return true;
    }

    bool operator==(const QCategory& o) const {
        return (base_ == o.base_ || *base_ == *o.base_) && ids_ == o.ids_ && types_ == o.types_ &&
               hom_ == o.hom_;
    }

private:
    QuantaloidPtr base_;
    std::vector<std::string> ids_;
    std::vector<int> types_;
    std::vector<Elem> hom_;
};

inline QCategoryPtr ptr(QCategory c) { return std::make_shared<const QCategory>(std::move(c)); }

inline bool same_category(const QCategoryPtr& a, const QCategoryPtr& b) {
    return a == b || *a == *b;
}

/// Category with identity homs on the diagonal and bottom elsewhere.
inline QCategory discrete_category(QuantaloidPtr base, const std::vector<int>& types,
                                   std::vector<std::string> ids = {}) {
    int n = (int)types.size();
    if (ids.empty())
        for (int i = 0; i < n; ++i) ids.push_back("x" + std::to_string(i));
    std::vector<Elem> hom(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            hom[x * n + y] = (x == y) ? base->id_elem(types[x])
                                      : base->hom(types[x], types[y]).bottom();
    return QCategory::make(std::move(base), std::move(ids), types, std::move(hom));
}

/// The one-object category on a base object.
inline QCategory singleton_category(QuantaloidPtr base, int X) {
    return discrete_category(std::move(base), {X}, {"*"});
}

/// Full matrix of the underlying preorder.
inline std::vector<uint8_t> underlying_order(const QCategory& A) {
    int n = A.size();
    std::vector<uint8_t> leq(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) leq[x * n + y] = A.obj_leq(x, y);
    return leq;
}

/// Least upper bound of some objects (all of one type) in the underlying
/// preorder, if one exists; the first satisfying index is returned, so the
/// answer is canonical even when the preorder has isomorphic copies.
inline std::optional<int> underlying_join(const QCategory& A, const std::vector<int>& xs) {
    for (int z = 0; z < A.size(); ++z) {
        bool ub = true;
        for (int x : xs)
            if (!A.obj_leq(x, z)) { ub = false; break; }
        if (!ub) continue;
        bool least = true;
        for (int w = 0; w < A.size(); ++w) {
            bool wub = true;
            for (int x : xs)
                if (!A.obj_leq(x, w)) { wub = false; break; }
            if (wub && !A.obj_leq(z, w)) { least = false; break; }
        }
        if (least) return z;
    }
    return std::nullopt;
}

struct SkeletalQuotient {
    QCategoryPtr quotient;
    std::vector<int> projection;       // object of A -> object of quotient
    std::vector<int> representatives;  // object of quotient -> least object of A
};

/// Collapse isomorphic objects, keeping the least index of each class.  The
/// projection is surjective and fully faithful because isomorphic objects
/// have equal homs against everything.
inline SkeletalQuotient skeletal_quotient(const QCategory& A) {
    int n = A.size();
    std::vector<int> cls(n, -1), reps;
    for (int x = 0; x < n; ++x) {
        if (cls[x] >= 0) continue;
        cls[x] = (int)reps.size();
        for (int y = x + 1; y < n; ++y)
            if (cls[y] < 0 && A.obj_iso(x, y)) cls[y] = cls[x];
        reps.push_back(x);
    }
    int m = (int)reps.size();
    std::vector<std::string> ids;
    std::vector<int> types;
    std::vector<Elem> hom(m * m);
    for (int i = 0; i < m; ++i) {
        ids.push_back(A.object_id(reps[i]));
        types.push_back(A.type(reps[i]));
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) hom[i * m + j] = A.hom_elem(reps[i], reps[j]);
    return {ptr(QCategory::make(A.base_ptr(), std::move(ids), std::move(types), std::move(hom))),
            std::move(cls), std::move(reps)};
}

/// Full subcategory on the listed objects, homs inherited.
inline QCategory full_subcategory(const QCategory& A, const std::vector<int>& objs) {
    int m = (int)objs.size();
    std::vector<std::string> ids;
    std::vector<int> types;
    for (int x : objs) {
        if (x < 0 || x >= A.size()) throw structure_error("subcategory object out of range");
        ids.push_back(A.object_id(x));
        types.push_back(A.type(x));
    }
    std::vector<Elem> hom((size_t)m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) hom[i * m + j] = A.hom_elem(objs[i], objs[j]);
    return QCategory::make(A.base_ptr(), std::move(ids), std::move(types), std::move(hom));
}

/// Same objects over the opposite base, homs transposed.  Applying this
/// twice gives back a category that compares equal to the original.
inline QCategory dualize(const QCategory& A) {
    int n = A.size();
    std::vector<std::string> ids;
    std::vector<int> types;
    for (int x = 0; x < n; ++x) {
        ids.push_back(A.object_id(x));
        types.push_back(A.type(x));
    }
    std::vector<Elem> hom(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) hom[x * n + y] = A.hom_elem(y, x);
    return QCategory::make(std::make_shared<const Quantaloid>(make_opposite(A.base())),
                           std::move(ids), std::move(types), std::move(hom));
}

// ---------------------------------------------------------------------------

class QFunctor {
public:
    static QFunctor make(QCategoryPtr dom, QCategoryPtr cod, std::vector<int> map) {
        if (!dom || !cod) throw structure_error("functor needs both categories");
        if ((int)map.size() != dom->size()) throw structure_error("functor table has wrong size");
        for (int v : map)
            if (v < 0 || v >= cod->size()) throw structure_error("functor value out of range");
        QFunctor F;
        F.dom_ = std::move(dom);
        F.cod_ = std::move(cod);
        F.map_ = std::move(map);
        return F;
    }

    const QCategory& dom() const { return *dom_; }
    const QCategory& cod() const { return *cod_; }
    const QCategoryPtr& dom_ptr() const { return dom_; }
    const QCategoryPtr& cod_ptr() const { return cod_; }
    int operator()(int x) const { return map_[x]; }
    const std::vector<int>& map() const { return map_; }

    bool operator==(const QFunctor& o) const {
        return map_ == o.map_ && same_category(dom_, o.dom_) && same_category(cod_, o.cod_);
    }

private:
    QCategoryPtr dom_, cod_;
    std::vector<int> map_;
};

struct FunctorReport {
    bool ok = true;
    std::string detail;
    bool fully_faithful = false;
    explicit operator bool() const { return ok; }
};

/// Type preservation and the action inequality; full faithfulness (equality
/// of homs) is reported as a flag on success.
inline FunctorReport validate_functor(const QFunctor& F) {
    const QCategory &A = F.dom(), &B = F.cod();
    for (int x = 0; x < A.size(); ++x)
        if (B.type(F(x)) != A.type(x))
            return {false, "type not preserved at " + A.object_id(x), false};
    bool ff = true;
    for (int x = 0; x < A.size(); ++x)
        for (int y = 0; y < A.size(); ++y) {
            Elem a = A.hom_elem(x, y), b = B.hom_elem(F(x), F(y));
            if (!A.base().hom(A.type(x), A.type(y)).leq(a, b))
                return {false, "action inequality fails on (" + A.object_id(x) + "," +
                                   A.object_id(y) + ")",
                        false};
            if (a != b) ff = false;
        }
    return {true, "", ff};
}

inline QFunctor functor_compose(const QFunctor& G, const QFunctor& F) {
    if (!same_category(G.dom_ptr(), F.cod_ptr()))
        throw type_error("functor composition endpoints do not match");
    std::vector<int> m(F.dom().size());
    for (int x = 0; x < F.dom().size(); ++x) m[x] = G(F(x));
    return QFunctor::make(F.dom_ptr(), G.cod_ptr(), std::move(m));
}

/// Pointwise order on parallel functors: F <= G when the identity sits below
/// B(Fx, Gx) for every x.
inline bool functor_leq(const QFunctor& F, const QFunctor& G) {
    if (!same_category(F.dom_ptr(), G.dom_ptr()) || !same_category(F.cod_ptr(), G.cod_ptr()))
        throw type_error("functors are not parallel");
    const QCategory& B = F.cod();
    for (int x = 0; x < F.dom().size(); ++x) {
        int t = B.type(F(x));
        if (!B.base().hom(t, t).leq(B.base().id_elem(t), B.hom_elem(F(x), G(x)))) return false;
    }
    return true;
}

}  // namespace qkan
