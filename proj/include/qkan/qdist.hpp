#pragma once
// Distributors (bimodules) between quantaloid-enriched categories: matrices
// of base arrows obeying the action law on both sides.  Composition,
// residuation, the canonical regularity witness, and graphs of functors.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qcat.hpp"

namespace qkan {

class QDistributor {
public:
    // phi: A -|-> B, with mat[x * |B| + y] in base(hom(type_A x, type_B y)).
    static QDistributor make(QCategoryPtr dom, QCategoryPtr cod, std::vector<Elem> mat) {
        if (!dom || !cod) throw structure_error("distributor needs both categories");
        if (!same_category_base(*dom, *cod)) throw type_error("distributor endpoints disagree on the base");
        if ((int)mat.size() != dom->size() * cod->size())
            throw structure_error("distributor matrix has wrong size");
        for (int x = 0; x < dom->size(); ++x)
            for (int y = 0; y < cod->size(); ++y) {
                Elem e = mat[x * cod->size() + y];
                if (e < 0 || e >= dom->base().hom(dom->type(x), cod->type(y)).size())
                    throw structure_error("distributor entry out of range at (" +
                                          dom->object_id(x) + "," + cod->object_id(y) + ")");
            }
        QDistributor p;
        p.dom_ = std::move(dom);
        p.cod_ = std::move(cod);
        p.mat_ = std::move(mat);
        return p;
    }

    const QCategory& dom() const { return *dom_; }
    const QCategory& cod() const { return *cod_; }
    const QCategoryPtr& dom_ptr() const { return dom_; }
    const QCategoryPtr& cod_ptr() const { return cod_; }
    const Quantaloid& base() const { return dom_->base(); }

    Elem at(int x, int y) const { return mat_[x * cod_->size() + y]; }
    const std::vector<Elem>& matrix() const { return mat_; }

    bool operator==(const QDistributor& o) const {
        return mat_ == o.mat_ && same_category(dom_, o.dom_) && same_category(cod_, o.cod_);
    }

private:
    static bool same_category_base(const QCategory& a, const QCategory& b) {
        return a.base_ptr() == b.base_ptr() || a.base() == b.base();
    }
    QCategoryPtr dom_, cod_;
    std::vector<Elem> mat_;
};

/// The hom matrix of A as the identity distributor A -|-> A.
inline QDistributor identity_dist(const QCategoryPtr& A) {
    return QDistributor::make(A, A, A->hom_matrix());
}

inline bool dist_parallel(const QDistributor& a, const QDistributor& b) {
    return same_category(a.dom_ptr(), b.dom_ptr()) && same_category(a.cod_ptr(), b.cod_ptr());
}

inline bool dist_leq(const QDistributor& a, const QDistributor& b) {
    if (!dist_parallel(a, b)) throw type_error("distributors are not parallel");
    for (int x = 0; x < a.dom().size(); ++x)
        for (int y = 0; y < a.cod().size(); ++y)
            if (!a.base().hom(a.dom().type(x), a.cod().type(y)).leq(a.at(x, y), b.at(x, y)))
                return false;
    return true;
}

inline QDistributor dist_join(const QDistributor& a, const QDistributor& b) {
    if (!dist_parallel(a, b)) throw type_error("distributors are not parallel");
    std::vector<Elem> m(a.matrix().size());
    for (int x = 0; x < a.dom().size(); ++x)
        for (int y = 0; y < a.cod().size(); ++y)
            m[x * a.cod().size() + y] =
                a.base().hom(a.dom().type(x), a.cod().type(y)).join(a.at(x, y), b.at(x, y));
    return QDistributor::make(a.dom_ptr(), a.cod_ptr(), std::move(m));
}

inline QDistributor dist_bottom(const QCategoryPtr& A, const QCategoryPtr& B) {
    std::vector<Elem> m((size_t)A->size() * B->size());
    for (int x = 0; x < A->size(); ++x)
        for (int y = 0; y < B->size(); ++y)
            m[x * B->size() + y] = A->base().hom(A->type(x), B->type(y)).bottom();
    return QDistributor::make(A, B, std::move(m));
}

/// (psi . phi)(x,z) = join over y of psi(y,z) . phi(x,y).
inline QDistributor dist_compose(const QDistributor& psi, const QDistributor& phi) {
    if (!same_category(psi.dom_ptr(), phi.cod_ptr()))
        throw type_error("distributor composition endpoints do not match");
    const QCategory &A = phi.dom(), &B = phi.cod(), &C = psi.cod();
    const Quantaloid& Q = phi.base();
    std::vector<Elem> m((size_t)A.size() * C.size());
    for (int x = 0; x < A.size(); ++x)
        for (int z = 0; z < C.size(); ++z) {
            const auto& H = Q.hom(A.type(x), C.type(z));
            Elem acc = H.bottom();
            for (int y = 0; y < B.size(); ++y)
                acc = H.join(acc, Q.compose_elem(A.type(x), B.type(y), C.type(z), psi.at(y, z),
                                                 phi.at(x, y)));
            m[x * C.size() + z] = acc;
        }
    return QDistributor::make(phi.dom_ptr(), psi.cod_ptr(), std::move(m));
}

/// xi over phi: the greatest psi: B -|-> C with psi . phi <= xi, pointwise
/// (xi over phi)(y,z) = meet over x of xi(x,z) over phi(x,y).
inline QDistributor dist_lda(const QDistributor& xi, const QDistributor& phi) {
    if (!same_category(xi.dom_ptr(), phi.dom_ptr()))
        throw type_error("residual endpoints do not match");
    const QCategory &A = phi.dom(), &B = phi.cod(), &C = xi.cod();
    const Quantaloid& Q = phi.base();
    std::vector<Elem> m((size_t)B.size() * C.size());
    for (int y = 0; y < B.size(); ++y)
        for (int z = 0; z < C.size(); ++z) {
            const auto& H = Q.hom(B.type(y), C.type(z));
            Elem acc = H.top();
            for (int x = 0; x < A.size(); ++x)
                acc = H.meet(acc, Q.lda_elem(A.type(x), B.type(y), C.type(z), xi.at(x, z),
                                             phi.at(x, y)));
            m[y * C.size() + z] = acc;
        }
    return QDistributor::make(phi.cod_ptr(), xi.cod_ptr(), std::move(m));
}

/// psi under xi: the greatest phi: A -|-> B with psi . phi <= xi, pointwise
/// (psi under xi)(x,y) = meet over z of psi(y,z) under xi(x,z).
inline QDistributor dist_rda(const QDistributor& psi, const QDistributor& xi) {
    if (!same_category(psi.cod_ptr(), xi.cod_ptr()))
        throw type_error("residual endpoints do not match");
    const QCategory &A = xi.dom(), &B = psi.dom(), &C = psi.cod();
    const Quantaloid& Q = psi.base();
    std::vector<Elem> m((size_t)A.size() * B.size());
    for (int x = 0; x < A.size(); ++x)
        for (int y = 0; y < B.size(); ++y) {
            const auto& H = Q.hom(A.type(x), B.type(y));
            Elem acc = H.top();
            for (int z = 0; z < C.size(); ++z)
                acc = H.meet(acc, Q.rda_elem(A.type(x), B.type(y), C.type(z), psi.at(y, z),
                                             xi.at(x, z)));
            m[x * B.size() + y] = acc;
        }
    return QDistributor::make(xi.dom_ptr(), psi.dom_ptr(), std::move(m));
}

struct DistReport {
    bool ok = true;
    std::string detail;
    int condition_used = 2;
    explicit operator bool() const { return ok; }
};

/// Validate the action laws.  Three equivalent formulations exist: the
/// two-sided pointwise law, the one-sided composites phi.A <= phi and
/// B.phi <= phi, and the residual form A <= phi under phi, B <= phi over
/// phi.  We decide by the one-sided composites (condition 2) and insist the
/// other two agree, since their equivalence is a theorem about the base and
/// any split would be a bug here, not a property of the input.
inline DistReport validate_distributor(const QDistributor& phi) {
    const QCategory &A = phi.dom(), &B = phi.cod();
    const Quantaloid& Q = phi.base();

    bool two_sided = true;
    std::string witness;
    for (int x = 0; x < A.size() && two_sided; ++x)
        for (int y = 0; y < B.size() && two_sided; ++y)
            for (int x2 = 0; x2 < A.size() && two_sided; ++x2)
                for (int y2 = 0; y2 < B.size(); ++y2) {
                    Elem inner = Q.compose_elem(A.type(x2), A.type(x), B.type(y), phi.at(x, y),
                                                A.hom_elem(x2, x));
                    Elem whole = Q.compose_elem(A.type(x2), B.type(y), B.type(y2),
                                                B.hom_elem(y, y2), inner);
                    if (!Q.hom(A.type(x2), B.type(y2)).leq(whole, phi.at(x2, y2))) {
                        two_sided = false;
                        witness = "action law fails around (" + A.object_id(x2) + "," +
                                  B.object_id(y2) + ")";
                        break;
                    }
                }

    auto right = dist_compose(phi, identity_dist(phi.dom_ptr()));
    auto left = dist_compose(identity_dist(phi.cod_ptr()), phi);
    bool one_sided = dist_leq(right, phi) && dist_leq(left, phi);
    bool residual = dist_leq(identity_dist(phi.dom_ptr()), dist_rda(phi, phi)) &&
                    dist_leq(identity_dist(phi.cod_ptr()), dist_lda(phi, phi));
    if (one_sided != two_sided || one_sided != residual)
        throw internal_error("distributor law formulations disagree");
    if (!one_sided) {
        if (witness.empty()) witness = "one-sided composite exceeds the matrix";
        return {false, witness, 2};
    }
    return {true, "", 2};
}

/// The greatest g with phi . g . phi <= phi, i.e. (phi under phi) over phi.
inline QDistributor phi_bar(const QDistributor& phi) {
    return dist_lda(dist_rda(phi, phi), phi);
}

struct RegularityResult {
    bool regular = false;
    QDistributor phibar;
    QDistributor triple;  // phi . phibar . phi
    std::optional<std::pair<int, int>> failing_entry;
};

/// phi is regular when phi = phi . phibar . phi; since phibar is the
/// greatest candidate, the triple composite never exceeds phi, equality and
/// one-sided comparison coincide, and a successful existential witness can
/// always be replaced by phibar.  All of that is asserted, not assumed.
inline RegularityResult is_regular(const QDistributor& phi) {
    auto pb = phi_bar(phi);
    auto triple = dist_compose(dist_compose(phi, pb), phi);
    if (!dist_leq(triple, phi)) throw internal_error("canonical witness exceeded the distributor");
    bool eq = triple == phi;
    bool ge = dist_leq(phi, triple);
    if (eq != ge) throw internal_error("regularity formulations disagree");
    RegularityResult r{eq, std::move(pb), std::move(triple), std::nullopt};
    if (!eq) {
        for (int x = 0; x < phi.dom().size() && !r.failing_entry; ++x)
            for (int y = 0; y < phi.cod().size(); ++y)
                if (r.triple.at(x, y) != phi.at(x, y)) {
                    r.failing_entry = {x, y};
                    break;
                }
    }
    return r;
}

/// Graph and cograph of a functor: F_graph(x,y) = B(Fx, y) and
/// F_cograph(y,x) = B(y, Fx).  They form an adjoint pair in the distributor
/// world, the graph left of the cograph, and both are regular; we verify
/// all of it on the spot.
struct FunctorGraphs {
    QDistributor graph;    // A -|-> B
    QDistributor cograph;  // B -|-> A
};

inline FunctorGraphs functor_graph(const QFunctor& F) {
    const QCategory &A = F.dom(), &B = F.cod();
    std::vector<Elem> g((size_t)A.size() * B.size()), cg((size_t)B.size() * A.size());
    for (int x = 0; x < A.size(); ++x)
        for (int y = 0; y < B.size(); ++y) {
            g[x * B.size() + y] = B.hom_elem(F(x), y);
            cg[y * A.size() + x] = B.hom_elem(y, F(x));
        }
    FunctorGraphs out{QDistributor::make(F.dom_ptr(), F.cod_ptr(), std::move(g)),
                      QDistributor::make(F.cod_ptr(), F.dom_ptr(), std::move(cg))};
    bool unit = dist_leq(identity_dist(F.dom_ptr()), dist_compose(out.cograph, out.graph));
    bool counit = dist_leq(dist_compose(out.graph, out.cograph), identity_dist(F.cod_ptr()));
    if (!unit || !counit) throw internal_error("functor graphs failed their adjunction");
    if (!is_regular(out.graph).regular || !is_regular(out.cograph).regular)
        throw internal_error("functor graph failed to be regular");
    return out;
}

/// Same matrix between the discrete categories on the same typed objects.
inline QDistributor discretize(const QDistributor& phi) {
    auto dd = ptr(discrete_category(phi.dom().base_ptr(), phi.dom().types()));
    auto dc = ptr(discrete_category(phi.cod().base_ptr(), phi.cod().types()));
    return QDistributor::make(std::move(dd), std::move(dc), phi.matrix());
}

/// Number of matrices between A and B (valid or not); the enumeration
/// budget is checked against this.
inline long long dist_candidate_count(const QCategory& A, const QCategory& B,
                                      long long cap = 1'000'000'000'000LL) {
    long long count = 1;
    for (int x = 0; x < A.size(); ++x)
        for (int y = 0; y < B.size(); ++y) {
            count *= A.base().hom(A.type(x), B.type(y)).size();
            if (count > cap) return cap + 1;
        }
    return count;
}

/// Visit every valid distributor A -|-> B in lexicographic matrix order
/// (row-major, entry element indices increasing).  Throws budget_error if
/// the raw candidate space is larger than `budget`.
inline void enumerate_distributors(const QCategoryPtr& A, const QCategoryPtr& B, long long budget,
                                   const std::function<void(const QDistributor&)>& fn) {
    long long space = dist_candidate_count(*A, *B, budget);
    if (space > budget) throw budget_error("distributor enumeration exceeds budget", space);
    int nx = A->size(), ny = B->size();
    std::vector<Elem> mat((size_t)nx * ny, 0);
    std::vector<int> sizes((size_t)nx * ny);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            sizes[x * ny + y] = A->base().hom(A->type(x), B->type(y)).size();
    auto idA = identity_dist(A);
    auto idB = identity_dist(B);
    while (true) {
        auto cand = QDistributor::make(A, B, mat);
        if (dist_leq(dist_compose(cand, idA), cand) && dist_leq(dist_compose(idB, cand), cand))
            fn(cand);
        int i = (int)mat.size() - 1;
        while (i >= 0 && mat[i] + 1 >= sizes[i]) {
            mat[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++mat[i];
    }
}

}  // namespace qkan
