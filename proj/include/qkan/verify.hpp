#pragma once
// The verification harness behind the command-line driver.  Three entry
// points: run_check answers structural questions about declared entities,
// verify_theorem quantifies a named fact over categories and distributors
// generated from the workspace base within explicit bounds, and mine
// searches the same space for counterexamples to the implications between
// regularity and the two distributivity properties.
//
// Every negative verdict carries a witness plus a standalone reproduction
// document, so a reported failure can be fed back in as an ordinary check.
// Bounded sweeps stop at their first violation; the witness is therefore
// the least one in the fixed enumeration order (sizes ascending, type
// tuples and matrices lexicographic).

#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <qkan/completion.hpp>
#include <qkan/kan.hpp>
#include <qkan/workspace.hpp>

namespace qkan {

struct Bounds {
    int max_objects = 2;
    long long presheaf_budget = default_presheaf_budget;  // candidate presheaves per call
    long long dist_budget = 100'000;                      // candidate matrices per sweep
};

enum class Outcome { holds, fails, budget_exceeded };

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::holds: return "holds";
        case Outcome::fails: return "fails";
        default: return "budget-exceeded";
    }
}

struct Verdict {
    std::string id;
    Outcome result = Outcome::holds;
    std::string witness;  // empty when there is nothing to point at
    json recheck;         // {workspace, command, expect}: standalone reproduction
    long long instances = 0;
    std::vector<std::pair<std::string, long long>> counts;
    std::vector<std::string> notes;
    double seconds = 0.0;
    json data;  // command-specific payload (kphi membership etc.)
};

inline json verdict_json(const Verdict& v) {
    json out{{"id", v.id}, {"result", outcome_name(v.result)}, {"instances", v.instances},
             {"seconds", v.seconds}};
    if (!v.witness.empty()) out["witness"] = v.witness;
    if (!v.recheck.is_null()) out["recheck"] = v.recheck;
    if (!v.counts.empty()) {
        json c;
        for (auto& [k, n] : v.counts) c[k] = n;
        out["counts"] = std::move(c);
    }
    if (!v.notes.empty()) out["notes"] = v.notes;
    if (!v.data.is_null()) out["data"] = v.data;
    return out;
}

inline std::string verdict_text(const Verdict& v) {
    std::ostringstream s;
    s << v.id << ": " << outcome_name(v.result) << " (" << v.instances << " instances, "
      << v.seconds << " s)\n";
    for (auto& [k, n] : v.counts) s << "  " << k << ": " << n << "\n";
    for (auto& n : v.notes) s << "  note: " << n << "\n";
    if (!v.witness.empty()) s << "  witness: " << v.witness << "\n";
    return s.str();
}

// ---------------------------------------------------------------------------
// Sweep plumbing.

namespace harness {

struct BudgetLedger {
    long long remaining;
    void charge(long long n, const char* what) {
        if (n > remaining)
            throw budget_error(std::string("sweep budget exhausted at ") + what, n);
        remaining -= n;
    }
};

inline void for_each_type_tuple(const Quantaloid& Q, int k,
                                const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> t(k, 0);
    while (true) {
        fn(t);
        int i = k - 1;
        while (i >= 0 && t[i] + 1 >= Q.objects()) t[i--] = 0;
        if (i < 0) return;
        ++t[i];
    }
}

inline QCategoryPtr named_discrete(const QuantaloidPtr& base, const std::vector<int>& types,
                                   const std::string& prefix) {
    std::vector<std::string> ids;
    for (size_t i = 0; i < types.size(); ++i) ids.push_back(prefix + std::to_string(i));
    return ptr(discrete_category(base, types, std::move(ids)));
}

/// All categories over the base with up to max_objects objects: sizes
/// ascending, type tuples and hom matrices lexicographic, axioms checked.
/// The ledger is charged for every candidate matrix, valid or not.
inline void for_each_category(const QuantaloidPtr& base, int max_objects, BudgetLedger& ledger,
                              const std::function<void(const QCategoryPtr&)>& fn) {
    const Quantaloid& Q = *base;
    for (int k = 1; k <= max_objects; ++k)
        for_each_type_tuple(Q, k, [&](const std::vector<int>& types) {
            long long raw = 1;
            for (int x = 0; x < k; ++x)
                for (int y = 0; y < k; ++y) raw *= Q.hom(types[x], types[y]).size();
            ledger.charge(raw, "category enumeration");
            std::vector<std::string> ids;
            for (int i = 0; i < k; ++i) ids.push_back("x" + std::to_string(i));
            std::vector<Elem> hom((size_t)k * k, 0);
            std::vector<int> sizes((size_t)k * k);
            for (int x = 0; x < k; ++x)
                for (int y = 0; y < k; ++y) sizes[x * k + y] = Q.hom(types[x], types[y]).size();
            while (true) {
                QCategory A = QCategory::make(base, ids, types, hom);
                if (A.validate()) fn(ptr(std::move(A)));
                int i = (int)hom.size() - 1;
                while (i >= 0 && hom[i] + 1 >= sizes[i]) hom[i--] = 0;
                if (i < 0) break;
                ++hom[i];
            }
        });
}

/// Distributors between two fixed categories, materialized once per
/// endpoint pair and shared across sweeps.
class DistCache {
public:
    const std::vector<QDistributor>& between(const QCategoryPtr& A, const QCategoryPtr& B,
                                             BudgetLedger& ledger) {
        auto key = std::make_pair(A.get(), B.get());
        auto it = store_.find(key);
        if (it != store_.end()) return it->second;
        ledger.charge(dist_candidate_count(*A, *B), "distributor enumeration");
        std::vector<QDistributor> out;
        enumerate_distributors(A, B, std::numeric_limits<long long>::max(),
                               [&](const QDistributor& d) { out.push_back(d); });
        return store_.emplace(key, std::move(out)).first->second;
    }

private:
    std::map<std::pair<const QCategory*, const QCategory*>, std::vector<QDistributor>> store_;
};

/// Discrete endpoint pairs for relation sweeps: sizes ascending with the
/// left size major, then type tuples lexicographic on each side.
inline void for_each_discrete_pair(
    const QuantaloidPtr& base, int max_objects,
    const std::function<void(const QCategoryPtr&, const QCategoryPtr&)>& fn) {
    const Quantaloid& Q = *base;
    for (int a = 1; a <= max_objects; ++a)
        for (int b = 1; b <= max_objects; ++b)
            for_each_type_tuple(Q, a, [&](const std::vector<int>& ta) {
                auto A = named_discrete(base, ta, "a");
                for_each_type_tuple(Q, b, [&](const std::vector<int>& tb) {
                    fn(A, named_discrete(base, tb, "b"));
                });
            });
}

inline std::string shape_key(const QCategory& A, const QCategory& B) {
    return "distributors(" + std::to_string(A.size()) + "x" + std::to_string(B.size()) + ")";
}

/// All functors A -> B in lexicographic map order.
inline void for_each_functor(const QCategoryPtr& A, const QCategoryPtr& B, BudgetLedger& ledger,
                             const std::function<void(const QFunctor&)>& fn) {
    long long raw = 1;
    for (int x = 0; x < A->size(); ++x) raw *= B->size();
    ledger.charge(raw, "functor enumeration");
    std::vector<int> map(A->size(), 0);
    while (true) {
        QFunctor F = QFunctor::make(A, B, map);
        if (validate_functor(F)) fn(F);
        int i = (int)map.size() - 1;
        while (i >= 0 && map[i] + 1 >= B->size()) map[i--] = 0;
        if (i < 0) return;
        ++map[i];
    }
}

// --- Witness documents ------------------------------------------------------

inline json witness_dist_doc(const Workspace& ws, const QDistributor& phi) {
    Workspace w;
    w.base_spec = ws.base_spec;
    w.base = ws.base;
    w.categories.emplace_back("left", phi.dom_ptr());
    if (!same_category(phi.dom_ptr(), phi.cod_ptr()))
        w.categories.emplace_back("right", phi.cod_ptr());
    w.distributors.emplace_back("w", phi);
    return workspace_json(w);
}

inline json witness_cat_doc(const Workspace& ws, const QCategoryPtr& A) {
    Workspace w;
    w.base_spec = ws.base_spec;
    w.base = ws.base;
    w.categories.emplace_back("c", A);
    return workspace_json(w);
}

inline json recheck_of(json doc, const std::string& command, const char* expect) {
    return {{"workspace", std::move(doc)}, {"command", command}, {"expect", expect}};
}

inline std::string presheaf_label(const PresheafCat& P, int i) {
    const QCategory& B = *P.source();
    const Quantaloid& Q = B.base();
    std::string s = "[";
    for (int x = 0; x < B.size(); ++x) {
        if (x) s += " ";
        s += P.contravariant() ? Q.elem_name(B.type(x), P.type_of(i), P.values(i)[x])
                               : Q.elem_name(P.type_of(i), B.type(x), P.values(i)[x]);
    }
    return s + "]";
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

}  // namespace harness

// ---------------------------------------------------------------------------
// Structural checks on declared entities.

inline Verdict check_regular(const Workspace& ws, const std::string& name, const Bounds&) {
    harness::Timer t;
    const QDistributor& phi = ws.distributor(name);
    auto r = is_regular(phi);
    Verdict v{"check regular " + name};
    v.instances = 1;
    v.result = r.regular ? Outcome::holds : Outcome::fails;
    if (!r.regular && r.failing_entry) {
        auto [x, y] = *r.failing_entry;
        const Quantaloid& Q = *ws.base;
        v.witness = "entry (" + phi.dom().object_id(x) + "," + phi.cod().object_id(y) + "): " +
                    Q.elem_name(phi.dom().type(x), phi.cod().type(y), phi.at(x, y)) +
                    " != " +
                    Q.elem_name(phi.dom().type(x), phi.cod().type(y), r.triple.at(x, y)) +
                    " after composing with the canonical middle";
        v.recheck = harness::recheck_of(harness::witness_dist_doc(ws, phi), "check regular w",
                                        "fails");
    }
    v.seconds = t.seconds();
    return v;
}

inline Verdict check_kphi(const Workspace& ws, const std::string& name, const Bounds& bounds) {
    harness::Timer t;
    const QDistributor& phi = ws.distributor(name);
    KPhi K = kphi(phi, bounds.presheaf_budget);
    Verdict v{"kphi " + name};
    v.instances = (long long)K.fix.members.size();
    const QCategory& F = *K.fix.cat;
    const Quantaloid& Q = *ws.base;
    json members = json::array();
    for (size_t b = 0; b < K.fix.members.size(); ++b) {
        int i = K.fix.members[b];
        json values = json::array();
        const QCategory& B = phi.cod();
        for (int x = 0; x < B.size(); ++x)
            values.push_back(
                Q.elem_name(B.type(x), K.presheaves.type_of(i), K.presheaves.values(i)[x]));
        members.push_back({{"id", F.object_id((int)b)},
                           {"type", Q.object_name(K.presheaves.type_of(i))},
                           {"values", std::move(values)}});
        v.notes.push_back("member " + F.object_id((int)b));
    }
    json hom = json::array();
    for (int x = 0; x < F.size(); ++x) {
        json row = json::array();
        std::string line = "hom " + F.object_id(x) + ":";
        for (int y = 0; y < F.size(); ++y) {
            std::string e = Q.elem_name(F.type(x), F.type(y), F.hom_elem(x, y));
            row.push_back(e);
            line += " " + e;
        }
        hom.push_back(std::move(row));
        v.notes.push_back(std::move(line));
    }
    v.data = {{"members", std::move(members)}, {"hom", std::move(hom)}};
    v.seconds = t.seconds();
    return v;
}

namespace harness {

inline QCategoryPtr resolve_check_target(const Workspace& ws, const std::string& target,
                                         const Bounds& bounds) {
    if (target.starts_with("kphi:"))
        return kphi(ws.distributor(target.substr(5)), bounds.presheaf_budget).fix.cat;
    return ws.category(target);
}

}  // namespace harness

inline Verdict check_ccd(const Workspace& ws, const std::string& target, bool op,
                         const Bounds& bounds) {
    harness::Timer t;
    auto A = harness::resolve_check_target(ws, target, bounds);
    Verdict v{std::string("check ") + (op ? "opccd" : "ccd") + " " + target};
    v.instances = 1;
    std::string detail;
    if (op) {
        auto r = is_opccd(A, bounds.presheaf_budget);
        v.result = r.opccd ? Outcome::holds : Outcome::fails;
        detail = r.detail;
    } else {
        auto r = is_ccd(A, bounds.presheaf_budget);
        v.result = r.ccd ? Outcome::holds : Outcome::fails;
        detail = r.detail;
    }
    if (v.result == Outcome::fails) {
        v.witness = detail;
        v.recheck = harness::recheck_of(harness::witness_cat_doc(ws, A),
                                        std::string("check ") + (op ? "opccd" : "ccd") + " c",
                                        "fails");
    }
    v.seconds = t.seconds();
    return v;
}

inline Verdict check_complete(const Workspace& ws, const std::string& name, const Bounds& bounds) {
    harness::Timer t;
    auto A = ws.category(name);
    auto r = is_complete(A, bounds.presheaf_budget);
    Verdict v{"check complete " + name};
    v.instances = 1;
    v.result = r.complete ? Outcome::holds : Outcome::fails;
    if (!r.complete) {
        v.witness = r.detail;
        v.recheck = harness::recheck_of(harness::witness_cat_doc(ws, A), "check complete c",
                                        "fails");
    }
    v.seconds = t.seconds();
    return v;
}

inline Verdict check_girard(const Workspace& ws, const Bounds& bounds) {
    harness::Timer t;
    const Quantaloid& Q = *ws.base;
    auto fam = girard_search(Q, bounds.presheaf_budget);
    Verdict v{"check girard"};
    long long families = 1;
    for (int X = 0; X < Q.objects(); ++X) families *= Q.hom(X, X).size();
    v.instances = families;
    if (fam) {
        v.result = Outcome::holds;
        std::string w = "d = ";
        for (int X = 0; X < Q.objects(); ++X) {
            if (X) w += ", ";
            w += Q.elem_name(X, X, fam->d[X]);
        }
        v.witness = w;
    } else {
        v.result = Outcome::fails;
        v.witness = "no cyclic dualizing family among " + std::to_string(families) +
                    " candidates";
        v.recheck = harness::recheck_of(json{{ws.base->objects() == 1 ? "quantale" : "quantaloid",
                                              ws.base_spec}},
                                        "check girard", "fails");
    }
    v.seconds = t.seconds();
    return v;
}

// ---------------------------------------------------------------------------
// Theorem sweeps.

namespace harness {

// Shared state for one bounded quantification: the budget, running counts,
// and the first witness if one turns up.
struct Sweep {
    const Workspace& ws;
    Bounds bounds;
    BudgetLedger ledger;
    Verdict v;
    bool stopped = false;

    Sweep(const Workspace& w, const Bounds& b, std::string id)
        : ws(w), bounds(b), ledger{b.dist_budget}, v{std::move(id)} {}

    void bump(const std::string& key) {
        ++v.instances;
        for (auto& [k, n] : v.counts)
            if (k == key) {
                ++n;
                return;
            }
        v.counts.emplace_back(key, 1);
    }

    void fail(std::string witness, json recheck) {
        if (stopped) return;
        v.result = Outcome::fails;
        v.witness = std::move(witness);
        v.recheck = std::move(recheck);
        stopped = true;
    }
};

/// Relations over the base: distributors between discrete categories of
/// bounded size.  fn sees each one until the sweep reports a failure.
inline void sweep_relations(Sweep& s, const std::function<void(const QDistributor&)>& fn) {
    DistCache cache;
    for_each_discrete_pair(s.ws.base, s.bounds.max_objects,
                           [&](const QCategoryPtr& A, const QCategoryPtr& B) {
                               if (s.stopped) return;
                               for (const QDistributor& phi : cache.between(A, B, s.ledger)) {
                                   if (s.stopped) return;
                                   s.bump(shape_key(*A, *B));
                                   fn(phi);
                               }
                           });
}

inline void sweep_categories(Sweep& s, const std::function<void(const QCategoryPtr&)>& fn) {
    for_each_category(s.ws.base, s.bounds.max_objects, s.ledger, [&](const QCategoryPtr& A) {
        if (s.stopped) return;
        s.bump("categories");
        fn(A);
    });
}

inline Verdict finish(Sweep& s, const Timer& t) {
    s.v.seconds = t.seconds();
    return s.v;
}

inline Verdict budget_partial(Sweep& s, const Timer& t, const budget_error& e) {
    s.v.result = Outcome::budget_exceeded;
    s.v.notes.push_back(std::string(e.what()) + " (" + std::to_string(e.count) +
                        " candidates); partial results only");
    s.v.seconds = t.seconds();
    return s.v;
}

}  // namespace harness

// --- The individual facts ---------------------------------------------------

namespace harness {

// Three equivalent readings of regularity, checked against one another on
// every arrow of the base: an existential middle, equality through the
// canonical middle, and the one-sided inequality.
inline void verify_regular_condition(Sweep& s) {
    const Quantaloid& Q = *s.ws.base;
    Q.for_each_arrow([&](const QArrow& f) {
        if (s.stopped) return;
        s.bump("arrows");
        QArrow triple = Q.compose(f, Q.compose(arrow_bar(Q, f), f));
        bool by_equality = triple == f;
        bool by_inequality = Q.hom(f.src, f.dst).leq(f.e, triple.e);
        bool by_search = false;
        const FiniteLattice& back = Q.hom(f.dst, f.src);
        for (Elem g = 0; g < back.size() && !by_search; ++g)
            by_search = Q.compose(f, Q.compose(QArrow{f.dst, f.src, g}, f)) == f;
        if (by_equality != by_search || by_equality != by_inequality)
            s.fail("the three regularity readings split on " + Q.arrow_name(f),
                   recheck_of(witness_dist_doc(
                                  s.ws, arrow_dist(s.ws.base, f)),
                              "check regular w", by_equality ? "holds" : "fails"));
    });
}

inline void verify_rq_idm_equivalence(Sweep& s) {
    const Quantaloid& Q = *s.ws.base;
    Q.for_each_arrow([&](const QArrow& f) {
        if (s.stopped) return;
        bool regular = arrow_regular(Q, f);
        if (arrow_idempotent(Q, f) && !regular) {
            s.fail("idempotent arrow " + Q.arrow_name(f) + " is not regular",
                   recheck_of(witness_dist_doc(s.ws, arrow_dist(s.ws.base, f)),
                              "check regular w", "fails"));
            return;
        }
        if (!regular) return;
        s.bump("regular arrows");
        regular_witness(Q, f);  // throws if the squares fail to compose to identities
    });
}

inline void verify_yoneda(Sweep& s) {
    sweep_categories(s, [&](const QCategoryPtr& A) {
        auto P = PresheafCat::presheaves(A, s.bounds.presheaf_budget);
        auto Pd = PresheafCat::copresheaves(A, s.bounds.presheaf_budget);
        QFunctor Y = yoneda(P), Yd = co_yoneda(Pd);
        for (int i = 0; i < P.size() && !s.stopped; ++i)
            for (int x = 0; x < A->size(); ++x)
                if (P.cat().hom_elem(Y(x), i) != P.values(i)[x]) {
                    s.fail("presheaf " + presheaf_label(P, i) + " disagrees with its hom from " +
                               A->object_id(x),
                           json());
                    break;
                }
        for (int i = 0; i < Pd.size() && !s.stopped; ++i)
            for (int x = 0; x < A->size(); ++x)
                if (Pd.cat().hom_elem(i, Yd(x)) != Pd.values(i)[x]) {
                    s.fail("copresheaf " + presheaf_label(Pd, i) +
                               " disagrees with its hom into " + A->object_id(x),
                           json());
                    break;
                }
    });
}

// The closed forms for tensors, cotensors, suprema, and infima on both
// presheaf categories, each compared against the object the defining
// equations pick out.
inline void verify_presheaf_formulas(Sweep& s) {
    sweep_categories(s, [&](const QCategoryPtr& Acat) {
        const QCategory& A = *Acat;
        const Quantaloid& Q = A.base();
        auto P = PresheafCat::presheaves(Acat, s.bounds.presheaf_budget);
        auto Pd = PresheafCat::copresheaves(Acat, s.bounds.presheaf_budget);
        auto complain = [&](const std::string& what) { s.fail(what, json()); };

        for (int i = 0; i < P.size() && !s.stopped; ++i) {
            int tm = P.type_of(i);
            for (int Y = 0; Y < Q.objects(); ++Y) {
                for (Elem e = 0; e < Q.hom(tm, Y).size(); ++e) {
                    Presheaf closed = presheaf_tensor(P, {tm, Y, e}, i);
                    auto definitional = tensor_object(P.cat(), {tm, Y, e}, i);
                    if (P.find(closed.type, closed.values) != definitional)
                        complain("tensor formula misses on presheaf " + presheaf_label(P, i));
                }
                for (Elem e = 0; e < Q.hom(Y, tm).size(); ++e) {
                    Presheaf closed = presheaf_cotensor(P, {Y, tm, e}, i);
                    auto definitional = cotensor_object(P.cat(), {Y, tm, e}, i);
                    if (P.find(closed.type, closed.values) != definitional)
                        complain("cotensor formula misses on presheaf " + presheaf_label(P, i));
                }
            }
        }
        for (int i = 0; i < Pd.size() && !s.stopped; ++i) {
            int tl = Pd.type_of(i);
            for (int Y = 0; Y < Q.objects(); ++Y) {
                for (Elem e = 0; e < Q.hom(tl, Y).size(); ++e) {
                    Copresheaf closed = copresheaf_tensor(Pd, {tl, Y, e}, i);
                    auto definitional = tensor_object(Pd.cat(), {tl, Y, e}, i);
                    if (Pd.find(closed.type, closed.values) != definitional)
                        complain("tensor formula misses on copresheaf " + presheaf_label(Pd, i));
                }
                for (Elem e = 0; e < Q.hom(Y, tl).size(); ++e) {
                    Copresheaf closed = copresheaf_cotensor(Pd, {Y, tl, e}, i);
                    auto definitional = cotensor_object(Pd.cat(), {Y, tl, e}, i);
                    if (Pd.find(closed.type, closed.values) != definitional)
                        complain("cotensor formula misses on copresheaf " + presheaf_label(Pd, i));
                }
            }
        }
        if (s.stopped) return;

        // Third level: weights on the presheaf categories themselves.
        auto PP = PresheafCat::presheaves(P.cat_ptr(), s.bounds.presheaf_budget);
        auto PdP = PresheafCat::copresheaves(P.cat_ptr(), s.bounds.presheaf_budget);
        for (int t = 0; t < PP.size() && !s.stopped; ++t) {
            Presheaf closed = presheaf_sup(P, PP.presheaf_at(t));
            if (P.find(closed.type, closed.values) != sup_object(P.cat(), PP.presheaf_at(t)))
                complain("supremum formula misses on a weight over the presheaves");
        }
        for (int t = 0; t < PdP.size() && !s.stopped; ++t) {
            Presheaf closed = presheaf_inf(P, PdP.copresheaf_at(t));
            if (P.find(closed.type, closed.values) != inf_object(P.cat(), PdP.copresheaf_at(t)))
                complain("infimum formula misses on a coweight over the presheaves");
        }
        if (s.stopped) return;

        auto PPd = PresheafCat::presheaves(Pd.cat_ptr(), s.bounds.presheaf_budget);
        auto PdPd = PresheafCat::copresheaves(Pd.cat_ptr(), s.bounds.presheaf_budget);
        for (int t = 0; t < PPd.size() && !s.stopped; ++t) {
            Copresheaf closed = copresheaf_sup(Pd, PPd.presheaf_at(t));
            if (Pd.find(closed.type, closed.values) != sup_object(Pd.cat(), PPd.presheaf_at(t)))
                complain("supremum formula misses on a weight over the copresheaves");
        }
        for (int t = 0; t < PdPd.size() && !s.stopped; ++t) {
            Copresheaf closed = copresheaf_inf(Pd, PdPd.copresheaf_at(t));
            if (Pd.find(closed.type, closed.values) != inf_object(Pd.cat(), PdPd.copresheaf_at(t)))
                complain("infimum formula misses on a coweight over the copresheaves");
        }
    });
}

inline void verify_identity_fixed_points(Sweep& s) {
    sweep_categories(s, [&](const QCategoryPtr& A) {
        KPhi K = kphi(identity_dist(A), s.bounds.presheaf_budget);
        if ((int)K.fix.members.size() != K.presheaves.size()) {
            s.fail("the identity distributor on a " + std::to_string(A->size()) +
                       "-object category does not fix every presheaf",
                   recheck_of(witness_dist_doc(s.ws, identity_dist(A)), "kphi w", "holds"));
            return;
        }
        const QCategory& F = *K.fix.cat;
        const QCategory& PA = K.presheaves.cat();
        for (int x = 0; x < F.size(); ++x)
            for (int y = 0; y < F.size(); ++y)
                if (F.hom_elem(x, y) != PA.hom_elem(K.fix.members[x], K.fix.members[y])) {
                    s.fail("fixed points of an identity distributor carry the wrong homs",
                           json());
                    return;
                }
        s.v.instances += K.presheaves.size() - 1;  // one bump already counted
    });
}

// Sup-preserving retractions out of a distributive category: enumerate
// left-adjoint functor pairs with G . F the identity and insist the
// retract inherits the property.
inline void verify_retract_ccd(Sweep& s) {
    std::vector<QCategoryPtr> cats;
    for_each_category(s.ws.base, s.bounds.max_objects, s.ledger,
                      [&](const QCategoryPtr& A) { cats.push_back(A); });
    std::vector<bool> ccd(cats.size());
    for (size_t i = 0; i < cats.size(); ++i)
        ccd[i] = bool(is_ccd(cats[i], s.bounds.presheaf_budget));
    for (size_t ai = 0; ai < cats.size() && !s.stopped; ++ai) {
        if (!ccd[ai]) continue;
        for (size_t bi = 0; bi < cats.size() && !s.stopped; ++bi) {
            std::vector<QFunctor> sections;
            for_each_functor(cats[bi], cats[ai], s.ledger, [&](const QFunctor& F) {
                if (find_right_adjoint_functor(F)) sections.push_back(F);
            });
            if (sections.empty()) continue;
            for_each_functor(cats[ai], cats[bi], s.ledger, [&](const QFunctor& G) {
                if (s.stopped || !find_right_adjoint_functor(G)) return;
                for (const QFunctor& F : sections) {
                    bool identity = true;
                    for (int x = 0; x < cats[bi]->size(); ++x)
                        identity = identity && G(F(x)) == x;
                    if (!identity) continue;
                    s.bump("retractions");
                    if (!is_ccd(cats[bi], s.bounds.presheaf_budget))
                        s.fail("a sup-preserving retract of a distributive category is not "
                               "distributive",
                               recheck_of(witness_cat_doc(s.ws, cats[bi]), "check ccd c",
                                          "fails"));
                }
            });
        }
    }
}

inline void verify_idempotent_ccd(Sweep& s) {
    DistCache cache;
    for_each_category(s.ws.base, s.bounds.max_objects, s.ledger, [&](const QCategoryPtr& A) {
        if (s.stopped) return;
        for (const QDistributor& th : cache.between(A, A, s.ledger)) {
            if (s.stopped) return;
            if (!(dist_compose(th, th) == th)) continue;
            s.bump("idempotents");
            if (!is_ccd(kphi(th, s.bounds.presheaf_budget).fix.cat, s.bounds.presheaf_budget))
                s.fail("fixed points of the idempotent " + dist_label(th) +
                           " are not distributive",
                       recheck_of(witness_dist_doc(s.ws, th), "check ccd kphi:w", "fails"));
        }
    });
}

// The square sweep shared by the three comparison-functor facts.  Visits
// every commuting square between relations within bounds.
inline void sweep_squares(
    Sweep& s,
    const std::function<void(const KPhi&, const KPhi&, const QDistributor&, const QDistributor&)>&
        fn) {
    struct Entry {
        QDistributor phi;
        KPhi K;
    };
    std::vector<Entry> rels;
    {
        DistCache cache;
        for_each_discrete_pair(s.ws.base, s.bounds.max_objects,
                               [&](const QCategoryPtr& A, const QCategoryPtr& B) {
                                   for (const QDistributor& phi : cache.between(A, B, s.ledger))
                                       rels.push_back({phi, kphi(phi, s.bounds.presheaf_budget)});
                               });
    }
    DistCache sides;
    for (const Entry& from : rels) {
        if (s.stopped) return;
        for (const Entry& to : rels) {
            if (s.stopped) return;
            const auto& zetas = sides.between(from.phi.dom_ptr(), to.phi.dom_ptr(), s.ledger);
            const auto& etas = sides.between(from.phi.cod_ptr(), to.phi.cod_ptr(), s.ledger);
            for (const QDistributor& zeta : zetas) {
                auto bottom = dist_compose(to.phi, zeta);
                for (const QDistributor& eta : etas) {
                    if (s.stopped) return;
                    if (!(bottom == dist_compose(eta, from.phi))) continue;
                    s.bump("squares");
                    fn(from.K, to.K, zeta, eta);
                }
            }
        }
    }
}

inline void verify_square_action(Sweep& s) {
    sweep_squares(s, [&](const KPhi& from, const KPhi& to, const QDistributor& zeta,
                         const QDistributor& eta) {
        k_square(from, to, zeta, eta);  // left-adjointness is verified inside
        if (same_category(from.phi.dom_ptr(), to.phi.dom_ptr()) &&
            same_category(from.phi.cod_ptr(), to.phi.cod_ptr()) && from.phi == to.phi &&
            zeta == identity_dist(from.phi.dom_ptr()) &&
            eta == identity_dist(from.phi.cod_ptr())) {
            auto act = k_square(from, to, zeta, eta).action;
            for (int b = 0; b < (int)from.fix.members.size(); ++b)
                if (act(b) != b)
                    s.fail("the identity square moves a fixed point of " + dist_label(from.phi),
                           json());
        }
    });
}

inline void verify_square_faithful(Sweep& s) {
    struct Seen {
        std::vector<Elem> diagonal;
        std::vector<int> action;
    };
    std::map<std::pair<const QDistributor*, const QDistributor*>, std::vector<Seen>> seen;
    // Group squares per endpoint pair as the sweep hands them over.
    sweep_squares(s, [&](const KPhi& from, const KPhi& to, const QDistributor& zeta,
                         const QDistributor& eta) {
        auto diag = dist_compose(to.phi, zeta);
        auto act = k_square(from, to, zeta, eta).action.map();
        auto& bucket = seen[{&from.phi, &to.phi}];
        for (const Seen& other : bucket) {
            bool same_diag = other.diagonal == diag.matrix();
            bool same_act = other.action == act;
            if (same_diag != same_act) {
                s.fail(std::string("squares between ") + dist_label(from.phi) + " and " +
                           dist_label(to.phi) +
                           (same_diag ? " share a diagonal but act differently"
                                      : " act identically across different diagonals"),
                       json());
                return;
            }
        }
        bucket.push_back({diag.matrix(), std::move(act)});
    });
}

inline void verify_square_preimage(Sweep& s) {
    struct Entry {
        QDistributor phi;
        KPhi K;
        bool regular;
    };
    std::vector<Entry> rels;
    {
        DistCache cache;
        for_each_discrete_pair(s.ws.base, s.bounds.max_objects,
                               [&](const QCategoryPtr& A, const QCategoryPtr& B) {
                                   for (const QDistributor& phi : cache.between(A, B, s.ledger)) {
                                       KPhi K = kphi(phi, s.bounds.presheaf_budget);
                                       bool r = is_regular(phi).regular;
                                       rels.push_back({phi, std::move(K), r});
                                   }
                               });
    }
    for (const Entry& from : rels) {
        if (s.stopped) return;
        for (const Entry& to : rels) {
            if (s.stopped) return;
            if (!to.regular) continue;
            for_each_functor(to.K.fix.cat, from.K.fix.cat, s.ledger, [&](const QFunctor& F) {
                if (s.stopped || !find_right_adjoint_functor(F)) return;
                s.bump("left adjoints");
                k_preimage(from.K, to.K, F, s.bounds.presheaf_budget);
            });
        }
    }
}

inline void verify_kphi_discrete(Sweep& s) {
    DistCache cache;
    std::vector<QCategoryPtr> cats;
    for_each_category(s.ws.base, s.bounds.max_objects, s.ledger,
                      [&](const QCategoryPtr& A) { cats.push_back(A); });
    for (const QCategoryPtr& A : cats) {
        if (s.stopped) return;
        for (const QCategoryPtr& B : cats) {
            if (s.stopped) return;
            for (const QDistributor& phi : cache.between(A, B, s.ledger)) {
                if (s.stopped) return;
                s.bump(shape_key(*A, *B));
                if (!kphi_matches_discrete(kphi(phi, s.bounds.presheaf_budget),
                                           s.bounds.presheaf_budget))
                    s.fail("fixed points change when the endpoint homs are forgotten for " +
                               dist_label(phi),
                           recheck_of(witness_dist_doc(s.ws, phi), "kphi w", "holds"));
            }
        }
    }
}

inline std::optional<GirardFamily> hypothesis_family(Sweep& s) {
    auto fam = girard_search(*s.ws.base, s.bounds.presheaf_budget);
    if (!fam)
        s.v.notes.push_back(
            "the base has no cyclic dualizing family; the statement is vacuous here");
    return fam;
}

inline void verify_complement_iso(Sweep& s) {
    auto fam = hypothesis_family(s);
    if (!fam) return;
    sweep_categories(s, [&](const QCategoryPtr& A) {
        auto P = PresheafCat::presheaves(A, s.bounds.presheaf_budget);
        auto Pd = PresheafCat::copresheaves(A, s.bounds.presheaf_budget);
        auto iso = complement_iso(P, Pd, *fam);
        if (!iso)
            s.fail("complement is not an isomorphism on a " + std::to_string(A->size()) +
                       "-object category: " + iso.detail,
                   json());
    });
}

inline void verify_girard_ccd_opccd(Sweep& s) {
    if (!hypothesis_family(s)) return;
    sweep_categories(s, [&](const QCategoryPtr& A) {
        bool c = bool(is_ccd(A, s.bounds.presheaf_budget));
        bool o = bool(is_opccd(A, s.bounds.presheaf_budget));
        if (c != o)
            s.fail(std::string("a category is ") + (c ? "" : "not ") +
                       "distributive but its dual reading disagrees",
                   recheck_of(witness_cat_doc(s.ws, A),
                              c ? "check opccd c" : "check ccd c", "fails"));
    });
}

inline void verify_regular_implies_ccd(Sweep& s) {
    sweep_relations(s, [&](const QDistributor& phi) {
        if (!is_regular(phi).regular) return;
        if (!is_ccd(kphi(phi, s.bounds.presheaf_budget).fix.cat, s.bounds.presheaf_budget))
            s.fail("regular " + dist_label(phi) + " has non-distributive fixed points",
                   recheck_of(witness_dist_doc(s.ws, phi), "check ccd kphi:w", "fails"));
    });
    if (s.stopped) return;
    // Converse: every skeletal distributive category is recovered from its
    // canonical idempotent, which is regular.
    sweep_categories(s, [&](const QCategoryPtr& A) {
        if (!A->is_skeletal() || !is_ccd(A, s.bounds.presheaf_budget)) return;
        s.bump("skeletal distributive categories");
        auto t = canonical_theta(A, s.bounds.presheaf_budget);
        if (!is_regular(t.theta).regular)
            s.fail("the canonical idempotent of a distributive category is not regular",
                   recheck_of(witness_dist_doc(s.ws, t.theta), "check regular w", "fails"));
    });
}

inline void verify_opccd_implies_regular(Sweep& s) {
    sweep_relations(s, [&](const QDistributor& phi) {
        if (!is_opccd(kphi(phi, s.bounds.presheaf_budget).fix.cat, s.bounds.presheaf_budget))
            return;
        if (!is_regular(phi).regular)
            s.fail("co-distributive fixed points for the non-regular " + dist_label(phi),
                   recheck_of(witness_dist_doc(s.ws, phi), "check regular w", "fails"));
    });
}

inline void verify_girard_three_way(Sweep& s) {
    if (!hypothesis_family(s)) return;
    sweep_relations(s, [&](const QDistributor& phi) {
        bool r = is_regular(phi).regular;
        auto K = kphi(phi, s.bounds.presheaf_budget);
        bool c = bool(is_ccd(K.fix.cat, s.bounds.presheaf_budget));
        bool o = bool(is_opccd(K.fix.cat, s.bounds.presheaf_budget));
        if (r != c || c != o) {
            std::string cmd = r != c ? (c ? "check regular w" : "check ccd kphi:w")
                                     : (o ? "check ccd kphi:w" : "check opccd kphi:w");
            s.fail("the three-way equivalence splits on " + dist_label(phi) + " (regular=" +
                       (r ? "yes" : "no") + ", ccd=" + (c ? "yes" : "no") + ", opccd=" +
                       (o ? "yes" : "no") + ")",
                   recheck_of(witness_dist_doc(s.ws, phi), cmd, "fails"));
        }
    });
}

// The quantale-level equivalence: five statements that must share one truth
// value.  (i) and (v) are decided outright; the quantified (ii)-(iv) are
// decided negatively by a witness and stay open otherwise.
inline void verify_quantale_equivalence(Sweep& s) {
    const Quantaloid& Q = *s.ws.base;
    if (Q.objects() != 1)
        throw type_error("the statement needs a one-object base");
    const FiniteLattice& H = Q.hom(0, 0);
    for (Elem g = 0; g < H.size(); ++g)
        for (Elem f = 0; f < H.size(); ++f)
            if (Q.compose_elem(0, 0, 0, g, f) != Q.compose_elem(0, 0, 0, f, g))
                throw type_error("the statement needs a commutative base");
    if (Q.id_elem(0) != H.top())
        throw type_error("the statement needs an integral base");

    auto neg = [&](Elem q) { return Q.lda_elem(0, 0, 0, H.bottom(), q); };
    std::optional<bool> truths[5];
    std::string witnesses[5];

    // (i) double negation through the bottom element.
    truths[0] = true;
    for (Elem q = 0; q < H.size(); ++q)
        if (neg(neg(q)) != q) {
            truths[0] = false;
            witnesses[0] = Q.elem_name(0, 0, q) + " -> bottom -> bottom = " +
                           Q.elem_name(0, 0, neg(neg(q)));
            break;
        }

    // (v) the base as a category over itself, which is the presheaf
    // category of the one-object singleton.
    auto star = ptr(singleton_category(s.ws.base, 0));
    auto PS = PresheafCat::presheaves(star, s.bounds.presheaf_budget);
    truths[4] = bool(is_opccd(PS.cat_ptr(), s.bounds.presheaf_budget));
    if (!*truths[4]) witnesses[4] = "taking infima over the base has no right adjoint";

    // (ii) categories within bounds.
    json recheck;
    sweep_categories(s, [&](const QCategoryPtr& A) {
        if (truths[1]) return;
        bool c = bool(is_ccd(A, s.bounds.presheaf_budget));
        bool o = bool(is_opccd(A, s.bounds.presheaf_budget));
        if (c != o) {
            truths[1] = false;
            witnesses[1] = "a " + std::to_string(A->size()) + "-object category with ccd=" +
                           (c ? "yes" : "no") + ", opccd=" + (o ? "yes" : "no");
            recheck = recheck_of(witness_cat_doc(s.ws, A), c ? "check opccd c" : "check ccd c",
                                 "fails");
        }
    });

    // (iii) and (iv) over relations within bounds.
    sweep_relations(s, [&](const QDistributor& phi) {
        if (truths[2] && truths[3]) {
            s.stopped = true;  // everything decidable here is decided
            return;
        }
        bool r = is_regular(phi).regular;
        auto K = kphi(phi, s.bounds.presheaf_budget);
        bool c = bool(is_ccd(K.fix.cat, s.bounds.presheaf_budget));
        bool o = bool(is_opccd(K.fix.cat, s.bounds.presheaf_budget));
        if (!truths[2] && c != o) {
            truths[2] = false;
            witnesses[2] = dist_label(phi) + " with ccd=" + (c ? "yes" : "no") + ", opccd=" +
                           (o ? "yes" : "no");
            if (recheck.is_null())
                recheck = recheck_of(witness_dist_doc(s.ws, phi),
                                     c ? "check opccd kphi:w" : "check ccd kphi:w", "fails");
        }
        if (!truths[3] && r != o) {
            truths[3] = false;
            witnesses[3] = dist_label(phi) + " with regular=" + (r ? "yes" : "no") + ", opccd=" +
                           (o ? "yes" : "no");
            if (recheck.is_null())
                recheck = recheck_of(witness_dist_doc(s.ws, phi),
                                     o ? "check regular w" : "check opccd kphi:w", "fails");
        }
    });
    s.stopped = false;

    static const char* labels[5] = {
        "(i) the bottom element is dualizing",
        "(ii) every category is distributive exactly when co-distributive",
        "(iii) every fixed-point category is distributive exactly when co-distributive",
        "(iv) every distributor is regular exactly when its fixed points are co-distributive",
        "(v) the base itself is co-distributive"};
    bool all_true = true, any_decided_true = false, any_decided_false = false;
    for (int i = 0; i < 5; ++i) {
        if (truths[i].has_value()) {
            (*truths[i] ? any_decided_true : any_decided_false) = true;
            all_true = all_true && *truths[i];
            s.v.notes.push_back(std::string(labels[i]) + ": " +
                                (*truths[i] ? "true" : "fails: " + witnesses[i]));
        } else {
            s.v.notes.push_back(std::string(labels[i]) + ": no counterexample within bounds");
        }
    }
    if (any_decided_true && any_decided_false) {
        s.v.result = Outcome::fails;
        s.v.witness = "the five statements disagree";
        s.v.recheck = recheck;
    } else {
        s.v.notes.push_back(std::string("equivalence pattern confirmed: every decided statement "
                                        "is ") +
                            (all_true ? "true" : "false"));
    }
}

}  // namespace harness

/// Quantify one of the library's headline facts over the workspace base.
inline Verdict verify_theorem(const Workspace& ws, const std::string& id, const Bounds& bounds) {
    using Fn = void (*)(harness::Sweep&);
    static const std::map<std::string, Fn> table = {
        {"prop2.1", harness::verify_regular_condition},
        {"prop2.3", harness::verify_rq_idm_equivalence},
        {"lemma3.2", harness::verify_yoneda},
        {"prop3.4", harness::verify_presheaf_formulas},
        {"prop3.6", harness::verify_identity_fixed_points},
        {"prop4.4", harness::verify_retract_ccd},
        {"prop4.5", harness::verify_idempotent_ccd},
        {"prop5.1", harness::verify_square_action},
        {"prop5.2", harness::verify_square_faithful},
        {"prop5.3", harness::verify_square_preimage},
        {"prop7.5", harness::verify_complement_iso},
        {"prop7.6", harness::verify_girard_ccd_opccd},
        {"thm4.6", harness::verify_regular_implies_ccd},
        {"thm6.2", harness::verify_opccd_implies_regular},
        {"thm7.7", harness::verify_girard_three_way},
        {"thm8.2", harness::verify_quantale_equivalence},
        {"lemma-kphi-discrete", harness::verify_kphi_discrete},
    };
    auto it = table.find(id);
    if (it == table.end()) throw workspace_error("unknown name: no verifiable fact \"" + id + "\"");
    harness::Timer t;
    harness::Sweep s(ws, bounds, "verify " + id);
    try {
        it->second(s);
    } catch (const budget_error& e) {
        return harness::budget_partial(s, t, e);
    }
    return harness::finish(s, t);
}

// ---------------------------------------------------------------------------
// The implication miner.

inline Verdict mine(const Workspace& ws, int implication, const Bounds& bounds) {
    if (implication < 1 || implication > 5)
        throw workspace_error("unknown name: implications are numbered 1 to 5");
    harness::Timer t;
    harness::Sweep s(ws, bounds, "mine --implication " + std::to_string(implication));
    bool guaranteed = implication == 1 || implication == 2;
    try {
        harness::sweep_relations(s, [&](const QDistributor& phi) {
            auto need_r = [&] { return is_regular(phi).regular; };
            auto fix = [&] { return kphi(phi, bounds.presheaf_budget).fix.cat; };
            bool premise, conclusion;
            std::string cmd;
            switch (implication) {
                case 1:
                    premise = bool(is_opccd(fix(), bounds.presheaf_budget));
                    conclusion = need_r();
                    cmd = "check regular w";
                    break;
                case 2:
                    premise = need_r();
                    conclusion = bool(is_ccd(fix(), bounds.presheaf_budget));
                    cmd = "check ccd kphi:w";
                    break;
                case 3:
                    premise = bool(is_ccd(fix(), bounds.presheaf_budget));
                    conclusion = bool(is_opccd(fix(), bounds.presheaf_budget));
                    cmd = "check opccd kphi:w";
                    break;
                case 4:
                    premise = need_r();
                    conclusion = bool(is_opccd(fix(), bounds.presheaf_budget));
                    cmd = "check opccd kphi:w";
                    break;
                default:
                    premise = bool(is_ccd(fix(), bounds.presheaf_budget));
                    conclusion = need_r();
                    cmd = "check regular w";
                    break;
            }
            if (premise && !conclusion) {
                if (guaranteed)
                    throw internal_error("implication " + std::to_string(implication) +
                                         " failed on " + dist_label(phi) +
                                         "; the theory guarantees it, so this is a bug");
                s.fail("counterexample " + dist_label(phi),
                       harness::recheck_of(harness::witness_dist_doc(ws, phi), cmd, "fails"));
            }
        });
    } catch (const budget_error& e) {
        return harness::budget_partial(s, t, e);
    }
    if (s.v.result == Outcome::holds) {
        s.v.notes.push_back("no counterexample within bounds; bounded evidence only");
        if (implication == 5)
            s.v.notes.push_back(
                "whether this implication holds in general is an open question; "
                "no universal claim is made");
    }
    return harness::finish(s, t);
}

// ---------------------------------------------------------------------------
// Command dispatch, shared by the driver and by witness re-checks.

inline Verdict run_check(const Workspace& ws, const std::vector<std::string>& tokens,
                         const Bounds& bounds) {
    auto usage = [] {
        return workspace_error(
            "parse error: expected check regular|ccd|opccd|complete|girard, kphi, verify, or "
            "mine");
    };
    if (tokens.empty()) throw usage();
    if (tokens[0] == "kphi" && tokens.size() == 2) return check_kphi(ws, tokens[1], bounds);
    if (tokens[0] == "verify" && tokens.size() == 2)
        return verify_theorem(ws, tokens[1], bounds);
    if (tokens[0] == "mine" && tokens.size() == 2)
        return mine(ws, std::stoi(tokens[1]), bounds);
    if (tokens[0] != "check") throw usage();
    if (tokens.size() == 2 && tokens[1] == "girard") return check_girard(ws, bounds);
    if (tokens.size() != 3) throw usage();
    if (tokens[1] == "regular") return check_regular(ws, tokens[2], bounds);
    if (tokens[1] == "ccd") return check_ccd(ws, tokens[2], false, bounds);
    if (tokens[1] == "opccd") return check_ccd(ws, tokens[2], true, bounds);
    if (tokens[1] == "complete") return check_complete(ws, tokens[2], bounds);
    throw usage();
}

/// Replay a fails-verdict's reproduction document and report whether the
/// recorded expectation still comes out.
inline bool recheck_witness(const json& recheck, const Bounds& bounds) {
    Workspace ws = parse_workspace(recheck.at("workspace").dump());
    std::istringstream cmd(recheck.at("command").get<std::string>());
    std::vector<std::string> tokens;
    for (std::string tok; cmd >> tok;) tokens.push_back(tok);
    Verdict v = run_check(ws, tokens, bounds);
    return outcome_name(v.result) == recheck.at("expect").get<std::string>();
}

/// The underlying order of a fixed-point category as a DOT digraph, one
/// edge per covering pair.
inline std::string kphi_dot(const KPhi& K) {
    const QCategory& F = *K.fix.cat;
    auto ord = underlying_order(F);
    int n = F.size();
    auto quoted = [&](int b) {
        std::string s = "\"";
        for (char c : F.object_id(b)) {
            if (c == '"' || c == '\\') s += '\\';
            s += c;
        }
        return s + "\"";
    };
    std::ostringstream out;
    out << "digraph kphi {\n  rankdir=BT;\n";
    for (int b = 0; b < n; ++b)
        out << "  " << quoted(b) << " [label=\""
            << harness::presheaf_label(K.presheaves, K.fix.members[b]) << "\"];\n";
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y || !ord[x * n + y] || ord[y * n + x]) continue;
            bool covering = true;
            for (int z = 0; z < n && covering; ++z)
                covering = z == x || z == y || !(ord[x * n + z] && ord[z * n + y]) ||
                           ord[z * n + x] || ord[y * n + z];
            if (covering) out << "  " << quoted(x) << " -> " << quoted(y) << ";\n";
        }
    out << "}\n";
    return out.str();
}

}  // namespace qkan
