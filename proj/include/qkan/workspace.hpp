#pragma once
// Workspace documents.  A workspace is a JSON scene for the command-line
// driver: one base quantaloid plus named categories, functors, and
// distributors, everything validated on the way in.  Parsing applies the
// documented defaults deterministically; serialization emits the canonical
// form, so parse -> serialize -> parse is the identity.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <qkan/errors.hpp>
#include <qkan/qcat.hpp>
#include <qkan/qdist.hpp>
#include <qkan/quantaloid.hpp>

namespace qkan {

using nlohmann::json;

struct Workspace {
    json base_spec;  // canonical form of the quantale/quantaloid entry
    QuantaloidPtr base;
    std::vector<std::pair<std::string, QCategoryPtr>> categories;
    std::vector<std::pair<std::string, QFunctor>> functors;
    std::vector<std::pair<std::string, QDistributor>> distributors;

    const QCategoryPtr& category(const std::string& name) const {
        for (auto& [n, c] : categories)
            if (n == name) return c;
        throw workspace_error("unknown name: no category \"" + name + "\"");
    }
    const QFunctor& functor(const std::string& name) const {
        for (auto& [n, f] : functors)
            if (n == name) return f;
        throw workspace_error("unknown name: no functor \"" + name + "\"");
    }
    const QDistributor& distributor(const std::string& name) const {
        for (auto& [n, d] : distributors)
            if (n == name) return d;
        throw workspace_error("unknown name: no distributor \"" + name + "\"");
    }
};

namespace detail {

inline const json& need(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw workspace_error("parse error: missing key \"" + std::string(key) + "\" in " + where);
    return *it;
}

inline std::string need_string(const json& obj, const char* key, const std::string& where) {
    const json& v = need(obj, key, where);
    if (!v.is_string())
        throw workspace_error("parse error: \"" + std::string(key) + "\" in " + where +
                              " must be a string");
    return v.get<std::string>();
}

inline int need_int(const json& obj, const char* key, const std::string& where) {
    const json& v = need(obj, key, where);
    if (!v.is_number_integer())
        throw workspace_error("parse error: \"" + std::string(key) + "\" in " + where +
                              " must be an integer");
    return v.get<int>();
}

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                                const std::string& where) {
    for (auto& [k, v] : obj.items()) {
        bool ok = false;
        for (const char* g : known) ok = ok || k == g;
        if (!ok) throw workspace_error("parse error: unknown key \"" + k + "\" in " + where);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quantaloid specs.
//
// Kinds: chain-tnorm (size, tnorm godel|lukasiewicz), boolean-frame (atoms),
// diagonals (atoms), girard-envelope (of: nested spec), and table, which
// spells out objects, hom-set element names, the order, composition, and
// identities in full.  The table layout is row-major over object pairs:
// entry X*n+Y describes hom(X, Y); composition tables run over triples
// (X, Y, Z) at index (X*n+Y)*n+Z with rows indexed by g in hom(Y, Z) and
// columns by f in hom(X, Y).

inline Quantaloid parse_quantale_spec(const json& spec) {
    if (!spec.is_object()) throw workspace_error("parse error: quantaloid spec must be an object");
    std::string kind = detail::need_string(spec, "kind", "the quantaloid spec");
    try {
        if (kind == "chain-tnorm") {
            detail::reject_unknown_keys(spec, {"kind", "size", "tnorm"}, "a chain-tnorm spec");
            int size = detail::need_int(spec, "size", "the chain-tnorm spec");
            std::string t = detail::need_string(spec, "tnorm", "the chain-tnorm spec");
            if (t != "godel" && t != "lukasiewicz")
                throw workspace_error("parse error: unknown tnorm \"" + t + "\"");
            return make_chain_tnorm(size, t == "godel" ? TNorm::Godel : TNorm::Lukasiewicz);
        }
        if (kind == "boolean-frame") {
            detail::reject_unknown_keys(spec, {"kind", "atoms"}, "a boolean-frame spec");
            return make_boolean_frame(detail::need_int(spec, "atoms", "the boolean-frame spec"));
        }
        if (kind == "diagonals") {
            detail::reject_unknown_keys(spec, {"kind", "atoms"}, "a diagonals spec");
            return make_diagonals(detail::need_int(spec, "atoms", "the diagonals spec"));
        }
        if (kind == "girard-envelope") {
            detail::reject_unknown_keys(spec, {"kind", "of"}, "a girard-envelope spec");
            return make_girard_envelope(
                parse_quantale_spec(detail::need(spec, "of", "the girard-envelope spec")));
        }
        if (kind == "table") {
            detail::reject_unknown_keys(
                spec, {"kind", "objects", "elements", "leq", "compose", "identities"},
                "a table spec");
            Quantaloid::Data d;
            for (const json& o : detail::need(spec, "objects", "the table spec"))
                d.objects.push_back(o.get<std::string>());
            int n = (int)d.objects.size();
            if (n == 0) throw workspace_error("validation failure: a table spec needs objects");
            const json& elements = detail::need(spec, "elements", "the table spec");
            const json& leq = detail::need(spec, "leq", "the table spec");
            const json& compose = detail::need(spec, "compose", "the table spec");
            const json& identities = detail::need(spec, "identities", "the table spec");
            if ((int)elements.size() != n * n || (int)leq.size() != n * n)
                throw workspace_error(
                    "validation failure: elements and leq need one entry per object pair");
            if ((int)compose.size() != n * n * n)
                throw workspace_error(
                    "validation failure: compose needs one table per object triple");
            if ((int)identities.size() != n)
                throw workspace_error("validation failure: identities needs one entry per object");
            d.elem_names.resize(n * n);
            for (int i = 0; i < n * n; ++i)
                for (const json& name : elements[i])
                    d.elem_names[i].push_back(name.get<std::string>());
            auto find_name = [&](int i, const std::string& name) -> Elem {
                for (int e = 0; e < (int)d.elem_names[i].size(); ++e)
                    if (d.elem_names[i][e] == name) return e;
                throw workspace_error("unknown name: element \"" + name + "\" in hom " +
                                      std::to_string(i / n) + "->" + std::to_string(i % n));
            };
            for (int i = 0; i < n * n; ++i) {
                int m = (int)d.elem_names[i].size();
                if ((int)leq[i].size() != m)
                    throw workspace_error("validation failure: leq table size mismatch");
                std::vector<uint8_t> bits((size_t)m * m, 0);
                for (int a = 0; a < m; ++a) {
                    if ((int)leq[i][a].size() != m)
                        throw workspace_error("validation failure: leq table size mismatch");
                    for (int b = 0; b < m; ++b) bits[a * m + b] = leq[i][a][b].get<int>() ? 1 : 0;
                }
                d.homs.push_back(FiniteLattice::from_leq(m, bits));
            }
            for (int X = 0; X < n; ++X)
                for (int Y = 0; Y < n; ++Y)
                    for (int Z = 0; Z < n; ++Z) {
                        const json& table = compose[(X * n + Y) * n + Z];
                        int rows = (int)d.elem_names[Y * n + Z].size();
                        int cols = (int)d.elem_names[X * n + Y].size();
                        if ((int)table.size() != rows)
                            throw workspace_error("validation failure: compose table size mismatch");
                        std::vector<Elem> flat;
                        for (int g = 0; g < rows; ++g) {
                            if ((int)table[g].size() != cols)
                                throw workspace_error(
                                    "validation failure: compose table size mismatch");
                            for (int f = 0; f < cols; ++f)
                                flat.push_back(find_name(X * n + Z, table[g][f].get<std::string>()));
                        }
                        d.comp.push_back(std::move(flat));
                    }
            for (int X = 0; X < n; ++X)
                d.ids.push_back(find_name(X * n + X, identities[X].get<std::string>()));
            Quantaloid Q = Quantaloid::from_tables(std::move(d));
            if (auto r = Q.validate(); !r)
                throw workspace_error("validation failure in the quantaloid table: " + r.detail);
            return Q;
        }
    } catch (const json::exception& e) {
        throw workspace_error("parse error in the quantaloid spec: " + std::string(e.what()));
    } catch (const structure_error& e) {
        throw workspace_error("validation failure in the quantaloid spec: " + std::string(e.what()));
    }
    throw workspace_error("parse error: unknown quantaloid kind \"" + kind + "\"");
}

/// The canonical spelling of a spec: known keys only, envelope contents
/// canonicalized recursively.  Table specs are rebuilt from the parsed
/// quantaloid so that hand-written documents normalize too.
inline json canonical_quantale_spec(const json& spec) {
    Quantaloid Q = parse_quantale_spec(spec);
    std::string kind = spec.at("kind").get<std::string>();
    if (kind == "chain-tnorm")
        return {{"kind", kind}, {"size", spec.at("size")}, {"tnorm", spec.at("tnorm")}};
    if (kind == "boolean-frame" || kind == "diagonals")
        return {{"kind", kind}, {"atoms", spec.at("atoms")}};
    if (kind == "girard-envelope")
        return {{"kind", kind}, {"of", canonical_quantale_spec(spec.at("of"))}};
    int n = Q.objects();
    json objects = json::array(), elements = json::array(), leq = json::array();
    json compose = json::array(), identities = json::array();
    for (int X = 0; X < n; ++X) objects.push_back(Q.object_name(X));
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y) {
            const FiniteLattice& H = Q.hom(X, Y);
            json names = json::array(), bits = json::array();
            for (Elem e = 0; e < H.size(); ++e) names.push_back(Q.elem_name(X, Y, e));
            for (Elem a = 0; a < H.size(); ++a) {
                json row = json::array();
                for (Elem b = 0; b < H.size(); ++b) row.push_back(H.leq(a, b) ? 1 : 0);
                bits.push_back(std::move(row));
            }
            elements.push_back(std::move(names));
            leq.push_back(std::move(bits));
        }
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y)
            for (int Z = 0; Z < n; ++Z) {
                json table = json::array();
                for (Elem g = 0; g < Q.hom(Y, Z).size(); ++g) {
                    json row = json::array();
                    for (Elem f = 0; f < Q.hom(X, Y).size(); ++f)
                        row.push_back(Q.elem_name(X, Z, Q.compose_elem(X, Y, Z, g, f)));
                    table.push_back(std::move(row));
                }
                compose.push_back(std::move(table));
            }
    for (int X = 0; X < n; ++X) identities.push_back(Q.elem_name(X, X, Q.id_elem(X)));
    return {{"kind", "table"},         {"objects", std::move(objects)},
            {"elements", std::move(elements)}, {"leq", std::move(leq)},
            {"compose", std::move(compose)},   {"identities", std::move(identities)}};
}

// ---------------------------------------------------------------------------
// Declared entities.

namespace detail {

inline int resolve_base_object(const Quantaloid& Q, const std::string& name,
                               const std::string& where) {
    for (int X = 0; X < Q.objects(); ++X)
        if (Q.object_name(X) == name) return X;
    throw workspace_error("unknown name: base object \"" + name + "\" in " + where);
}

inline int resolve_object(const QCategory& A, const std::string& id, const std::string& where) {
    if (auto x = A.find_object(id)) return *x;
    throw workspace_error("unknown name: object \"" + id + "\" in " + where);
}

inline Elem resolve_elem(const Quantaloid& Q, int X, int Y, const std::string& name,
                         const std::string& where) {
    if (auto e = Q.find_elem(X, Y, name)) return *e;
    throw workspace_error("unknown name: element \"" + name + "\" in " + where);
}

// Triples [x, y, q]; omitted entries keep their defaults, and writing the
// same cell twice is treated as an authoring mistake rather than resolved
// by precedence.
inline void fill_triples(const json& entries, const QCategory& A, const QCategory& B,
                         std::vector<Elem>& mat, const std::string& where) {
    const Quantaloid& Q = A.base();
    std::vector<uint8_t> seen(mat.size(), 0);
    for (const json& t : entries) {
        if (!t.is_array() || t.size() != 3)
            throw workspace_error("parse error: entries in " + where +
                                  " must be [from, to, element] triples");
        int x = resolve_object(A, t[0].get<std::string>(), where);
        int y = resolve_object(B, t[1].get<std::string>(), where);
        if (seen[x * B.size() + y])
            throw workspace_error("validation failure: duplicate entry for (" +
                                  t[0].get<std::string>() + "," + t[1].get<std::string>() +
                                  ") in " + where);
        seen[x * B.size() + y] = 1;
        mat[x * B.size() + y] =
            resolve_elem(Q, A.type(x), B.type(y), t[2].get<std::string>(), where);
    }
}

inline QCategoryPtr parse_category(const QuantaloidPtr& base, const std::string& name,
                                   const json& spec) {
    std::string where = "category \"" + name + "\"";
    if (!spec.is_object()) throw workspace_error("parse error: " + where + " must be an object");
    reject_unknown_keys(spec, {"objects", "hom"}, where);
    std::vector<std::string> ids;
    std::vector<int> types;
    for (const json& o : need(spec, "objects", where)) {
        if (!o.is_object())
            throw workspace_error("parse error: objects in " + where +
                                  " must be {id, type} entries");
        reject_unknown_keys(o, {"id", "type"}, where);
        ids.push_back(need_string(o, "id", where));
        types.push_back(resolve_base_object(*base, need_string(o, "type", where), where));
    }
    int n = (int)ids.size();
    if (n == 0) throw workspace_error("validation failure: " + where + " has no objects");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (ids[i] == ids[j])
                throw workspace_error("validation failure: duplicate object id \"" + ids[i] +
                                      "\" in " + where);
    // Defaults: bottom off the diagonal, the identity on it.
    std::vector<Elem> hom((size_t)n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            hom[x * n + y] = x == y ? base->id_elem(types[x])
                                    : base->hom(types[x], types[y]).bottom();
    if (spec.contains("hom")) {
        QCategory shape = discrete_category(base, types, ids);
        fill_triples(spec.at("hom"), shape, shape, hom, where);
    }
    QCategory A = QCategory::make(base, std::move(ids), std::move(types), std::move(hom));
    if (auto r = A.validate(); !r)
        throw workspace_error("validation failure in " + where + ": " + r.detail);
    return ptr(std::move(A));
}

inline QFunctor parse_functor(const Workspace& ws, const std::string& name, const json& spec) {
    std::string where = "functor \"" + name + "\"";
    if (!spec.is_object()) throw workspace_error("parse error: " + where + " must be an object");
    reject_unknown_keys(spec, {"from", "to", "map"}, where);
    const QCategoryPtr& A = ws.category(need_string(spec, "from", where));
    const QCategoryPtr& B = ws.category(need_string(spec, "to", where));
    const json& entries = need(spec, "map", where);
    std::vector<int> map(A->size(), -1);
    for (auto& [x, fx] : entries.items())
        map[resolve_object(*A, x, where)] = resolve_object(*B, fx.get<std::string>(), where);
    for (int x = 0; x < A->size(); ++x)
        if (map[x] < 0)
            throw workspace_error("validation failure: " + where + " has no image for object \"" +
                                  A->object_id(x) + "\"");
    QFunctor F = QFunctor::make(A, B, std::move(map));
    if (auto r = validate_functor(F); !r)
        throw workspace_error("validation failure in " + where + ": " + r.detail);
    return F;
}

inline QDistributor parse_distributor(const Workspace& ws, const std::string& name,
                                      const json& spec) {
    std::string where = "distributor \"" + name + "\"";
    if (!spec.is_object()) throw workspace_error("parse error: " + where + " must be an object");
    reject_unknown_keys(spec, {"from", "to", "matrix"}, where);
    const QCategoryPtr& A = ws.category(need_string(spec, "from", where));
    const QCategoryPtr& B = ws.category(need_string(spec, "to", where));
    std::vector<Elem> mat((size_t)A->size() * B->size());
    for (int x = 0; x < A->size(); ++x)
        for (int y = 0; y < B->size(); ++y)
            mat[x * B->size() + y] = A->base().hom(A->type(x), B->type(y)).bottom();
    if (spec.contains("matrix")) fill_triples(spec.at("matrix"), *A, *B, mat, where);
    QDistributor phi = QDistributor::make(A, B, std::move(mat));
    if (auto r = validate_distributor(phi); !r)
        throw workspace_error("validation failure in " + where + ": " + r.detail);
    return phi;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Documents.

inline Workspace parse_workspace(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw workspace_error("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object())
        throw workspace_error("parse error: the document must be a JSON object");
    detail::reject_unknown_keys(
        doc, {"quantale", "quantaloid", "categories", "functors", "distributors"}, "the document");
    bool one = doc.contains("quantale"), many = doc.contains("quantaloid");
    if (one == many)
        throw workspace_error(
            "parse error: exactly one of \"quantale\" and \"quantaloid\" is required");
    const json& spec = doc.at(one ? "quantale" : "quantaloid");

    Workspace ws;
    ws.base_spec = canonical_quantale_spec(spec);
    ws.base = std::make_shared<const Quantaloid>(parse_quantale_spec(spec));
    for (const char* key : {"categories", "functors", "distributors"})
        if (doc.contains(key) && !doc.at(key).is_object())
            throw workspace_error("parse error: \"" + std::string(key) +
                                  "\" must map names to declarations");
    try {
        if (doc.contains("categories"))
            for (auto& [name, cspec] : doc.at("categories").items())
                ws.categories.emplace_back(name, detail::parse_category(ws.base, name, cspec));
        if (doc.contains("functors"))
            for (auto& [name, fspec] : doc.at("functors").items())
                ws.functors.emplace_back(name, detail::parse_functor(ws, name, fspec));
        if (doc.contains("distributors"))
            for (auto& [name, dspec] : doc.at("distributors").items())
                ws.distributors.emplace_back(name, detail::parse_distributor(ws, name, dspec));
    } catch (const json::exception& e) {
        throw workspace_error("parse error: " + std::string(e.what()));
    } catch (const structure_error& e) {
        throw workspace_error("validation failure: " + std::string(e.what()));
    } catch (const type_error& e) {
        throw workspace_error("validation failure: " + std::string(e.what()));
    }
    return ws;
}

/// Canonical document: defaults stripped, entries in row-major object
/// order, names in their stored (alphabetical) order, one-object bases
/// under "quantale" and anything larger under "quantaloid".
inline json workspace_json(const Workspace& ws) {
    json doc;
    doc[ws.base->objects() == 1 ? "quantale" : "quantaloid"] = ws.base_spec;
    const Quantaloid& Q = *ws.base;
    if (!ws.categories.empty()) {
        json cats;
        for (auto& [name, A] : ws.categories) {
            json objects = json::array(), hom = json::array();
            for (int x = 0; x < A->size(); ++x)
                objects.push_back(
                    {{"id", A->object_id(x)}, {"type", Q.object_name(A->type(x))}});
            for (int x = 0; x < A->size(); ++x)
                for (int y = 0; y < A->size(); ++y) {
                    Elem dflt = x == y ? Q.id_elem(A->type(x))
                                       : Q.hom(A->type(x), A->type(y)).bottom();
                    if (A->hom_elem(x, y) != dflt)
                        hom.push_back({A->object_id(x), A->object_id(y),
                                       Q.elem_name(A->type(x), A->type(y), A->hom_elem(x, y))});
                }
            json c = {{"objects", std::move(objects)}};
            if (!hom.empty()) c["hom"] = std::move(hom);
            cats[name] = std::move(c);
        }
        doc["categories"] = std::move(cats);
    }
    if (!ws.functors.empty()) {
        json fns;
        for (auto& [name, F] : ws.functors) {
            std::string from, to;
            for (auto& [n, c] : ws.categories) {
                if (same_category(c, F.dom_ptr())) from = n;
                if (same_category(c, F.cod_ptr())) to = n;
            }
            json map;
            for (int x = 0; x < F.dom().size(); ++x)
                map[F.dom().object_id(x)] = F.cod().object_id(F.map()[x]);
            fns[name] = {{"from", from}, {"to", to}, {"map", std::move(map)}};
        }
        doc["functors"] = std::move(fns);
    }
    if (!ws.distributors.empty()) {
        json dists;
        for (auto& [name, phi] : ws.distributors) {
            const QCategory &A = phi.dom(), &B = phi.cod();
            std::string from, to;
            for (auto& [n, c] : ws.categories) {
                if (same_category(c, phi.dom_ptr())) from = n;
                if (same_category(c, phi.cod_ptr())) to = n;
            }
            json matrix = json::array();
            for (int x = 0; x < A.size(); ++x)
                for (int y = 0; y < B.size(); ++y)
                    if (phi.at(x, y) != Q.hom(A.type(x), B.type(y)).bottom())
                        matrix.push_back({A.object_id(x), B.object_id(y),
                                          Q.elem_name(A.type(x), B.type(y), phi.at(x, y))});
            json d = {{"from", from}, {"to", to}};
            if (!matrix.empty()) d["matrix"] = std::move(matrix);
            dists[name] = std::move(d);
        }
        doc["distributors"] = std::move(dists);
    }
    return doc;
}

inline std::string serialize_workspace(const Workspace& ws) { return workspace_json(ws).dump(2); }

}  // namespace qkan
