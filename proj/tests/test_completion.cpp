#include <optional>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <qkan/completion.hpp>
#include "support/fixtures.hpp"

using namespace qkan;

namespace {

const QCategoryPtr& star_two() {
    static const QCategoryPtr A = ptr(singleton_category(fixtures::two_ptr(), 0));
    return A;
}

const QCategoryPtr& star_luk3() {
    static const QCategoryPtr A = ptr(singleton_category(fixtures::luk3_ptr(), 0));
    return A;
}

const QCategoryPtr& star_godel3() {
    static const QCategoryPtr A = ptr(singleton_category(fixtures::godel3_ptr(), 0));
    return A;
}

const QCategoryPtr& arrow2() {
    static const QCategoryPtr A =
        ptr(QCategory::make(fixtures::two_ptr(), {"p", "q"}, {0, 0}, {1, 1, 0, 1}));
    return A;
}

const QCategoryPtr& half_arrow() {
    static const QCategoryPtr A =
        ptr(QCategory::make(fixtures::luk3_ptr(), {"half", "one"}, {0, 0}, {2, 2, 1, 2}));
    return A;
}

QArrow loop(Elem e) { return {0, 0, e}; }

// Every commuting square between two loops of a one-object quantaloid.
std::vector<Square> all_squares(const Quantaloid& Q, Elem f, Elem g) {
    std::vector<Square> out;
    int n = Q.hom(0, 0).size();
    for (Elem u = 0; u < n; ++u)
        for (Elem v = 0; v < n; ++v)
            if (Q.compose_elem(0, 0, 0, g, u) == Q.compose_elem(0, 0, 0, v, f))
                out.push_back({loop(f), loop(g), loop(u), loop(v)});
    return out;
}

std::vector<Elem> elems_of(const std::vector<QArrow>& arrows) {
    std::vector<Elem> out;
    for (const auto& a : arrows) out.push_back(a.e);
    return out;
}

}  // namespace

TEST_CASE("commuting squares compose componentwise", "[completion]") {
    const Quantaloid& Q = fixtures::two();

    SECTION("identity squares compose to the identity") {
        for (Elem e = 0; e < 2; ++e) {
            auto id = identity_square(Q, loop(e));
            CHECK(square_compose(Q, id, id) == id);
        }
    }

    SECTION("composites of commuting squares commute") {
        int checked = 0;
        for (Elem f = 0; f < 2; ++f)
            for (Elem g = 0; g < 2; ++g)
                for (Elem h = 0; h < 2; ++h)
                    for (const Square& s1 : all_squares(Q, f, g))
                        for (const Square& s2 : all_squares(Q, g, h)) {
                            Square c = square_compose(Q, s2, s1);
                            CHECK(c.src == s1.src);
                            CHECK(c.dst == s2.dst);
                            ++checked;
                        }
        CHECK(checked > 0);
    }

    SECTION("componentwise joins of parallel squares are squares") {
        for (Elem f = 0; f < 2; ++f)
            for (Elem g = 0; g < 2; ++g)
                for (const Square& s : all_squares(Q, f, g))
                    for (const Square& t : all_squares(Q, f, g))
                        CHECK_NOTHROW(make_square(Q, s.src, s.dst, Q.join(s.u, t.u),
                                                  Q.join(s.v, t.v)));
    }

    SECTION("non-commuting and mismatched squares are rejected") {
        CHECK_THROWS_AS(make_square(Q, loop(1), loop(1), loop(1), loop(0)), structure_error);
        const Quantaloid& D = fixtures::diag_b4();
        CHECK_THROWS_AS(
            make_square(D, D.identity(0), D.identity(1), D.identity(0), D.identity(1)),
            type_error);
        auto s = identity_square(Q, loop(0));
        auto t = identity_square(Q, loop(1));
        CHECK_THROWS_AS(square_compose(Q, t, s), type_error);
    }
}

TEST_CASE("diagonal classes form a congruence", "[completion]") {
    SECTION("squares with equal diagonals are identified") {
        const Quantaloid& Q = fixtures::luk3();
        auto a = make_square(Q, loop(1), loop(1), loop(0), loop(0));
        auto b = make_square(Q, loop(1), loop(1), loop(0), loop(1));
        REQUIRE_FALSE(a == b);
        CHECK(diagonal_class(Q, a) == diagonal_class(Q, b));
    }

    SECTION("composition is representative-independent") {
        for (const Quantaloid* Q : {&fixtures::two(), &fixtures::luk3()}) {
            int n = Q->hom(0, 0).size();
            for (Elem f = 0; f < n; ++f)
                for (Elem g = 0; g < n; ++g)
                    for (Elem h = 0; h < n; ++h)
                        for (const Square& s1 : all_squares(*Q, f, g))
                            for (const Square& s2 : all_squares(*Q, g, h))
                                CHECK(diagonal_class(*Q, square_compose(*Q, s2, s1)) ==
                                      class_compose(*Q, diagonal_class(*Q, s2),
                                                    diagonal_class(*Q, s1)));
        }
    }

    SECTION("hom-sets of the quotient are the realizable diagonals") {
        const Quantaloid& T = fixtures::two();
        CHECK(dq_hom(T, loop(0), loop(0)) == std::vector<Elem>{0});
        CHECK(dq_hom(T, loop(0), loop(1)) == std::vector<Elem>{0});
        CHECK(dq_hom(T, loop(1), loop(0)) == std::vector<Elem>{0});
        CHECK(dq_hom(T, loop(1), loop(1)) == std::vector<Elem>{0, 1});

        const Quantaloid& L = fixtures::luk3();
        CHECK(dq_hom(L, loop(1), loop(1)) == std::vector<Elem>{0, 1});
        CHECK(dq_hom(L, loop(2), loop(2)) == std::vector<Elem>{0, 1, 2});
        CHECK(dq_hom(L, loop(0), loop(2)) == std::vector<Elem>{0});
    }

    SECTION("quotient hom-sets are join-closed and composition preserves joins") {
        for (const Quantaloid* Q : {&fixtures::two(), &fixtures::luk3()}) {
            int n = Q->hom(0, 0).size();
            const FiniteLattice& H = Q->hom(0, 0);
            for (Elem f = 0; f < n; ++f)
                for (Elem g = 0; g < n; ++g) {
                    auto ds = dq_hom(*Q, loop(f), loop(g));
                    auto realizable = [&](Elem d) {
                        for (Elem x : ds)
                            if (x == d) return true;
                        return false;
                    };
                    CHECK(realizable(H.bottom()));
                    for (Elem a : ds)
                        for (Elem b : ds) CHECK(realizable(H.join(a, b)));
                    for (Elem h = 0; h < n; ++h)
                        for (Elem d2 : dq_hom(*Q, loop(g), loop(h)))
                            for (Elem a : ds)
                                for (Elem b : ds) {
                                    DiagonalClass c2{loop(g), loop(h), loop(d2)};
                                    auto left = class_compose(
                                        *Q, c2, {loop(f), loop(g), loop(H.join(a, b))});
                                    auto ca = class_compose(*Q, c2, {loop(f), loop(g), loop(a)});
                                    auto cb = class_compose(*Q, c2, {loop(f), loop(g), loop(b)});
                                    CHECK(left.diagonal.e ==
                                          H.join(ca.diagonal.e, cb.diagonal.e));
                                }
                }
        }
    }

    SECTION("unrealizable diagonals are rejected") {
        const Quantaloid& L = fixtures::luk3();
        CHECK_THROWS_AS(class_representative(L, {loop(1), loop(1), loop(2)}), structure_error);
        const Quantaloid& D = fixtures::diag_b4();
        CHECK_THROWS_AS(class_representative(D, {D.identity(0), D.identity(1), D.identity(0)}),
                        type_error);
    }
}

TEST_CASE("regular and idempotent loops", "[completion]") {
    SECTION("chains keep everything except the middle") {
        CHECK(elems_of(rq_objects(fixtures::two())) == std::vector<Elem>{0, 1});
        CHECK(elems_of(idmq_objects(fixtures::two())) == std::vector<Elem>{0, 1});
        CHECK(elems_of(rq_objects(fixtures::luk3())) == std::vector<Elem>{0, 2});
        CHECK(elems_of(idmq_objects(fixtures::luk3())) == std::vector<Elem>{0, 2});
        CHECK(elems_of(rq_objects(fixtures::godel3())) == std::vector<Elem>{0, 1, 2});
        CHECK(elems_of(idmq_objects(fixtures::godel3())) == std::vector<Elem>{0, 1, 2});
        CHECK((int)rq_objects(fixtures::bool4()).size() == 4);
        CHECK((int)idmq_objects(fixtures::bool4()).size() == 4);
    }

    SECTION("identities are regular and idempotent everywhere") {
        for (const Quantaloid* Q :
             {&fixtures::two(), &fixtures::luk3(), &fixtures::godel3(), &fixtures::diag_b4(),
              &fixtures::env_two()}) {
            for (int X = 0; X < Q->objects(); ++X) {
                CHECK(arrow_regular(*Q, Q->identity(X)));
                CHECK(arrow_idempotent(*Q, Q->identity(X)));
            }
        }
    }

    SECTION("loop regularity matches the distributor reading") {
        for (Elem e = 0; e < 3; ++e) {
            auto d = QDistributor::make(star_luk3(), star_luk3(), {e});
            CHECK(arrow_regular(fixtures::luk3(), loop(e)) == is_regular(d).regular);
        }
    }
}

TEST_CASE("regular loops are isomorphic to idempotents in the quotient", "[completion]") {
    SECTION("the witness table covers every regular loop") {
        auto table = rq_idmq_equivalence(fixtures::two());
        REQUIRE(table.size() == 2);
        for (const auto& w : table) {
            CHECK(arrow_idempotent(fixtures::two(), w.idem));
            CHECK(diagonal_class(fixtures::two(),
                                 square_compose(fixtures::two(), w.from_idem, w.to_idem)) ==
                  identity_class(fixtures::two(), w.f));
        }
    }

    SECTION("identity loops witness themselves") {
        const Quantaloid& L = fixtures::luk3();
        auto w = regular_witness(L, L.identity(0));
        CHECK(w.idem == L.identity(0));
        CHECK(w.to_idem == identity_square(L, L.identity(0)));
    }

    SECTION("multi-object witnesses") {
        const Quantaloid& D = fixtures::diag_b4();
        auto idem = idmq_objects(D);
        for (const auto& w : rq_idmq_equivalence(D)) {
            bool found = false;
            for (const auto& e : idem)
                if (e == w.idem) found = true;
            CHECK(found);
        }
    }

    SECTION("non-regular loops are rejected") {
        CHECK_THROWS_AS(regular_witness(fixtures::luk3(), loop(1)), structure_error);
    }
}

TEST_CASE("distributors form a quantaloid one level up", "[completion]") {
    SECTION("hom-lattices, identities and the axioms") {
        auto D = dist_subquantaloid({star_luk3(), half_arrow()});
        REQUIRE(D.Q.objects() == 2);
        CHECK(D.Q.hom(0, 0).size() == 3);
        CHECK(D.Q.hom(0, 1).size() == 5);
        CHECK(D.Q.id_elem(0) == 2);
        CHECK(D.Q.validate().ok);
    }

    SECTION("a dualizing family on the base lifts to the distributors") {
        GirardFamily fam{{0}};
        REQUIRE(is_cyclic_dualizing(fixtures::luk3(), fam));
        CHECK(neg_category(half_arrow(), fam).matrix() == std::vector<Elem>{0, 1, 0, 0});
        auto D = dist_subquantaloid({star_luk3(), half_arrow()});
        CHECK(is_cyclic_dualizing(D.Q, lift_girard_family(D, fam)));

        GirardFamily fam2{{0}};
        REQUIRE(is_cyclic_dualizing(fixtures::two(), fam2));
        auto D2 = dist_subquantaloid({star_two(), arrow2()});
        CHECK(D2.Q.validate().ok);
        CHECK(is_cyclic_dualizing(D2.Q, lift_girard_family(D2, fam2)));
    }

    SECTION("a base without a dualizing family lifts to none") {
        REQUIRE_FALSE(girard_search(fixtures::godel3()).has_value());
        auto D = dist_subquantaloid({star_godel3()});
        CHECK(D.Q.validate().ok);
        CHECK_FALSE(girard_search(D.Q).has_value());
    }

    SECTION("budget and base agreement are enforced") {
        CHECK_THROWS_AS(dist_subquantaloid({half_arrow()}, 10), budget_error);
        CHECK_THROWS_AS(dist_subquantaloid({star_two(), star_luk3()}), type_error);
    }
}
