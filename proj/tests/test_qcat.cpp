#include <catch2/catch_amalgamated.hpp>

#include <qkan/qcat.hpp>

#include "support/fixtures.hpp"

using namespace qkan;

TEST_CASE("category construction rejects malformed input", "[qcat]") {
    auto g3 = fixtures::godel3_ptr();
    REQUIRE_THROWS_AS(QCategory::make(nullptr, {}, {}, {}), structure_error);
    REQUIRE_THROWS_AS(QCategory::make(g3, {"x", "y"}, {0}, {2, 2, 0, 2}), structure_error);
    REQUIRE_THROWS_AS(QCategory::make(g3, {"x"}, {0}, {2, 2}), structure_error);
    REQUIRE_THROWS_AS(QCategory::make(g3, {"x"}, {5}, {2}), structure_error);
    REQUIRE_THROWS_AS(QCategory::make(g3, {"x"}, {0}, {3}), structure_error);
}

TEST_CASE("category validation", "[qcat]") {
    auto g3 = fixtures::godel3_ptr();

    SECTION("discrete and singleton categories are lawful") {
        REQUIRE(discrete_category(g3, {0, 0, 0}).validate().ok);
        REQUIRE(singleton_category(g3, 0).validate().ok);
        REQUIRE(discrete_category(g3, {}).validate().ok);
    }
    SECTION("identity must sit below the endo-hom") {
        auto A = QCategory::make(g3, {"x"}, {0}, {1});
        auto r = A.validate();
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.detail.find("identity") != std::string::npos);
    }
    SECTION("composition law failures carry a witness") {
        std::vector<Elem> hom = {2, 2, 0,
                                 0, 2, 2,
                                 0, 0, 2};
        auto A = QCategory::make(g3, {"x", "y", "z"}, {0, 0, 0}, hom);
        auto r = A.validate();
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.detail.find("composition") != std::string::npos);
    }
}

TEST_CASE("underlying preorder, joins, skeletality", "[qcat]") {
    auto t2 = fixtures::two_ptr();
    auto chain = QCategory::make(t2, {"p", "q"}, {0, 0}, {1, 1, 0, 1});
    REQUIRE(chain.validate().ok);
    REQUIRE(chain.find_object("q") == 1);
    REQUIRE_FALSE(chain.find_object("r").has_value());

    REQUIRE(chain.obj_leq(0, 1));
    REQUIRE_FALSE(chain.obj_leq(1, 0));
    REQUIRE(chain.is_skeletal());
    REQUIRE(underlying_order(chain) == std::vector<uint8_t>{1, 1, 0, 1});
    REQUIRE(underlying_join(chain, {0, 1}) == 1);
    REQUIRE(underlying_join(chain, {}) == 0);

    auto disc = discrete_category(t2, {0, 0});
    REQUIRE_FALSE(underlying_join(disc, {0, 1}).has_value());
}

TEST_CASE("skeletal quotient collapses isomorphic objects", "[qcat]") {
    auto t2 = fixtures::two_ptr();
    // p and q isomorphic, r strictly above both
    std::vector<Elem> hom = {1, 1, 1,
                             1, 1, 1,
                             0, 0, 1};
    auto A = QCategory::make(t2, {"p", "q", "r"}, {0, 0, 0}, hom);
    REQUIRE(A.validate().ok);
    REQUIRE(A.obj_iso(0, 1));
    REQUIRE_FALSE(A.is_skeletal());

    auto sq = skeletal_quotient(A);
    REQUIRE(sq.quotient->size() == 2);
    REQUIRE(sq.quotient->is_skeletal());
    REQUIRE(sq.representatives == std::vector<int>{0, 2});
    REQUIRE(sq.projection == std::vector<int>{0, 0, 1});

    auto proj = QFunctor::make(ptr(A), sq.quotient, sq.projection);
    auto rep = validate_functor(proj);
    REQUIRE(rep.ok);
    REQUIRE(rep.fully_faithful);

    auto again = skeletal_quotient(*sq.quotient);
    REQUIRE(*again.quotient == *sq.quotient);
}

TEST_CASE("dualization transposes homs and is involutive", "[qcat]") {
    auto l3 = fixtures::luk3_ptr();
    auto A = QCategory::make(l3, {"x", "y"}, {0, 0}, {2, 1, 0, 2});
    REQUIRE(A.validate().ok);

    auto Aop = dualize(A);
    REQUIRE(Aop.validate().ok);
    REQUIRE(Aop.hom_elem(0, 1) == A.hom_elem(1, 0));
    REQUIRE(Aop.hom_elem(1, 0) == A.hom_elem(0, 1));
    REQUIRE(dualize(Aop) == A);
}

TEST_CASE("functor validation", "[qcat]") {
    auto g3 = fixtures::godel3_ptr();
    auto A = ptr(QCategory::make(g3, {"x", "y"}, {0, 0}, {2, 2, 0, 2}));

    SECTION("the identity functor is fully faithful") {
        auto idA = QFunctor::make(A, A, {0, 1});
        auto r = validate_functor(idA);
        REQUIRE(r.ok);
        REQUIRE(r.fully_faithful);
    }
    SECTION("collapsing to a point is lawful but not fully faithful") {
        auto pt = ptr(singleton_category(g3, 0));
        auto c = QFunctor::make(A, pt, {0, 0});
        auto r = validate_functor(c);
        REQUIRE(r.ok);
        REQUIRE_FALSE(r.fully_faithful);
    }
    SECTION("the action inequality can fail") {
        auto disc = ptr(discrete_category(g3, {0, 0}));
        auto F = QFunctor::make(A, disc, {0, 1});
        auto r = validate_functor(F);
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.detail.find("action") != std::string::npos);
    }
    SECTION("types must be preserved") {
        auto db = fixtures::diag_b4_ptr();
        auto C = ptr(discrete_category(db, {1, 2}));
        auto F = QFunctor::make(C, C, {1, 0});
        auto r = validate_functor(F);
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.detail.find("type") != std::string::npos);
    }
}

TEST_CASE("functor composition and pointwise order", "[qcat]") {
    auto g3 = fixtures::godel3_ptr();
    auto A = ptr(QCategory::make(g3, {"x", "y"}, {0, 0}, {2, 2, 0, 2}));
    auto S = ptr(singleton_category(g3, 0));

    auto Fx = QFunctor::make(S, A, {0});
    auto Fy = QFunctor::make(S, A, {1});
    REQUIRE(validate_functor(Fx).ok);
    REQUIRE(validate_functor(Fy).ok);

    REQUIRE(functor_leq(Fx, Fx));
    REQUIRE(functor_leq(Fx, Fy));
    REQUIRE_FALSE(functor_leq(Fy, Fx));

    auto idA = QFunctor::make(A, A, {0, 1});
    REQUIRE(functor_compose(idA, Fx) == Fx);
    REQUIRE_THROWS_AS(functor_compose(Fx, idA), type_error);
    REQUIRE_THROWS_AS(functor_leq(Fx, idA), type_error);
}

TEST_CASE("full subcategories inherit structure", "[qcat]") {
    auto l3 = fixtures::luk3_ptr();
    auto A = ptr(QCategory::make(l3, {"half", "one"}, {0, 0}, {2, 2, 1, 2}));

    auto S = full_subcategory(*A, {1, 0});
    REQUIRE(S.size() == 2);
    REQUIRE(S.object_id(0) == "one");
    REQUIRE(S.object_id(1) == "half");
    REQUIRE(S.hom_matrix() == std::vector<Elem>{2, 1, 2, 2});
    REQUIRE(S.validate().ok);

    REQUIRE(full_subcategory(*A, {0}).size() == 1);
    REQUIRE(full_subcategory(*A, {}).size() == 0);
    REQUIRE_THROWS_AS(full_subcategory(*A, {2}), structure_error);
}
