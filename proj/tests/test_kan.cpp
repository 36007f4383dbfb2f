#include <optional>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <qkan/kan.hpp>
#include "support/fixtures.hpp"

using namespace qkan;

namespace {

// Walking arrow p -> q over the two-element chain.
const QCategoryPtr& arrow2() {
    static const QCategoryPtr A =
        ptr(QCategory::make(fixtures::two_ptr(), {"p", "q"}, {0, 0}, {1, 1, 0, 1}));
    return A;
}

// Two objects with a half-strength arrow back, over the Lukasiewicz chain.
const QCategoryPtr& half_arrow() {
    static const QCategoryPtr A =
        ptr(QCategory::make(fixtures::luk3_ptr(), {"half", "one"}, {0, 0}, {2, 2, 1, 2}));
    return A;
}

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

QDistributor scalar(const QCategoryPtr& S, Elem e) {
    return QDistributor::make(S, S, {e});
}

QFunctor identity_functor(const QCategoryPtr& A) {
    std::vector<int> m(A->size());
    for (int i = 0; i < A->size(); ++i) m[i] = i;
    return QFunctor::make(A, A, std::move(m));
}

}  // namespace

TEST_CASE("restriction and extension form an adjunction", "[kan]") {
    auto P = PresheafCat::presheaves(star_luk3());

    SECTION("a half-strength loop shifts the chain") {
        auto pair = kan_pair(P, P, scalar(star_luk3(), 1));
        CHECK(pair.restriction.map() == std::vector<int>{0, 0, 1});
        CHECK(pair.extension.map() == std::vector<int>{1, 2, 2});
    }

    SECTION("the identity distributor induces the identity pair") {
        auto PA = PresheafCat::presheaves(arrow2());
        auto pair = kan_pair(PA, PA, identity_dist(arrow2()));
        CHECK(pair.restriction.map() == std::vector<int>{0, 1, 2});
        CHECK(pair.extension.map() == std::vector<int>{0, 1, 2});
    }

    SECTION("variance and endpoints are enforced") {
        auto Pd = PresheafCat::copresheaves(star_luk3());
        CHECK_THROWS_AS(kan_pair(Pd, Pd, scalar(star_luk3(), 1)), type_error);
        auto PA = PresheafCat::presheaves(arrow2());
        CHECK_THROWS_AS(kan_pair(PA, P, scalar(star_luk3(), 1)), type_error);
    }
}

TEST_CASE("the copresheaf adjunction runs the other way", "[kan]") {
    auto Pd = PresheafCat::copresheaves(star_luk3());

    SECTION("a half-strength loop shifts the chain") {
        auto pair = dual_kan_pair(Pd, Pd, scalar(star_luk3(), 1));
        CHECK(pair.restriction.map() == std::vector<int>{1, 2, 2});
        CHECK(pair.extension.map() == std::vector<int>{0, 0, 1});
    }

    SECTION("presheaf categories are rejected") {
        auto P = PresheafCat::presheaves(star_luk3());
        CHECK_THROWS_AS(dual_kan_pair(P, P, scalar(star_luk3(), 1)), type_error);
    }
}

TEST_CASE("fixed points of idempotent operators", "[kan]") {
    SECTION("the identity fixes everything, both ways") {
        for (FixKind kind : {FixKind::monad, FixKind::comonad}) {
            auto fix = fix_category(identity_functor(arrow2()), kind);
            CHECK(fix.members == std::vector<int>{0, 1});
            CHECK(*fix.cat == *arrow2());
            CHECK(fix.sup_table == std::vector<int>{0, 0, 1});
            CHECK(fix.inf_table == std::vector<int>{1, 1, 0});
        }
    }

    SECTION("a constant coreflection keeps only its value") {
        auto F = QFunctor::make(arrow2(), arrow2(), {0, 0});
        auto fix = fix_category(F, FixKind::comonad);
        CHECK(fix.members == std::vector<int>{0});
        CHECK(fix.sup_table == std::vector<int>{0, 0});
        CHECK_THROWS_AS(fix_category(F, FixKind::monad), structure_error);
    }

    SECTION("non-idempotent operators are rejected") {
        auto chain3 = PresheafCat::presheaves(star_luk3()).cat_ptr();
        auto succ = QFunctor::make(chain3, chain3, {1, 2, 2});
        REQUIRE(validate_functor(succ).ok);
        CHECK_THROWS_AS(fix_category(succ, FixKind::monad), structure_error);
    }

    SECTION("an incomplete parent is rejected") {
        auto D = ptr(discrete_category(fixtures::two_ptr(), {0, 0}));
        CHECK_THROWS_AS(fix_category(identity_functor(D), FixKind::monad), structure_error);
    }

    SECTION("only endofunctors have fixed points") {
        auto F = QFunctor::make(arrow2(), star_two(), {0, 0});
        CHECK_THROWS_AS(fix_category(F, FixKind::monad), type_error);
    }
}

TEST_CASE("closure fixed points of a distributor", "[kan]") {
    SECTION("a half-strength loop keeps the upper part of the chain") {
        auto K = kphi(scalar(star_luk3(), 1));
        CHECK(K.monad.map() == std::vector<int>{1, 1, 2});
        CHECK(K.fix.members == std::vector<int>{1, 2});
        CHECK(K.fix.cat->hom_matrix() == std::vector<Elem>{2, 2, 1, 2});
        CHECK(kphi_matches_discrete(K));
    }

    SECTION("the identity distributor fixes every presheaf") {
        auto K = kphi(identity_dist(arrow2()));
        CHECK(K.fix.members == std::vector<int>{0, 1, 2});
        CHECK(K.monad.map() == std::vector<int>{0, 1, 2});
        CHECK(kphi_matches_discrete(K));
    }

    SECTION("a regular loop yields a distributive fixed-point category") {
        auto d = scalar(star_godel3(), 1);
        REQUIRE(is_regular(d).regular);
        auto K = kphi(d);
        CHECK(K.fix.members == std::vector<int>{0, 2});
        CHECK(K.fix.cat->hom_matrix() == std::vector<Elem>{2, 2, 0, 2});
        CHECK(is_ccd(K.fix.cat).ccd);
        CHECK(is_opccd(K.fix.cat).opccd);

        auto composite = kphi(dist_compose(d, phi_bar(d)));
        CHECK(*K.fix.cat == *composite.fix.cat);
    }

    SECTION("a non-regular loop fails distributivity on both sides") {
        auto d = scalar(star_luk3(), 1);
        REQUIRE_FALSE(is_regular(d).regular);
        auto K = kphi(d);
        CHECK_FALSE(is_ccd(K.fix.cat).ccd);
        CHECK_FALSE(is_opccd(K.fix.cat).opccd);
    }
}

TEST_CASE("interior fixed points and the two-sided isomorphism", "[kan]") {
    SECTION("a half-strength loop keeps the lower part of the chain") {
        auto R = rphi(scalar(star_luk3(), 1));
        CHECK(R.comonad.map() == std::vector<int>{0, 1, 1});
        CHECK(R.fix.members == std::vector<int>{0, 1});
        CHECK(R.fix.cat->hom_matrix() == std::vector<Elem>{2, 2, 1, 2});
    }

    SECTION("closure and interior fixed points are isomorphic") {
        auto d = scalar(star_luk3(), 1);
        auto K = kphi(d);
        auto R = rphi(d);
        auto iso = kr_isomorphism(K, R);
        CHECK(iso.forward.map() == std::vector<int>{0, 1});
        CHECK(iso.backward.map() == std::vector<int>{0, 1});

        auto other = kphi(scalar(star_luk3(), 2));
        CHECK_THROWS_AS(kr_isomorphism(other, R), type_error);
    }

    SECTION("the identity distributor fixes every presheaf") {
        auto R = rphi(identity_dist(arrow2()));
        CHECK(R.fix.members == std::vector<int>{0, 1, 2});
    }
}

TEST_CASE("commutative squares act on fixed points", "[kan]") {
    auto d = scalar(star_luk3(), 1);
    auto K = kphi(d);

    SECTION("the identity square acts as the identity") {
        auto sq = k_square(K, K, identity_dist(star_luk3()), identity_dist(star_luk3()));
        CHECK(sq.action.map() == std::vector<int>{0, 1});
        CHECK(sq.right_adjoint.map() == std::vector<int>{0, 1});
    }

    SECTION("the action only sees the diagonal") {
        auto a1 = k_square(K, K, scalar(star_luk3(), 0), scalar(star_luk3(), 0));
        auto a2 = k_square(K, K, scalar(star_luk3(), 1), scalar(star_luk3(), 1));
        auto a3 = k_square(K, K, scalar(star_luk3(), 0), scalar(star_luk3(), 1));
        CHECK(a1.action.map() == std::vector<int>{0, 0});
        CHECK(a2.action == a1.action);
        CHECK(a3.action == a1.action);

        auto id = k_square(K, K, identity_dist(star_luk3()), identity_dist(star_luk3()));
        CHECK_FALSE(id.action == a1.action);
    }

    SECTION("composition of squares reverses into composition of actions") {
        auto z1 = identity_dist(star_luk3()), e1 = identity_dist(star_luk3());
        auto z2 = scalar(star_luk3(), 1), e2 = scalar(star_luk3(), 1);
        auto a1 = k_square(K, K, z1, e1);
        auto a2 = k_square(K, K, z2, e2);
        auto both = k_square(K, K, dist_compose(z2, z1), dist_compose(e2, e1));
        CHECK(both.action == functor_compose(a1.action, a2.action));
    }

    SECTION("non-commuting squares are rejected with the failing entry") {
        auto Kpsi = kphi(scalar(star_luk3(), 2));
        CHECK_THROWS_AS(
            k_square(K, Kpsi, identity_dist(star_luk3()), identity_dist(star_luk3())),
            structure_error);
    }

    SECTION("mismatched endpoints are rejected") {
        CHECK_THROWS_AS(k_square(K, K, identity_dist(arrow2()), identity_dist(star_luk3())),
                        type_error);
    }
}

TEST_CASE("squares reconstructed from their comparisons", "[kan]") {
    auto d = scalar(star_godel3(), 1);
    auto K = kphi(d);

    SECTION("the identity comparison comes from a half-strength square") {
        auto sq = k_preimage(K, K, identity_functor(K.fix.cat));
        CHECK(sq.zeta.at(0, 0) == 1);
        CHECK(sq.eta.at(0, 0) == 1);
    }

    SECTION("a collapsing left adjoint comes from the empty square") {
        auto F = QFunctor::make(K.fix.cat, K.fix.cat, {0, 0});
        REQUIRE(find_right_adjoint_functor(F).has_value());
        auto sq = k_preimage(K, K, F);
        CHECK(sq.zeta.at(0, 0) == 0);
        CHECK(sq.eta.at(0, 0) == 0);
    }

    SECTION("comparisons without a right adjoint are rejected") {
        auto F = QFunctor::make(K.fix.cat, K.fix.cat, {1, 1});
        REQUIRE(validate_functor(F).ok);
        REQUIRE_FALSE(find_right_adjoint_functor(F).has_value());
        CHECK_THROWS_AS(k_preimage(K, K, F), structure_error);
    }

    SECTION("non-regular targets are rejected") {
        auto Kl = kphi(scalar(star_luk3(), 1));
        CHECK_THROWS_AS(k_preimage(Kl, Kl, identity_functor(Kl.fix.cat)), structure_error);
    }
}

TEST_CASE("the canonical idempotent of a distributive category", "[kan]") {
    SECTION("the walking arrow is recovered from its idempotent") {
        auto ct = canonical_theta(arrow2());
        CHECK(ct.theta.matrix() == std::vector<Elem>{0, 1, 0, 1});
        CHECK(ct.fixed.fix.members == std::vector<int>{1, 2});
        CHECK(ct.embedding.map() == std::vector<int>{0, 1});
    }

    SECTION("a single object collapses to its bottom presheaf") {
        auto ct = canonical_theta(star_two());
        CHECK(ct.theta.at(0, 0) == 0);
        CHECK(ct.fixed.fix.members == std::vector<int>{1});
        CHECK(ct.embedding.map() == std::vector<int>{0});
    }

    SECTION("non-distributive and non-skeletal categories are rejected") {
        CHECK_THROWS_AS(canonical_theta(half_arrow()), structure_error);
        auto twin = ptr(QCategory::make(fixtures::two_ptr(), {"a", "b"}, {0, 0}, {1, 1, 1, 1}));
        CHECK_THROWS_AS(canonical_theta(twin), structure_error);
    }
}
