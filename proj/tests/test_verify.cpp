#include <catch2/catch_amalgamated.hpp>

#include <qkan/verify.hpp>

using namespace qkan;

namespace {

Workspace chain_ws(const char* tnorm) {
    std::string doc = R"({
      "quantale": {"kind": "chain-tnorm", "size": 3, "tnorm": ")" +
                      std::string(tnorm) + R"("},
      "categories": {"A": {"objects": [{"id": "a", "type": "*"}]}},
      "distributors": {"h": {"from": "A", "to": "A", "matrix": [["a", "a", "1/2"]]}}
    })";
    return parse_workspace(doc);
}

Workspace bool_ws() {
    return parse_workspace(R"({
      "quantale": {"kind": "chain-tnorm", "size": 2, "tnorm": "godel"},
      "categories": {
        "A": {"objects": [{"id": "a", "type": "*"}]},
        "D": {"objects": [{"id": "p", "type": "*"}, {"id": "q", "type": "*"}]}
      }
    })");
}

std::string joined_notes(const Verdict& v) {
    std::string all;
    for (const auto& n : v.notes) all += n + "\n";
    return all;
}

}  // namespace

TEST_CASE("structural checks answer for declared entities", "[verify]") {
    Bounds bounds;
    auto luk = chain_ws("lukasiewicz");
    auto godel = chain_ws("godel");

    SECTION("regularity, with a reproducible witness on failure") {
        CHECK(check_regular(godel, "h", bounds).result == Outcome::holds);
        Verdict v = check_regular(luk, "h", bounds);
        REQUIRE(v.result == Outcome::fails);
        CHECK(v.witness.find("entry (a,a)") == 0);
        REQUIRE_FALSE(v.recheck.is_null());
        CHECK(recheck_witness(v.recheck, bounds));
    }

    SECTION("fixed points come with membership and hom data") {
        Verdict v = check_kphi(godel, "h", bounds);
        REQUIRE(v.instances == 2);
        REQUIRE(v.data.at("members").size() == 2);
        CHECK(v.data.at("members")[0].at("values") == json::array({"0"}));
        CHECK(v.data.at("members")[1].at("values") == json::array({"1"}));
        CHECK(v.data.at("hom").size() == 2);

        CHECK(check_ccd(godel, "kphi:h", false, bounds).result == Outcome::holds);
        CHECK(check_ccd(godel, "kphi:h", true, bounds).result == Outcome::holds);
        Verdict bad = check_ccd(luk, "kphi:h", false, bounds);
        CHECK(bad.result == Outcome::fails);
        CHECK(recheck_witness(bad.recheck, bounds));
    }

    SECTION("completeness and the dualizing-family search") {
        CHECK(check_complete(godel, "A", bounds).result == Outcome::holds);
        auto two = bool_ws();
        Verdict incomplete = check_complete(two, "D", bounds);
        REQUIRE(incomplete.result == Outcome::fails);
        CHECK(recheck_witness(incomplete.recheck, bounds));
        Verdict g = check_girard(luk, bounds);
        CHECK(g.result == Outcome::holds);
        CHECK(g.witness == "d = 0");
        Verdict none = check_girard(godel, bounds);
        REQUIRE(none.result == Outcome::fails);
        CHECK(recheck_witness(none.recheck, bounds));
    }
}

TEST_CASE("quantified facts hold on their home turf", "[verify]") {
    Bounds bounds;
    auto luk = chain_ws("lukasiewicz");
    auto godel = chain_ws("godel");
    auto two = bool_ws();

    for (const char* id : {"prop2.1", "prop2.3", "lemma3.2", "prop3.4", "prop3.6", "prop4.5",
                           "lemma-kphi-discrete"}) {
        INFO(id);
        Verdict v = verify_theorem(godel, id, bounds);
        CHECK(v.result == Outcome::holds);
        CHECK(v.instances > 0);
    }
    CHECK(verify_theorem(two, "prop4.4", bounds).result == Outcome::holds);
    CHECK(verify_theorem(two, "thm4.6", bounds).result == Outcome::holds);
    CHECK(verify_theorem(godel, "thm4.6", bounds).result == Outcome::holds);
    CHECK(verify_theorem(godel, "thm6.2", bounds).result == Outcome::holds);
    CHECK(verify_theorem(luk, "thm7.7", bounds).result == Outcome::holds);
    CHECK(verify_theorem(luk, "prop7.5", bounds).result == Outcome::holds);
    CHECK(verify_theorem(luk, "prop7.6", bounds).result == Outcome::holds);

    CHECK_THROWS_AS(verify_theorem(godel, "thm9.9", bounds), workspace_error);
}

TEST_CASE("hypothesis-free bases make the dualizing statements vacuous", "[verify]") {
    Bounds bounds;
    auto godel = chain_ws("godel");
    for (const char* id : {"thm7.7", "prop7.5", "prop7.6"}) {
        INFO(id);
        Verdict v = verify_theorem(godel, id, bounds);
        CHECK(v.result == Outcome::holds);
        CHECK(joined_notes(v).find("vacuous") != std::string::npos);
    }
}

TEST_CASE("the quantale-level equivalence reports its statement pattern", "[verify]") {
    Bounds bounds;

    SECTION("all decided statements false") {
        Verdict v = verify_theorem(chain_ws("godel"), "thm8.2", bounds);
        CHECK(v.result == Outcome::holds);
        std::string notes = joined_notes(v);
        CHECK(notes.find("(i) ") != std::string::npos);
        CHECK(notes.find("1/2 -> bottom -> bottom = 1") != std::string::npos);
        CHECK(notes.find("(iii)") != std::string::npos);
        CHECK(notes.find("(iv)") != std::string::npos);
        CHECK(notes.find("(v) the base itself is co-distributive: fails") != std::string::npos);
        CHECK(notes.find("equivalence pattern confirmed: every decided statement is false") !=
              std::string::npos);
    }

    SECTION("all decided statements true") {
        for (Workspace ws : {chain_ws("lukasiewicz"), bool_ws()}) {
            Verdict v = verify_theorem(ws, "thm8.2", bounds);
            CHECK(v.result == Outcome::holds);
            CHECK(joined_notes(v).find("every decided statement is true") != std::string::npos);
        }
    }

    SECTION("the hypotheses are enforced") {
        auto multi = parse_workspace(R"({"quantaloid": {"kind": "diagonals", "atoms": 2}})");
        CHECK_THROWS_AS(verify_theorem(multi, "thm8.2", bounds), type_error);
    }
}

TEST_CASE("comparison-functor facts sweep commuting squares", "[verify]") {
    Bounds bounds;
    bounds.dist_budget = 2'000'000;  // square sweeps charge both sides of every pair
    auto two = bool_ws();
    for (const char* id : {"prop5.1", "prop5.2", "prop5.3"}) {
        INFO(id);
        Verdict v = verify_theorem(two, id, bounds);
        CHECK(v.result == Outcome::holds);
        CHECK(v.instances > 0);
    }
}

TEST_CASE("the miner finds the known counterexamples and nothing else", "[verify]") {
    Bounds bounds;
    auto godel = chain_ws("godel");
    auto luk = chain_ws("lukasiewicz");

    for (int imp : {1, 2}) {
        INFO(imp);
        CHECK(mine(godel, imp, bounds).result == Outcome::holds);
        CHECK(mine(luk, imp, bounds).result == Outcome::holds);
    }

    for (int imp : {3, 4}) {
        Verdict v = mine(godel, imp, bounds);
        REQUIRE(v.result == Outcome::fails);
        CHECK(v.witness == "counterexample [1]");  // the identity distributor, first in order
        CHECK(recheck_witness(v.recheck, bounds));
    }

    Verdict open = mine(luk, 5, bounds);
    CHECK(open.result == Outcome::holds);
    std::string notes = joined_notes(open);
    CHECK(notes.find("bounded evidence only") != std::string::npos);
    CHECK(notes.find("open question") != std::string::npos);
    CHECK(notes.find("no universal claim") != std::string::npos);

    CHECK_THROWS_AS(mine(godel, 7, bounds), workspace_error);
}

TEST_CASE("exhausted budgets surface as partial verdicts", "[verify]") {
    Bounds bounds;
    bounds.dist_budget = 2;
    Verdict v = verify_theorem(chain_ws("godel"), "thm4.6", bounds);
    CHECK(v.result == Outcome::budget_exceeded);
    CHECK(joined_notes(v).find("partial results only") != std::string::npos);
}

TEST_CASE("the dispatcher routes command tokens", "[verify]") {
    Bounds bounds;
    auto luk = chain_ws("lukasiewicz");
    CHECK(run_check(luk, {"check", "girard"}, bounds).result == Outcome::holds);
    CHECK(run_check(luk, {"check", "regular", "h"}, bounds).result == Outcome::fails);
    CHECK(run_check(luk, {"kphi", "h"}, bounds).instances == 2);
    CHECK(run_check(luk, {"verify", "prop2.1"}, bounds).result == Outcome::holds);
    CHECK(run_check(luk, {"mine", "5"}, bounds).result == Outcome::holds);
    CHECK_THROWS_AS(run_check(luk, {"frobnicate"}, bounds), workspace_error);
    CHECK_THROWS_AS(run_check(luk, {"check", "regular"}, bounds), workspace_error);
}

TEST_CASE("verdicts render to both formats", "[verify]") {
    Bounds bounds;
    Verdict v = mine(chain_ws("godel"), 4, bounds);
    json j = verdict_json(v);
    CHECK(j.at("result") == "fails");
    CHECK(j.at("recheck").at("expect") == "fails");
    CHECK(j.at("counts").at("distributors(1x1)") == 3);
    std::string text = verdict_text(v);
    CHECK(text.find("mine --implication 4: fails") == 0);
    CHECK(text.find("witness: counterexample [1]") != std::string::npos);
}

TEST_CASE("the order diagram lists fixed points with cover edges", "[verify]") {
    auto godel = chain_ws("godel");
    KPhi K = kphi(godel.distributor("h"));
    std::string dot = kphi_dot(K);
    CHECK(dot.find("digraph kphi") == 0);
    CHECK(dot.find("rankdir=BT") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
    CHECK(dot.find("[label=\"[0]\"]") != std::string::npos);
    CHECK(dot.find("[label=\"[1]\"]") != std::string::npos);
}
