#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace dbcause;
using namespace testsupport;

TEST_CASE("S- and C-repairs of the S-R-S instance") {
    Instance d = load_instance("srs.facts");
    DenialConstraintSet sigma = load_constraints("srs_dc.dlq");
    FactFamily s = removed_sets(repairs(d, sigma, Semantics::S));
    CHECK(s == FactFamily{S({"S(a3)"}), S({"R(a4,a3)", "R(a3,a3)"}), S({"R(a3,a3)", "S(a4)"})});
    CHECK(removed_sets(repairs(d, sigma, Semantics::C)) == FactFamily{S({"S(a3)"})});
    for (const auto& r : repairs(d, sigma, Semantics::S)) {
        CHECK(satisfies(r.kept, sigma));
        CHECK(is_repair(d, sigma, r.kept, Semantics::S));
    }
    CHECK_FALSE(is_repair(d, sigma, d.without(S({"R(a4,a3)", "R(a3,a3)"})), Semantics::C));
    CHECK_FALSE(is_repair(d, sigma, d.without(S({"S(a3)", "S(a4)"})), Semantics::S));
}

TEST_CASE("consistent instance is its own repair") {
    Instance d = parse_instance("S(a).\nR(b, c).\n");
    auto r = repairs(d, load_constraints("srs_dc.dlq"), Semantics::S);
    REQUIRE(r.size() == 1);
    CHECK(r[0].removed.empty());
    CHECK(violation_hypergraph(d, DenialConstraintSet{}).empty());
}

TEST_CASE("difference sets follow causes") {
    Instance d = load_instance("srs.facts");
    UnionQuery q = load_query("srs.dlq");
    auto r43 = causes_via_repairs(d, q, F("R(a4,a3)"));
    CHECK(r43.s == FactFamily{S({"R(a4,a3)", "R(a3,a3)"})});
    CHECK(r43.c.empty());
    auto s3 = causes_via_repairs(d, q, F("S(a3)"));
    CHECK(s3.s == FactFamily{S({"S(a3)"})});
    CHECK(s3.c == FactFamily{S({"S(a3)"})});
    CHECK(causes_via_repairs(d, q, F("R(a3,a3)")).s ==
          FactFamily{S({"R(a4,a3)", "R(a3,a3)"}), S({"R(a3,a3)", "S(a4)"})});
    auto s2 = causes_via_repairs(d, q, F("S(a2)"));
    CHECK(s2.s.empty());
    CHECK(s2.c.empty());
}

TEST_CASE("difference sets stay inside the endogenous part") {
    Instance d = load_instance("srs_mixed.facts");
    UnionQuery q = load_query("srs.dlq");
    // S(a4) only leaves together with the exogenous R(a3,a3)
    CHECK(causes_via_repairs(d, q, F("S(a4)")).s.empty());
    CHECK(responsibility(d, q, F("S(a4)")).is_zero());
}

TEST_CASE("repairs from two constraints") {
    Instance d = load_instance("pqr.facts");
    DenialConstraintSet sigma = load_constraints("pqr_dc.dlq");
    CHECK(kept_sets(repairs(d, sigma, Semantics::S)) ==
          FactFamily{S({"P(a)", "P(e)"}), S({"P(e)", "Q(a,b)", "R(a,c)"})});
    CHECK(kept_sets(repairs(d, sigma, Semantics::C)) == FactFamily{S({"P(e)", "Q(a,b)", "R(a,c)"})});
    CHECK(removed_sets(repairs_via_causes(d, sigma, Semantics::S)) == removed_sets(repairs(d, sigma, Semantics::S)));
    CHECK(removed_sets(repairs_via_causes(d, sigma, Semantics::C)) == removed_sets(repairs(d, sigma, Semantics::C)));
}

TEST_CASE("repairs via causes need an all-endogenous instance") {
    CHECK_THROWS_AS(repairs_via_causes(load_instance("srs_mixed.facts"), load_constraints("srs_dc.dlq"), Semantics::S),
                    SemanticError);
}

TEST_CASE("exponentially many S-repairs, two C-repairs") {
    Instance d = load_instance("pairs_n2.facts");
    DenialConstraintSet sigma = load_constraints("pairs_dc.dlq");
    CHECK(repairs(d, sigma, Semantics::S).size() == 6);
    CHECK(removed_sets(repairs(d, sigma, Semantics::C)) == FactFamily{S({"S(0)"}), S({"S(1)"})});
}

TEST_CASE("enumeration cap on repairs") {
    std::string src = "S(0).\nS(1).\n";
    for (int i = 1; i <= 12; ++i) src += "R(" + std::to_string(i) + ", 0).\nR(" + std::to_string(i) + ", 1).\n";
    Instance d = parse_instance(src);
    CHECK_THROWS_AS(repairs(d, load_constraints("pairs_dc.dlq"), Semantics::S, 1000), EnumerationCapError);
}

TEST_CASE("consistent answers from causes") {
    Instance d = load_instance("pqr.facts");
    DenialConstraintSet sigma = load_constraints("pqr_dc.dlq");
    CHECK(consistent_answer(d, sigma, {F("P(e)")}, Semantics::S));
    CHECK(consistent_answer(d, sigma, {F("P(e)")}, Semantics::C));
    CHECK_FALSE(consistent_answer(d, sigma, {F("P(a)")}, Semantics::S));
    CHECK_FALSE(consistent_answer(d, sigma, {F("Q(a,b)")}, Semantics::S));
    CHECK(consistent_answer(d, sigma, {F("Q(a,b)"), F("R(a,c)")}, Semantics::C));
    CHECK_FALSE(consistent_answer(d, sigma, {F("P(z)")}, Semantics::S));

    Instance c = load_instance("chain.facts");
    DenialConstraintSet k = load_constraints("chain_dc.dlq");
    for (auto sem : {Semantics::S, Semantics::C}) {
        CHECK(consistent_answer(c, k, {F("R(a,d)")}, sem));
        CHECK_FALSE(consistent_answer(c, k, {F("P(a,b)")}, sem));
        CHECK_FALSE(consistent_answer(c, k, {F("R(b,c)")}, sem));
    }
}

TEST_CASE("conflicts and diagnoses with an exogenous join partner") {
    Instance d = load_instance("srs_small.facts");
    DiagnosisProblem m = build_problem(d, load_query("srs.dlq"));
    CHECK(m.conflicts == FactFamily{S({"S(a3)", "S(a4)"})});
    CHECK(diagnoses(m, DiagnosisKind::S) == FactFamily{S({"S(a3)"}), S({"S(a4)"})});
    CHECK(diagnoses(m, DiagnosisKind::C) == FactFamily{S({"S(a3)"}), S({"S(a4)"})});
    CHECK(diagnoses(m, DiagnosisKind::S, F("S(a3)")) == FactFamily{S({"S(a3)"})});
    CHECK(diagnoses(m, DiagnosisKind::C, F("S(a4)")) == FactFamily{S({"S(a4)"})});
    CHECK_THROWS_AS(repairs_from_diagnoses(m, DiagnosisKind::S), SemanticError);
}

TEST_CASE("all-endogenous diagnoses give the repairs") {
    Instance d = load_instance("srs_small_endo.facts");
    DiagnosisProblem m = build_problem(d, load_query("srs.dlq"));
    CHECK(diagnoses(m, DiagnosisKind::S) == FactFamily{S({"S(a3)"}), S({"S(a4)"}), S({"R(a4,a3)"})});
    DenialConstraintSet sigma = load_constraints("srs_dc.dlq");
    for (auto kind : {DiagnosisKind::S, DiagnosisKind::C}) {
        auto from_diag = repairs_from_diagnoses(m, kind);
        auto direct = repairs(d, sigma, kind == DiagnosisKind::S ? Semantics::S : Semantics::C);
        CHECK(kept_sets(from_diag) == kept_sets(direct));
        CHECK(kept_sets(from_diag) ==
              FactFamily{S({"S(a3)", "R(a4,a3)"}), S({"S(a4)", "R(a4,a3)"}), S({"S(a3)", "S(a4)"})});
    }
}

TEST_CASE("diagnoses containing a fact, minimum variant") {
    Instance d = load_instance("srs.facts");
    DiagnosisProblem m = build_problem(d, load_query("srs.dlq"));
    CHECK(diagnoses(m, DiagnosisKind::S, F("R(a3,a3)")) ==
          FactFamily{S({"R(a3,a3)", "R(a4,a3)"}), S({"R(a3,a3)", "S(a4)"})});
    CHECK(diagnoses(m, DiagnosisKind::C, F("R(a3,a3)")).size() == 2);
    CHECK(diagnoses(m, DiagnosisKind::C) == FactFamily{S({"S(a3)"})});
    CHECK(diagnoses(m, DiagnosisKind::S, F("S(a2)")).empty());
}

TEST_CASE("diagnosis needs a true boolean query") {
    UnionQuery q = load_query("srs.dlq");
    CHECK_THROWS_AS(build_problem(parse_instance("S(a).\n"), q), SemanticError);
    CHECK_THROWS_AS(build_problem(load_instance("srs.facts"), parse_program("a(X) :- S(X).\n").queries[0]),
                    SemanticError);
}

TEST_CASE("exogenous witness leaves nothing to diagnose") {
    Instance d = parse_instance("@exogenous\nS(a).\nR(a, a).\n@endogenous\nS(b).\n");
    DiagnosisProblem m = build_problem(d, load_query("srs.dlq"));
    CHECK(m.conflicts == FactFamily{FactSet{}});
    CHECK(diagnoses(m, DiagnosisKind::S).empty());
}

TEST_CASE("system description") {
    Instance d = load_instance("srs_small.facts");
    std::string th = render_theory(build_problem(d, load_query("srs.dlq")));
    CHECK(th.find("forall x y (R(x,y) <-> (x = a4 & y = a3))") != std::string::npos);
    CHECK(th.find("forall x y (End_R(x,y) <-> false)") != std::string::npos);
    CHECK(th.find("~(a3 = a4)") != std::string::npos);
    CHECK(th.find("forall x y (S(x) & R(x,y) & S(y) -> Ab_S(x) | Ab_R(x,y) | Ab_S(y))") != std::string::npos);
    CHECK(th.find("exists x y (S(x) & R(x,y) & S(y))") != std::string::npos);
    CHECK(th.find("forall x (Ab_S(x) -> false)") != std::string::npos);
}
