#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace dbcause;
using namespace testsupport;

TEST_CASE("instance parsing keeps tags and sorts facts") {
    Instance d = parse_instance("@endogenous\nS(a3).\nS(a4).\n@exogenous\nR(a4, a3). % trailing comment\n");
    REQUIRE(d.size() == 3);
    CHECK(d.endogenous().size() == 2);
    CHECK(d.exogenous().size() == 1);
    CHECK_FALSE(d.all_endogenous());
    CHECK(d.find(F("R(a4,a3)"))->tag == Tag::exogenous);
    CHECK(to_string(d.facts().front()) == "R(a4,a3)");
    CHECK(d.schema() == std::map<std::string, std::size_t>{{"R", 2}, {"S", 1}});
}

TEST_CASE("facts default to endogenous and duplicates collapse") {
    Instance d = parse_instance("P(a).\nP(a).\nQ(1, b).\n");
    CHECK(d.size() == 2);
    CHECK(d.all_endogenous());
    CHECK(d.contains(F("Q(1,b)")));
}

TEST_CASE("conflicting tags are rejected") {
    CHECK_THROWS_AS(parse_instance("@endogenous\nP(a).\n@exogenous\nP(a).\n"), SemanticError);
    std::vector<Fact> raw = {Fact("P", {Constant{"a"}}, Tag::endogenous), Fact("P", {Constant{"a"}}, Tag::exogenous)};
    CHECK(check_wellformed(raw).size() == 1);
}

TEST_CASE("parse errors carry a position") {
    try {
        parse_instance("P(a).\nP(a b).\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_instance("P(X).\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("@sideways\nP(a).\n"), ParseError);
}

TEST_CASE("ids and nulls") {
    Instance d = parse_instance("R(1; a2, a1).\nS(5; null).\n");
    const Fact& r = d.facts().front();
    CHECK(r.id == 1u);
    CHECK(r.arity() == 2);
    CHECK(d.facts().back().args[0].is_null);
    CHECK(to_string(r) == "R(1;a2,a1)");
    CHECK_FALSE(Constant::null().joins_with(Constant::null()));
}

TEST_CASE("serialize round-trips") {
    Instance d = load_instance("srs_mixed.facts");
    CHECK(parse_instance(serialize(d)) == d);
    Instance e = load_instance("srs_ids.facts");
    CHECK(parse_instance(serialize(e)) == e);
}

TEST_CASE("delta is the symmetric difference") {
    Instance d = load_instance("srs.facts");
    Instance e = d.without(S({"S(a3)"})).with({F("S(a9)")});
    CHECK(delta(d, e) == S({"S(a3)", "S(a9)"}));
    CHECK(delta(d, d).empty());
}

TEST_CASE("program parsing merges rules with one head") {
    Program p = parse_program("q :- P(X), Q(X, Y).\nq :- P(X), R(X, Y).\n:- P(X), R(X, Y).\n");
    REQUIRE(p.queries.size() == 1);
    CHECK(p.queries[0].disjuncts.size() == 2);
    CHECK(p.queries[0].is_boolean());
    CHECK(p.queries[0].max_atoms() == 2);
    CHECK(p.constraints.constraints.size() == 1);
    CHECK(p.find("q") != nullptr);
    CHECK(p.find("nope") == nullptr);
}

TEST_CASE("semantic errors in programs") {
    CHECK_THROWS_AS(parse_program("q(X) :- P(X).\nq(X, Y) :- R(X, Y).\n"), SemanticError);
    CHECK_THROWS_AS(parse_program("q(Z) :- P(X).\n"), SemanticError);
    CHECK_THROWS_AS(parse_program("q :- P(X), X != Y.\n"), SemanticError);
    CHECK_THROWS_AS(parse_program("q :- P(X), X = Y.\n"), ParseError);
    CHECK_THROWS_AS(parse_program("q :- P(X), _ != X.\n"), ParseError);
}

TEST_CASE("anonymous variables are fresh") {
    Program p = parse_program("q :- R(_, _).\n");
    const auto& a = p.queries[0].disjuncts[0].atoms[0];
    CHECK(a.terms[0].var != a.terms[1].var);
    CHECK(eval_boolean(parse_instance("R(a, b).\n"), p.queries[0]));
}

TEST_CASE("boolean evaluation") {
    Instance d = load_instance("srs.facts");
    CHECK(eval_boolean(d, load_query("srs.dlq")));
    CHECK_FALSE(eval_boolean(d.without(S({"S(a3)"})), load_query("srs.dlq")));
    Program p = parse_program("q :- R(X, Y), X != Y, S(Y).\n");
    CHECK(eval_boolean(d, p.queries[0]));
    CHECK_FALSE(eval_boolean(parse_instance("R(a3, a3).\nS(a3).\n"), p.queries[0]));
}

TEST_CASE("open queries and answers") {
    Instance d = load_instance("srs.facts");
    UnionQuery q = parse_program("ans(X) :- S(X), R(X, Y).\n").queries[0];
    auto answers = eval_answers(d, q);
    CHECK(answers.size() == 3);
    CHECK(answers.count(Tuple{Constant{"a4"}}));
    UnionQuery b = instantiate(q, Tuple{Constant{"a2"}});
    CHECK(b.is_boolean());
    CHECK(eval_boolean(d, b));
    CHECK_FALSE(eval_boolean(d, instantiate(q, Tuple{Constant{"a1"}})));
    CHECK(eval_answers(d, load_query("srs.dlq")).size() == 1);
}

TEST_CASE("null never joins") {
    UnionQuery q = load_query("srs.dlq");
    CHECK_FALSE(eval_boolean(parse_instance("S(null).\nR(null, null).\n"), q));
    UnionQuery single = parse_program("q :- R(X, Y).\n").queries[0];
    CHECK(eval_boolean(parse_instance("R(null, a).\n"), single));
    UnionQuery constant = parse_program("q :- R(a, Y).\n").queries[0];
    CHECK_FALSE(eval_boolean(parse_instance("R(null, b).\n"), constant));
    UnionQuery neq = parse_program("q :- R(X, Y), X != Y.\n").queries[0];
    CHECK_FALSE(eval_boolean(parse_instance("R(null, b).\n"), neq));
}

TEST_CASE("constraints and the query duality") {
    Instance d = load_instance("srs.facts");
    UnionQuery q = load_query("srs.dlq");
    DenialConstraintSet sigma = dc_of_query(q);
    CHECK_FALSE(satisfies(d, sigma));
    CHECK(satisfies(d.without(S({"S(a3)"})), sigma));
    UnionQuery v = violation_view(sigma);
    CHECK(v.disjuncts == q.disjuncts);
    CHECK_THROWS_AS(violation_view(DenialConstraintSet{}), SemanticError);
    CHECK_THROWS_AS(dc_of_query(parse_program("a(X) :- P(X).\n").queries[0]), SemanticError);
    DenialConstraintSet two = load_constraints("pqr_dc.dlq");
    CHECK(violation_view(two).disjuncts.size() == 2);
}

TEST_CASE("matches expose their images") {
    Instance d = load_instance("srs.facts");
    UnionQuery q = load_query("srs.dlq");
    std::set<FactSet> images;
    for_each_match(d, q.disjuncts[0], [&](const Match& m) {
        FactSet s;
        for (const Fact* f : m.image) s.insert(*f);
        images.insert(s);
        return true;
    });
    CHECK(images == FactFamily{S({"S(a3)", "R(a3,a3)"}), S({"S(a4)", "R(a4,a3)", "S(a3)"})});
    CHECK(occurrences(q.disjuncts[0], "Y") == 2);
}
