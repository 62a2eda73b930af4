#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace dbcause;
using namespace testsupport;

using IntFam = Family<int>;

TEST_CASE("minimal transversals of small families") {
    IntFam edges = {{1, 2}, {2, 3}};
    CHECK(minimal_hitting_sets(edges) == IntFam{{2}, {1, 3}});
    CHECK(minimal_hitting_sets(IntFam{}) == IntFam{{}});
    CHECK(minimal_hitting_sets(IntFam{{}}) == IntFam{});
    CHECK(minimize_family(IntFam{{1}, {1, 2}, {3}}) == IntFam{{1}, {3}});
    CHECK(vertices(edges) == std::set<int>{1, 2, 3});
}

TEST_CASE("minimum hitting set is the canonical least") {
    IntFam edges = {{1, 2}, {3, 4}};
    CHECK(minimum_hitting_set(edges) == std::set<int>{1, 3});
    CHECK_FALSE(minimum_hitting_set(IntFam{{1}, {}}).has_value());
    CHECK(minimum_hitting_set(IntFam{})->empty());
}

TEST_CASE("contingency needs t to stay essential") {
    // {x} alone hits everything, so it cannot serve as t's contingency
    const int t = 0, x = 1, y1 = 2, y2 = 3;
    IntFam edges = {{t, x}, {x, y1}, {x, y2}};
    CHECK(minimum_contingency(edges, t) == std::set<int>{y1, y2});
    CHECK_FALSE(contingency_within(edges, t, 1));
    CHECK(contingency_within(edges, t, 2));
    CHECK(minimal_contingencies(edges, t) == IntFam{{y1, y2}});
    CHECK(minimum_contingency(edges, x) == std::set<int>{});
    CHECK_FALSE(minimum_contingency(edges, 9).has_value());
}

TEST_CASE("contingencies agree with the transversal scan") {
    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        IntFam edges;
        int m = std::uniform_int_distribution<int>(1, 5)(rng);
        for (int i = 0; i < m; ++i) {
            std::set<int> e;
            int k = std::uniform_int_distribution<int>(1, 3)(rng);
            for (int j = 0; j < k; ++j) e.insert(std::uniform_int_distribution<int>(0, 6)(rng));
            edges.insert(e);
        }
        edges = minimize_family(edges);
        auto rep = oracle::hitting(edges);
        CHECK(minimal_hitting_sets(edges) == rep.minimal);
        CHECK(minimum_hitting_set(edges)->size() == *rep.minimum);
        for (int t : vertices(edges)) {
            auto g = minimum_contingency(edges, t);
            auto it = rep.minimum_with_essential.find(t);
            REQUIRE(g.has_value() == (it != rep.minimum_with_essential.end()));
            if (g) {
                CHECK(g->size() + 1 == it->second);
                CHECK(contingency_within(edges, t, g->size()));
                if (!g->empty()) CHECK_FALSE(contingency_within(edges, t, g->size() - 1));
            }
            IntFam want;
            for (const auto& h : rep.minimal)
                if (h.count(t)) {
                    auto rest = h;
                    rest.erase(t);
                    want.insert(rest);
                }
            CHECK(minimal_contingencies(edges, t) == want);
        }
    }
}

TEST_CASE("enumeration cap") {
    IntFam edges;
    for (int i = 0; i < 12; ++i) edges.insert({2 * i, 2 * i + 1});
    CHECK_THROWS_AS(minimal_hitting_sets(edges, 100), EnumerationCapError);
    CHECK(minimal_hitting_sets(edges, 5000).size() == 4096);
}

TEST_CASE("support sets and the endogenous restriction") {
    Instance mixed = load_instance("pqr_mixed.facts");
    UnionQuery q = load_query("pqr.dlq");
    CHECK(support_sets(mixed, q) == FactFamily{S({"P(a)", "Q(a,b)"}), S({"P(a)", "R(a,c)"})});
    CHECK(endogenous_support_sets(mixed, q) == FactFamily{S({"P(a)"})});
    CHECK_FALSE(holds_exogenously(mixed, q));

    Instance d = load_instance("prp.facts");
    UnionQuery p = load_query("prp.dlq");
    FactFamily want = {S({"P(a)", "R(a,a)"}), S({"P(a)", "P(c)", "R(a,c)"})};
    CHECK(support_sets(d, p) == want);
    CHECK(endogenous_support_sets(d, p) == want);
}

TEST_CASE("a purely exogenous witness empties the hypergraph") {
    Instance d = parse_instance("@endogenous\nS(a).\n@exogenous\nP(b).\n");
    UnionQuery q = parse_program("q :- S(X).\nq :- P(X).\n").queries[0];
    CHECK(holds_exogenously(d, q));
    CHECK(endogenous_support_sets(d, q).empty());
    CHECK(support_sets(d, q).size() == 2);
}

TEST_CASE("support sets are subset-minimal across disjuncts") {
    Instance d = parse_instance("P(a).\nR(a, a).\n");
    UnionQuery q = parse_program("q :- P(X).\nq :- P(X), R(X, Y).\n").queries[0];
    CHECK(support_sets(d, q) == FactFamily{S({"P(a)"})});
}
