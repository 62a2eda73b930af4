#pragma once

// Helpers shared by the unit, property and acceptance binaries.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dbcause/causality.hpp"
#include "dbcause/diagnosis.hpp"
#include "dbcause/oracle.hpp"
#include "dbcause/preferences.hpp"
#include "dbcause/repairs.hpp"

namespace testsupport {

using namespace dbcause;

inline std::string data_path(const std::string& name) { return std::string(DBCAUSE_TEST_DATA) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Instance load_instance(const std::string& name) { return parse_instance(slurp(data_path(name))); }
inline Program load_program(const std::string& name) { return parse_program(slurp(data_path(name))); }
inline UnionQuery load_query(const std::string& name) { return load_program(name).queries.at(0); }
inline DenialConstraintSet load_constraints(const std::string& name) { return load_program(name).constraints; }

inline Fact F(const std::string& text) { return parse_fact(text); }

inline FactSet S(std::initializer_list<const char*> facts) {
    FactSet out;
    for (const char* f : facts) out.insert(parse_fact(f));
    return out;
}

inline FactFamily removed_sets(const std::vector<Repair>& reps) {
    FactFamily out;
    for (const auto& r : reps) out.insert(r.removed);
    return out;
}

inline FactFamily kept_sets(const std::vector<Repair>& reps) {
    FactFamily out;
    for (const auto& r : reps) out.insert(r.kept.fact_set());
    return out;
}

inline std::string show(const FactFamily& fam) {
    std::string out = "{";
    for (const auto& s : fam) out += (out.size() > 1 ? ", " : "") + to_string(s);
    return out + "}";
}

// ---------------------------------------------------------------------------
// Random cases: up to 8 facts over P/1, R/2, S/1 with constants {a,b,c}, a
// boolean UCQ of up to 2 disjuncts with up to 3 atoms each, random tags.

struct RandomCase {
    Instance d;
    UnionQuery q;
    std::string text;  // for failure messages
};

class CaseGenerator {
public:
    explicit CaseGenerator(std::uint32_t seed) : rng_(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
    std::mt19937& rng() { return rng_; }

    RandomCase next(bool all_endogenous = false, bool with_ids = false) {
        static const char* consts[] = {"a", "b", "c"};
        std::vector<Fact> facts;
        int n = pick(1, 8);
        std::uint64_t id = 1;
        for (int tries = 0; static_cast<int>(facts.size()) < n && tries < 50; ++tries) {
            int p = pick(0, 2);
            Fact f;
            if (p == 1)
                f = Fact("R", {Constant{consts[pick(0, 2)]}, Constant{consts[pick(0, 2)]}});
            else
                f = Fact(p == 0 ? "P" : "S", {Constant{consts[pick(0, 2)]}});
            bool dup = false;
            for (const auto& g : facts)
                if (g.predicate == f.predicate && g.args == f.args) dup = true;
            if (dup) continue;
            f.tag = all_endogenous || coin(0.7) ? Tag::endogenous : Tag::exogenous;
            if (with_ids) f.id = id++;
            facts.push_back(f);
        }
        RandomCase c;
        c.d = Instance(facts);
        std::string src;
        int disjuncts = pick(1, 2);
        for (int k = 0; k < disjuncts; ++k) src += "q :- " + body() + ".\n";
        c.q = parse_program(src).queries.at(0);
        c.text = serialize(c.d) + src;
        return c;
    }

private:
    std::string term(std::vector<std::string>& vars) {
        static const char* names[] = {"X", "Y", "Z"};
        static const char* consts[] = {"a", "b", "c"};
        if (coin(0.15)) return consts[pick(0, 2)];
        std::string v = names[pick(0, 2)];
        vars.push_back(v);
        return v;
    }

    std::string body() {
        std::vector<std::string> vars;
        std::string out;
        int atoms = pick(1, 3);
        for (int i = 0; i < atoms; ++i) {
            if (i) out += ", ";
            int p = pick(0, 2);
            if (p == 1)
                out += "R(" + term(vars) + ", " + term(vars) + ")";
            else
                out += std::string(p == 0 ? "P" : "S") + "(" + term(vars) + ")";
        }
        if (vars.size() >= 2 && coin(0.2)) {
            std::string a = vars[pick(0, static_cast<int>(vars.size()) - 1)];
            std::string b = vars[pick(0, static_cast<int>(vars.size()) - 1)];
            if (a != b) out += ", " + a + " != " + b;
        }
        return out;
    }

    std::mt19937 rng_;
};

// ---------------------------------------------------------------------------
// Engine/oracle comparison on one case. Returns mismatch descriptions.

struct Equivalence {
    std::vector<std::string> mismatches;
    void expect(bool ok, const std::string& what) {
        if (!ok) mismatches.push_back(what);
    }
};

inline FactFamily oracle_hypergraph_hits(const FactFamily& edges) { return oracle::hitting(edges).minimal; }

inline Equivalence compare_with_oracle(const RandomCase& c) {
    Equivalence eq;
    const Instance& d = c.d;
    const UnionQuery& q = c.q;

    // causes and responsibility
    auto oc = oracle::causes_and_responsibility(d, q);
    for (const auto& r : cause_reports(d, q, true)) {
        Responsibility want = oc.at(r.tuple);
        eq.expect(r.responsibility == want, "responsibility of " + to_string(r.tuple) + ": engine " +
                                                r.responsibility.to_string() + ", oracle " + want.to_string());
        eq.expect(r.is_cause == !want.is_zero(), "cause flag of " + to_string(r.tuple));
        FactFamily oset = want.is_zero() ? FactFamily{} : oracle::contingency_sets(d, q, r.tuple);
        eq.expect(r.minimal_contingencies == oset, "contingency sets of " + to_string(r.tuple) + ": engine " +
                                                      show(r.minimal_contingencies) + ", oracle " + show(oset));
        if (r.minimum_contingency)
            eq.expect(oset.count(*r.minimum_contingency) && r.minimum_contingency->size() + 1 == want.denominator(),
                      "minimum contingency of " + to_string(r.tuple));
    }
    auto mrc = most_responsible_causes(d, q);
    auto omrc = oracle::most_responsible_causes(d, q);
    eq.expect(mrc.causes == omrc.causes && mrc.value == omrc.value, "most responsible causes");

    // hitting sets over the endogenous hypergraph
    FactFamily edges = endogenous_support_sets(d, q);
    auto oh = oracle::hitting(edges);
    eq.expect(minimal_hitting_sets(edges) == oh.minimal, "minimal hitting sets");
    auto mh = minimum_hitting_set(edges);
    eq.expect(mh.has_value() == oh.minimum.has_value() && (!mh || mh->size() == *oh.minimum), "minimum hitting set");

    // repairs w.r.t. the query's constraint
    DenialConstraintSet sigma = dc_of_query(q);
    eq.expect(kept_sets(repairs(d, sigma, Semantics::S)) == oracle::repairs(d, sigma, Semantics::S), "S-repairs");
    eq.expect(kept_sets(repairs(d, sigma, Semantics::C)) == oracle::repairs(d, sigma, Semantics::C), "C-repairs");
    eq.expect(kept_sets(endogenous_repairs(d, sigma)) == oracle::repairs(d, sigma, Semantics::ENDO),
              "endogenous repairs");

    // diagnoses
    if (eval_boolean(d, q)) {
        DiagnosisProblem m = build_problem(d, q);
        for (auto kind : {DiagnosisKind::S, DiagnosisKind::C}) {
            std::string k = kind == DiagnosisKind::S ? "S" : "C";
            eq.expect(diagnoses(m, kind) == oracle::diagnoses(d, q, kind), k + "-diagnoses");
            for (const auto& t : d.endogenous())
                eq.expect(diagnoses(m, kind, t) == oracle::diagnoses(d, q, kind, t),
                          k + "-diagnoses containing " + to_string(t));
        }
    }
    return eq;
}

// rdp against the exact responsibility, for thresholds 0, 1, 1/2 .. 1/5.
inline Equivalence compare_rdp(const RandomCase& c) {
    Equivalence eq;
    bool holds = eval_boolean(c.d, c.q);
    for (const auto& t : c.d.endogenous()) {
        Responsibility r = responsibility(c.d, c.q, t);
        for (std::uint64_t k = 0; k <= 5; ++k) {
            Threshold v{k};
            bool want = holds && r > v.value();
            eq.expect(rdp_decide(c.d, c.q, t, v) == want,
                      "rdp " + to_string(t) + " > " + v.value().to_string() + " (responsibility " + r.to_string() + ")");
        }
    }
    return eq;
}

}  // namespace testsupport
