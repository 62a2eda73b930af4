#include "dbcause/preferences.hpp"

#include <algorithm>
#include <functional>

#include "dbcause/errors.hpp"
#include "lexer.hpp"

namespace dbcause {

PriorityRelation parse_priority(std::string_view source, const Instance& d) {
    detail::TokenStream ts(detail::tokenize(source));
    PriorityRelation p;
    auto resolve = [&](const detail::Token& at, const Fact& f) -> const Fact& {
        const Fact* stored = d.find(f);
        if (!stored)
            throw SemanticError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": fact " +
                                to_string(f) + " does not occur in the instance");
        return *stored;
    };
    while (!ts.at(detail::TokenKind::end)) {
        const detail::Token left_at = ts.peek();
        Fact left = detail::parse_fact_tokens(ts, Tag::endogenous, false);
        ts.expect(detail::TokenKind::greater, "between the two facts of a priority");
        const detail::Token right_at = ts.peek();
        Fact right = detail::parse_fact_tokens(ts, Tag::endogenous, false);
        ts.expect(detail::TokenKind::period, "after priority");
        p.pairs.emplace(resolve(left_at, left), resolve(right_at, right));
    }
    return p;
}

PriorityRelation inverse(const PriorityRelation& p) {
    PriorityRelation out;
    for (const auto& [a, b] : p.pairs) out.pairs.emplace(b, a);
    return out;
}

namespace {

void require_acyclic(const PriorityRelation& p) {
    std::map<Fact, std::vector<const Fact*>> next;
    for (const auto& [a, b] : p.pairs) {
        if (a == b) throw SemanticError("priority relates " + to_string(a) + " to itself");
        next[a].push_back(&b);
    }
    std::map<Fact, int> color;  // 0 new, 1 on stack, 2 done
    std::function<void(const Fact&)> visit = [&](const Fact& f) {
        color[f] = 1;
        for (const Fact* g : next[f]) {
            int c = color[*g];
            if (c == 1) throw SemanticError("priority relation has a cycle through " + to_string(*g));
            if (c == 0) visit(*g);
        }
        color[f] = 2;
    };
    for (const auto& [a, _] : next)
        if (color[a] == 0) visit(a);
}

void require_co_occurring(const FactFamily& edges, const PriorityRelation& p, const char* relation) {
    for (const auto& [a, b] : p.pairs) {
        bool together = std::any_of(edges.begin(), edges.end(),
                                    [&](const FactSet& e) { return e.count(a) && e.count(b); });
        if (!together)
            throw SemanticError(to_string(a) + " and " + to_string(b) + " are not " + relation);
    }
}

}  // namespace

void validate_priority(const Instance& d, const DenialConstraintSet& sigma, const PriorityRelation& p) {
    for (const auto& [a, b] : p.pairs)
        for (const Fact* f : {&a, &b})
            if (!d.contains(*f)) throw SemanticError("priority mentions unknown fact " + to_string(*f));
    require_acyclic(p);
    require_co_occurring(violation_hypergraph(d, sigma), p, "mutually conflicting");
}

void validate_causal_priority(const Instance& d, const UnionQuery& q, const PriorityRelation& pc) {
    detail::require_boolean(q);
    for (const auto& [a, b] : pc.pairs)
        for (const Fact* f : {&a, &b})
            if (!d.contains(*f)) throw SemanticError("priority mentions unknown fact " + to_string(*f));
    require_acyclic(pc);
    require_co_occurring(support_sets(d, q), pc, "jointly contributing");
}

bool improves(const Repair& a, const Repair& b, const PriorityRelation& p) {
    if (a.removed == b.removed) return false;
    // kept by b, dropped by a
    for (const auto& lost : a.removed) {
        if (b.removed.count(lost)) continue;
        bool beaten = false;
        for (const auto& won : b.removed)
            if (!a.removed.count(won) && p.pairs.count({won, lost})) {
                beaten = true;
                break;
            }
        if (!beaten) return false;
    }
    return true;
}

std::vector<Repair> global_optimal_repairs(const Instance& d, const DenialConstraintSet& sigma,
                                           const PriorityRelation& p, std::size_t cap) {
    validate_priority(d, sigma, p);
    auto all = repairs(d, sigma, Semantics::S, cap);
    // A consistent improvement extends to an S-repair that still improves,
    // so comparing S-repairs pairwise is enough.
    std::vector<Repair> out;
    for (const auto& b : all) {
        bool beaten = std::any_of(all.begin(), all.end(), [&](const Repair& a) { return improves(a, b, p); });
        if (!beaten) out.push_back(Repair{b.kept, b.removed, Semantics::GO});
    }
    return out;
}

namespace {

struct GoDiffs {
    std::map<Fact, FactFamily> by_tuple;  // Λ over GO repairs with t ∈ Λ ⊆ Dⁿ
};

GoDiffs go_diffs(const Instance& d, const UnionQuery& q, const PriorityRelation& pc, std::size_t cap) {
    validate_causal_priority(d, q, pc);
    GoDiffs out;
    for (const auto& r : global_optimal_repairs(d, dc_of_query(q), inverse(pc), cap)) {
        if (!std::all_of(r.removed.begin(), r.removed.end(), [](const Fact& f) { return f.endogenous(); }))
            continue;
        for (const auto& t : r.removed) out.by_tuple[t].insert(r.removed);
    }
    return out;
}

}  // namespace

std::vector<PreferredCause> preferred_causes(const Instance& d, const UnionQuery& q, const PriorityRelation& pc,
                                             std::size_t cap) {
    std::vector<PreferredCause> out;
    for (const auto& [t, lambdas] : go_diffs(d, q, pc, cap).by_tuple) {
        PreferredCause c{t, {}, {}};
        std::size_t best = 0;
        for (const auto& l : lambdas) {
            if (best == 0 || l.size() < best) best = l.size();
            FactSet g = l;
            g.erase(t);
            c.contingencies.insert(std::move(g));
        }
        c.responsibility = Responsibility::inverse(best);
        out.push_back(std::move(c));
    }
    return out;
}

bool check_preference_contingency(const Instance& d, const UnionQuery& q, const PriorityRelation& pc,
                                  const Fact& t, const FactSet& gamma, std::size_t cap) {
    if (!d.contains(t)) throw SemanticError("fact " + to_string(t) + " is not in the instance");
    for (const auto& g : gamma)
        if (!d.contains(g)) throw SemanticError("fact " + to_string(g) + " is not in the instance");
    if (gamma.count(t)) return false;
    auto diffs = go_diffs(d, q, pc, cap);
    auto it = diffs.by_tuple.find(t);
    if (it == diffs.by_tuple.end()) return false;
    FactSet lambda = gamma;
    lambda.insert(t);
    return it->second.count(lambda) > 0;
}

// ---------------------------------------------------------------------------
// Endogenous repairs

std::vector<Repair> endogenous_repairs(const Instance& d, const DenialConstraintSet& sigma, std::size_t cap) {
    FactFamily restricted;
    for (const auto& e : violation_hypergraph(d, sigma)) {
        FactSet endo;
        for (const auto& f : e)
            if (f.endogenous()) endo.insert(f);
        if (endo.empty()) return {};
        restricted.insert(std::move(endo));
    }
    std::vector<Repair> out;
    for (const auto& h : minimal_hitting_sets(restricted, cap)) out.push_back(make_repair(d, h, Semantics::ENDO));
    std::sort(out.begin(), out.end());
    return out;
}

EndogenousEncoding encode_endogenous(const Instance& d, const DenialConstraintSet& sigma) {
    std::set<std::string> taken;
    for (const auto& [p, _] : d.schema()) taken.insert(p);
    for (const auto& c : sigma.constraints)
        for (const auto& a : c.body.atoms) taken.insert(a.predicate);
    std::string name = "Guard";
    for (int i = 1; taken.count(name); ++i) name = "Guard" + std::to_string(i);

    EndogenousEncoding enc;
    enc.guard = Fact(name, {Constant{"d", false}}, Tag::endogenous);
    enc.instance = d.with({enc.guard});
    for (const auto& c : sigma.constraints) {
        DenialConstraint k = c;
        k.body.atoms.push_back(Atom{name, {Term::constant(Constant{"d", false})}});
        enc.sigma.constraints.push_back(std::move(k));
    }
    for (const auto& e : violation_hypergraph(enc.instance, enc.sigma))
        for (const auto& hi : e)
            if (!hi.endogenous())
                for (const auto& lo : e)
                    if (lo.endogenous()) enc.priority.pairs.emplace(hi, lo);
    return enc;
}

std::vector<Repair> decode_endogenous(const Instance& d, const EndogenousEncoding& enc,
                                      const std::vector<Repair>& go_repairs) {
    std::vector<Repair> out;
    for (const auto& r : go_repairs) {
        if (r.removed.count(enc.guard)) continue;
        out.push_back(make_repair(d, r.removed, Semantics::ENDO));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Null-based repairs

std::string to_string(const AttrChange& a) {
    return a.predicate + "[" + std::to_string(a.id) + ";" + std::to_string(a.position) + "]";
}

namespace {

std::map<std::uint64_t, const Fact*> require_ids(const Instance& d) {
    std::map<std::uint64_t, const Fact*> by_id;
    for (const auto& f : d.facts()) {
        if (!f.id) throw SemanticError("null-based mode needs an id on every fact; " + to_string(f) + " has none");
        if (!by_id.emplace(*f.id, &f).second) throw SemanticError("duplicate tuple id " + std::to_string(*f.id));
    }
    return by_id;
}

}  // namespace

std::vector<NullRepair> null_repairs(const Instance& d, const DenialConstraintSet& sigma, std::size_t cap) {
    auto by_id = require_ids(d);
    Family<AttrChange> edges;
    bool unfixable = false;
    for (const auto& k : sigma.constraints) {
        const auto& body = k.body;
        // A position stops the match once nulled iff it holds a constant or a
        // variable that gets compared somewhere.
        std::vector<std::vector<char>> critical;
        for (const auto& a : body.atoms) {
            std::vector<char> row;
            for (const auto& t : a.terms) row.push_back(!t.is_variable() || occurrences(body, t.var) > 1);
            critical.push_back(std::move(row));
        }
        for_each_match(d, body, [&](const Match& m) {
            std::set<AttrChange> e;
            for (std::size_t i = 0; i < m.image.size(); ++i)
                for (std::size_t j = 0; j < critical[i].size(); ++j)
                    if (critical[i][j]) e.insert(AttrChange{m.image[i]->predicate, *m.image[i]->id, j + 1});
            if (e.empty()) unfixable = true;
            edges.insert(std::move(e));
            return !unfixable;
        });
        if (unfixable) return {};
    }
    std::vector<NullRepair> out;
    for (const auto& h : minimal_hitting_sets(edges, cap)) {
        std::map<std::uint64_t, std::vector<std::size_t>> nulled;
        for (const auto& a : h) nulled[a.id].push_back(a.position);
        std::vector<Fact> facts;
        for (const auto& f : d.facts()) {
            Fact g = f;
            auto it = nulled.find(*f.id);
            if (it != nulled.end())
                for (auto pos : it->second) g.args[pos - 1] = Constant::null();
            facts.push_back(std::move(g));
        }
        out.push_back(NullRepair{Instance(std::move(facts)), h});
    }
    std::sort(out.begin(), out.end());
    return out;
}

NullCauses null_causes(const Instance& d, const UnionQuery& q, bool count_ids_once, std::size_t cap) {
    detail::require_boolean(q);
    auto by_id = require_ids(d);
    NullCauses out;
    auto lower = [](auto& m, const auto& key, std::size_t size) {
        auto r = Responsibility::inverse(size);
        auto [it, fresh] = m.emplace(key, r);
        if (!fresh && r > it->second) it->second = r;
    };
    for (const auto& rep : null_repairs(d, dc_of_query(q), cap)) {
        if (rep.diff.empty()) continue;
        std::set<std::uint64_t> ids;
        for (const auto& a : rep.diff) ids.insert(a.id);
        for (const auto& a : rep.diff) lower(out.attribute, a, rep.diff.size());
        std::size_t tuple_size = count_ids_once ? ids.size() : rep.diff.size();
        for (auto id : ids) lower(out.tuple, *by_id.at(id), tuple_size);
    }
    return out;
}

}  // namespace dbcause
