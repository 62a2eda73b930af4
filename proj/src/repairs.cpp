#include "dbcause/repairs.hpp"

#include <algorithm>

#include "dbcause/errors.hpp"

namespace dbcause {

std::string to_string(Semantics s) {
    switch (s) {
        case Semantics::S: return "S";
        case Semantics::C: return "C";
        case Semantics::GO: return "GO";
        case Semantics::ENDO: return "ENDO";
        case Semantics::NUL: return "NULL";
    }
    return "?";
}

Repair make_repair(const Instance& d, FactSet removed, Semantics semantics) {
    FactSet stored;
    for (const auto& f : removed) stored.insert(*d.find(f));
    return Repair{d.without(stored), std::move(stored), semantics};
}

FactFamily violation_hypergraph(const Instance& d, const DenialConstraintSet& sigma) {
    if (sigma.empty()) return {};
    return support_sets(d, violation_view(sigma));
}

namespace {

std::vector<Repair> from_removed(const Instance& d, const FactFamily& removed, Semantics semantics) {
    std::vector<Repair> out;
    for (const auto& r : removed) out.push_back(make_repair(d, r, semantics));
    std::sort(out.begin(), out.end());
    return out;
}

FactFamily minimum_only(const FactFamily& sets) {
    if (sets.empty()) return {};
    std::size_t m = std::min_element(sets.begin(), sets.end(), [](const FactSet& a, const FactSet& b) {
                        return a.size() < b.size();
                    })->size();
    FactFamily out;
    for (const auto& s : sets)
        if (s.size() == m) out.insert(s);
    return out;
}

void require_no_exogenous(const Instance& d, const char* what) {
    if (!d.all_endogenous())
        throw SemanticError(std::string(what) + " requires an instance without exogenous facts");
}

}  // namespace

std::vector<Repair> repairs(const Instance& d, const DenialConstraintSet& sigma, Semantics semantics,
                            std::size_t cap) {
    if (semantics != Semantics::S && semantics != Semantics::C)
        throw SemanticError("repairs: semantics must be S or C");
    auto removed = minimal_hitting_sets(violation_hypergraph(d, sigma), cap);
    if (semantics == Semantics::C) removed = minimum_only(removed);
    return from_removed(d, removed, semantics);
}

bool is_repair(const Instance& d, const DenialConstraintSet& sigma, const Instance& candidate,
               Semantics semantics) {
    if (semantics != Semantics::S && semantics != Semantics::C)
        throw SemanticError("is_repair: semantics must be S or C");
    FactSet removed;
    for (const auto& f : candidate.facts())
        if (!d.contains(f)) throw SemanticError("candidate fact " + to_string(f) + " is not in the instance");
    for (const auto& f : d.facts())
        if (!candidate.contains(f)) removed.insert(f);
    if (!satisfies(candidate, sigma)) return false;
    for (const auto& r : removed)
        if (satisfies(candidate.with({r}), sigma)) return false;
    if (semantics == Semantics::S) return true;
    auto best = minimum_hitting_set(violation_hypergraph(d, sigma));
    return best && best->size() == removed.size();
}

DiffSets causes_via_repairs(const Instance& d, const UnionQuery& q, const Fact& t, std::size_t cap) {
    detail::require_boolean(q);
    const Fact& f = detail::require_endogenous(d, t);
    auto sigma = dc_of_query(q);
    auto removed = minimal_hitting_sets(violation_hypergraph(d, sigma), cap);
    auto qualifies = [&](const FactSet& r) {
        return r.count(f) && std::all_of(r.begin(), r.end(), [](const Fact& x) { return x.endogenous(); });
    };
    DiffSets out;
    for (const auto& r : removed)
        if (qualifies(r)) out.s.insert(r);
    for (const auto& r : minimum_only(removed))
        if (qualifies(r)) out.c.insert(r);
    return out;
}

std::vector<Repair> repairs_via_causes(const Instance& d, const DenialConstraintSet& sigma, Semantics semantics,
                                       std::size_t cap) {
    if (semantics != Semantics::S && semantics != Semantics::C)
        throw SemanticError("repairs_via_causes: semantics must be S or C");
    require_no_exogenous(d, "repairs_via_causes");
    if (satisfies(d, sigma)) return {make_repair(d, {}, semantics)};
    auto v = violation_view(sigma);
    FactFamily removed;
    if (semantics == Semantics::S) {
        for (const auto& t : actual_causes(d, v))
            for (auto g : contingency_sets(d, v, t, cap)) {
                g.insert(t);
                removed.insert(std::move(g));
            }
    } else {
        auto mrc = most_responsible_causes(d, v);
        std::size_t size = mrc.value.denominator() - 1;
        for (const auto& t : mrc.causes)
            for (auto g : contingency_sets(d, v, t, cap)) {
                if (g.size() != size) continue;
                g.insert(t);
                removed.insert(std::move(g));
            }
    }
    return from_removed(d, removed, semantics);
}

bool consistent_answer(const Instance& d, const DenialConstraintSet& sigma, const std::vector<Fact>& atoms,
                       Semantics semantics) {
    if (semantics != Semantics::S && semantics != Semantics::C)
        throw SemanticError("consistent_answer: semantics must be S or C");
    require_no_exogenous(d, "consistent_answer");
    auto schema = d.schema();
    for (const auto& a : atoms) {
        auto it = schema.find(a.predicate);
        if (it != schema.end() && it->second != a.arity())
            throw SemanticError("atom " + to_string(a) + " has the wrong arity");
    }
    if (!std::all_of(atoms.begin(), atoms.end(), [&](const Fact& a) { return d.contains(a); })) return false;
    if (sigma.empty() || satisfies(d, sigma)) return true;
    auto v = violation_view(sigma);
    FactSet bad = semantics == Semantics::S ? actual_causes(d, v) : most_responsible_causes(d, v).causes;
    return std::none_of(atoms.begin(), atoms.end(), [&](const Fact& a) { return bad.count(a) > 0; });
}

}  // namespace dbcause
