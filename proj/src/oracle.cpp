#include "dbcause/oracle.hpp"

#include <bit>

namespace dbcause::oracle {

namespace {

using Mask = std::uint32_t;

bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }
std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

void require_boolean(const UnionQuery& q) {
    if (!q.is_boolean()) throw SemanticError("query '" + q.name + "' has free variables");
}

void check_bound(std::size_t n, Bounds b) {
    if (n > b.max_facts || n > 30)
        throw EnumerationCapError("oracle bound exceeded: " + std::to_string(n) + " facts, bound " +
                                  std::to_string(b.max_facts));
}

// Endogenous facts indexed by bit; truth of q after removing each subset.
struct RemovalTable {
    std::vector<Fact> endo;
    std::vector<char> holds;  // holds[mask]: D ∖ mask ⊨ q

    RemovalTable(const Instance& d, const UnionQuery& q, Bounds b) {
        require_boolean(q);
        endo = d.endogenous();
        check_bound(endo.size(), b);
        holds.resize(std::size_t{1} << endo.size());
        for (Mask m = 0; m < holds.size(); ++m) holds[m] = eval_boolean(d.without(set(m)), q);
    }

    FactSet set(Mask m) const {
        FactSet s;
        for (std::size_t i = 0; i < endo.size(); ++i)
            if (m >> i & 1u) s.insert(endo[i]);
        return s;
    }

    int index(const Fact& t) const {
        for (std::size_t i = 0; i < endo.size(); ++i)
            if (endo[i] == t) return static_cast<int>(i);
        return -1;
    }

    Mask mask(const FactSet& s) const {
        Mask m = 0;
        for (const auto& f : s) {
            int i = index(f);
            if (i < 0) throw SemanticError("fact " + to_string(f) + " is not endogenous in the instance");
            m |= 1u << i;
        }
        return m;
    }

    Mask all() const { return static_cast<Mask>(holds.size() - 1); }

    // Γ is a contingency set for bit t.
    bool contingency(Mask g, int t) const {
        Mask tb = 1u << t;
        return !(g & tb) && holds[g] && !holds[g | tb];
    }

    std::vector<Mask> minimal_contingencies(int t) const {
        std::vector<Mask> out;
        for (Mask g = 0; g <= all(); ++g) {
            if (!contingency(g, t)) continue;
            bool minimal = true;
            for (Mask s = g; s && minimal; s = (s - 1) & g)
                if (contingency(g & ~s, t)) minimal = false;
            if (minimal) out.push_back(g);
        }
        return out;
    }

    std::optional<std::size_t> smallest_contingency(int t) const {
        std::optional<std::size_t> best;
        for (Mask g = 0; g <= all(); ++g)
            if (contingency(g, t) && (!best || popcount(g) < *best)) best = popcount(g);
        return best;
    }
};

// Consistency of every kept subset of the whole instance.
struct KeepTable {
    std::vector<Fact> facts;
    std::vector<char> consistent;

    KeepTable(const Instance& d, const DenialConstraintSet& sigma, Bounds b) : facts(d.facts()) {
        check_bound(facts.size(), b);
        consistent.resize(std::size_t{1} << facts.size());
        for (Mask m = 0; m < consistent.size(); ++m) consistent[m] = satisfies(Instance(vec(m)), sigma);
    }

    std::vector<Fact> vec(Mask m) const {
        std::vector<Fact> v;
        for (std::size_t i = 0; i < facts.size(); ++i)
            if (m >> i & 1u) v.push_back(facts[i]);
        return v;
    }
    FactSet set(Mask m) const {
        auto v = vec(m);
        return FactSet(v.begin(), v.end());
    }
    Mask all() const { return static_cast<Mask>(consistent.size() - 1); }
    Mask exogenous() const {
        Mask m = 0;
        for (std::size_t i = 0; i < facts.size(); ++i)
            if (!facts[i].endogenous()) m |= 1u << i;
        return m;
    }

    // Maximal consistent supersets-of-`must` among subsets of the instance.
    std::vector<Mask> maximal(Mask must) const {
        std::vector<Mask> out;
        for (Mask m = 0; m <= all(); ++m) {
            if (!consistent[m] || !subset_of(must, m)) continue;
            bool maximal = true;
            for (std::size_t i = 0; i < facts.size() && maximal; ++i)
                if (!(m >> i & 1u) && consistent[m | (1u << i)]) maximal = false;
            if (maximal) out.push_back(m);
        }
        return out;
    }
};

}  // namespace

std::map<Fact, Responsibility> causes_and_responsibility(const Instance& d, const UnionQuery& q, Bounds b) {
    RemovalTable tab(d, q, b);
    std::map<Fact, Responsibility> out;
    for (std::size_t i = 0; i < tab.endo.size(); ++i) {
        auto g = tab.smallest_contingency(static_cast<int>(i));
        out[tab.endo[i]] = g ? Responsibility::inverse(*g + 1) : Responsibility::zero();
    }
    return out;
}

FactFamily contingency_sets(const Instance& d, const UnionQuery& q, const Fact& t, Bounds b) {
    RemovalTable tab(d, q, b);
    int i = tab.index(t);
    if (i < 0) throw SemanticError("fact " + to_string(t) + " is not endogenous in the instance");
    FactFamily out;
    for (Mask g : tab.minimal_contingencies(i)) out.insert(tab.set(g));
    return out;
}

MostResponsible most_responsible_causes(const Instance& d, const UnionQuery& q, Bounds b) {
    MostResponsible out;
    for (const auto& [t, r] : causes_and_responsibility(d, q, b)) {
        if (r.is_zero()) continue;
        if (r > out.value) {
            out.value = r;
            out.causes.clear();
        }
        if (r == out.value) out.causes.insert(t);
    }
    return out;
}

bool rdp_decide(const Instance& d, const UnionQuery& q, const Fact& t, Threshold v, Bounds b) {
    if (!eval_boolean(d, q)) return false;
    auto all = causes_and_responsibility(d, q, b);
    auto it = all.find(t);
    if (it == all.end()) throw SemanticError("fact " + to_string(t) + " is not endogenous in the instance");
    return it->second > v.value();
}

bool check_minimal_contingency(const Instance& d, const UnionQuery& q, const Fact& t, const FactSet& gamma,
                               Bounds b) {
    RemovalTable tab(d, q, b);
    int i = tab.index(t);
    if (i < 0) throw SemanticError("fact " + to_string(t) + " is not endogenous in the instance");
    Mask g = tab.mask(gamma);
    if (!tab.contingency(g, i)) return false;
    for (Mask s = g; s; s = (s - 1) & g)
        if (tab.contingency(g & ~s, i)) return false;
    return true;
}

FactFamily repairs(const Instance& d, const DenialConstraintSet& sigma, Semantics s, Bounds b) {
    KeepTable tab(d, sigma, b);
    std::vector<Mask> picked;
    switch (s) {
        case Semantics::S: picked = tab.maximal(0); break;
        case Semantics::ENDO: picked = tab.maximal(tab.exogenous()); break;
        case Semantics::C: {
            std::size_t best = 0;
            for (Mask m = 0; m <= tab.all(); ++m)
                if (tab.consistent[m]) best = std::max(best, popcount(m));
            for (Mask m = 0; m <= tab.all(); ++m)
                if (tab.consistent[m] && popcount(m) == best) picked.push_back(m);
            break;
        }
        default: throw SemanticError("oracle repairs: semantics must be S, C or ENDO");
    }
    FactFamily out;
    for (Mask m : picked) out.insert(tab.set(m));
    return out;
}

FactFamily global_optimal_repairs(const Instance& d, const DenialConstraintSet& sigma, const PriorityRelation& p,
                                  Bounds b) {
    KeepTable tab(d, sigma, b);
    const std::size_t n = tab.facts.size();
    std::vector<std::vector<char>> beats(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) beats[i][j] = p.pairs.count({tab.facts[i], tab.facts[j]}) > 0;
    auto improves = [&](Mask a, Mask c) {
        if (a == c) return false;
        for (std::size_t j = 0; j < n; ++j) {
            if (!((c & ~a) >> j & 1u)) continue;
            bool beaten = false;
            for (std::size_t i = 0; i < n && !beaten; ++i)
                if (((a & ~c) >> i & 1u) && beats[i][j]) beaten = true;
            if (!beaten) return false;
        }
        return true;
    };
    FactFamily out;
    for (Mask r : tab.maximal(0)) {
        bool beaten = false;
        for (Mask m = 0; m <= tab.all() && !beaten; ++m)
            if (tab.consistent[m] && improves(m, r)) beaten = true;
        if (!beaten) out.insert(tab.set(r));
    }
    return out;
}

Family<AttrChange> null_repair_diffs(const Instance& d, const DenialConstraintSet& sigma, Bounds b) {
    std::vector<AttrChange> positions;
    for (const auto& f : d.facts()) {
        if (!f.id) throw SemanticError("null-based mode needs an id on every fact");
        for (std::size_t j = 0; j < f.args.size(); ++j)
            if (!f.args[j].is_null) positions.push_back(AttrChange{f.predicate, *f.id, j + 1});
    }
    check_bound(positions.size(), b);
    const std::size_t n = positions.size();
    std::vector<char> ok(std::size_t{1} << n, 0);
    for (Mask m = 0; m < ok.size(); ++m) {
        std::vector<Fact> facts = d.facts();
        for (auto& f : facts)
            for (std::size_t i = 0; i < n; ++i)
                if ((m >> i & 1u) && positions[i].id == *f.id && positions[i].predicate == f.predicate) f.args[positions[i].position - 1] = Constant::null();
        ok[m] = satisfies(Instance(std::move(facts)), sigma);
    }
    Family<AttrChange> out;
    for (Mask m = 0; m < ok.size(); ++m) {
        if (!ok[m]) continue;
        bool minimal = true;
        for (Mask s = m; s && minimal; s = (s - 1) & m)
            if (ok[m & ~s]) minimal = false;
        if (!minimal) continue;
        std::set<AttrChange> diff;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1u) diff.insert(positions[i]);
        out.insert(std::move(diff));
    }
    return out;
}

NullCauses null_causes(const Instance& d, const UnionQuery& q, bool count_ids_once, Bounds b) {
    require_boolean(q);
    std::map<std::uint64_t, Fact> by_id;
    for (const auto& f : d.facts())
        if (f.id) by_id.emplace(*f.id, f);
    NullCauses out;
    auto keep_max = [](auto& m, const auto& key, std::size_t size) {
        auto r = Responsibility::inverse(size);
        auto [it, fresh] = m.emplace(key, r);
        if (!fresh && r > it->second) it->second = r;
    };
    for (const auto& diff : null_repair_diffs(d, dc_of_query(q), b)) {
        if (diff.empty()) continue;
        std::set<std::uint64_t> ids;
        for (const auto& a : diff) {
            ids.insert(a.id);
            keep_max(out.attribute, a, diff.size());
        }
        for (auto id : ids) keep_max(out.tuple, by_id.at(id), count_ids_once ? ids.size() : diff.size());
    }
    return out;
}

bool consistent_answer(const Instance& d, const DenialConstraintSet& sigma, const std::vector<Fact>& atoms,
                       Semantics s, Bounds b) {
    for (const auto& kept : repairs(d, sigma, s, b))
        for (const auto& a : atoms)
            if (!kept.count(a)) return false;
    return true;
}

FactFamily diagnoses(const Instance& d, const UnionQuery& q, DiagnosisKind kind, const std::optional<Fact>& containing,
                     Bounds b) {
    RemovalTable tab(d, q, b);
    Mask must = 0;
    if (containing) {
        int i = tab.index(*containing);
        if (i < 0) throw SemanticError("fact " + to_string(*containing) + " is not endogenous in the instance");
        must = 1u << i;
    }
    std::vector<Mask> minimal;
    for (Mask m = 0; m <= tab.all(); ++m) {
        if (tab.holds[m]) continue;
        bool is_min = true;
        for (std::size_t i = 0; i < tab.endo.size() && is_min; ++i)
            if ((m >> i & 1u) && !tab.holds[m & ~(1u << i)]) is_min = false;
        if (is_min && subset_of(must, m)) minimal.push_back(m);
    }
    if (kind == DiagnosisKind::C && !minimal.empty()) {
        std::size_t best = popcount(minimal.front());
        for (Mask m : minimal) best = std::min(best, popcount(m));
        std::erase_if(minimal, [&](Mask m) { return popcount(m) != best; });
    }
    FactFamily out;
    for (Mask m : minimal) out.insert(tab.set(m));
    return out;
}

std::vector<PreferredCause> preferred_causes(const Instance& d, const UnionQuery& q, const PriorityRelation& pc,
                                             Bounds b) {
    require_boolean(q);
    std::map<Fact, PreferredCause> by_tuple;
    FactSet all = d.fact_set();
    for (const auto& kept : global_optimal_repairs(d, dc_of_query(q), inverse(pc), b)) {
        FactSet lambda;
        for (const auto& f : all)
            if (!kept.count(f)) lambda.insert(f);
        if (!std::all_of(lambda.begin(), lambda.end(), [&](const Fact& f) { return d.find(f)->endogenous(); }))
            continue;
        for (const auto& t : lambda) {
            auto [it, fresh] = by_tuple.emplace(t, PreferredCause{*d.find(t), Responsibility::inverse(lambda.size()), {}});
            if (!fresh && Responsibility::inverse(lambda.size()) > it->second.responsibility)
                it->second.responsibility = Responsibility::inverse(lambda.size());
            FactSet g = lambda;
            g.erase(t);
            it->second.contingencies.insert(std::move(g));
        }
    }
    std::vector<PreferredCause> out;
    for (auto& [_, c] : by_tuple) out.push_back(std::move(c));
    return out;
}

}  // namespace dbcause::oracle
