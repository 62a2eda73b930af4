#pragma once

// Brute-force reference implementations. These re-derive every quantity
// from its definition by scanning subsets; they share only the fact model
// and query evaluation with the engines.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dbcause/causality.hpp"
#include "dbcause/diagnosis.hpp"
#include "dbcause/errors.hpp"
#include "dbcause/preferences.hpp"
#include "dbcause/repairs.hpp"

namespace dbcause::oracle {

struct Bounds {
    std::size_t max_facts = 14;
};

std::map<Fact, Responsibility> causes_and_responsibility(const Instance& d, const UnionQuery& q,
                                                         Bounds b = {});
FactFamily contingency_sets(const Instance& d, const UnionQuery& q, const Fact& t, Bounds b = {});
MostResponsible most_responsible_causes(const Instance& d, const UnionQuery& q, Bounds b = {});
bool rdp_decide(const Instance& d, const UnionQuery& q, const Fact& t, Threshold v, Bounds b = {});
bool check_minimal_contingency(const Instance& d, const UnionQuery& q, const Fact& t, const FactSet& gamma,
                               Bounds b = {});

/// Kept sub-instances (as fact sets) for S, C or ENDO.
FactFamily repairs(const Instance& d, const DenialConstraintSet& sigma, Semantics s, Bounds b = {});
/// Global-optimal repairs, checking improvements against every consistent subset.
FactFamily global_optimal_repairs(const Instance& d, const DenialConstraintSet& sigma, const PriorityRelation& p,
                                  Bounds b = {});
/// Diff sets of the minimal null updates, scanning every set of non-null positions.
Family<AttrChange> null_repair_diffs(const Instance& d, const DenialConstraintSet& sigma, Bounds b = {});
NullCauses null_causes(const Instance& d, const UnionQuery& q, bool count_ids_once = false, Bounds b = {});

bool consistent_answer(const Instance& d, const DenialConstraintSet& sigma, const std::vector<Fact>& atoms,
                       Semantics s, Bounds b = {});

/// Minimal Δ ⊆ Dⁿ with D ∖ Δ ⊭ q; C keeps the smallest (among those containing t, if given).
FactFamily diagnoses(const Instance& d, const UnionQuery& q, DiagnosisKind kind,
                     const std::optional<Fact>& containing = {}, Bounds b = {});

std::vector<PreferredCause> preferred_causes(const Instance& d, const UnionQuery& q, const PriorityRelation& pc,
                                             Bounds b = {});

template <class T>
struct HittingReport {
    Family<T> minimal;
    std::optional<std::size_t> minimum;              // nullopt when some edge is empty
    std::map<T, std::size_t> minimum_with_essential;  // |H| for the smallest minimal H ∋ t
};

/// Exhaustive transversal scan over the universe.
template <class T>
HittingReport<T> hitting(const Family<T>& edges, Bounds b = {}) {
    std::vector<T> universe;
    for (const auto& e : edges)
        for (const auto& v : e)
            if (std::find(universe.begin(), universe.end(), v) == universe.end()) universe.push_back(v);
    std::sort(universe.begin(), universe.end());
    if (universe.size() > b.max_facts)
        throw EnumerationCapError("oracle bound exceeded: universe of " + std::to_string(universe.size()));
    const std::size_t n = universe.size();
    std::vector<std::uint32_t> edge_masks;
    for (const auto& e : edges) {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (e.count(universe[i])) m |= 1u << i;
        edge_masks.push_back(m);
    }
    auto hits = [&](std::uint32_t h) {
        for (auto m : edge_masks)
            if (!(m & h)) return false;
        return true;
    };
    HittingReport<T> out;
    for (std::uint32_t h = 0; h < (1u << n); ++h) {
        if (!hits(h)) continue;
        bool minimal = true;
        for (std::size_t i = 0; i < n && minimal; ++i)
            if ((h >> i & 1u) && hits(h & ~(1u << i))) minimal = false;
        std::size_t size = static_cast<std::size_t>(std::popcount(h));
        if (!out.minimum || size < *out.minimum) out.minimum = size;
        if (!minimal) continue;
        std::set<T> s;
        for (std::size_t i = 0; i < n; ++i)
            if (h >> i & 1u) s.insert(universe[i]);
        for (const auto& v : s) {
            auto [it, fresh] = out.minimum_with_essential.emplace(v, size);
            if (!fresh && size < it->second) it->second = size;
        }
        out.minimal.insert(std::move(s));
    }
    return out;
}

}  // namespace dbcause::oracle
