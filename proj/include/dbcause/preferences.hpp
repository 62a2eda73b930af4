#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dbcause/repairs.hpp"

namespace dbcause {

/// Pairs (t, t′) read as t ≻ t′.
struct PriorityRelation {
    std::set<std::pair<Fact, Fact>> pairs;
    bool empty() const noexcept { return pairs.empty(); }
};

/// Lines `Fact1 > Fact2.`; facts must occur in d (ParseError for syntax,
/// SemanticError for unknown facts).
PriorityRelation parse_priority(std::string_view source, const Instance& d);

/// t ≻ t′ becomes t′ ≻ t.
PriorityRelation inverse(const PriorityRelation& p);

/// Throws SemanticError on a cycle or a pair that never co-occurs in a
/// minimal violation of sigma.
void validate_priority(const Instance& d, const DenialConstraintSet& sigma, const PriorityRelation& p);
/// Throws SemanticError on a cycle or a pair that is not jointly contributing to q.
void validate_causal_priority(const Instance& d, const UnionQuery& q, const PriorityRelation& pc);

/// a improves b: a ≠ b and every fact b keeps but a drops is beaten by a
/// fact a keeps but b drops.
bool improves(const Repair& a, const Repair& b, const PriorityRelation& p);

std::vector<Repair> global_optimal_repairs(const Instance& d, const DenialConstraintSet& sigma,
                                           const PriorityRelation& p, std::size_t cap = kDefaultEnumerationCap);

struct PreferredCause {
    Fact tuple;
    Responsibility responsibility;
    FactFamily contingencies;  // Λ ∖ {t} over qualifying GO differences
};

std::vector<PreferredCause> preferred_causes(const Instance& d, const UnionQuery& q, const PriorityRelation& pc,
                                             std::size_t cap = kDefaultEnumerationCap);

bool check_preference_contingency(const Instance& d, const UnionQuery& q, const PriorityRelation& pc,
                                  const Fact& t, const FactSet& gamma, std::size_t cap = kDefaultEnumerationCap);

/// Repairs deleting endogenous facts only; empty when no such repair exists.
std::vector<Repair> endogenous_repairs(const Instance& d, const DenialConstraintSet& sigma,
                                       std::size_t cap = kDefaultEnumerationCap);

/// Guard construction: a fresh endogenous fact is added to the instance and
/// to every constraint body, with exogenous facts preferred over conflicting
/// endogenous ones and over the guard.
struct EndogenousEncoding {
    Instance instance;
    DenialConstraintSet sigma;
    PriorityRelation priority;
    Fact guard;
};
EndogenousEncoding encode_endogenous(const Instance& d, const DenialConstraintSet& sigma);
/// Maps GO repairs of the encoding back: the repair that dropped the guard
/// is discarded and the guard is stripped from the rest.
std::vector<Repair> decode_endogenous(const Instance& d, const EndogenousEncoding& enc,
                                      const std::vector<Repair>& go_repairs);

// ---------------------------------------------------------------------------
// Null-based repairs

/// R[i;j]: attribute j (1-based) of the tuple with id i.
struct AttrChange {
    std::string predicate;
    std::uint64_t id = 0;
    std::size_t position = 0;

    friend bool operator==(const AttrChange&, const AttrChange&) = default;
    friend auto operator<=>(const AttrChange&, const AttrChange&) = default;
};

std::string to_string(const AttrChange& a);

struct NullRepair {
    Instance result;
    std::set<AttrChange> diff;
    friend bool operator<(const NullRepair& a, const NullRepair& b) { return a.diff < b.diff; }
};

/// Every fact needs an id. Nulled facts stay in the instance.
std::vector<NullRepair> null_repairs(const Instance& d, const DenialConstraintSet& sigma,
                                     std::size_t cap = kDefaultEnumerationCap);

struct NullCauses {
    std::map<AttrChange, Responsibility> attribute;
    std::map<Fact, Responsibility> tuple;
};

/// With `count_ids_once`, a diff's size for tuple responsibility counts
/// distinct ids rather than changed positions.
NullCauses null_causes(const Instance& d, const UnionQuery& q, bool count_ids_once = false,
                       std::size_t cap = kDefaultEnumerationCap);

}  // namespace dbcause
