#pragma once

#include <string>
#include <vector>

#include "dbcause/causality.hpp"

namespace dbcause {

enum class Semantics { S, C, GO, ENDO, NUL };

std::string to_string(Semantics s);

struct Repair {
    Instance kept;
    FactSet removed;
    Semantics semantics = Semantics::S;

    friend bool operator==(const Repair& a, const Repair& b) { return a.removed == b.removed; }
    friend bool operator<(const Repair& a, const Repair& b) { return a.removed < b.removed; }
};

/// Support sets of the violation view: each edge is a minimal violating set.
/// Empty for an empty constraint set.
FactFamily violation_hypergraph(const Instance& d, const DenialConstraintSet& sigma);

/// All S- or C-repairs in canonical order (by removed set).
std::vector<Repair> repairs(const Instance& d, const DenialConstraintSet& sigma, Semantics semantics,
                            std::size_t cap = kDefaultEnumerationCap);

bool is_repair(const Instance& d, const DenialConstraintSet& sigma, const Instance& candidate,
               Semantics semantics);

struct DiffSets {
    FactFamily s;  // D ∖ D′ over S-repairs D′ of κ(q) with t ∈ D ∖ D′ ⊆ Dⁿ
    FactFamily c;  // same over C-repairs
};
DiffSets causes_via_repairs(const Instance& d, const UnionQuery& q, const Fact& t,
                            std::size_t cap = kDefaultEnumerationCap);

/// Repairs assembled from causes and their contingency sets. Needs Dˣ = ∅.
std::vector<Repair> repairs_via_causes(const Instance& d, const DenialConstraintSet& sigma, Semantics semantics,
                                       std::size_t cap = kDefaultEnumerationCap);

/// True iff every atom holds in all repairs, decided from causes alone
/// (S: no atom is an actual cause; C: no atom is a most responsible cause).
/// Needs Dˣ = ∅.
bool consistent_answer(const Instance& d, const DenialConstraintSet& sigma, const std::vector<Fact>& atoms,
                       Semantics semantics);

Repair make_repair(const Instance& d, FactSet removed, Semantics semantics);

}  // namespace dbcause
