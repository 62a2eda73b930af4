#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dbcause/repairs.hpp"

namespace dbcause {

/// Consistency-based diagnosis problem (SD, Dⁿ, Q). SD stays implicit; the
/// conflict sets are the minimal endogenous support sets of Q.
struct DiagnosisProblem {
    Instance instance;
    UnionQuery query;
    /// Holds {∅} when Q is witnessed by exogenous facts alone: the observation
    /// then conflicts with no assumption at all and no diagnosis exists.
    FactFamily conflicts;
};

enum class DiagnosisKind { S, C };

/// Throws SemanticError if q is open or d ⊭ q.
DiagnosisProblem build_problem(const Instance& d, const UnionQuery& q);

/// Diag^s / Diag^c. With `containing`, restricted to diagnoses that contain
/// it, and the C variant keeps the smallest of those.
FactFamily diagnoses(const DiagnosisProblem& m, DiagnosisKind kind, const std::optional<Fact>& containing = {},
                     std::size_t cap = kDefaultEnumerationCap);

/// D ∖ Δ for each minimal diagnosis Δ. Needs Dˣ = ∅.
std::vector<Repair> repairs_from_diagnoses(const DiagnosisProblem& m, DiagnosisKind kind,
                                           std::size_t cap = kDefaultEnumerationCap);

/// The first-order system description, one sentence per line.
std::string render_theory(const DiagnosisProblem& m);

}  // namespace dbcause
