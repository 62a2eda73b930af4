#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dbcause/relational.hpp"

namespace dbcause {

struct Term {
    enum class Kind { variable, constant };
    Kind kind = Kind::variable;
    std::string var;   // when kind == variable
    Constant value;    // when kind == constant

    static Term variable(std::string name) { return Term{Kind::variable, std::move(name), {}}; }
    static Term constant(Constant c) { return Term{Kind::constant, {}, std::move(c)}; }
    bool is_variable() const noexcept { return kind == Kind::variable; }

    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> terms;
    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Inequality {
    Term lhs;
    Term rhs;
    friend bool operator==(const Inequality&, const Inequality&) = default;
};

/// A conjunctive query with optional inequalities. Boolean when free_vars is empty.
struct ConjunctiveQuery {
    std::vector<Atom> atoms;
    std::vector<Inequality> inequalities;
    std::vector<std::string> free_vars;

    /// Throws SemanticError unless every variable used in an inequality or as
    /// a free variable occurs in some atom.
    void check_safety() const;
    std::set<std::string> atom_variables() const;

    friend bool operator==(const ConjunctiveQuery&, const ConjunctiveQuery&) = default;
};

/// A union of conjunctive queries sharing one free-variable arity.
struct UnionQuery {
    std::string name = "q";
    std::vector<ConjunctiveQuery> disjuncts;

    bool is_boolean() const;
    std::size_t arity() const { return disjuncts.empty() ? 0 : disjuncts.front().free_vars.size(); }
    /// Maximum atom count over disjuncts: the edge-size bound d of the
    /// induced hitting-set problem.
    std::size_t max_atoms() const;
};

struct DenialConstraint {
    ConjunctiveQuery body;
    friend bool operator==(const DenialConstraint&, const DenialConstraint&) = default;
};

struct DenialConstraintSet {
    std::vector<DenialConstraint> constraints;
    bool empty() const noexcept { return constraints.empty(); }
};

struct Program {
    std::vector<UnionQuery> queries;  // in order of first appearance
    DenialConstraintSet constraints;

    const UnionQuery* find(std::string_view name) const;
};

/// Parses rules `head :- lits.` and constraints `:- lits.`; rules sharing a
/// head name merge into one UnionQuery.
Program parse_program(std::string_view source);

using Tuple = std::vector<Constant>;

bool eval_boolean(const Instance& d, const UnionQuery& q);
bool eval_boolean(const Instance& d, const ConjunctiveQuery& q);
std::set<Tuple> eval_answers(const Instance& d, const UnionQuery& q);

/// True iff `d` satisfies every constraint.
bool satisfies(const Instance& d, const DenialConstraintSet& sigma);

DenialConstraintSet dc_of_query(const UnionQuery& q);
UnionQuery violation_view(const DenialConstraintSet& sigma);

/// Substitutes the answer for the free variables, yielding a boolean query.
UnionQuery instantiate(const UnionQuery& q, const Tuple& answer);
DenialConstraintSet answer_dc(const UnionQuery& q, const Tuple& answer);

/// One homomorphism of a conjunctive query into an instance: `image[i]` is
/// the fact matched by atom i.
struct Match {
    std::vector<const Fact*> image;
};

/// Calls `visit` for every homomorphism of `q` into `d` that satisfies the
/// inequalities. Return false from `visit` to stop early.
void for_each_match(const Instance& d, const ConjunctiveQuery& q,
                    const std::function<bool(const Match&)>& visit);

/// Number of places a variable appears across atoms and inequalities.
/// A variable appearing once is never compared, so a null there still matches.
std::size_t occurrences(const ConjunctiveQuery& q, const std::string& var);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const ConjunctiveQuery& q);
std::string to_string(const UnionQuery& q);
std::string to_string(const DenialConstraint& c);
std::string to_string(const DenialConstraintSet& s);

}  // namespace dbcause
