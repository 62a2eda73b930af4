#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dbcause {

/// An opaque domain value. The null value compares structurally equal to
/// itself (so null-carrying facts can live in sets) but never joins; see
/// `Constant::joins_with`.
struct Constant {
    std::string text;
    bool is_null = false;

    static Constant null() { return Constant{"null", true}; }

    /// Equality used by query evaluation: null matches nothing.
    bool joins_with(const Constant& other) const noexcept {
        return !is_null && !other.is_null && text == other.text;
    }

    friend bool operator==(const Constant&, const Constant&) = default;
    friend std::strong_ordering operator<=>(const Constant& a, const Constant& b) {
        if (a.is_null != b.is_null) return a.is_null ? std::strong_ordering::less : std::strong_ordering::greater;
        return a.text <=> b.text;
    }
};

struct Predicate {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const Predicate&, const Predicate&) = default;
    friend auto operator<=>(const Predicate&, const Predicate&) = default;
};

enum class Tag { endogenous, exogenous };

/// A ground atom. Identity and ordering are (predicate, args, id); the
/// endogenous/exogenous tag is metadata carried along with the fact.
struct Fact {
    std::string predicate;
    std::vector<Constant> args;
    Tag tag = Tag::endogenous;
    std::optional<std::uint64_t> id;

    Fact() = default;
    Fact(std::string pred, std::vector<Constant> arguments, Tag t = Tag::endogenous,
         std::optional<std::uint64_t> ident = std::nullopt)
        : predicate(std::move(pred)), args(std::move(arguments)), tag(t), id(ident) {}

    std::size_t arity() const noexcept { return args.size(); }
    bool endogenous() const noexcept { return tag == Tag::endogenous; }

    friend bool operator==(const Fact& a, const Fact& b) {
        return a.predicate == b.predicate && a.args == b.args && a.id == b.id;
    }
    friend std::strong_ordering operator<=>(const Fact& a, const Fact& b) {
        if (auto c = a.predicate <=> b.predicate; c != 0) return c;
        if (auto c = std::lexicographical_compare_three_way(a.args.begin(), a.args.end(),
                                                            b.args.begin(), b.args.end());
            c != 0)
            return c;
        return a.id <=> b.id;
    }
};

using FactSet = std::set<Fact>;

/// Family of fact sets in canonical (lexicographic) order.
using FactFamily = std::set<FactSet>;

/// A finite, immutable set of facts partitioned into D^n and D^x.
class Instance {
public:
    Instance() = default;

    /// Builds an instance from arbitrary facts. Duplicate atoms with the same
    /// tag collapse; duplicates with different tags raise SemanticError.
    explicit Instance(std::vector<Fact> facts);

    const std::vector<Fact>& facts() const noexcept { return facts_; }
    std::size_t size() const noexcept { return facts_.size(); }
    bool empty() const noexcept { return facts_.empty(); }

    std::vector<Fact> endogenous() const;
    std::vector<Fact> exogenous() const;
    bool all_endogenous() const;

    bool contains(const Fact& f) const;
    /// The stored copy of `f` (with its tag), if present.
    const Fact* find(const Fact& f) const;

    FactSet fact_set() const { return FactSet(facts_.begin(), facts_.end()); }

    Instance without(const FactSet& removed) const;
    Instance with(const std::vector<Fact>& added) const;

    /// Predicate name -> arity over the facts present.
    std::map<std::string, std::size_t> schema() const;

    friend bool operator==(const Instance& a, const Instance& b) { return a.facts_ == b.facts_; }

private:
    std::vector<Fact> facts_;  // sorted, unique
};

struct Diagnostic {
    std::string message;
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Parses the line-oriented instance format (`@endogenous`, `@exogenous`,
/// `Pred(c1, ..., cn).`, `Pred(id; c1, ..., cn).`, `%` comments).
Instance parse_instance(std::string_view source);

/// Parses a single fact literal such as `R(a4,a3)` (trailing period optional).
Fact parse_fact(std::string_view text);

/// Symmetric difference of the two fact sets.
/// Throws SemanticError if one atom carries different tags in the two inputs.
FactSet delta(const Instance& d, const Instance& d_prime);

/// Reports violated invariants instead of throwing.
std::vector<Diagnostic> check_wellformed(const std::vector<Fact>& facts);
std::vector<Diagnostic> check_wellformed(const Instance& d);

std::string to_string(const Constant& c);
std::string to_string(const Fact& f);
std::string to_string(const FactSet& s);

/// Canonical serialization, re-parseable by parse_instance.
std::string serialize(const Instance& d);

}  // namespace dbcause
