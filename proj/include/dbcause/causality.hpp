#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dbcause/hyperset.hpp"

namespace dbcause {

/// Exact responsibility: 0 or 1/k.
class Responsibility {
public:
    Responsibility() = default;
    static Responsibility zero() { return {}; }
    /// 1/k for k >= 1.
    static Responsibility inverse(std::uint64_t k);

    std::uint64_t numerator() const noexcept { return den_ == 0 ? 0 : 1; }
    /// Denominator in lowest terms; 1 for zero.
    std::uint64_t denominator() const noexcept { return den_ == 0 ? 1 : den_; }
    bool is_zero() const noexcept { return den_ == 0; }

    std::string to_string() const;

    friend bool operator==(const Responsibility&, const Responsibility&) = default;
    friend std::strong_ordering operator<=>(const Responsibility& a, const Responsibility& b) {
        if (a.den_ == b.den_) return std::strong_ordering::equal;
        if (a.den_ == 0) return std::strong_ordering::less;
        if (b.den_ == 0) return std::strong_ordering::greater;
        return b.den_ <=> a.den_;
    }

private:
    std::uint64_t den_ = 0;  // 0 encodes the value zero
};

/// Threshold for the responsibility decision problem: 0 or 1/k.
struct Threshold {
    std::uint64_t k = 0;  // 0 encodes v = 0
    Responsibility value() const { return k == 0 ? Responsibility::zero() : Responsibility::inverse(k); }
};

/// Accepts "0", "1", or "1/k" with k >= 1; throws SemanticError otherwise.
Threshold parse_threshold(std::string_view text);

struct CauseReport {
    Fact tuple;
    bool is_cause = false;
    Responsibility responsibility;
    std::optional<FactSet> minimum_contingency;
    FactFamily minimal_contingencies;  // filled only on request
};

FactSet actual_causes(const Instance& d, const UnionQuery& q);

/// S-minimal contingency sets of t.
FactFamily contingency_sets(const Instance& d, const UnionQuery& q, const Fact& t,
                            std::size_t cap = kDefaultEnumerationCap);

Responsibility responsibility(const Instance& d, const UnionQuery& q, const Fact& t);

/// A minimum contingency set (canonically least), nullopt for non-causes.
std::optional<FactSet> minimum_contingency_set(const Instance& d, const UnionQuery& q, const Fact& t);

/// True iff d ⊨ q and responsibility(t) > v, decided without computing the
/// exact responsibility.
bool rdp_decide(const Instance& d, const UnionQuery& q, const Fact& t, Threshold v);

struct MostResponsible {
    FactSet causes;
    Responsibility value;
};
MostResponsible most_responsible_causes(const Instance& d, const UnionQuery& q);

/// True iff gamma is an S-minimal contingency set for t. Polynomial: checks
/// that D ∖ (gamma ∪ {t}) is an S-repair w.r.t. the constraints of q.
bool check_minimal_contingency(const Instance& d, const UnionQuery& q, const Fact& t, const FactSet& gamma);

/// One report per endogenous fact, in canonical order.
std::vector<CauseReport> cause_reports(const Instance& d, const UnionQuery& q, bool with_contingencies,
                                       std::size_t cap = kDefaultEnumerationCap);

namespace detail {
/// Throws SemanticError unless q is boolean.
void require_boolean(const UnionQuery& q);
/// The stored endogenous copy of t; throws SemanticError if absent or exogenous.
const Fact& require_endogenous(const Instance& d, const Fact& t);
}  // namespace detail

}  // namespace dbcause
