#include "dbcause/causality.hpp"

#include <charconv>

#include "dbcause/errors.hpp"

namespace dbcause {

Responsibility Responsibility::inverse(std::uint64_t k) {
    if (k == 0) throw SemanticError("responsibility denominator must be positive");
    Responsibility r;
    r.den_ = k;
    return r;
}

std::string Responsibility::to_string() const {
    if (den_ == 0) return "0";
    if (den_ == 1) return "1";
    return "1/" + std::to_string(den_);
}

Threshold parse_threshold(std::string_view text) {
    auto number = [&](std::string_view s) -> std::uint64_t {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || s.empty())
            throw SemanticError("malformed threshold '" + std::string(text) + "'; expected 0 or 1/k");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        std::uint64_t v = number(text);
        if (v > 1) throw SemanticError("malformed threshold '" + std::string(text) + "'; expected 0 or 1/k");
        return Threshold{v};
    }
    if (number(text.substr(0, slash)) != 1)
        throw SemanticError("malformed threshold '" + std::string(text) + "'; numerator must be 1");
    std::uint64_t k = number(text.substr(slash + 1));
    if (k == 0) throw SemanticError("malformed threshold '" + std::string(text) + "'; k must be positive");
    return Threshold{k};
}

namespace detail {

void require_boolean(const UnionQuery& q) {
    if (!q.is_boolean())
        throw SemanticError("query '" + q.name + "' has free variables; pick an answer with --answer");
}

const Fact& require_endogenous(const Instance& d, const Fact& t) {
    const Fact* f = d.find(t);
    if (!f) throw SemanticError("fact " + to_string(t) + " is not in the instance");
    if (!f->endogenous()) throw SemanticError("fact " + to_string(t) + " is exogenous");
    return *f;
}

}  // namespace detail

FactSet actual_causes(const Instance& d, const UnionQuery& q) {
    detail::require_boolean(q);
    return vertices(endogenous_support_sets(d, q));
}

FactFamily contingency_sets(const Instance& d, const UnionQuery& q, const Fact& t, std::size_t cap) {
    detail::require_boolean(q);
    const Fact& f = detail::require_endogenous(d, t);
    return minimal_contingencies(endogenous_support_sets(d, q), f, cap);
}

std::optional<FactSet> minimum_contingency_set(const Instance& d, const UnionQuery& q, const Fact& t) {
    detail::require_boolean(q);
    const Fact& f = detail::require_endogenous(d, t);
    return minimum_contingency(endogenous_support_sets(d, q), f);
}

Responsibility responsibility(const Instance& d, const UnionQuery& q, const Fact& t) {
    auto g = minimum_contingency_set(d, q, t);
    return g ? Responsibility::inverse(g->size() + 1) : Responsibility::zero();
}

bool rdp_decide(const Instance& d, const UnionQuery& q, const Fact& t, Threshold v) {
    detail::require_boolean(q);
    const Fact& f = detail::require_endogenous(d, t);
    if (v.k == 1) return false;  // nothing exceeds 1
    auto edges = endogenous_support_sets(d, q);
    if (v.k == 0) return vertices(edges).count(f) > 0;
    // 1/(1+|Γ|) > 1/k  iff  |Γ| <= k-2
    return contingency_within(edges, f, v.k - 2);
}

MostResponsible most_responsible_causes(const Instance& d, const UnionQuery& q) {
    detail::require_boolean(q);
    auto edges = endogenous_support_sets(d, q);
    MostResponsible out;
    for (const auto& t : vertices(edges)) {
        auto g = minimum_contingency(edges, t);
        if (!g) continue;
        auto r = Responsibility::inverse(g->size() + 1);
        if (r > out.value) {
            out.value = r;
            out.causes.clear();
        }
        if (r == out.value) out.causes.insert(t);
    }
    return out;
}

bool check_minimal_contingency(const Instance& d, const UnionQuery& q, const Fact& t, const FactSet& gamma) {
    detail::require_boolean(q);
    detail::require_endogenous(d, t);
    for (const auto& g : gamma) detail::require_endogenous(d, g);
    if (gamma.count(t)) throw SemanticError("contingency set contains the tuple itself");
    FactSet removed = gamma;
    removed.insert(t);
    Instance kept = d.without(removed);
    if (eval_boolean(kept, q)) return false;
    for (const auto& r : removed) {
        const Fact* stored = d.find(r);
        if (!eval_boolean(kept.with({*stored}), q)) return false;
    }
    return true;
}

std::vector<CauseReport> cause_reports(const Instance& d, const UnionQuery& q, bool with_contingencies,
                                       std::size_t cap) {
    detail::require_boolean(q);
    auto edges = endogenous_support_sets(d, q);
    std::vector<CauseReport> out;
    for (const auto& f : d.facts()) {
        if (!f.endogenous()) continue;
        CauseReport r;
        r.tuple = f;
        r.minimum_contingency = minimum_contingency(edges, f);
        r.is_cause = r.minimum_contingency.has_value();
        if (r.is_cause) r.responsibility = Responsibility::inverse(r.minimum_contingency->size() + 1);
        if (with_contingencies && r.is_cause) r.minimal_contingencies = minimal_contingencies(edges, f, cap);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace dbcause
