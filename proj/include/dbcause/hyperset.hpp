#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dbcause/query.hpp"

namespace dbcause {

inline constexpr std::size_t kDefaultEnumerationCap = 100000;

template <class T>
using Family = std::set<std::set<T>>;

/// S(D): subset-minimal images of the disjuncts of a boolean query.
FactFamily support_sets(const Instance& d, const UnionQuery& q);

/// The endogenous hypergraph: minimal nonempty restrictions of S(D) to the
/// endogenous facts. Empty when the query is false, and also when some
/// support set is purely exogenous (nothing endogenous can then falsify q).
FactFamily endogenous_support_sets(const Instance& d, const UnionQuery& q);

/// True iff some support set of q in d contains no endogenous fact.
bool holds_exogenously(const Instance& d, const UnionQuery& q);

namespace detail {

using IntSet = std::vector<int>;  // sorted
using IntFamily = std::vector<IntSet>;

IntFamily minimize(IntFamily family);
IntFamily minimal_hitting_sets(const IntFamily& edges, std::size_t cap);
/// Smallest solutions; canonically least witness. `forbidden` vertices may not be used.
std::optional<IntSet> minimum_hitting_set(const IntFamily& edges, const std::vector<char>& forbidden,
                                          std::size_t n);
bool hitting_set_within(const IntFamily& edges, const std::vector<char>& forbidden, std::size_t n,
                        std::size_t budget);

std::optional<IntSet> minimum_contingency(const IntFamily& edges, int t, std::size_t n);
bool contingency_within(const IntFamily& edges, int t, std::size_t n, std::size_t budget);
IntFamily minimal_contingencies(const IntFamily& edges, int t, std::size_t n, std::size_t cap);

template <class T>
struct Indexed {
    std::vector<T> vertex;
    std::map<T, int> id;
    IntFamily edges;

    explicit Indexed(const Family<T>& family) {
        for (const auto& e : family)
            for (const auto& v : e) id.emplace(v, 0);
        int k = 0;
        for (auto& [v, i] : id) {
            i = k++;
            vertex.push_back(v);
        }
        for (const auto& e : family) {
            IntSet s;
            for (const auto& v : e) s.push_back(id.at(v));
            edges.push_back(std::move(s));
        }
    }

    std::set<T> lift(const IntSet& s) const {
        std::set<T> out;
        for (int i : s) out.insert(vertex[static_cast<std::size_t>(i)]);
        return out;
    }
    Family<T> lift(const IntFamily& f) const {
        Family<T> out;
        for (const auto& s : f) out.insert(lift(s));
        return out;
    }
    std::size_t size() const { return vertex.size(); }
};

}  // namespace detail

template <class T>
std::set<T> vertices(const Family<T>& edges) {
    std::set<T> out;
    for (const auto& e : edges) out.insert(e.begin(), e.end());
    return out;
}

/// Keeps only the subset-minimal members.
template <class T>
Family<T> minimize_family(const Family<T>& family) {
    detail::Indexed<T> ix(family);
    return ix.lift(detail::minimize(ix.edges));
}

/// All minimal transversals. Throws EnumerationCapError when the working
/// family grows beyond `cap`.
template <class T>
Family<T> minimal_hitting_sets(const Family<T>& edges, std::size_t cap = kDefaultEnumerationCap) {
    detail::Indexed<T> ix(edges);
    return ix.lift(detail::minimal_hitting_sets(ix.edges, cap));
}

/// A minimum-cardinality transversal (canonically least among those), or
/// nullopt if some edge is empty.
template <class T>
std::optional<std::set<T>> minimum_hitting_set(const Family<T>& edges) {
    detail::Indexed<T> ix(edges);
    std::vector<char> forbidden(ix.size(), 0);
    auto r = detail::minimum_hitting_set(ix.edges, forbidden, ix.size());
    if (!r) return std::nullopt;
    return ix.lift(*r);
}

/// A smallest Γ with t ∉ Γ such that Γ ∪ {t} hits every edge while Γ misses
/// some edge. Equivalently Γ ∪ {t} is a minimal transversal in which t is
/// essential. nullopt when t is in no edge or no such Γ exists.
template <class T>
std::optional<std::set<T>> minimum_contingency(const Family<T>& edges, const T& t) {
    detail::Indexed<T> ix(edges);
    auto it = ix.id.find(t);
    if (it == ix.id.end()) return std::nullopt;
    auto r = detail::minimum_contingency(ix.edges, it->second, ix.size());
    if (!r) return std::nullopt;
    return ix.lift(*r);
}

/// Decision form of minimum_contingency: is there such a Γ with |Γ| <= budget?
/// Runs a bounded search tree, so it stays cheap for small budgets.
template <class T>
bool contingency_within(const Family<T>& edges, const T& t, std::size_t budget) {
    detail::Indexed<T> ix(edges);
    auto it = ix.id.find(t);
    if (it == ix.id.end()) return false;
    return detail::contingency_within(ix.edges, it->second, ix.size(), budget);
}

/// All subset-minimal contingency sets for t.
template <class T>
Family<T> minimal_contingencies(const Family<T>& edges, const T& t, std::size_t cap = kDefaultEnumerationCap) {
    detail::Indexed<T> ix(edges);
    auto it = ix.id.find(t);
    if (it == ix.id.end()) return {};
    return ix.lift(detail::minimal_contingencies(ix.edges, it->second, ix.size(), cap));
}

}  // namespace dbcause
