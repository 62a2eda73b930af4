#include "dbcause/hyperset.hpp"

#include <algorithm>

#include "dbcause/errors.hpp"

namespace dbcause {

FactFamily support_sets(const Instance& d, const UnionQuery& q) {
    FactFamily images;
    for (const auto& c : q.disjuncts) {
        for_each_match(d, c, [&](const Match& m) {
            FactSet s;
            for (const Fact* f : m.image) s.insert(*f);
            images.insert(std::move(s));
            return true;
        });
    }
    return minimize_family(images);
}

bool holds_exogenously(const Instance& d, const UnionQuery& q) {
    for (const auto& s : support_sets(d, q))
        if (std::none_of(s.begin(), s.end(), [](const Fact& f) { return f.endogenous(); })) return true;
    return false;
}

FactFamily endogenous_support_sets(const Instance& d, const UnionQuery& q) {
    FactFamily restricted;
    for (const auto& s : support_sets(d, q)) {
        FactSet endo;
        for (const auto& f : s)
            if (f.endogenous()) endo.insert(f);
        if (endo.empty()) return {};
        restricted.insert(std::move(endo));
    }
    return minimize_family(restricted);
}

namespace detail {

namespace {

bool intersects(const IntSet& a, const IntSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return false;
}

bool subset(const IntSet& a, const IntSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool by_size(const IntSet& a, const IntSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
}

// Depth-bounded search tree. Branches on the unhit edge with the fewest
// usable vertices. When `all` is non-null every solution found at full depth
// is recorded; otherwise the search stops at the first one.
class Search {
public:
    Search(const IntFamily& edges, const std::vector<char>& forbidden, std::size_t n)
        : chosen_(n, 0) {
        for (const auto& e : edges) {
            IntSet allowed;
            for (int v : e)
                if (!forbidden[static_cast<std::size_t>(v)]) allowed.push_back(v);
            if (allowed.empty()) infeasible_ = true;
            edges_.push_back(std::move(allowed));
        }
        edges_ = minimize(std::move(edges_));
    }

    bool infeasible() const { return infeasible_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool run(std::size_t budget, std::set<IntSet>* all) {
        all_ = all;
        current_.clear();
        return step(budget);
    }

private:
    bool step(std::size_t budget) {
        const IntSet* pick = nullptr;
        for (const auto& e : edges_) {
            bool hit = std::any_of(e.begin(), e.end(), [&](int v) { return chosen_[static_cast<std::size_t>(v)]; });
            if (hit) continue;
            if (!pick || e.size() < pick->size()) pick = &e;
            if (pick->size() == 1) break;
        }
        if (!pick) {
            if (all_) {
                IntSet s = current_;
                std::sort(s.begin(), s.end());
                all_->insert(std::move(s));
                return false;  // keep collecting
            }
            return true;
        }
        if (budget == 0) return false;
        for (int v : *pick) {
            chosen_[static_cast<std::size_t>(v)] = 1;
            current_.push_back(v);
            bool done = step(budget - 1);
            current_.pop_back();
            chosen_[static_cast<std::size_t>(v)] = 0;
            if (done) return true;
        }
        return false;
    }

    IntFamily edges_;
    std::vector<char> chosen_;
    IntSet current_;
    std::set<IntSet>* all_ = nullptr;
    bool infeasible_ = false;
};

// Edges not containing t, with e's vertices forbidden, for each edge e ∋ t.
struct PrivateEdgeCase {
    IntFamily rest;
    std::vector<char> forbidden;
};

std::vector<PrivateEdgeCase> private_edge_cases(const IntFamily& edges, int t, std::size_t n) {
    IntFamily rest;
    for (const auto& e : edges)
        if (!std::binary_search(e.begin(), e.end(), t)) rest.push_back(e);
    std::vector<PrivateEdgeCase> out;
    std::set<IntSet> seen;
    for (const auto& e : edges) {
        if (!std::binary_search(e.begin(), e.end(), t) || !seen.insert(e).second) continue;
        std::vector<char> forbidden(n, 0);
        for (int v : e) forbidden[static_cast<std::size_t>(v)] = 1;
        out.push_back({rest, std::move(forbidden)});
    }
    return out;
}

}  // namespace

IntFamily minimize(IntFamily family) {
    std::sort(family.begin(), family.end(), by_size);
    family.erase(std::unique(family.begin(), family.end()), family.end());
    IntFamily out;
    for (auto& s : family) {
        bool dominated = std::any_of(out.begin(), out.end(), [&](const IntSet& k) { return subset(k, s); });
        if (!dominated) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

IntFamily minimal_hitting_sets(const IntFamily& input, std::size_t cap) {
    IntFamily edges = minimize(input);
    if (std::any_of(edges.begin(), edges.end(), [](const IntSet& e) { return e.empty(); })) return {};
    std::sort(edges.begin(), edges.end(), by_size);
    IntFamily current{IntSet{}};
    for (const auto& e : edges) {
        IntFamily hit;
        IntFamily misses;
        for (auto& h : current) {
            if (intersects(h, e))
                hit.push_back(std::move(h));
            else
                misses.push_back(std::move(h));
        }
        // An extension h+v can only be dominated by a set that already hits e.
        IntFamily next = hit;
        for (const auto& h : misses) {
            for (int v : e) {
                IntSet c = h;
                c.insert(std::upper_bound(c.begin(), c.end(), v), v);
                bool dominated = std::any_of(hit.begin(), hit.end(), [&](const IntSet& g) {
                    return g.size() <= c.size() && subset(g, c);
                });
                if (!dominated) next.push_back(std::move(c));
                if (next.size() > cap)
                    throw EnumerationCapError("minimal hitting set enumeration exceeded the cap of " +
                                              std::to_string(cap));
            }
        }
        current = std::move(next);
    }
    std::sort(current.begin(), current.end());
    return current;
}

std::optional<IntSet> minimum_hitting_set(const IntFamily& edges, const std::vector<char>& forbidden,
                                          std::size_t n) {
    Search s(edges, forbidden, n);
    if (s.infeasible()) return std::nullopt;
    for (std::size_t k = 0; k <= s.edge_count(); ++k) {
        std::set<IntSet> found;
        s.run(k, &found);
        if (!found.empty()) {
            // All of size <= k; sizes below k were ruled out by the previous round.
            return *std::min_element(found.begin(), found.end(), by_size);
        }
    }
    return std::nullopt;
}

bool hitting_set_within(const IntFamily& edges, const std::vector<char>& forbidden, std::size_t n,
                        std::size_t budget) {
    Search s(edges, forbidden, n);
    if (s.infeasible()) return false;
    return s.run(budget, nullptr);
}

std::optional<IntSet> minimum_contingency(const IntFamily& edges, int t, std::size_t n) {
    std::optional<IntSet> best;
    for (const auto& c : private_edge_cases(edges, t, n)) {
        auto m = minimum_hitting_set(c.rest, c.forbidden, n);
        if (m && (!best || by_size(*m, *best))) best = std::move(m);
    }
    return best;
}

bool contingency_within(const IntFamily& edges, int t, std::size_t n, std::size_t budget) {
    for (const auto& c : private_edge_cases(edges, t, n))
        if (hitting_set_within(c.rest, c.forbidden, n, budget)) return true;
    return false;
}

IntFamily minimal_contingencies(const IntFamily& edges, int t, std::size_t n, std::size_t cap) {
    IntFamily all;
    for (const auto& c : private_edge_cases(edges, t, n)) {
        IntFamily reduced;
        bool feasible = true;
        for (const auto& r : c.rest) {
            IntSet kept;
            for (int v : r)
                if (!c.forbidden[static_cast<std::size_t>(v)]) kept.push_back(v);
            if (kept.empty()) {
                feasible = false;
                break;
            }
            reduced.push_back(std::move(kept));
        }
        if (!feasible) continue;
        for (auto& h : minimal_hitting_sets(reduced, cap)) all.push_back(std::move(h));
        if (all.size() > cap)
            throw EnumerationCapError("contingency set enumeration exceeded the cap of " + std::to_string(cap));
    }
    return minimize(std::move(all));
}

}  // namespace detail

}  // namespace dbcause
