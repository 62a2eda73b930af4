#include "dbcause/query.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "dbcause/errors.hpp"
#include "lexer.hpp"

namespace dbcause {

using detail::TokenKind;
using detail::TokenStream;

std::set<std::string> ConjunctiveQuery::atom_variables() const {
    std::set<std::string> vars;
    for (const auto& a : atoms)
        for (const auto& t : a.terms)
            if (t.is_variable()) vars.insert(t.var);
    return vars;
}

void ConjunctiveQuery::check_safety() const {
    if (atoms.empty()) throw SemanticError("conjunctive query has no atoms");
    auto vars = atom_variables();
    for (const auto& ineq : inequalities)
        for (const Term* t : {&ineq.lhs, &ineq.rhs})
            if (t->is_variable() && !vars.count(t->var))
                throw SemanticError("unsafe rule: variable " + t->var +
                                    " in inequality does not occur in a positive atom");
    for (const auto& v : free_vars)
        if (!vars.count(v))
            throw SemanticError("unsafe rule: head variable " + v + " does not occur in a positive atom");
}

bool UnionQuery::is_boolean() const {
    return std::all_of(disjuncts.begin(), disjuncts.end(),
                       [](const ConjunctiveQuery& c) { return c.free_vars.empty(); });
}

std::size_t UnionQuery::max_atoms() const {
    std::size_t m = 0;
    for (const auto& c : disjuncts) m = std::max(m, c.atoms.size());
    return m;
}

const UnionQuery* Program::find(std::string_view name) const {
    for (const auto& q : queries)
        if (q.name == name) return &q;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ProgramParser {
public:
    explicit ProgramParser(std::string_view src) : ts_(detail::tokenize(src)) {}

    Program run() {
        Program prog;
        while (!ts_.at(TokenKind::end)) {
            const detail::Token start = ts_.peek();
            std::optional<std::string> head;
            ConjunctiveQuery cq;
            if (!ts_.at(TokenKind::implies)) {
                const auto& h = ts_.expect(TokenKind::identifier, "as rule head");
                if (detail::is_variable_name(h.text))
                    TokenStream::fail_at(h, "rule head '" + h.text + "' must start lowercase");
                head = h.text;
                if (ts_.accept(TokenKind::lparen)) {
                    while (true) {
                        const auto& v = ts_.expect(TokenKind::identifier, "as head variable");
                        if (!detail::is_variable_name(v.text) || v.text == "_")
                            TokenStream::fail_at(v, "head arguments must be named variables");
                        if (std::find(cq.free_vars.begin(), cq.free_vars.end(), v.text) != cq.free_vars.end())
                            TokenStream::fail_at(v, "repeated head variable " + v.text);
                        cq.free_vars.push_back(v.text);
                        if (!ts_.accept(TokenKind::comma)) break;
                    }
                    ts_.expect(TokenKind::rparen, "to close rule head");
                }
            }
            ts_.expect(TokenKind::implies, "after rule head");
            parse_body(cq);
            ts_.expect(TokenKind::period, "at end of rule");
            try {
                cq.check_safety();
            } catch (const SemanticError& e) {
                throw SemanticError(std::to_string(start.line) + ":" + std::to_string(start.column) + ": " +
                                    e.what());
            }
            if (!head) {
                prog.constraints.constraints.push_back(DenialConstraint{std::move(cq)});
                continue;
            }
            auto it = std::find_if(prog.queries.begin(), prog.queries.end(),
                                   [&](const UnionQuery& q) { return q.name == *head; });
            if (it == prog.queries.end()) {
                prog.queries.push_back(UnionQuery{*head, {std::move(cq)}});
            } else {
                if (it->arity() != cq.free_vars.size())
                    throw SemanticError(std::to_string(start.line) + ":" + std::to_string(start.column) +
                                        ": rules for '" + *head + "' disagree on the number of free variables");
                it->disjuncts.push_back(std::move(cq));
            }
        }
        return prog;
    }

private:
    Term parse_term() {
        const auto& t = ts_.next();
        if (t.kind == TokenKind::identifier && detail::is_variable_name(t.text)) {
            if (t.text == "_") return Term::variable("_" + std::to_string(++anon_));
            return Term::variable(t.text);
        }
        return Term::constant(detail::constant_from_token(t));
    }

    void parse_body(ConjunctiveQuery& cq) {
        while (true) {
            if (ts_.at(TokenKind::identifier) && ts_.peek(1).kind == TokenKind::lparen) {
                Atom a;
                const auto& name = ts_.next();
                a.predicate = name.text;
                ts_.next();  // '('
                if (!ts_.at(TokenKind::rparen)) {
                    while (true) {
                        a.terms.push_back(parse_term());
                        if (!ts_.accept(TokenKind::comma)) break;
                    }
                }
                ts_.expect(TokenKind::rparen, "to close atom");
                note_arity(a, name);
                cq.atoms.push_back(std::move(a));
            } else {
                const detail::Token lhs_tok = ts_.peek();
                Term lhs = parse_term();
                if (lhs_tok.text == "_")
                    TokenStream::fail_at(lhs_tok, "anonymous variable not allowed in an inequality");
                if (ts_.at(TokenKind::equal))
                    ts_.fail("equality atoms are not supported; substitute the term instead");
                ts_.expect(TokenKind::not_equal, "in comparison literal");
                const detail::Token rhs_tok = ts_.peek();
                Term rhs = parse_term();
                if (rhs_tok.text == "_")
                    TokenStream::fail_at(rhs_tok, "anonymous variable not allowed in an inequality");
                cq.inequalities.push_back({std::move(lhs), std::move(rhs)});
            }
            if (!ts_.accept(TokenKind::comma)) break;
        }
    }

    void note_arity(const Atom& a, const detail::Token& at) {
        auto [it, fresh] = arity_.emplace(a.predicate, a.terms.size());
        if (!fresh && it->second != a.terms.size())
            throw SemanticError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": predicate " +
                                a.predicate + " used with arity " + std::to_string(a.terms.size()) +
                                " but earlier with arity " + std::to_string(it->second));
    }

    TokenStream ts_;
    std::map<std::string, std::size_t> arity_;
    int anon_ = 0;
};

}  // namespace

Program parse_program(std::string_view source) { return ProgramParser(source).run(); }

// ---------------------------------------------------------------------------
// Evaluation: backtracking join over facts grouped by predicate.

namespace {

struct Compiled {
    struct Slot {
        bool is_var;
        std::size_t var;  // variable index
        Constant value;
    };
    std::vector<std::vector<Slot>> atoms;
    std::vector<std::string> atom_preds;
    std::vector<std::pair<Slot, Slot>> ineqs;
    std::vector<std::size_t> free;
    std::vector<std::size_t> occurrence;  // per variable
    std::size_t nvars = 0;
};

Compiled compile(const ConjunctiveQuery& q) {
    Compiled c;
    std::map<std::string, std::size_t> ids;
    auto slot = [&](const Term& t) {
        if (!t.is_variable()) return Compiled::Slot{false, 0, t.value};
        auto [it, fresh] = ids.emplace(t.var, ids.size());
        if (fresh) c.occurrence.push_back(0);
        ++c.occurrence[it->second];
        return Compiled::Slot{true, it->second, {}};
    };
    for (const auto& a : q.atoms) {
        std::vector<Compiled::Slot> s;
        for (const auto& t : a.terms) s.push_back(slot(t));
        c.atoms.push_back(std::move(s));
        c.atom_preds.push_back(a.predicate);
    }
    for (const auto& i : q.inequalities) {
        auto l = slot(i.lhs);
        auto r = slot(i.rhs);
        c.ineqs.emplace_back(l, r);
    }
    for (const auto& v : q.free_vars) c.free.push_back(ids.at(v));
    c.nvars = ids.size();
    return c;
}

class Matcher {
public:
    Matcher(const Instance& d, const ConjunctiveQuery& q, const std::function<bool(const Match&)>& visit,
            const std::function<bool(const std::vector<std::optional<Constant>>&)>* on_binding = nullptr)
        : q_(compile(q)), visit_(visit), on_binding_(on_binding) {
        for (const auto& f : d.facts()) by_pred_[f.predicate].push_back(&f);
        bind_.assign(q_.nvars, std::nullopt);
        match_.image.assign(q_.atoms.size(), nullptr);
    }

    void run() {
        if (!consts_ok()) return;
        step(0);
    }

private:
    bool consts_ok() const {
        for (const auto& [l, r] : q_.ineqs)
            if (!l.is_var && !r.is_var &&
                (l.value.is_null || r.value.is_null || l.value.text == r.value.text))
                return false;
        return true;
    }

    const Constant* value(const Compiled::Slot& s) const {
        if (!s.is_var) return &s.value;
        return bind_[s.var] ? &*bind_[s.var] : nullptr;
    }

    // Inequalities with both sides known must hold; comparisons with null fail.
    bool ineqs_ok() const {
        for (const auto& [l, r] : q_.ineqs) {
            const Constant* a = value(l);
            const Constant* b = value(r);
            if (!a || !b) continue;
            if (a->is_null || b->is_null || a->text == b->text) return false;
        }
        return true;
    }

    bool step(std::size_t i) {
        if (i == q_.atoms.size()) {
            if (on_binding_) return (*on_binding_)(bind_);
            return visit_(match_);
        }
        auto it = by_pred_.find(q_.atom_preds[i]);
        if (it == by_pred_.end()) return true;
        const auto& slots = q_.atoms[i];
        for (const Fact* f : it->second) {
            if (f->args.size() != slots.size()) continue;
            std::vector<std::size_t> newly;
            bool ok = true;
            for (std::size_t j = 0; j < slots.size() && ok; ++j) {
                const auto& s = slots[j];
                const Constant& v = f->args[j];
                if (!s.is_var) {
                    ok = s.value.joins_with(v);
                } else if (bind_[s.var]) {
                    ok = bind_[s.var]->joins_with(v);
                } else {
                    if (v.is_null && q_.occurrence[s.var] > 1) {
                        ok = false;
                    } else {
                        bind_[s.var] = v;
                        newly.push_back(s.var);
                    }
                }
            }
            if (ok) ok = ineqs_ok();
            bool keep_going = true;
            if (ok) {
                match_.image[i] = f;
                keep_going = step(i + 1);
            }
            for (auto v : newly) bind_[v].reset();
            if (!keep_going) return false;
        }
        return true;
    }

    Compiled q_;
    const std::function<bool(const Match&)>& visit_;
    const std::function<bool(const std::vector<std::optional<Constant>>&)>* on_binding_;
    std::map<std::string, std::vector<const Fact*>> by_pred_;
    std::vector<std::optional<Constant>> bind_;
    Match match_;
};

const std::function<bool(const Match&)> no_visit = [](const Match&) { return true; };

}  // namespace

void for_each_match(const Instance& d, const ConjunctiveQuery& q, const std::function<bool(const Match&)>& visit) {
    Matcher(d, q, visit).run();
}

std::size_t occurrences(const ConjunctiveQuery& q, const std::string& var) {
    std::size_t n = 0;
    for (const auto& a : q.atoms)
        for (const auto& t : a.terms)
            if (t.is_variable() && t.var == var) ++n;
    for (const auto& i : q.inequalities) {
        if (i.lhs.is_variable() && i.lhs.var == var) ++n;
        if (i.rhs.is_variable() && i.rhs.var == var) ++n;
    }
    return n;
}

bool eval_boolean(const Instance& d, const ConjunctiveQuery& q) {
    bool found = false;
    for_each_match(d, q, [&](const Match&) {
        found = true;
        return false;
    });
    return found;
}

bool eval_boolean(const Instance& d, const UnionQuery& q) {
    return std::any_of(q.disjuncts.begin(), q.disjuncts.end(),
                       [&](const ConjunctiveQuery& c) { return eval_boolean(d, c); });
}

std::set<Tuple> eval_answers(const Instance& d, const UnionQuery& q) {
    std::set<Tuple> out;
    for (const auto& c : q.disjuncts) {
        Compiled comp = compile(c);
        std::function<bool(const std::vector<std::optional<Constant>>&)> collect =
            [&](const std::vector<std::optional<Constant>>& b) {
                Tuple t;
                for (auto v : comp.free) t.push_back(*b[v]);
                out.insert(std::move(t));
                return true;
            };
        Matcher(d, c, no_visit, &collect).run();
    }
    return out;
}

bool satisfies(const Instance& d, const DenialConstraintSet& sigma) {
    return std::none_of(sigma.constraints.begin(), sigma.constraints.end(),
                        [&](const DenialConstraint& k) { return eval_boolean(d, k.body); });
}

// ---------------------------------------------------------------------------
// Query/constraint duality

DenialConstraintSet dc_of_query(const UnionQuery& q) {
    if (!q.is_boolean())
        throw SemanticError("query '" + q.name + "' has free variables; instantiate an answer first");
    DenialConstraintSet out;
    for (const auto& c : q.disjuncts) out.constraints.push_back(DenialConstraint{c});
    return out;
}

UnionQuery violation_view(const DenialConstraintSet& sigma) {
    if (sigma.empty()) throw SemanticError("violation view of an empty constraint set");
    UnionQuery v;
    v.name = "violation";
    for (const auto& k : sigma.constraints) {
        ConjunctiveQuery c = k.body;
        c.free_vars.clear();
        v.disjuncts.push_back(std::move(c));
    }
    return v;
}

UnionQuery instantiate(const UnionQuery& q, const Tuple& answer) {
    if (answer.size() != q.arity())
        throw SemanticError("answer has " + std::to_string(answer.size()) + " values but query '" + q.name +
                            "' has " + std::to_string(q.arity()) + " free variables");
    UnionQuery out;
    out.name = q.name;
    for (const auto& c : q.disjuncts) {
        std::map<std::string, Constant> sub;
        for (std::size_t i = 0; i < c.free_vars.size(); ++i) sub[c.free_vars[i]] = answer[i];
        auto apply = [&](Term t) {
            if (t.is_variable()) {
                auto it = sub.find(t.var);
                if (it != sub.end()) return Term::constant(it->second);
            }
            return t;
        };
        ConjunctiveQuery g;
        for (const auto& a : c.atoms) {
            Atom na{a.predicate, {}};
            for (const auto& t : a.terms) na.terms.push_back(apply(t));
            g.atoms.push_back(std::move(na));
        }
        for (const auto& i : c.inequalities) g.inequalities.push_back({apply(i.lhs), apply(i.rhs)});
        out.disjuncts.push_back(std::move(g));
    }
    return out;
}

DenialConstraintSet answer_dc(const UnionQuery& q, const Tuple& answer) {
    return dc_of_query(instantiate(q, answer));
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Term& t) { return t.is_variable() ? t.var : to_string(t.value); }

std::string to_string(const Atom& a) {
    std::string out = a.predicate + "(";
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        if (i) out += ",";
        out += to_string(a.terms[i]);
    }
    return out + ")";
}

std::string to_string(const ConjunctiveQuery& q) {
    std::string out;
    for (const auto& a : q.atoms) {
        if (!out.empty()) out += ", ";
        out += to_string(a);
    }
    for (const auto& i : q.inequalities) out += ", " + to_string(i.lhs) + " != " + to_string(i.rhs);
    return out;
}

std::string to_string(const UnionQuery& q) {
    std::string out;
    for (const auto& c : q.disjuncts) {
        out += q.name;
        if (!c.free_vars.empty()) {
            out += "(";
            for (std::size_t i = 0; i < c.free_vars.size(); ++i) out += (i ? "," : "") + c.free_vars[i];
            out += ")";
        }
        out += " :- " + to_string(c) + ".\n";
    }
    return out;
}

std::string to_string(const DenialConstraint& c) { return ":- " + to_string(c.body) + "."; }

std::string to_string(const DenialConstraintSet& s) {
    std::string out;
    for (const auto& c : s.constraints) out += to_string(c) + "\n";
    return out;
}

}  // namespace dbcause
