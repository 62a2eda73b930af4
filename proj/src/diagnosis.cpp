#include "dbcause/diagnosis.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "dbcause/errors.hpp"

namespace dbcause {

DiagnosisProblem build_problem(const Instance& d, const UnionQuery& q) {
    detail::require_boolean(q);
    if (!eval_boolean(d, q))
        throw SemanticError("query '" + q.name + "' is false on the instance; there is no observation to explain");
    DiagnosisProblem m{d, q, {}};
    if (holds_exogenously(d, q))
        m.conflicts = {FactSet{}};
    else
        m.conflicts = endogenous_support_sets(d, q);
    return m;
}

FactFamily diagnoses(const DiagnosisProblem& m, DiagnosisKind kind, const std::optional<Fact>& containing,
                     std::size_t cap) {
    auto all = minimal_hitting_sets(m.conflicts, cap);
    FactFamily picked;
    if (containing) {
        const Fact& t = detail::require_endogenous(m.instance, *containing);
        for (const auto& s : all)
            if (s.count(t)) picked.insert(s);
    } else {
        picked = std::move(all);
    }
    if (kind == DiagnosisKind::S || picked.empty()) return picked;
    std::size_t best = picked.begin()->size();
    for (const auto& s : picked) best = std::min(best, s.size());
    FactFamily out;
    for (const auto& s : picked)
        if (s.size() == best) out.insert(s);
    return out;
}

std::vector<Repair> repairs_from_diagnoses(const DiagnosisProblem& m, DiagnosisKind kind, std::size_t cap) {
    if (!m.instance.all_endogenous())
        throw SemanticError("repairs_from_diagnoses requires an instance without exogenous facts");
    Semantics sem = kind == DiagnosisKind::S ? Semantics::S : Semantics::C;
    std::vector<Repair> out;
    for (const auto& delta : diagnoses(m, kind, std::nullopt, cap)) out.push_back(make_repair(m.instance, delta, sem));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Theory rendering

namespace {

std::vector<std::string> position_vars(std::size_t arity) {
    static const char* small[] = {"x", "y", "z"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arity; ++i)
        out.push_back(arity <= 3 ? small[i] : "x" + std::to_string(i + 1));
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string app(const std::string& pred, const std::vector<std::string>& args) {
    return args.empty() ? pred : pred + "(" + join(args, ",") + ")";
}

std::string forall(const std::vector<std::string>& vars, const std::string& body) {
    return vars.empty() ? body : "forall " + join(vars, " ") + " (" + body + ")";
}

// Extension of P (optionally only its endogenous facts) as a disjunction of equalities.
std::string extension(const Instance& d, const std::string& pred, const std::vector<std::string>& vars,
                      bool endogenous_only) {
    std::vector<std::string> rows;
    for (const auto& f : d.facts()) {
        if (f.predicate != pred || (endogenous_only && !f.endogenous())) continue;
        if (vars.empty()) return "true";
        std::vector<std::string> eqs;
        for (std::size_t i = 0; i < vars.size(); ++i) eqs.push_back(vars[i] + " = " + to_string(f.args[i]));
        rows.push_back(eqs.size() == 1 ? eqs[0] : "(" + join(eqs, " & ") + ")");
    }
    if (rows.empty()) return "false";
    return join(rows, " | ");
}

class TheoryWriter {
public:
    explicit TheoryWriter(const DiagnosisProblem& m) : m_(m) {
        for (const auto& [p, a] : m.instance.schema()) schema_[p] = a;
        for (const auto& c : m.query.disjuncts)
            for (const auto& a : c.atoms) schema_.emplace(a.predicate, a.terms.size());
        for (const auto& f : m.instance.facts())
            for (const auto& c : f.args) constants_.insert(c);
        for (const auto& c : m.query.disjuncts)
            for (const auto& a : c.atoms)
                for (const auto& t : a.terms)
                    if (!t.is_variable()) constants_.insert(t.value);
    }

    std::string run() {
        for (const auto& [p, a] : schema_) {
            auto v = position_vars(a);
            line(forall(v, app(p, v) + " <-> " + extension(m_.instance, p, v, false)));
        }
        for (const auto& [p, a] : schema_) {
            auto v = position_vars(a);
            line(forall(v, app("End_" + p, v) + " <-> " + extension(m_.instance, p, v, true)));
        }
        std::vector<Constant> cs(constants_.begin(), constants_.end());
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j)
                line("~(" + to_string(cs[i]) + " = " + to_string(cs[j]) + ")");
        for (const auto& c : m_.query.disjuncts) {
            auto names = rename(c);
            std::vector<std::string> body;
            std::vector<std::string> heads;
            for (const auto& a : c.atoms) {
                std::string args = render_args(a, names);
                body.push_back(a.predicate + args);
                heads.push_back("Ab_" + a.predicate + args);
            }
            for (const auto& i : c.inequalities)
                body.push_back("~(" + render(i.lhs, names) + " = " + render(i.rhs, names) + ")");
            line(forall(ordered_vars(c, names), join(body, " & ") + " -> " + join(heads, " | ")));
        }
        for (const auto& [p, a] : schema_) {
            auto v = position_vars(a);
            line(forall(v, app("Ab_" + p, v) + " -> " + app("End_" + p, v)));
            line(forall(v, app("End_" + p, v) + " -> " + app(p, v)));
        }
        std::vector<std::string> obs;
        for (const auto& c : m_.query.disjuncts) {
            auto names = rename(c);
            std::vector<std::string> body;
            for (const auto& a : c.atoms) body.push_back(a.predicate + render_args(a, names));
            for (const auto& i : c.inequalities)
                body.push_back("~(" + render(i.lhs, names) + " = " + render(i.rhs, names) + ")");
            auto vars = ordered_vars(c, names);
            std::string conj = join(body, " & ");
            obs.push_back(vars.empty() ? conj : "exists " + join(vars, " ") + " (" + conj + ")");
        }
        if (obs.size() == 1)
            line(obs[0]);
        else if (!obs.empty())
            line("(" + join(obs, ") | (") + ")");
        for (const auto& [p, a] : schema_) {
            auto v = position_vars(a);
            line(forall(v, app("Ab_" + p, v) + " -> false"));
        }
        return out_.str();
    }

private:
    void line(const std::string& s) { out_ << s << "\n"; }

    // Lowercase query variables unless that would collide with a constant.
    std::map<std::string, std::string> rename(const ConjunctiveQuery& c) const {
        std::map<std::string, std::string> names;
        std::set<std::string> used;
        for (const auto& k : constants_) used.insert(to_string(k));
        for (const auto& v : c.atom_variables()) {
            std::string low = v;
            for (auto& ch : low) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            if (!low.empty() && low[0] == '_') low = "v" + low;
            names[v] = used.count(low) ? v : low;
            used.insert(names[v]);
        }
        return names;
    }

    static std::string render(const Term& t, const std::map<std::string, std::string>& names) {
        return t.is_variable() ? names.at(t.var) : to_string(t.value);
    }

    static std::string render_args(const Atom& a, const std::map<std::string, std::string>& names) {
        std::vector<std::string> args;
        for (const auto& t : a.terms) args.push_back(render(t, names));
        return args.empty() ? "" : "(" + join(args, ",") + ")";
    }

    // Variables in order of first occurrence.
    static std::vector<std::string> ordered_vars(const ConjunctiveQuery& c,
                                                 const std::map<std::string, std::string>& names) {
        std::vector<std::string> out;
        for (const auto& a : c.atoms)
            for (const auto& t : a.terms)
                if (t.is_variable() && std::find(out.begin(), out.end(), names.at(t.var)) == out.end())
                    out.push_back(names.at(t.var));
        return out;
    }

    const DiagnosisProblem& m_;
    std::map<std::string, std::size_t> schema_;
    std::set<Constant> constants_;
    std::ostringstream out_;
};

}  // namespace

std::string render_theory(const DiagnosisProblem& m) { return TheoryWriter(m).run(); }

}  // namespace dbcause
