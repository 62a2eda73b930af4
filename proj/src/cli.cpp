#include "dbcause/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dbcause/causality.hpp"
#include "dbcause/diagnosis.hpp"
#include "dbcause/errors.hpp"
#include "dbcause/oracle.hpp"
#include "dbcause/preferences.hpp"
#include "dbcause/repairs.hpp"

namespace dbcause::cli {
namespace {

using json = nlohmann::json;

struct UsageError : Error {
    using Error::Error;
};

struct Options {
    std::string instance, query_file, constraint_file, priority_file;
    bool json = false;
    std::size_t max_enum = kDefaultEnumerationCap;
    std::string query_name, answer;

    std::string tuple, threshold, containing;
    std::vector<std::string> gammas, atoms;
    std::string semantics = "s", kind = "s", via = "hypergraph";
    bool with_contingencies = false, diff = false, null_mode = false, count_ids_once = false;
    bool causal = false, encode = false, emit_theory = false, show_repairs = false;
    std::size_t bound = 14;
};

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

json resp_json(const Responsibility& r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }

json facts_json(const FactSet& s) {
    json a = json::array();
    for (const auto& f : s) a.push_back(to_string(f));
    return a;
}

json family_json(const FactFamily& fam) {
    json a = json::array();
    for (const auto& s : fam) a.push_back(facts_json(s));
    return a;
}

json diff_json(const std::set<AttrChange>& diff) {
    json a = json::array();
    for (const auto& c : diff) a.push_back(to_string(c));
    return a;
}

std::string diff_text(const std::set<AttrChange>& diff) {
    std::string out = "{";
    for (const auto& c : diff) out += (out.size() > 1 ? ", " : "") + to_string(c);
    return out + "}";
}

FactSet complement(const Instance& d, const FactSet& kept) {
    FactSet out;
    for (const auto& f : d.facts())
        if (!kept.count(f)) out.insert(f);
    return out;
}

// Applies a null diff to d (oracle output has diffs only).
Instance apply_diff(const Instance& d, const std::set<AttrChange>& diff) {
    std::vector<Fact> facts = d.facts();
    for (auto& f : facts)
        for (const auto& c : diff)
            if (f.predicate == c.predicate && f.id == c.id) f.args.at(c.position - 1) = Constant::null();
    return Instance(std::move(facts));
}

class Runner {
public:
    Runner(const Options& o, std::vector<std::string> args, bool oracle)
        : o_(o), args_(std::move(args)), oracle_(oracle) {}

    std::string run(const std::string& command);

private:
    std::string read(const std::string& role, const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw UsageError("cannot read " + role + " file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        inputs_[role] = {{"path", path}, {"fnv1a64", hex64(fnv1a(ss.str()))}};
        return ss.str();
    }

    const Instance& instance() {
        if (!d_) {
            if (o_.instance.empty()) throw UsageError("missing instance file (-i)");
            d_ = parse_instance(read("instance", o_.instance));
        }
        return *d_;
    }

    UnionQuery query() {
        if (o_.query_file.empty()) throw UsageError("missing query file (-q)");
        Program p = parse_program(read("query", o_.query_file));
        const UnionQuery* q = nullptr;
        if (!o_.query_name.empty()) {
            q = p.find(o_.query_name);
            if (!q) throw SemanticError("no query named '" + o_.query_name + "'");
        } else if (p.queries.size() == 1) {
            q = &p.queries.front();
        } else {
            q = p.find("q");
            if (!q) throw SemanticError("program defines " + std::to_string(p.queries.size()) +
                                        " queries; pick one with --query-name");
        }
        UnionQuery out = *q;
        if (!o_.answer.empty()) {
            Fact holder = parse_fact("answer(" + o_.answer + ")");
            out = instantiate(out, holder.args);
        }
        return out;
    }

    DenialConstraintSet constraints() {
        if (!o_.constraint_file.empty()) {
            Program p = parse_program(read("constraints", o_.constraint_file));
            return p.constraints;
        }
        if (!o_.query_file.empty()) {
            warn("constraints derived from the query");
            return dc_of_query(query());
        }
        throw UsageError("missing constraint file (-c)");
    }

    PriorityRelation priority(bool required) {
        if (o_.priority_file.empty()) {
            if (required) throw UsageError("missing priority file (--priority)");
            return {};
        }
        return parse_priority(read("priority", o_.priority_file), instance());
    }

    Fact stored(const std::string& text) {
        Fact f = parse_fact(text);
        const Fact* s = instance().find(f);
        if (!s) throw SemanticError("fact " + to_string(f) + " is not in the instance");
        return *s;
    }

    Fact tuple() {
        if (o_.tuple.empty()) throw UsageError("missing --tuple");
        return stored(o_.tuple);
    }

    void warn(std::string w) {
        if (std::find(warnings_.begin(), warnings_.end(), w) == warnings_.end()) warnings_.push_back(std::move(w));
    }

    oracle::Bounds bounds() const { return {o_.bound}; }

    void causes();
    void responsibility_cmd();
    void mrc();
    void check_contingency();
    void repairs_cmd();
    void cqa();
    void diagnose();
    void preferred();
    void rdp();

    void emit_repairs(const std::vector<Repair>& reps);

    Options o_;
    std::vector<std::string> args_;
    bool oracle_;
    std::optional<Instance> d_;
    json inputs_ = json::object();
    json result_ = json::object();
    std::vector<std::string> warnings_;
    std::ostringstream text_;
};

void Runner::causes() {
    const Instance& d = instance();
    UnionQuery q = query();
    detail::require_boolean(q);
    bool holds = eval_boolean(d, q);
    result_["holds"] = holds;
    text_ << "query " << q.name << ": " << (holds ? "true" : "false") << "\n";
    if (!holds) warn("query is false on the instance; nothing is a cause");
    else if (holds_exogenously(d, q)) warn("query holds on exogenous facts alone; nothing is a cause");

    if (o_.null_mode) {
        NullCauses nc = oracle_ ? oracle::null_causes(d, q, o_.count_ids_once, bounds())
                                : null_causes(d, q, o_.count_ids_once, o_.max_enum);
        json attrs = json::array(), tuples = json::array();
        for (const auto& [a, r] : nc.attribute) {
            attrs.push_back({{"change", to_string(a)}, {"responsibility", resp_json(r)}});
            text_ << to_string(a) << "\t" << r.to_string() << "\n";
        }
        for (const auto& [t, r] : nc.tuple) {
            tuples.push_back({{"fact", to_string(t)}, {"responsibility", resp_json(r)}});
            text_ << to_string(t) << "\t" << r.to_string() << "\n";
        }
        result_["attribute_causes"] = attrs;
        result_["tuple_causes"] = tuples;
        return;
    }

    json list = json::array();
    if (oracle_) {
        for (const auto& [t, r] : oracle::causes_and_responsibility(d, q, bounds())) {
            json e = {{"fact", to_string(t)}, {"is_cause", !r.is_zero()}, {"responsibility", resp_json(r)}};
            text_ << to_string(t) << "\t" << r.to_string() << "\n";
            if (o_.with_contingencies) {
                FactFamily fam = r.is_zero() ? FactFamily{} : oracle::contingency_sets(d, q, t, bounds());
                e["contingencies"] = family_json(fam);
                for (const auto& g : fam) text_ << "  " << to_string(g) << "\n";
            }
            list.push_back(e);
        }
    } else {
        for (const auto& r : cause_reports(d, q, o_.with_contingencies, o_.max_enum)) {
            json e = {{"fact", to_string(r.tuple)},
                      {"is_cause", r.is_cause},
                      {"responsibility", resp_json(r.responsibility)}};
            e["minimum_contingency"] = r.minimum_contingency ? facts_json(*r.minimum_contingency) : json();
            text_ << to_string(r.tuple) << "\t" << r.responsibility.to_string();
            if (r.minimum_contingency) text_ << "\t" << to_string(*r.minimum_contingency);
            text_ << "\n";
            if (o_.with_contingencies) {
                e["contingencies"] = family_json(r.minimal_contingencies);
                for (const auto& g : r.minimal_contingencies) text_ << "  " << to_string(g) << "\n";
            }
            list.push_back(e);
        }
    }
    result_["causes"] = list;
}

void Runner::responsibility_cmd() {
    const Instance& d = instance();
    UnionQuery q = query();
    Fact t = tuple();
    detail::require_boolean(q);
    Responsibility r;
    if (oracle_) {
        auto all = oracle::causes_and_responsibility(d, q, bounds());
        auto it = all.find(t);
        if (it == all.end()) throw SemanticError("fact " + to_string(t) + " is not endogenous in the instance");
        r = it->second;
    } else {
        r = responsibility(d, q, t);
        auto g = minimum_contingency_set(d, q, t);
        result_["minimum_contingency"] = g ? facts_json(*g) : json();
    }
    result_["fact"] = to_string(t);
    result_["responsibility"] = resp_json(r);
    text_ << to_string(t) << "\t" << r.to_string() << "\n";
    if (o_.diff) {
        if (oracle_) throw UsageError("--diff has no oracle counterpart; compare with 'oracle repairs'");
        DiffSets ds = causes_via_repairs(d, q, t, o_.max_enum);
        result_["diff_s"] = family_json(ds.s);
        result_["diff_c"] = family_json(ds.c);
        text_ << "diff-s\n";
        for (const auto& s : ds.s) text_ << "  " << to_string(s) << "\n";
        text_ << "diff-c\n";
        for (const auto& s : ds.c) text_ << "  " << to_string(s) << "\n";
    }
}

void Runner::mrc() {
    const Instance& d = instance();
    UnionQuery q = query();
    MostResponsible m = oracle_ ? oracle::most_responsible_causes(d, q, bounds()) : most_responsible_causes(d, q);
    result_["causes"] = facts_json(m.causes);
    result_["responsibility"] = resp_json(m.value);
    for (const auto& f : m.causes) text_ << to_string(f) << "\t" << m.value.to_string() << "\n";
    if (m.causes.empty()) text_ << "no causes\n";
}

void Runner::check_contingency() {
    const Instance& d = instance();
    UnionQuery q = query();
    Fact t = tuple();
    FactSet gamma;
    for (const auto& g : o_.gammas) gamma.insert(stored(g));
    bool ok;
    if (!o_.priority_file.empty()) {
        PriorityRelation pc = priority(true);
        validate_causal_priority(d, q, pc);
        if (oracle_) {
            ok = false;
            for (const auto& pcause : oracle::preferred_causes(d, q, pc, bounds()))
                if (pcause.tuple == t && pcause.contingencies.count(gamma)) ok = true;
        } else {
            ok = check_preference_contingency(d, q, pc, t, gamma, o_.max_enum);
        }
    } else {
        ok = oracle_ ? oracle::check_minimal_contingency(d, q, t, gamma, bounds())
                     : check_minimal_contingency(d, q, t, gamma);
    }
    result_["fact"] = to_string(t);
    result_["gamma"] = facts_json(gamma);
    result_["minimal_contingency"] = ok;
    text_ << (ok ? "true" : "false") << "\n";
}

void Runner::emit_repairs(const std::vector<Repair>& reps) {
    json list = json::array();
    for (const auto& r : reps) {
        list.push_back({{"kept", facts_json(r.kept.fact_set())}, {"removed", facts_json(r.removed)}});
        text_ << "remove " << to_string(r.removed) << "\n";
    }
    result_["repairs"] = list;
    text_ << reps.size() << " repair(s)\n";
}

Semantics parse_semantics(const std::string& s) {
    if (s == "s") return Semantics::S;
    if (s == "c") return Semantics::C;
    if (s == "go") return Semantics::GO;
    if (s == "endo") return Semantics::ENDO;
    if (s == "null") return Semantics::NUL;
    throw UsageError("unknown semantics '" + s + "'");
}

void Runner::repairs_cmd() {
    const Instance& d = instance();
    Semantics sem = parse_semantics(o_.semantics);
    DenialConstraintSet sigma;
    PriorityRelation p;
    if (sem == Semantics::GO && o_.causal) {
        // causal priority over the query's causes, turned into a repair priority
        UnionQuery q = query();
        PriorityRelation pc = priority(true);
        validate_causal_priority(d, q, pc);
        sigma = dc_of_query(q);
        p = inverse(pc);
    } else {
        sigma = constraints();
        if (sem == Semantics::GO) {
            p = priority(true);
            validate_priority(d, sigma, p);
        }
    }
    result_["semantics"] = to_string(sem);
    if ((sem == Semantics::S || sem == Semantics::C) && !d.exogenous().empty())
        warn("exogenous tags are ignored under this semantics");

    if (sem == Semantics::NUL) {
        json list = json::array();
        auto emit = [&](const std::set<AttrChange>& diff, const Instance& res) {
            list.push_back({{"diff", diff_json(diff)}, {"facts", facts_json(res.fact_set())}});
            text_ << "nulls " << diff_text(diff) << "\n";
        };
        if (oracle_) {
            auto diffs = oracle::null_repair_diffs(d, sigma, bounds());
            for (const auto& diff : diffs) emit(diff, apply_diff(d, diff));
        } else {
            for (const auto& r : null_repairs(d, sigma, o_.max_enum)) emit(r.diff, r.result);
        }
        result_["repairs"] = list;
        text_ << list.size() << " repair(s)\n";
        return;
    }

    if (oracle_) {
        FactFamily kept = sem == Semantics::GO ? oracle::global_optimal_repairs(d, sigma, p, bounds())
                                               : oracle::repairs(d, sigma, sem, bounds());
        std::vector<Repair> reps;
        for (const auto& k : kept) reps.push_back(make_repair(d, complement(d, k), sem));
        std::sort(reps.begin(), reps.end());
        emit_repairs(reps);
        return;
    }

    std::vector<Repair> reps;
    if (o_.via == "causes") {
        if (sem != Semantics::S && sem != Semantics::C) throw UsageError("--via causes needs s or c semantics");
        reps = repairs_via_causes(d, sigma, sem, o_.max_enum);
    } else if (o_.via == "diagnoses") {
        if (sem != Semantics::S && sem != Semantics::C) throw UsageError("--via diagnoses needs s or c semantics");
        if (satisfies(d, sigma)) {
            reps.push_back(make_repair(d, {}, sem));
        } else {
            DiagnosisProblem m = build_problem(d, violation_view(sigma));
            reps = repairs_from_diagnoses(m, sem == Semantics::S ? DiagnosisKind::S : DiagnosisKind::C, o_.max_enum);
        }
    } else if (o_.via != "hypergraph") {
        throw UsageError("unknown --via '" + o_.via + "'");
    } else if (sem == Semantics::GO) {
        reps = global_optimal_repairs(d, sigma, p, o_.max_enum);
    } else if (sem == Semantics::ENDO && o_.encode) {
        EndogenousEncoding enc = encode_endogenous(d, sigma);
        reps = decode_endogenous(d, enc, global_optimal_repairs(enc.instance, enc.sigma, enc.priority, o_.max_enum));
    } else if (sem == Semantics::ENDO) {
        reps = endogenous_repairs(d, sigma, o_.max_enum);
    } else {
        reps = repairs(d, sigma, sem, o_.max_enum);
    }
    if (sem == Semantics::ENDO && reps.empty()) warn("some violation consists of exogenous facts only");
    emit_repairs(reps);
}

void Runner::cqa() {
    const Instance& d = instance();
    Semantics sem = parse_semantics(o_.semantics);
    if (sem != Semantics::S && sem != Semantics::C) throw UsageError("cqa supports s or c semantics");
    if (o_.atoms.empty()) throw UsageError("missing --atoms");
    DenialConstraintSet sigma = constraints();
    std::vector<Fact> atoms;
    for (const auto& a : o_.atoms) atoms.push_back(parse_fact(a));
    bool ok = oracle_ ? oracle::consistent_answer(d, sigma, atoms, sem, bounds())
                      : consistent_answer(d, sigma, atoms, sem);
    json a = json::array();
    for (const auto& f : atoms) a.push_back(to_string(f));
    result_["atoms"] = a;
    result_["semantics"] = to_string(sem);
    result_["consistent"] = ok;
    text_ << (ok ? "true" : "false") << "\n";
}

void Runner::diagnose() {
    const Instance& d = instance();
    UnionQuery q = query();
    DiagnosisKind kind;
    if (o_.kind == "s") kind = DiagnosisKind::S;
    else if (o_.kind == "c") kind = DiagnosisKind::C;
    else throw UsageError("unknown diagnosis kind '" + o_.kind + "'");
    std::optional<Fact> containing;
    if (!o_.containing.empty()) containing = stored(o_.containing);

    FactFamily diags;
    if (oracle_) {
        if (o_.emit_theory || o_.show_repairs) throw UsageError("the oracle reports diagnoses only");
        diags = oracle::diagnoses(d, q, kind, containing, bounds());
    } else {
        DiagnosisProblem m = build_problem(d, q);
        result_["conflicts"] = family_json(m.conflicts);
        text_ << "conflicts\n";
        for (const auto& c : m.conflicts) text_ << "  " << to_string(c) << "\n";
        diags = diagnoses(m, kind, containing, o_.max_enum);
        if (o_.show_repairs) {
            json list = json::array();
            text_ << "repairs\n";
            for (const auto& r : repairs_from_diagnoses(m, kind, o_.max_enum)) {
                list.push_back({{"kept", facts_json(r.kept.fact_set())}, {"removed", facts_json(r.removed)}});
                text_ << "  remove " << to_string(r.removed) << "\n";
            }
            result_["repairs"] = list;
        }
        if (o_.emit_theory) {
            std::string th = render_theory(m);
            result_["theory"] = th;
            text_ << "theory\n" << th;
            if (!th.empty() && th.back() != '\n') text_ << "\n";
        }
    }
    result_["diagnoses"] = family_json(diags);
    text_ << "diagnoses\n";
    for (const auto& s : diags) text_ << "  " << to_string(s) << "\n";
    if (diags.empty()) warn("no diagnosis exists");
}

void Runner::preferred() {
    const Instance& d = instance();
    UnionQuery q = query();
    PriorityRelation pc = priority(false);
    validate_causal_priority(d, q, pc);
    auto list = oracle_ ? oracle::preferred_causes(d, q, pc, bounds()) : preferred_causes(d, q, pc, o_.max_enum);
    json a = json::array();
    for (const auto& c : list) {
        a.push_back({{"fact", to_string(c.tuple)},
                     {"responsibility", resp_json(c.responsibility)},
                     {"contingencies", family_json(c.contingencies)}});
        text_ << to_string(c.tuple) << "\t" << c.responsibility.to_string() << "\n";
    }
    result_["causes"] = a;
}

void Runner::rdp() {
    const Instance& d = instance();
    UnionQuery q = query();
    Fact t = tuple();
    if (o_.threshold.empty()) throw UsageError("missing --threshold");
    Threshold v = parse_threshold(o_.threshold);
    bool yes = oracle_ ? oracle::rdp_decide(d, q, t, v, bounds()) : rdp_decide(d, q, t, v);
    result_["fact"] = to_string(t);
    result_["threshold"] = resp_json(v.value());
    result_["decision"] = yes;
    text_ << (yes ? "true" : "false") << "\n";
}

std::string Runner::run(const std::string& command) {
    static const std::map<std::string, void (Runner::*)()> table = {
        {"causes", &Runner::causes},
        {"responsibility", &Runner::responsibility_cmd},
        {"mrc", &Runner::mrc},
        {"check-contingency", &Runner::check_contingency},
        {"repairs", &Runner::repairs_cmd},
        {"cqa", &Runner::cqa},
        {"diagnose", &Runner::diagnose},
        {"preferred-causes", &Runner::preferred},
        {"rdp", &Runner::rdp},
    };
    (this->*table.at(command))();
    if (!o_.json) {
        std::string out = text_.str();
        for (const auto& w : warnings_) out += "warning: " + w + "\n";
        return out;
    }
    json report = {{"command", args_},
                   {"mode", oracle_ ? "oracle" : "engine"},
                   {"inputs", inputs_},
                   {"result", result_},
                   {"warnings", warnings_}};
    return report.dump(2) + "\n";
}

const std::vector<std::string> kCommands = {"causes", "responsibility", "mrc", "check-contingency", "repairs",
                                            "cqa", "diagnose", "preferred-causes", "rdp"};

void add_globals(CLI::App& app, Options& o) {
    app.add_option("-i,--instance", o.instance, "instance file");
    app.add_option("-q,--query", o.query_file, "query program file");
    app.add_option("-c,--constraints", o.constraint_file, "denial constraint program file");
    app.add_flag("--json", o.json, "emit a JSON report");
    app.add_option("--max-enum", o.max_enum, "enumeration cap")->check(CLI::PositiveNumber);
    app.add_option("--query-name", o.query_name, "query to use when the program defines several");
    app.add_option("--answer", o.answer, "answer tuple for an open query, e.g. \"a,b\"");
}

void add_command(CLI::App& parent, const std::string& name, Options& o, bool oracle) {
    static const std::map<std::string, std::string> help = {
        {"causes", "actual causes with responsibilities"},
        {"responsibility", "responsibility of one fact"},
        {"mrc", "most responsible causes"},
        {"check-contingency", "check that a set is an S-minimal contingency set"},
        {"repairs", "repairs under s, c, go, endo or null semantics"},
        {"cqa", "consistent query answering for ground atoms"},
        {"diagnose", "conflicts and diagnoses of the query observation"},
        {"preferred-causes", "causes under a causal priority"},
        {"rdp", "decide responsibility > threshold"},
    };
    CLI::App* c = parent.add_subcommand(name, help.at(name));
    add_globals(*c, o);
    if (oracle) c->add_option("--bound", o.bound, "oracle fact bound")->check(CLI::Range(1, 30));
    if (name == "causes") {
        c->add_flag("--with-contingencies", o.with_contingencies, "list S-minimal contingency sets");
        c->add_flag("--null", o.null_mode, "attribute-level causes from null repairs");
        c->add_flag("--count-ids-once", o.count_ids_once, "tuple responsibility counts changed tuples");
    }
    if (name == "responsibility" || name == "check-contingency" || name == "rdp")
        c->add_option("--tuple", o.tuple, "fact literal")->required();
    if (name == "responsibility") c->add_flag("--diff", o.diff, "also list repair difference sets");
    if (name == "check-contingency") {
        c->add_option("--gamma", o.gammas, "member of the candidate set (repeatable)");
        c->add_option("--priority", o.priority_file, "causal priority file");
    }
    if (name == "repairs") {
        c->add_option("--semantics", o.semantics, "s|c|go|endo|null");
        c->add_option("--priority", o.priority_file, "priority file for go");
        c->add_flag("--causal", o.causal, "read the priority as a causal priority over the query");
        if (!oracle) {
            c->add_flag("--encode", o.encode, "endo via the prioritized encoding");
            c->add_option("--via", o.via, "hypergraph|causes|diagnoses");
        }
    }
    if (name == "cqa") {
        c->add_option("--atoms", o.atoms, "ground atom (repeatable)")->required();
        c->add_option("--semantics", o.semantics, "s|c");
    }
    if (name == "diagnose") {
        c->add_option("--kind", o.kind, "s|c");
        c->add_option("--containing", o.containing, "restrict to diagnoses containing this fact");
        if (!oracle) {
            c->add_flag("--emit-theory", o.emit_theory, "print the system description");
            c->add_flag("--repairs", o.show_repairs, "repairs derived from the diagnoses");
        }
    }
    if (name == "preferred-causes") c->add_option("--priority", o.priority_file, "causal priority file");
    if (name == "rdp") c->add_option("--threshold", o.threshold, "0, 1 or 1/k")->required();
}

}  // namespace

Outcome execute(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"Causes, responsibility, repairs and diagnoses for queries over relational instances", "dbcause"};
    app.require_subcommand(1);
    add_globals(app, o);
    for (const auto& n : kCommands) add_command(app, n, o, false);
    CLI::App* orc = app.add_subcommand("oracle", "brute-force reference for small instances");
    orc->require_subcommand(1);
    for (const auto& n : kCommands) add_command(*orc, n, o, true);

    Outcome res;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        res.exit_code = app.exit(e, out, err) == 0 ? ok : usage_error;
        res.out = out.str();
        res.err = err.str();
        return res;
    }

    bool is_oracle = orc->parsed();
    CLI::App* leaf = is_oracle ? orc->get_subcommands().front() : app.get_subcommands().front();
    try {
        Runner r(o, args, is_oracle);
        res.out = r.run(leaf->get_name());
    } catch (const UsageError& e) {
        res.exit_code = usage_error;
        res.err = std::string("error: ") + e.what() + "\n";
    } catch (const ParseError& e) {
        res.exit_code = usage_error;
        res.err = std::string("parse error: ") + e.what() + "\n";
    } catch (const EnumerationCapError& e) {
        res.exit_code = cap_exceeded;
        res.err = std::string("enumeration cap: ") + e.what() + "\n";
    } catch (const SemanticError& e) {
        res.exit_code = semantic_error;
        res.err = std::string("error: ") + e.what() + "\n";
    } catch (const Error& e) {
        res.exit_code = semantic_error;
        res.err = std::string("error: ") + e.what() + "\n";
    }
    return res;
}

}  // namespace dbcause::cli
