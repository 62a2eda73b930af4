#include "dbcause/relational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dbcause/errors.hpp"
#include "lexer.hpp"

namespace dbcause {

Instance::Instance(std::vector<Fact> facts) {
    std::sort(facts.begin(), facts.end());
    for (auto& f : facts) {
        if (!facts_.empty() && facts_.back() == f) {
            if (facts_.back().tag != f.tag)
                throw SemanticError("fact " + to_string(f) + " is tagged both endogenous and exogenous");
            continue;
        }
        facts_.push_back(std::move(f));
    }
}

std::vector<Fact> Instance::endogenous() const {
    std::vector<Fact> out;
    std::copy_if(facts_.begin(), facts_.end(), std::back_inserter(out),
                 [](const Fact& f) { return f.endogenous(); });
    return out;
}

std::vector<Fact> Instance::exogenous() const {
    std::vector<Fact> out;
    std::copy_if(facts_.begin(), facts_.end(), std::back_inserter(out),
                 [](const Fact& f) { return !f.endogenous(); });
    return out;
}

bool Instance::all_endogenous() const {
    return std::all_of(facts_.begin(), facts_.end(), [](const Fact& f) { return f.endogenous(); });
}

const Fact* Instance::find(const Fact& f) const {
    auto it = std::lower_bound(facts_.begin(), facts_.end(), f);
    return (it != facts_.end() && *it == f) ? &*it : nullptr;
}

bool Instance::contains(const Fact& f) const { return find(f) != nullptr; }

Instance Instance::without(const FactSet& removed) const {
    Instance out;
    out.facts_.reserve(facts_.size());
    for (const auto& f : facts_)
        if (!removed.count(f)) out.facts_.push_back(f);
    return out;
}

Instance Instance::with(const std::vector<Fact>& added) const {
    std::vector<Fact> all = facts_;
    all.insert(all.end(), added.begin(), added.end());
    return Instance(std::move(all));
}

std::map<std::string, std::size_t> Instance::schema() const {
    std::map<std::string, std::size_t> out;
    for (const auto& f : facts_) out.emplace(f.predicate, f.arity());
    return out;
}

Instance parse_instance(std::string_view source) {
    detail::TokenStream ts(detail::tokenize(source));
    std::vector<Fact> facts;
    std::map<std::string, std::pair<std::size_t, detail::Token>> arities;
    std::map<std::uint64_t, detail::Token> ids;
    Tag tag = Tag::endogenous;
    while (!ts.at(detail::TokenKind::end)) {
        if (ts.at(detail::TokenKind::directive)) {
            const auto& d = ts.next();
            if (d.text == "endogenous")
                tag = Tag::endogenous;
            else if (d.text == "exogenous")
                tag = Tag::exogenous;
            else
                detail::TokenStream::fail_at(d, "unknown directive '@" + d.text + "'");
            continue;
        }
        const detail::Token start = ts.peek();
        Fact f = detail::parse_fact_tokens(ts, tag, true);
        auto [it, fresh] = arities.emplace(f.predicate, std::make_pair(f.arity(), start));
        if (!fresh && it->second.first != f.arity())
            throw SemanticError(std::to_string(start.line) + ":" + std::to_string(start.column) +
                                ": predicate " + f.predicate + " used with arity " +
                                std::to_string(f.arity()) + " but earlier with arity " +
                                std::to_string(it->second.first));
        if (f.id) {
            auto [iit, new_id] = ids.emplace(*f.id, start);
            if (!new_id)
                throw SemanticError(std::to_string(start.line) + ":" + std::to_string(start.column) +
                                    ": duplicate tuple id " + std::to_string(*f.id));
        }
        facts.push_back(std::move(f));
    }
    return Instance(std::move(facts));
}

Fact parse_fact(std::string_view text) {
    detail::TokenStream ts(detail::tokenize(text));
    Fact f = detail::parse_fact_tokens(ts, Tag::endogenous, false);
    ts.accept(detail::TokenKind::period);
    if (!ts.at(detail::TokenKind::end)) ts.fail("trailing input after fact");
    return f;
}

FactSet delta(const Instance& d, const Instance& d_prime) {
    FactSet out;
    for (const auto& f : d.facts()) {
        const Fact* other = d_prime.find(f);
        if (!other)
            out.insert(f);
        else if (other->tag != f.tag)
            throw SemanticError("fact " + to_string(f) + " has different tags in the two instances");
    }
    for (const auto& f : d_prime.facts())
        if (!d.contains(f)) out.insert(f);
    return out;
}

std::vector<Diagnostic> check_wellformed(const std::vector<Fact>& facts) {
    std::vector<Diagnostic> out;
    std::map<std::string, std::size_t> arity;
    std::map<std::uint64_t, std::size_t> id_count;
    std::map<Fact, Tag> tags;
    for (const auto& f : facts) {
        auto [it, fresh] = arity.emplace(f.predicate, f.arity());
        if (!fresh && it->second != f.arity())
            out.push_back({"arity conflict: " + f.predicate + " used with arities " +
                           std::to_string(it->second) + " and " + std::to_string(f.arity())});
        if (f.id && ++id_count[*f.id] == 2)
            out.push_back({"duplicate tuple id " + std::to_string(*f.id)});
        auto [tit, tfresh] = tags.emplace(f, f.tag);
        if (!tfresh && tit->second != f.tag)
            out.push_back({"fact " + to_string(f) + " tagged both endogenous and exogenous"});
    }
    return out;
}

std::vector<Diagnostic> check_wellformed(const Instance& d) { return check_wellformed(d.facts()); }

namespace {

bool bare_token(const std::string& s) {
    if (s.empty() || s == "null") return false;
    if (std::islower(static_cast<unsigned char>(s[0]))) {
        return std::all_of(s.begin(), s.end(),
                           [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
    }
    std::size_t start = s[0] == '-' ? 1 : 0;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

std::string to_string(const Constant& c) {
    if (c.is_null) return "null";
    if (bare_token(c.text)) return c.text;
    std::string out = "\"";
    for (char ch : c.text) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

std::string to_string(const Fact& f) {
    std::string out = f.predicate + "(";
    if (f.id) out += std::to_string(*f.id) + ";";
    for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ",";
        out += to_string(f.args[i]);
    }
    out += ")";
    return out;
}

std::string to_string(const FactSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& f : s) {
        if (!first) out += ", ";
        first = false;
        out += to_string(f);
    }
    return out + "}";
}

std::string serialize(const Instance& d) {
    std::ostringstream os;
    auto section = [&](Tag tag, const char* header) {
        bool any = false;
        for (const auto& f : d.facts()) {
            if (f.tag != tag) continue;
            if (!any) os << header << "\n";
            any = true;
            os << to_string(f) << ".\n";
        }
    };
    section(Tag::endogenous, "@endogenous");
    section(Tag::exogenous, "@exogenous");
    return os.str();
}

}  // namespace dbcause
