// Copyright 2026 The aspdbg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <aspdbg/ast.hpp>

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aspdbg {

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = TermKind::Variable;
    t.name_ = std::move(name);
    return t;
}

Term Term::symbol(std::string name) {
    Term t;
    t.kind_ = TermKind::Symbol;
    t.name_ = std::move(name);
    return t;
}

Term Term::integer(std::int64_t value) {
    Term t;
    t.kind_ = TermKind::Integer;
    t.value_ = value;
    return t;
}

std::strong_ordering operator<=>(const Term& lhs, const Term& rhs) noexcept {
    if (lhs.kind_ != rhs.kind_) {
        return lhs.kind_ <=> rhs.kind_;
    }
    if (lhs.kind_ == TermKind::Integer) {
        return lhs.value_ <=> rhs.value_;
    }
    return lhs.name_.compare(rhs.name_) <=> 0;
}

bool Atom::is_ground() const noexcept {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

std::strong_ordering operator<=>(const Atom& lhs, const Atom& rhs) noexcept {
    if (auto c = lhs.predicate.compare(rhs.predicate) <=> 0; c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(lhs.args.begin(), lhs.args.end(), rhs.args.begin(),
                                                  rhs.args.end());
}

std::size_t AtomHash::operator()(const Atom& atom) const noexcept {
    std::size_t seed = std::hash<std::string>{}(atom.predicate);
    for (const Term& t : atom.args) {
        std::size_t h = t.kind() == TermKind::Integer ? std::hash<std::int64_t>{}(t.value())
                                                      : std::hash<std::string>{}(t.name());
        seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
}

Literal complement(const Literal& literal) {
    return Literal{literal.atom, !literal.negated};
}

bool evaluate(const Term& left, Relation relation, const Term& right) {
    if (!left.is_ground() || !right.is_ground()) {
        throw std::logic_error("comparison over non-ground terms");
    }
    auto c = left <=> right;
    switch (relation) {
    case Relation::Eq: return c == 0;
    case Relation::Ne: return c != 0;
    case Relation::Lt: return c < 0;
    case Relation::Le: return c <= 0;
    case Relation::Gt: return c > 0;
    case Relation::Ge: return c >= 0;
    }
    return false;
}

bool Comparison::evaluate() const {
    return aspdbg::evaluate(left, relation, right);
}

std::string_view relation_symbol(Relation relation) noexcept {
    switch (relation) {
    case Relation::Eq: return "=";
    case Relation::Ne: return "!=";
    case Relation::Lt: return "<";
    case Relation::Le: return "<=";
    case Relation::Gt: return ">";
    case Relation::Ge: return ">=";
    }
    return "?";
}

bool Rule::is_fact() const noexcept {
    return head.size() == 1 && body.empty() && comparisons.empty();
}

bool Rule::is_choice() const noexcept {
    return head.size() == 2 && body.empty() && comparisons.empty() && is_fresh_predicate(head[1].predicate) &&
           !is_fresh_predicate(head[0].predicate);
}

bool Rule::is_ground() const noexcept {
    auto atom_ground = [](const Atom& a) { return a.is_ground(); };
    return std::all_of(head.begin(), head.end(), atom_ground) &&
           std::all_of(body.begin(), body.end(), [](const Literal& l) { return l.atom.is_ground(); }) &&
           std::all_of(comparisons.begin(), comparisons.end(), [](const Comparison& c) { return c.is_ground(); });
}

namespace {

void collect_variables(const Atom& atom, std::vector<std::string>& out) {
    for (const Term& t : atom.args) {
        if (t.is_variable() && std::find(out.begin(), out.end(), t.name()) == out.end()) {
            out.push_back(t.name());
        }
    }
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
    if (t.is_variable() && std::find(out.begin(), out.end(), t.name()) == out.end()) {
        out.push_back(t.name());
    }
}

// Source-order variable occurrences: head, literals, comparisons.
std::vector<std::string> variables_in_source_order(const Rule& rule) {
    std::vector<std::string> vars;
    for (const Atom& a : rule.head) {
        collect_variables(a, vars);
    }
    for (const Literal& l : rule.body) {
        collect_variables(l.atom, vars);
    }
    for (const Comparison& c : rule.comparisons) {
        collect_variables(c.left, vars);
        collect_variables(c.right, vars);
    }
    return vars;
}

} // namespace

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> vars;
    std::size_t max_arity = 0;
    for (const Literal& l : body) {
        if (!l.negated) {
            max_arity = std::max(max_arity, l.atom.arity());
        }
    }
    for (std::size_t pos = 0; pos < max_arity; ++pos) {
        for (const Literal& l : body) {
            if (!l.negated && pos < l.atom.arity()) {
                collect_variables(l.atom.args[pos], vars);
            }
        }
    }
    for (const std::string& v : variables_in_source_order(*this)) {
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
            vars.push_back(v);
        }
    }
    return vars;
}

const Rule* Program::find(RuleId id) const noexcept {
    auto it = std::find_if(rules.begin(), rules.end(), [id](const Rule& r) { return r.id == id; });
    return it == rules.end() ? nullptr : &*it;
}

RuleId Program::next_rule_id() const noexcept {
    RuleId next = 1;
    for (const Rule& r : rules) {
        next = std::max(next, r.id + 1);
    }
    return next;
}

bool equivalent(const Rule& lhs, const Rule& rhs) {
    return lhs.id == rhs.id && lhs.head == rhs.head && lhs.body == rhs.body && lhs.comparisons == rhs.comparisons &&
           lhs.synthetic == rhs.synthetic;
}

bool equivalent(const Program& lhs, const Program& rhs) {
    return lhs.background_ids == rhs.background_ids && lhs.fresh_atoms == rhs.fresh_atoms &&
           std::equal(lhs.rules.begin(), lhs.rules.end(), rhs.rules.begin(), rhs.rules.end(),
                      [](const Rule& a, const Rule& b) { return equivalent(a, b); });
}

bool is_fresh_predicate(std::string_view predicate) noexcept {
    return predicate.starts_with(kFreshPrefix);
}

bool is_debug_predicate(std::string_view predicate) noexcept {
    return predicate.starts_with(kDebugPrefix);
}

bool is_support_predicate(std::string_view predicate) noexcept {
    return predicate == kSupportPredicate;
}

bool is_reserved_predicate(std::string_view predicate) noexcept {
    return is_fresh_predicate(predicate) || is_debug_predicate(predicate) ||
           predicate.starts_with(kSupportPredicate);
}

Atom FreshAtoms::next() {
    return Atom{std::string(kFreshPrefix) + std::to_string(next_++), {}};
}

Rule desugar_choice(const Atom& atom, FreshAtoms& fresh) {
    if (!atom.is_ground()) {
        throw std::invalid_argument("choice over non-ground atom");
    }
    Rule rule;
    rule.head.push_back(atom);
    rule.head.push_back(fresh.next());
    return rule;
}

std::optional<SafetyViolation> check_safety(const Rule& rule) {
    std::vector<std::string> bound;
    for (const Literal& l : rule.body) {
        if (!l.negated) {
            collect_variables(l.atom, bound);
        }
    }
    for (const std::string& v : variables_in_source_order(rule)) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) {
            return SafetyViolation{v};
        }
    }
    return std::nullopt;
}

Term apply(const Term& term, const Substitution& substitution) {
    if (!term.is_variable()) {
        return term;
    }
    for (const auto& [name, value] : substitution) {
        if (name == term.name()) {
            return value;
        }
    }
    return term;
}

Atom apply(const Atom& atom, const Substitution& substitution) {
    Atom out{atom.predicate, {}};
    out.args.reserve(atom.args.size());
    for (const Term& t : atom.args) {
        out.args.push_back(aspdbg::apply(t, substitution));
    }
    return out;
}

Rule instantiate(const Rule& rule, const Substitution& substitution) {
    Rule out = rule;
    for (Atom& a : out.head) {
        a = aspdbg::apply(a, substitution);
    }
    for (Literal& l : out.body) {
        l.atom = aspdbg::apply(l.atom, substitution);
    }
    for (Comparison& c : out.comparisons) {
        c.left = aspdbg::apply(c.left, substitution);
        c.right = aspdbg::apply(c.right, substitution);
    }
    return out;
}

std::string to_string(const Term& term) {
    return term.kind() == TermKind::Integer ? std::to_string(term.value()) : term.name();
}

std::string to_string(const Atom& atom) {
    std::string out = atom.predicate;
    if (!atom.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += to_string(atom.args[i]);
        }
        out += ')';
    }
    return out;
}

std::string to_string(const Literal& literal) {
    return literal.negated ? "not " + to_string(literal.atom) : to_string(literal.atom);
}

std::string to_string(const Comparison& comparison) {
    std::string out = to_string(comparison.left);
    out += ' ';
    out += relation_symbol(comparison.relation);
    out += ' ';
    out += to_string(comparison.right);
    return out;
}

std::string to_string(const Rule& rule) {
    if (rule.is_choice()) {
        return "{" + to_string(rule.head[0]) + "}.";
    }
    std::string out;
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
        if (i > 0) {
            out += " | ";
        }
        out += to_string(rule.head[i]);
    }
    if (!rule.body.empty() || !rule.comparisons.empty()) {
        out += rule.head.empty() ? ":- " : " :- ";
        bool first = true;
        for (const Literal& l : rule.body) {
            out += first ? "" : ", ";
            out += to_string(l);
            first = false;
        }
        for (const Comparison& c : rule.comparisons) {
            out += first ? "" : ", ";
            out += to_string(c);
            first = false;
        }
    } else if (rule.head.empty()) {
        out += ":-";
    }
    out += '.';
    return out;
}

std::string to_string(const Substitution& substitution) {
    std::string out;
    for (const auto& [name, value] : substitution) {
        if (!out.empty()) {
            out += ", ";
        }
        out += name + "=" + to_string(value);
    }
    return out;
}

std::ostream& operator<<(std::ostream& out, const Term& term) {
    return out << to_string(term);
}

std::ostream& operator<<(std::ostream& out, const Atom& atom) {
    return out << to_string(atom);
}

std::ostream& operator<<(std::ostream& out, const Rule& rule) {
    return out << to_string(rule);
}

std::ostream& operator<<(std::ostream& out, const Program& program) {
    for (const Rule& r : program.rules) {
        out << to_string(r) << '\n';
    }
    return out;
}

} // namespace aspdbg
