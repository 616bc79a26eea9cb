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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

/// Non-ground program representation shared by the parser, the grounder and
/// the debugging transformation.
namespace aspdbg {

using RuleId = std::uint32_t;

/// Kinds are declared in ground total order: integers sort before symbolic
/// constants. Variables sort last and never take part in evaluation.
enum class TermKind : std::uint8_t { Integer, Symbol, Variable };

class Term {
public:
    Term() = default;

    static Term variable(std::string name);
    static Term symbol(std::string name);
    static Term integer(std::int64_t value);

    [[nodiscard]] TermKind kind() const noexcept { return kind_; }
    [[nodiscard]] bool is_variable() const noexcept { return kind_ == TermKind::Variable; }
    [[nodiscard]] bool is_ground() const noexcept { return kind_ != TermKind::Variable; }
    /// Text of a variable or symbolic constant; empty for integers.
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::int64_t value() const noexcept { return value_; }

    friend bool operator==(const Term&, const Term&) = default;
    friend std::strong_ordering operator<=>(const Term& lhs, const Term& rhs) noexcept;

private:
    TermKind kind_ = TermKind::Symbol;
    std::string name_;
    std::int64_t value_ = 0;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    [[nodiscard]] std::size_t arity() const noexcept { return args.size(); }
    [[nodiscard]] bool is_ground() const noexcept;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend std::strong_ordering operator<=>(const Atom& lhs, const Atom& rhs) noexcept;
};

struct AtomHash {
    std::size_t operator()(const Atom& atom) const noexcept;
};

struct Literal {
    Atom atom;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

[[nodiscard]] Literal complement(const Literal& literal);

enum class Relation : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

struct Comparison {
    Term left;
    Relation relation = Relation::Eq;
    Term right;

    [[nodiscard]] bool is_ground() const noexcept { return left.is_ground() && right.is_ground(); }
    /// Requires both sides ground.
    [[nodiscard]] bool evaluate() const;

    friend bool operator==(const Comparison&, const Comparison&) = default;
};

[[nodiscard]] bool evaluate(const Term& left, Relation relation, const Term& right);
[[nodiscard]] std::string_view relation_symbol(Relation relation) noexcept;

struct SourceSpan {
    std::string file;
    std::uint32_t line = 0;   // 1-based; 0 for synthetic rules
    std::uint32_t column = 0; // 1-based
    std::size_t begin = 0;    // byte offsets into the source text
    std::size_t end = 0;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Ordered variable binding. Order follows Rule::variables() of the rule it
/// instantiates.
using Substitution = std::vector<std::pair<std::string, Term>>;

struct Rule {
    RuleId id = 0;
    std::vector<Atom> head; // empty: constraint
    std::vector<Literal> body;
    std::vector<Comparison> comparisons;
    SourceSpan span;
    /// Introduced by a program transformation (support, choice and test rules)
    /// rather than written by the user.
    bool synthetic = false;

    [[nodiscard]] bool is_fact() const noexcept;
    [[nodiscard]] bool is_constraint() const noexcept { return head.empty(); }
    /// True for the desugared form `a | _f_<n>.` of a choice rule `{a}.`
    [[nodiscard]] bool is_choice() const noexcept;
    [[nodiscard]] bool is_ground() const noexcept;

    /// Variables in instrumentation order: first occurrence when scanning the
    /// positive body atoms argument position by argument position, so that
    /// `:- col(X,C1), col(Y,C2), edge(X,Y)` yields X, Y, C1, C2. Variables
    /// missing from the positive body (unsafe rules only) follow in source
    /// order.
    [[nodiscard]] std::vector<std::string> variables() const;
};

struct Program {
    std::vector<Rule> rules;
    std::set<RuleId> background_ids;
    /// Number of `_f_<n>` atoms already handed out by choice desugaring.
    std::uint32_t fresh_atoms = 0;

    [[nodiscard]] const Rule* find(RuleId id) const noexcept;
    [[nodiscard]] RuleId next_rule_id() const noexcept;
};

/// Structural equality ignoring source spans.
[[nodiscard]] bool equivalent(const Rule& lhs, const Rule& rhs);
[[nodiscard]] bool equivalent(const Program& lhs, const Program& rhs);

// Reserved predicate namespaces.
inline constexpr std::string_view kFreshPrefix = "_f_";
inline constexpr std::string_view kDebugPrefix = "_debug";
inline constexpr std::string_view kSupportPredicate = "_support";

[[nodiscard]] bool is_reserved_predicate(std::string_view predicate) noexcept;
[[nodiscard]] bool is_fresh_predicate(std::string_view predicate) noexcept;
[[nodiscard]] bool is_debug_predicate(std::string_view predicate) noexcept;
[[nodiscard]] bool is_support_predicate(std::string_view predicate) noexcept;

/// Hands out `_f_0`, `_f_1`, ... atoms.
class FreshAtoms {
public:
    explicit FreshAtoms(std::uint32_t next = 0) noexcept : next_(next) {}
    Atom next();
    [[nodiscard]] std::uint32_t count() const noexcept { return next_; }

private:
    std::uint32_t next_;
};

/// Rewrites the choice `{atom}` into `atom | _f_<n>.` Throws
/// std::invalid_argument for a non-ground atom.
[[nodiscard]] Rule desugar_choice(const Atom& atom, FreshAtoms& fresh);

struct SafetyViolation {
    std::string variable;
};

/// First variable (head, then literals, then comparisons) that has no
/// occurrence in a positive body literal.
[[nodiscard]] std::optional<SafetyViolation> check_safety(const Rule& rule);

[[nodiscard]] Term apply(const Term& term, const Substitution& substitution);
[[nodiscard]] Atom apply(const Atom& atom, const Substitution& substitution);
/// Instantiates head, body and comparisons. Unbound variables stay.
[[nodiscard]] Rule instantiate(const Rule& rule, const Substitution& substitution);

[[nodiscard]] std::string to_string(const Term& term);
[[nodiscard]] std::string to_string(const Atom& atom);
[[nodiscard]] std::string to_string(const Literal& literal);
[[nodiscard]] std::string to_string(const Comparison& comparison);
/// Textual rule syntax; desugared choices print as `{a}.`
[[nodiscard]] std::string to_string(const Rule& rule);
/// `X=1, Y=2`
[[nodiscard]] std::string to_string(const Substitution& substitution);

std::ostream& operator<<(std::ostream& out, const Term& term);
std::ostream& operator<<(std::ostream& out, const Atom& atom);
std::ostream& operator<<(std::ostream& out, const Rule& rule);
std::ostream& operator<<(std::ostream& out, const Program& program);

} // namespace aspdbg
