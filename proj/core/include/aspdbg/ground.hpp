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

#include <aspdbg/ast.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace aspdbg {

using AtomId = std::uint32_t;

/// Bijection between ground atoms and dense indices, in first-occurrence
/// order.
class AtomTable {
public:
    AtomId intern(const Atom& atom);
    [[nodiscard]] std::optional<AtomId> find(const Atom& atom) const;
    [[nodiscard]] const Atom& atom(AtomId id) const { return atoms_.at(id); }
    [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }
    [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }

private:
    std::vector<Atom> atoms_;
    std::unordered_map<Atom, AtomId, AtomHash> index_;
};

struct GroundRule {
    /// Id of the rule this instantiates; empty for rules injected after
    /// grounding (facts, answer constraints).
    std::optional<RuleId> origin_rule_id;
    Substitution substitution;
    std::vector<AtomId> head;
    std::vector<AtomId> positive_body;
    std::vector<AtomId> negative_body;
    bool synthetic = false;

    friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

/// A non-ground rule whose every ground instance was dropped.
struct DroppedRuleWarning {
    RuleId rule_id = 0;

    friend bool operator==(const DroppedRuleWarning&, const DroppedRuleWarning&) = default;
};

struct GroundProgram {
    std::vector<GroundRule> rules;
    AtomTable atoms;
    std::vector<DroppedRuleWarning> warnings;

    /// Atoms of user predicates (no `_f_`, `_debug`, `_support`) in table
    /// order.
    [[nodiscard]] std::vector<AtomId> herbrand_base() const;
};

enum class GroundingMode {
    /// Solver-oriented: instantiate only over derivable atoms and drop
    /// negative literals over atoms that can never hold.
    Simplify,
    /// Debugging: every instance over the extent over-approximation is kept
    /// verbatim, including variable-free rules with underivable bodies.
    NoSimplify,
};

struct GroundingOptions {
    GroundingMode mode = GroundingMode::NoSimplify;
    std::size_t budget = 1'000'000;
};

class GroundingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Constants (symbolic and integer) occurring anywhere in the program.
[[nodiscard]] std::set<Term> herbrand_universe(const Program& program);

/// Bottom-up instantiation. Predicate extents come from a semi-naive least
/// fixpoint that ignores negation and treats every head atom of a fired
/// instance as derivable; in NoSimplify mode negative body atoms and every
/// atom of a variable-free rule join the extents too, so the atom table is
/// itself a fixpoint. Throws GroundingError when more than `budget` ground
/// rules (or extent tuples) would be produced.
[[nodiscard]] GroundProgram ground(const Program& program, const GroundingOptions& options = {});

/// The program extended with one choice rule per user atom in the ground
/// program's atom table. Regrounding it in Simplify mode reproduces the
/// NoSimplify grounding of `program` plus the added choice rules (which are
/// marked synthetic).
[[nodiscard]] Program anti_simplification_closure(const GroundProgram& ground, const Program& program);

[[nodiscard]] std::string to_string(const GroundRule& rule, const AtomTable& atoms);

/// Ground rules in textual syntax, then `% atom <index> <atom>` lines and
/// `% warning: rule <id> dropped` lines.
void print(std::ostream& out, const GroundProgram& program);

} // namespace aspdbg
