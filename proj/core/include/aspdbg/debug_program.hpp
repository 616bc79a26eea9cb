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
#include <aspdbg/ground.hpp>
#include <aspdbg/parser.hpp>

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace aspdbg {

class InstrumentationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DebugOrigin {
    RuleId rule_id = 0;
    Substitution substitution;

    friend bool operator==(const DebugOrigin&, const DebugOrigin&) = default;
};

struct DebugInstrumentation {
    /// `_debug<id>(vars)` atoms ordered by rule id, then substitution values.
    std::vector<Atom> debug_atoms;
    /// `_support(a)` atoms in atom order.
    std::vector<Atom> support_atoms;
    std::map<Atom, DebugOrigin> rule_index;
    std::map<Atom, Atom> support_index;
    /// Original-signature atoms of the no-simplify grounding of the input, in
    /// atom-table order.
    std::vector<Atom> herbrand_base;
};

struct DebuggingProgram {
    Program program;
    DebugInstrumentation instrumentation;
    /// Ground instances per input rule id, from the no-simplify grounding.
    std::map<RuleId, std::size_t> instance_counts;
    std::vector<DroppedRuleWarning> warnings;
};

/// Support atom for `atom`; the argument is a symbol holding its text.
[[nodiscard]] Atom support_atom(const Atom& atom);
[[nodiscard]] std::string debug_predicate(RuleId rule_id);

/// `:- not a` for assertTrue(a), `:- a` for assertFalse(a). Ids start at
/// `first_id`; rules are marked synthetic.
[[nodiscard]] std::vector<Rule> make_test_constraints(const TestCase& test, RuleId first_id = 0);

[[nodiscard]] std::set<RuleId> default_background(const Program& program);

/// Throws InstrumentationError when `background` names an unknown rule.
[[nodiscard]] DebuggingProgram build_debugging_program(const Program& program, const std::set<RuleId>& background,
                                                       const GroundingOptions& options = {});

/// Adds `{x}.` for every x in A^D ∪ A^S.
[[nodiscard]] Program extend_debugging_program(const DebuggingProgram& debugging);

struct AssembledGamma {
    DebuggingProgram debugging;
    Program extended;
    std::vector<Rule> test_constraints;
    /// ground(D*_P ∪ P_T), i.e. Γ_P without the P_A facts.
    GroundProgram ground;
    /// P_A as atom ids of `ground`, debug atoms first, then support atoms.
    std::vector<AtomId> p_a;
    std::vector<AtomId> herbrand_base;
    std::vector<AtomId> asserted;
};

/// Throws InstrumentationError when an asserted atom is not in B_P and
/// GroundingError on budget overrun.
[[nodiscard]] AssembledGamma assemble_gamma(const Program& program, const TestCase& test,
                                            const std::set<RuleId>& background,
                                            const GroundingOptions& options = {});

} // namespace aspdbg
