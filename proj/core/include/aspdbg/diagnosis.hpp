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

#include <aspdbg/debug_program.hpp>
#include <aspdbg/solver.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aspdbg {

class SessionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Subset of P_A (atom ids of the debugging grounding), in P_A order.
struct Reason {
    std::vector<AtomId> facts;
    bool minimal = false;

    friend bool operator==(const Reason&, const Reason&) = default;
};

struct Query {
    AtomId atom = 0;
    std::size_t q_plus = 0;
    std::size_t q_minus = 0;
    std::size_t score = 0;

    friend bool operator==(const Query&, const Query&) = default;
};

struct Answer {
    AtomId atom = 0;
    bool value = false;

    friend bool operator==(const Answer&, const Answer&) = default;
};

enum class SessionStatus {
    /// Reason found and informative queries remain.
    Active,
    /// The reason is a single fact, i.e. one source finding.
    Narrowed,
    /// No query splits the sampled answer sets.
    Exhausted,
    /// The answers alone make the program incoherent; undo is needed.
    AnswersInconsistent,
    /// P ∪ P_T is coherent: nothing to debug.
    TestPassed,
};

[[nodiscard]] std::string_view to_string(SessionStatus status) noexcept;
[[nodiscard]] bool is_terminal(SessionStatus status) noexcept;

struct SessionOptions {
    std::size_t max_models_per_query = 10;
    /// Run the per-element enumerations of compute_queries concurrently.
    bool parallel = true;
    GroundingOptions grounding;
};

/// Immutable inputs shared by every state of one session.
struct SessionContext {
    Program program;
    TestCase test;
    AssembledGamma gamma;
    SessionOptions options;
};

[[nodiscard]] std::shared_ptr<const SessionContext> make_session_context(Program program, TestCase test,
                                                                        const std::set<RuleId>& background,
                                                                        SessionOptions options = {});

struct SessionState {
    std::shared_ptr<const SessionContext> context;
    /// Γ_P \ P_A plus one constraint per answer.
    GroundProgram gamma;
    std::vector<Answer> answered;
    Reason reason;
    std::vector<Query> queries;
    SessionStatus status = SessionStatus::Active;

    [[nodiscard]] const AtomTable& atoms() const { return gamma.atoms; }
};

/// Equality of everything derived by the session (context excluded).
[[nodiscard]] bool same_outcome(const SessionState& lhs, const SessionState& rhs);

[[nodiscard]] SessionState start_session(std::shared_ptr<const SessionContext> context);

/// (gamma ∪ facts) incoherent.
[[nodiscard]] bool is_reason(const SessionState& state, std::span<const AtomId> facts);

/// QuickXplain over P_A; empty with minimal = true when the answers alone
/// are contradictory.
[[nodiscard]] Reason minimize_reason(const SessionState& state);

[[nodiscard]] std::vector<Query> compute_queries(const SessionState& state);

/// Answer pools used by compute_queries, one per element of the reason.
[[nodiscard]] std::vector<std::vector<Interpretation>> sample_pools(const SessionState& state,
                                                                    std::size_t limit);

/// Throws SessionError "atom already constrained" for asserted or answered
/// atoms and "not a query atom" for atoms outside B_P.
[[nodiscard]] SessionState apply_answer(const SessionState& state, AtomId atom, bool value);

/// Replays the first `to_step` answers; throws std::out_of_range.
[[nodiscard]] SessionState undo(const SessionState& state, std::size_t to_step);

/// B_P atom whose text matches (whitespace ignored).
[[nodiscard]] std::optional<AtomId> find_query_atom(const SessionState& state, std::string_view text);

struct RuleFinding {
    RuleId rule_id = 0;
    std::vector<Substitution> substitutions;
    std::vector<std::string> ground_instances;
    SourceSpan span;

    friend bool operator==(const RuleFinding&, const RuleFinding&) = default;
};

struct SupportFinding {
    Atom atom;
    std::vector<RuleId> candidate_rule_ids;

    friend bool operator==(const SupportFinding&, const SupportFinding&) = default;
};

using Finding = std::variant<RuleFinding, SupportFinding>;

/// Debug facts become rule findings (merged per rule), support facts become
/// unsupported-atom findings naming every rule with a matching head.
[[nodiscard]] std::vector<Finding> map_to_source(const Reason& reason, const AtomTable& atoms,
                                                 const DebugInstrumentation& instrumentation,
                                                 const Program& program);

[[nodiscard]] std::vector<Finding> findings(const SessionState& state);

} // namespace aspdbg
