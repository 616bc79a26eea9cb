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

#include <aspdbg/diagnosis.hpp>
#include <aspdbg/quickxplain.hpp>

#include <algorithm>
#include <cctype>
#include <future>

namespace aspdbg {

std::string_view to_string(SessionStatus status) noexcept {
    switch (status) {
    case SessionStatus::Active: return "active";
    case SessionStatus::Narrowed: return "narrowed";
    case SessionStatus::Exhausted: return "exhausted";
    case SessionStatus::AnswersInconsistent: return "answers_inconsistent";
    case SessionStatus::TestPassed: return "test_passed";
    }
    return "unknown";
}

bool is_terminal(SessionStatus status) noexcept {
    return status != SessionStatus::Active;
}

std::shared_ptr<const SessionContext> make_session_context(Program program, TestCase test,
                                                           const std::set<RuleId>& background,
                                                           SessionOptions options) {
    auto context = std::make_shared<SessionContext>();
    context->gamma = assemble_gamma(program, test, background, options.grounding);
    context->program = std::move(program);
    context->test = std::move(test);
    context->options = options;
    return context;
}

bool same_outcome(const SessionState& lhs, const SessionState& rhs) {
    return lhs.gamma.rules == rhs.gamma.rules && lhs.answered == rhs.answered && lhs.reason == rhs.reason &&
           lhs.queries == rhs.queries && lhs.status == rhs.status;
}

bool is_reason(const SessionState& state, std::span<const AtomId> facts) {
    return check_coherence(state.gamma, facts) == Coherence::Incoherent;
}

Reason minimize_reason(const SessionState& state) {
    const std::vector<AtomId>& p_a = state.context->gamma.p_a;
    Reason reason;
    reason.facts = quickxplain(p_a, [&](const std::vector<AtomId>& facts) { return is_reason(state, facts); });
    reason.minimal = true;
    std::vector<AtomId> smaller;
    for (std::size_t i = 0; i < reason.facts.size(); ++i) {
        smaller = reason.facts;
        smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
        if (is_reason(state, smaller)) {
            throw std::logic_error("reason is not minimal");
        }
    }
    return reason;
}

std::vector<std::vector<Interpretation>> sample_pools(const SessionState& state, std::size_t limit) {
    const std::vector<AtomId>& facts = state.reason.facts;
    auto pool_without = [&](std::size_t skip) {
        std::vector<AtomId> rest;
        for (std::size_t i = 0; i < facts.size(); ++i) {
            if (i != skip) {
                rest.push_back(facts[i]);
            }
        }
        return enumerate_answer_sets(state.gamma, limit, rest).models;
    };
    std::vector<std::vector<Interpretation>> pools(facts.size());
    if (state.context->options.parallel && facts.size() > 1) {
        std::vector<std::future<std::vector<Interpretation>>> jobs;
        for (std::size_t i = 0; i < facts.size(); ++i) {
            jobs.push_back(std::async(std::launch::async, pool_without, i));
        }
        for (std::size_t i = 0; i < facts.size(); ++i) {
            pools[i] = jobs[i].get();
        }
    } else {
        for (std::size_t i = 0; i < facts.size(); ++i) {
            pools[i] = pool_without(i);
        }
    }
    return pools;
}

namespace {

bool constrained(const SessionState& state, AtomId atom) {
    const std::vector<AtomId>& asserted = state.context->gamma.asserted;
    return std::find(asserted.begin(), asserted.end(), atom) != asserted.end() ||
           std::any_of(state.answered.begin(), state.answered.end(), [&](const Answer& a) { return a.atom == atom; });
}

void refresh(SessionState& state) {
    state.queries.clear();
    if (state.answered.empty() && !is_reason(state, state.context->gamma.p_a)) {
        state.reason = Reason{};
        state.status = SessionStatus::TestPassed;
        return;
    }
    state.reason = minimize_reason(state);
    if (state.reason.facts.empty()) {
        state.status = SessionStatus::AnswersInconsistent;
    } else if (state.reason.facts.size() == 1) {
        state.status = SessionStatus::Narrowed;
    } else {
        state.queries = compute_queries(state);
        state.status = state.queries.empty() ? SessionStatus::Exhausted : SessionStatus::Active;
    }
}

std::string strip_spaces(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) == 0) {
            out.push_back(c);
        }
    }
    return out;
}

} // namespace

std::vector<Query> compute_queries(const SessionState& state) {
    std::vector<std::vector<Interpretation>> pools = sample_pools(state, state.context->options.max_models_per_query);
    std::vector<Query> queries;
    for (AtomId atom : state.context->gamma.herbrand_base) {
        if (constrained(state, atom)) {
            continue;
        }
        Query q{atom, 0, 0, 0};
        for (const auto& pool : pools) {
            for (const Interpretation& model : pool) {
                ++(model.contains(atom) ? q.q_plus : q.q_minus);
            }
        }
        if (q.q_plus == 0 || q.q_minus == 0) {
            continue;
        }
        q.score = q.q_plus > q.q_minus ? q.q_plus - q.q_minus : q.q_minus - q.q_plus;
        queries.push_back(q);
    }
    std::sort(queries.begin(), queries.end(), [](const Query& a, const Query& b) {
        return a.score != b.score ? a.score < b.score : a.atom < b.atom;
    });
    return queries;
}

SessionState start_session(std::shared_ptr<const SessionContext> context) {
    SessionState state;
    state.gamma = context->gamma.ground;
    state.context = std::move(context);
    refresh(state);
    return state;
}

SessionState apply_answer(const SessionState& state, AtomId atom, bool value) {
    const std::vector<AtomId>& base = state.context->gamma.herbrand_base;
    if (std::find(base.begin(), base.end(), atom) == base.end()) {
        throw SessionError("not a query atom");
    }
    if (constrained(state, atom)) {
        throw SessionError("atom already constrained");
    }
    SessionState next = state;
    GroundRule constraint;
    constraint.synthetic = true;
    (value ? constraint.negative_body : constraint.positive_body).push_back(atom);
    next.gamma.rules.push_back(std::move(constraint));
    next.answered.push_back(Answer{atom, value});
    refresh(next);
    return next;
}

SessionState undo(const SessionState& state, std::size_t to_step) {
    if (to_step > state.answered.size()) {
        throw std::out_of_range("undo step out of range");
    }
    SessionState replay = start_session(state.context);
    for (std::size_t i = 0; i < to_step; ++i) {
        replay = apply_answer(replay, state.answered[i].atom, state.answered[i].value);
    }
    return replay;
}

std::optional<AtomId> find_query_atom(const SessionState& state, std::string_view text) {
    std::string wanted = strip_spaces(text);
    for (AtomId id : state.context->gamma.herbrand_base) {
        if (to_string(state.atoms().atom(id)) == wanted) {
            return id;
        }
    }
    return std::nullopt;
}

std::vector<Finding> map_to_source(const Reason& reason, const AtomTable& atoms,
                                   const DebugInstrumentation& instrumentation, const Program& program) {
    std::vector<Finding> out;
    for (AtomId id : reason.facts) {
        const Atom& fact = atoms.atom(id);
        if (auto it = instrumentation.rule_index.find(fact); it != instrumentation.rule_index.end()) {
            const DebugOrigin& origin = it->second;
            const Rule* rule = program.find(origin.rule_id);
            if (rule == nullptr) {
                throw std::invalid_argument("debug atom for unknown rule");
            }
            auto existing = std::find_if(out.begin(), out.end(), [&](const Finding& f) {
                const auto* r = std::get_if<RuleFinding>(&f);
                return r != nullptr && r->rule_id == origin.rule_id;
            });
            if (existing == out.end()) {
                out.emplace_back(RuleFinding{origin.rule_id, {}, {}, rule->span});
                existing = out.end() - 1;
            }
            auto& finding = std::get<RuleFinding>(*existing);
            finding.substitutions.push_back(origin.substitution);
            finding.ground_instances.push_back(to_string(instantiate(*rule, origin.substitution)));
        } else if (auto s = instrumentation.support_index.find(fact); s != instrumentation.support_index.end()) {
            const Atom& atom = s->second;
            SupportFinding finding{atom, {}};
            for (const Rule& r : program.rules) {
                bool heads = std::any_of(r.head.begin(), r.head.end(), [&](const Atom& h) {
                    return h.predicate == atom.predicate && h.arity() == atom.arity();
                });
                if (heads) {
                    finding.candidate_rule_ids.push_back(r.id);
                }
            }
            out.emplace_back(std::move(finding));
        }
    }
    return out;
}

std::vector<Finding> findings(const SessionState& state) {
    const SessionContext& c = *state.context;
    return map_to_source(state.reason, state.atoms(), c.gamma.debugging.instrumentation, c.program);
}

} // namespace aspdbg
