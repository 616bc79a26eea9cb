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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails or exceeds its time limit.

#include "golden.hpp"
#include "session_io.hpp"
#include "test_support.hpp"

#include <aspdbg/debug_program.hpp>
#include <aspdbg/diagnosis.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace aspdbg;
using namespace aspdbg::testing;

namespace {

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 5) {
            failures_.push_back(what);
        }
        failed_ = failed_ || !ok;
    }
    [[nodiscard]] bool ok() const { return !failed_; }
    [[nodiscard]] const std::vector<std::string>& failures() const { return failures_; }

private:
    bool failed_ = false;
    std::vector<std::string> failures_;
};

struct Outcome {
    Check check;
    std::string detail;
};

std::string texts(const SessionState& s, const std::vector<AtomId>& ids) {
    std::set<std::string> sorted;
    for (AtomId a : ids) {
        sorted.insert(to_string(s.atoms().atom(a)));
    }
    std::string out = "{";
    for (const std::string& t : sorted) {
        out += (out.size() > 1 ? ", " : "") + t;
    }
    return out + "}";
}

std::shared_ptr<const SessionContext> context_for(const std::string& program, const std::string& test,
                                                  SessionOptions options = {}) {
    Program p = parse_program(program);
    std::set<RuleId> background = default_background(p);
    return make_session_context(std::move(p), parse_test_case(test), background, options);
}

AtomId id_of(const SessionState& s, const std::string& text) {
    return *s.atoms().find(atom(text));
}

Outcome coloring_session() {
    Outcome o;
    Program p = load_program("3col.lp");
    std::set<RuleId> background = default_background(p);
    SessionState s = start_session(make_session_context(p, load_test("3col.test"), background));
    o.check.expect(check_coherence(s.gamma, s.context->gamma.p_a) == Coherence::Incoherent, "Γ with P_A coherent");
    o.check.expect(texts(s, s.reason.facts) == "{_debug4(1,2,blue,red)}", "reason " + texts(s, s.reason.facts));
    o.check.expect(s.reason.minimal, "reason not minimal");
    o.check.expect(s.status == SessionStatus::Narrowed, "status");
    std::vector<Finding> f = findings(s);
    const RuleFinding* rf = f.size() == 1 ? std::get_if<RuleFinding>(&f[0]) : nullptr;
    o.check.expect(rf != nullptr && rf->rule_id == 4, "finding is not rule 4");
    if (rf != nullptr) {
        o.check.expect(to_string(rf->substitutions.at(0)) == "X=1, Y=2, C1=blue, C2=red", "substitution");
    }
    o.detail = "reason " + texts(s, s.reason.facts) + " -> rule 4";
    return o;
}

Outcome propositional_session() {
    Outcome o;
    SessionOptions exhaustive;
    exhaustive.max_models_per_query = 100000;
    SessionState s0 = start_session(context_for(read_data("p2.lp"), read_data("p2.test"), exhaustive));
    o.check.expect(texts(s0, s0.reason.facts) == "{_debug4, _support(a), _support(b)}",
                   "initial reason " + texts(s0, s0.reason.facts));

    auto expected = p2_pools();
    auto pools = sample_pools(s0, 100000);
    auto keep = [](const Atom& a) { return !is_fresh_predicate(a.predicate); };
    std::string sizes;
    for (std::size_t i = 0; i < pools.size() && i < s0.reason.facts.size(); ++i) {
        std::string omitted = to_string(s0.atoms().atom(s0.reason.facts[i]));
        auto it = expected.find(omitted);
        bool same = it != expected.end() && answer_set_texts(s0.gamma, pools[i], keep) == it->second &&
                    pools[i].size() == it->second.size();
        o.check.expect(same, "pool without " + omitted);
        sizes += (sizes.empty() ? "" : "/") + std::to_string(pools[i].size());
    }

    auto counts = pool_counts(expected, {"b", "c"});
    o.check.expect(counts["b"] == std::make_pair<std::size_t, std::size_t>(8, 8), "hand counts for b");
    o.check.expect(counts["c"] == std::make_pair<std::size_t, std::size_t>(10, 6), "hand counts for c");
    auto query = [&](const std::string& name) -> const Query* {
        for (const Query& q : s0.queries) {
            if (to_string(s0.atoms().atom(q.atom)) == name) {
                return &q;
            }
        }
        return nullptr;
    };
    const Query* b = query("b");
    const Query* c = query("c");
    o.check.expect(b != nullptr && b->q_plus == 8 && b->q_minus == 8, "Q(b)");
    o.check.expect(c != nullptr && c->q_plus == 10 && c->q_minus == 6, "Q(c)");
    o.check.expect(!s0.queries.empty() && to_string(s0.atoms().atom(s0.queries[0].atom)) == "b", "top query");

    SessionState s1 = apply_answer(s0, id_of(s0, "b"), true);
    o.check.expect(texts(s1, s1.reason.facts) == "{_support(a), _support(b)}", "after b " + texts(s1, s1.reason.facts));
    SessionState s2 = apply_answer(s1, id_of(s1, "c"), false);
    o.check.expect(texts(s2, s2.reason.facts) == "{_support(a)}", "after c " + texts(s2, s2.reason.facts));
    o.detail = "pools " + sizes + ", Q(b)=8/8, Q(c)=10/6, final " + texts(s2, s2.reason.facts);
    return o;
}

Outcome solver_oracle() {
    Outcome o;
    std::mt19937 rng(20260101);
    std::size_t agree = 0;
    const int rounds = 200;
    for (int round = 0; round < rounds; ++round) {
        GroundProgram g = random_ground_program(rng, 15, 10);
        auto got = enumerate_answer_sets(g).models;
        auto expected = brute_force_answer_sets(g);
        bool same = std::set<Interpretation>(got.begin(), got.end()) ==
                    std::set<Interpretation>(expected.begin(), expected.end());
        o.check.expect(same, "disagreement in round " + std::to_string(round));
        agree += same ? 1 : 0;
    }
    o.detail = std::to_string(agree) + "/" + std::to_string(rounds) + " programs agree";
    return o;
}

struct RandomPair {
    std::string program;
    std::string test;
};

RandomPair random_pair(std::mt19937& rng) {
    RandomPair r;
    r.program = random_program_text(rng);
    GroundProgram plain = ground(parse_program(r.program));
    std::vector<Atom> base;
    for (AtomId a : plain.herbrand_base()) {
        base.push_back(plain.atoms.atom(a));
    }
    r.test = random_test_text(rng, base);
    return r;
}

Outcome coherence_preserved() {
    Outcome o;
    std::mt19937 rng(4242);
    std::size_t agree = 0, incoherent = 0;
    const int rounds = 100;
    for (int round = 0; round < rounds; ++round) {
        RandomPair pair = random_pair(rng);
        Program p = parse_program(pair.program);
        TestCase t = parse_test_case(pair.test);
        std::string with_test = pair.program;
        for (const Rule& r : make_test_constraints(t)) {
            with_test += to_string(r) + "\n";
        }
        GroundProgram direct = ground(parse_program(with_test));
        o.check.expect(direct.atoms.size() <= 12, "more than 12 ground atoms");
        bool expected = !brute_force_answer_sets(direct).empty();
        AssembledGamma g = assemble_gamma(p, t, default_background(p));
        bool got = check_coherence(g.ground, g.p_a) == Coherence::Coherent;
        o.check.expect(got == expected, "disagreement on\n" + pair.program + pair.test);
        agree += got == expected ? 1 : 0;
        incoherent += expected ? 0 : 1;
    }
    o.detail = std::to_string(agree) + "/" + std::to_string(rounds) + " pairs agree (" + std::to_string(incoherent) +
               " incoherent)";
    return o;
}

struct SessionAudit {
    Outcome monotone;
    Outcome minimal;
};

SessionAudit session_audit() {
    SessionAudit audit;
    std::mt19937 rng(777);
    int sessions = 0;
    std::size_t reasons = 0, supersets = 0, removals = 0;
    while (sessions < 50) {
        RandomPair pair = random_pair(rng);
        SessionState s = start_session(context_for(pair.program, pair.test));
        if (s.status == SessionStatus::TestPassed) {
            continue;
        }
        ++sessions;
        const std::vector<AtomId>& p_a = s.context->gamma.p_a;
        for (int step = 0;; ++step) {
            if (!s.reason.facts.empty()) {
                ++reasons;
                audit.monotone.check.expect(is_reason(s, s.reason.facts), "reason is coherent");
                for (int k = 0; k < 20; ++k) {
                    std::vector<AtomId> superset = s.reason.facts;
                    for (AtomId a : p_a) {
                        if (std::find(superset.begin(), superset.end(), a) == superset.end() &&
                            std::bernoulli_distribution(0.5)(rng)) {
                            superset.push_back(a);
                        }
                    }
                    ++supersets;
                    audit.monotone.check.expect(is_reason(s, superset), "coherent superset\n" + pair.program);
                }
                if (s.reason.minimal) {
                    for (std::size_t i = 0; i < s.reason.facts.size(); ++i) {
                        std::vector<AtomId> smaller = s.reason.facts;
                        smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
                        ++removals;
                        audit.minimal.check.expect(!is_reason(s, smaller), "not minimal\n" + pair.program);
                    }
                }
            }
            if (s.queries.empty() || step == 3) {
                break;
            }
            const Query& q = s.queries[std::uniform_int_distribution<std::size_t>(0, s.queries.size() - 1)(rng)];
            s = apply_answer(s, q.atom, std::bernoulli_distribution(0.5)(rng));
        }
    }
    audit.monotone.detail = std::to_string(sessions) + " sessions, " + std::to_string(reasons) + " reasons, " +
                            std::to_string(supersets) + " supersets incoherent";
    audit.minimal.detail = std::to_string(removals) + " single removals coherent";
    return audit;
}

// Random graph on up to 8 nodes with at least one edge, and a random
// coloring assertion for one node.
std::pair<std::string, std::string> random_coloring(std::mt19937& rng) {
    int n = std::uniform_int_distribution<int>(2, 8)(rng);
    std::string program = read_data("3col.lp");
    program = program.substr(0, program.find("edge(1,2)."));
    std::vector<std::pair<int, int>> edges;
    for (int x = 1; x <= n; ++x) {
        for (int y = x + 1; y <= n; ++y) {
            if (std::bernoulli_distribution(0.35)(rng)) {
                edges.emplace_back(x, y);
            }
        }
    }
    if (edges.empty()) {
        edges.emplace_back(1, 2);
    }
    for (auto [x, y] : edges) {
        program += "edge(" + std::to_string(x) + "," + std::to_string(y) + ").\n";
    }
    const char* colors[] = {"blue", "red", "green"};
    std::string test = "assertTrue(col(" + std::to_string(edges[0].first) + "," +
                       colors[std::uniform_int_distribution<int>(0, 2)(rng)] + ")).\n";
    return {program, test};
}

Outcome grounding_overhead() {
    Outcome o;
    std::vector<std::pair<std::string, std::string>> instances = {{read_data("3col.lp"), read_data("3col.test")}};
    std::mt19937 rng(31337);
    for (int i = 0; i < 10; ++i) {
        instances.push_back(random_coloring(rng));
    }
    double worst = 0;
    for (const auto& [program, test] : instances) {
        Program p = parse_program(program);
        TestCase t = parse_test_case(test);
        std::set<RuleId> background = default_background(p);
        GroundProgram plain = ground(p);
        AssembledGamma g = assemble_gamma(p, t, background);

        std::size_t grnd_instrumented = 0, grnd_background = 0;
        for (const GroundRule& r : plain.rules) {
            (background.contains(*r.origin_rule_id) ? grnd_background : grnd_instrumented)++;
        }
        std::size_t herbrand = plain.herbrand_base().size();
        std::size_t debug_atoms = 0, support_atoms = 0;
        for (const Atom& a : g.ground.atoms.atoms()) {
            debug_atoms += is_debug_predicate(a.predicate) ? 1 : 0;
            support_atoms += is_support_predicate(a.predicate) ? 1 : 0;
        }
        std::size_t expected = grnd_instrumented + herbrand + 2 * (debug_atoms + support_atoms) + grnd_background +
                               t.asserted.size();
        // Γ_P counts the P_A facts next to the ground rules of D*_P ∪ P_T.
        std::size_t gamma = g.ground.rules.size() + g.p_a.size();
        o.check.expect(gamma == expected, "count " + std::to_string(gamma) + " != " + std::to_string(expected) +
                                              " on\n" + program);
        o.check.expect(g.p_a.size() == debug_atoms + support_atoms, "P_A size");
        double ratio = static_cast<double>(g.ground.rules.size()) / static_cast<double>(plain.rules.size());
        worst = std::max(worst, ratio);
        o.check.expect(ratio <= 5.0, "ratio " + std::to_string(ratio) + " on\n" + program);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", worst);
    o.detail = std::to_string(instances.size()) + " instances, worst ratio " + buf;
    return o;
}

std::string replay_propositional() {
    cli::SessionSetup setup =
        cli::load_session({data_path("p2.lp")}, data_path("p2.test"), std::nullopt, SessionOptions{});
    std::istringstream in("{\"kind\":\"answer\",\"seq\":1,\"atom\":\"b\",\"value\":true}\n"
                          "{\"kind\":\"answer\",\"seq\":2,\"atom\":\"c\",\"value\":false}\n"
                          "{\"kind\":\"undo\",\"seq\":3,\"to_step\":1}\n"
                          "{\"kind\":\"answer\",\"seq\":4,\"atom\":\"c\",\"value\":false}\n"
                          "{\"kind\":\"stop\",\"seq\":5}\n");
    std::ostringstream out;
    (void)cli::run_protocol(setup, in, out);
    return out.str();
}

Outcome determinism() {
    Outcome o;
    std::string first = replay_propositional();
    std::string second = replay_propositional();
    o.check.expect(!first.empty(), "no output");
    o.check.expect(first == second, "replays differ");
    o.detail = std::to_string(first.size()) + " bytes identical";
    return o;
}

bool report(int number, const std::string& title, double limit_seconds, const std::function<Outcome()>& run) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& e) {
        o.check.expect(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = limit_seconds <= 0 || seconds < limit_seconds;
    bool pass = o.check.ok() && in_time;
    char timing[96];
    if (limit_seconds > 0) {
        std::snprintf(timing, sizeof timing, "%.3fs, limit %.0fs", seconds, limit_seconds);
    } else {
        std::snprintf(timing, sizeof timing, "%.3fs", seconds);
    }
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " (" << timing << ") "
              << o.detail << '\n';
    for (const std::string& f : o.check.failures()) {
        std::cout << "    " << f << '\n';
    }
    if (!in_time) {
        std::cout << "    time limit exceeded\n";
    }
    return pass;
}

} // namespace

int main() {
    bool all = true;
    all &= report(1, "coloring golden session", 1, coloring_session);
    all &= report(2, "propositional golden session", 1, propositional_session);
    all &= report(3, "solver agrees with brute force", 60, solver_oracle);
    all &= report(4, "instrumented program preserves coherence", 60, coherence_preserved);

    auto start = std::chrono::steady_clock::now();
    SessionAudit audit;
    std::string audit_error;
    try {
        audit = session_audit();
    } catch (const std::exception& e) {
        audit_error = e.what();
    }
    double audit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all &= report(5, "reasons are monotone", 120, [&] {
        Outcome o = audit.monotone;
        o.check.expect(audit_error.empty(), "exception: " + audit_error);
        o.check.expect(audit_seconds < 120, "audit exceeded 120s");
        char buf[32];
        std::snprintf(buf, sizeof buf, " in %.3fs", audit_seconds);
        o.detail += buf;
        return o;
    });
    all &= report(6, "reasons are minimal", 0, [&] {
        Outcome o = audit.minimal;
        o.check.expect(audit_error.empty(), "exception: " + audit_error);
        return o;
    });
    all &= report(7, "grounding overhead", 10, grounding_overhead);
    all &= report(8, "protocol replay is deterministic", 0, determinism);
    return all ? 0 : 1;
}
