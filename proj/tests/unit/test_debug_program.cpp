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

#include <catch_amalgamated.hpp>

#include "test_support.hpp"

#include <aspdbg/debug_program.hpp>

using namespace aspdbg;
using namespace aspdbg::testing;

namespace {

std::vector<std::string> texts(const Program& p) {
    std::vector<std::string> out;
    for (const Rule& r : p.rules) {
        out.push_back(to_string(r));
    }
    return out;
}

std::vector<std::string> texts(const std::vector<Atom>& atoms) {
    std::vector<std::string> out;
    for (const Atom& a : atoms) {
        out.push_back(to_string(a));
    }
    return out;
}

std::string program_with_constraints(const std::string& program, const TestCase& test) {
    std::string text = program + "\n";
    for (const Rule& r : make_test_constraints(test)) {
        text += to_string(r) + "\n";
    }
    return text;
}

} // namespace

TEST_CASE("test constraints forbid the complement", "[debug_program]") {
    std::vector<Rule> cs = make_test_constraints(load_test("3col.test"), 7);
    REQUIRE(cs.size() == 3);
    CHECK(to_string(cs[0]) == ":- not col(1,blue).");
    CHECK(to_string(cs[2]) == ":- not col(3,blue).");
    CHECK(cs[0].id == 7);
    CHECK(cs[2].id == 9);
    for (const Rule& r : cs) {
        CHECK(r.synthetic);
    }
    std::vector<Rule> neg = make_test_constraints(parse_test_case("assertFalse(b)."));
    REQUIRE(neg.size() == 1);
    CHECK(to_string(neg[0]) == ":- b.");
}

TEST_CASE("default background is the set of facts", "[debug_program]") {
    CHECK(default_background(load_program("3col.lp")) == std::set<RuleId>{5, 6});
    CHECK(default_background(load_program("p2.lp")).empty());
}

TEST_CASE("debugging program of the coloring example", "[debug_program]") {
    Program p = load_program("3col.lp");
    DebuggingProgram d = build_debugging_program(p, default_background(p));
    std::vector<std::string> got = texts(d.program);
    std::vector<std::string> head(got.begin(), got.begin() + 6);
    CHECK(head == std::vector<std::string>{
                      "node(X) :- edge(X,Y), _debug1(X,Y).",
                      "node(X) :- edge(Y,X), _debug2(Y,X).",
                      "col(X,blue) | col(X,red) | col(X,green) :- node(X), _debug3(X).",
                      ":- col(X,C1), col(Y,C2), edge(X,Y), _debug4(X,Y,C1,C2), X != Y, C1 != C2.",
                      "edge(1,2).",
                      "edge(2,3).",
                  });
    // One support rule per atom of the no-simplify grounding of the input.
    std::set<std::string> support(got.begin() + 6, got.end());
    std::set<std::string> expected;
    const std::vector<std::string> base = {"node(1)",     "node(2)",     "node(3)",      "edge(1,2)",   "edge(2,3)",
                                           "col(1,blue)", "col(1,red)",  "col(1,green)", "col(2,blue)", "col(2,red)",
                                           "col(2,green)", "col(3,blue)", "col(3,red)",  "col(3,green)"};
    for (const std::string& a : base) {
        expected.insert(a + " :- not _support(" + a + ").");
    }
    CHECK(support == expected);
    CHECK(got.size() == 6 + base.size());

    // Instance counts by hand: 2 edges each for rules 1 and 2, 3 nodes for
    // rule 3, 12 constraint instances for rule 4.
    CHECK(d.instrumentation.debug_atoms.size() == 2 + 2 + 3 + 12);
    CHECK(d.instrumentation.support_atoms.size() == base.size());
    CHECK(d.instrumentation.herbrand_base.size() == base.size());
    CHECK(d.instance_counts.at(1) == 2);
    CHECK(d.instance_counts.at(3) == 3);
    CHECK(d.instance_counts.at(4) == 12);
    CHECK(d.warnings.empty());
    CHECK(to_string(d.instrumentation.debug_atoms.front()) == "_debug1(1,2)");
}

TEST_CASE("debugging program of the propositional example", "[debug_program]") {
    Program p = load_program("p2.lp");
    DebuggingProgram d = build_debugging_program(p, {});
    CHECK(texts(d.program) == std::vector<std::string>{
                                  "a :- c, _debug1.",
                                  "b :- not c, _debug2.",
                                  "c :- not b, _debug3.",
                                  ":- c, not b, _debug4.",
                                  "a :- not _support(a).",
                                  "c :- not _support(c).",
                                  "b :- not _support(b).",
                              });
    CHECK(texts(d.instrumentation.debug_atoms) ==
          std::vector<std::string>{"_debug1", "_debug2", "_debug3", "_debug4"});
    CHECK(texts(d.instrumentation.support_atoms) ==
          std::vector<std::string>{"_support(a)", "_support(b)", "_support(c)"});
    for (std::size_t i = 4; i < d.program.rules.size(); ++i) {
        CHECK(d.program.rules[i].synthetic);
        CHECK(d.program.rules[i].id == i + 1);
    }

    Program ext = extend_debugging_program(d);
    std::vector<std::string> ext_texts = texts(ext);
    std::vector<std::string> tail(ext_texts.begin() + 7, ext_texts.end());
    CHECK(tail == std::vector<std::string>{"{_debug1}.", "{_debug2}.", "{_debug3}.", "{_debug4}.", "{_support(a)}.",
                                           "{_support(b)}.", "{_support(c)}."});
}

TEST_CASE("background rules stay uninstrumented", "[debug_program]") {
    Program p = load_program("p2.lp");
    DebuggingProgram d = build_debugging_program(p, {1, 4});
    CHECK(to_string(d.program.rules[0]) == "a :- c.");
    CHECK(to_string(d.program.rules[3]) == ":- c, not b.");
    CHECK(texts(d.instrumentation.debug_atoms) == std::vector<std::string>{"_debug2", "_debug3"});
    CHECK_THROWS_AS(build_debugging_program(p, {9}), InstrumentationError);
}

TEST_CASE("empty program instruments to nothing", "[debug_program]") {
    DebuggingProgram d = build_debugging_program(Program{}, {});
    CHECK(d.program.rules.empty());
    CHECK(d.instrumentation.debug_atoms.empty());
    CHECK(d.instrumentation.support_atoms.empty());
    CHECK(extend_debugging_program(d).rules.empty());
}

TEST_CASE("rule index maps back to real ground instances", "[debug_program]") {
    std::mt19937 rng(4);
    std::vector<Program> programs = {load_program("3col.lp"), load_program("p2.lp")};
    for (int i = 0; i < 30; ++i) {
        programs.push_back(parse_program(random_program_text(rng)));
    }
    for (const Program& p : programs) {
        std::set<RuleId> background = default_background(p);
        DebuggingProgram d = build_debugging_program(p, background);
        GroundProgram g = ground(p);
        std::multiset<std::string> instances = rule_texts(g);

        std::size_t expected_debug = 0;
        for (const GroundRule& r : g.rules) {
            expected_debug += background.contains(*r.origin_rule_id) ? 0 : 1;
        }
        CHECK(d.instrumentation.debug_atoms.size() == expected_debug);
        CHECK(d.instrumentation.support_atoms.size() == g.herbrand_base().size());

        for (const Atom& a : d.instrumentation.debug_atoms) {
            const DebugOrigin& o = d.instrumentation.rule_index.at(a);
            CHECK(a.predicate == debug_predicate(o.rule_id));
            Rule inst = instantiate(*p.find(o.rule_id), o.substitution);
            // Same canonical text the grounder produces.
            Rule canon;
            for (const Atom& h : inst.head) {
                if (std::find(canon.head.begin(), canon.head.end(), h) == canon.head.end()) {
                    canon.head.push_back(h);
                }
            }
            for (bool negated : {false, true}) {
                for (const Literal& l : inst.body) {
                    if (l.negated == negated &&
                        std::find(canon.body.begin(), canon.body.end(), l) == canon.body.end()) {
                        canon.body.push_back(l);
                    }
                }
            }
            CHECK(instances.contains(to_string(canon)));
        }
        for (const Atom& s : d.instrumentation.support_atoms) {
            CHECK(support_atom(d.instrumentation.support_index.at(s)) == s);
        }
    }
}

TEST_CASE("assembled program sizes for the coloring example", "[debug_program]") {
    Program p = load_program("3col.lp");
    AssembledGamma g = assemble_gamma(p, load_test("3col.test"), default_background(p));
    CHECK(ground(p).rules.size() == 21);
    // 21 instrumented instances, 14 support rules, 33 choices with their
    // fresh atoms, 3 test constraints.
    CHECK(g.ground.rules.size() == 21 + 14 + 33 + 3);
    CHECK(g.p_a.size() == 19 + 14);
    CHECK(g.asserted.size() == 3);
    CHECK(g.herbrand_base.size() == 14);
    CHECK(check_coherence(g.ground) == Coherence::Coherent);
    CHECK(check_coherence(g.ground, g.p_a) == Coherence::Incoherent);
}

TEST_CASE("assembly rejects assertions outside the Herbrand base", "[debug_program]") {
    Program p = load_program("p2.lp");
    try {
        (void)assemble_gamma(p, parse_test_case("assertTrue(zzz)."), {});
        FAIL("expected an error");
    } catch (const InstrumentationError& e) {
        CHECK(std::string(e.what()) == "asserted atom has no occurrence: zzz");
    }
}

TEST_CASE("with every fact of P_A the debugging program behaves like the input", "[debug_program]") {
    // Oracle: brute-force answer sets of ground(P ∪ P_T) compared with the
    // projections of the answer sets of Γ ∪ P_A. Γ ∪ ∅ is always coherent.
    std::mt19937 rng(77);
    auto user = [](const Atom& a) { return !is_reserved_predicate(a.predicate); };
    int coherent = 0, incoherent = 0;
    for (int round = 0; round < 100; ++round) {
        std::string text = random_program_text(rng);
        Program p = parse_program(text);
        GroundProgram plain = ground(p);
        std::vector<Atom> base;
        for (AtomId a : plain.herbrand_base()) {
            base.push_back(plain.atoms.atom(a));
        }
        TestCase t = parse_test_case(random_test_text(rng, base));
        GroundProgram with_test = ground(parse_program(program_with_constraints(text, t)));
        REQUIRE(with_test.atoms.size() <= kBruteForceAtomLimit);
        auto expected = answer_set_texts(with_test, brute_force_answer_sets(with_test), user);

        AssembledGamma g = assemble_gamma(p, t, default_background(p));
        auto got = answer_set_texts(g.ground, enumerate_answer_sets(g.ground, kNoModelLimit, g.p_a).models, user);
        INFO(text);
        CHECK(got == expected);
        CHECK(check_coherence(g.ground) == Coherence::Coherent);
        (expected.empty() ? incoherent : coherent)++;
    }
    CHECK(coherent > 0);
    CHECK(incoherent > 0);
}
