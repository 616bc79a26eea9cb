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

#include <sstream>

using namespace aspdbg;
using namespace aspdbg::testing;

namespace {

std::set<Atom> table_atoms(const GroundProgram& g) {
    return {g.atoms.atoms().begin(), g.atoms.atoms().end()};
}

std::set<RuleId> dropped(const GroundProgram& g) {
    std::set<RuleId> out;
    for (const DroppedRuleWarning& w : g.warnings) {
        out.insert(w.rule_id);
    }
    return out;
}

void check_against_naive(const Program& p, GroundingMode mode) {
    GroundingOptions options;
    options.mode = mode;
    GroundProgram g = ground(p, options);
    NaiveGrounding expected = naive_ground(p, mode);
    CHECK(rule_texts(g) == expected.rules);
    CHECK(table_atoms(g) == expected.atoms);
    CHECK(dropped(g) == expected.dropped);
}

std::vector<Program> random_programs(std::uint32_t seed, int count) {
    std::mt19937 rng(seed);
    std::vector<Program> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(parse_program(random_program_text(rng)));
    }
    return out;
}

} // namespace

TEST_CASE("Herbrand universe of the coloring program", "[grounder]") {
    std::set<Term> u = herbrand_universe(load_program("3col.lp"));
    std::set<Term> expected = {Term::integer(1), Term::integer(2), Term::integer(3),
                               Term::symbol("blue"), Term::symbol("red"), Term::symbol("green")};
    CHECK(u == expected);
    CHECK(herbrand_universe(Program{}).empty());
    CHECK(herbrand_universe(parse_program("p(a).")) == std::set<Term>{Term::symbol("a")});
}

TEST_CASE("coloring constraint instances", "[grounder]") {
    Program p = load_program("3col.lp");
    GroundProgram g = ground(p);
    std::size_t constraint_instances = 0;
    std::set<std::pair<std::string, std::string>> edges;
    for (const GroundRule& r : g.rules) {
        if (r.origin_rule_id != 4U) {
            continue;
        }
        ++constraint_instances;
        Substitution s = r.substitution;
        REQUIRE(s.size() == 4);
        edges.emplace(to_string(s[0].second), to_string(s[1].second));
        CHECK(s[2].second != s[3].second);
    }
    // Brute-force count: edges (1,2), (2,3) times ordered color pairs with C1 != C2.
    std::size_t expected = 0;
    const std::vector<std::pair<int, int>> edge_facts = {{1, 2}, {2, 3}};
    const std::vector<std::string> colors = {"blue", "red", "green"};
    for (auto [x, y] : edge_facts) {
        for (const auto& c1 : colors) {
            for (const auto& c2 : colors) {
                expected += (x != y && c1 != c2) ? 1 : 0;
            }
        }
    }
    CHECK(constraint_instances == expected);
    CHECK(constraint_instances == 12);
    CHECK(edges == std::set<std::pair<std::string, std::string>>{{"1", "2"}, {"2", "3"}});
    CHECK(g.rules.size() == 21);
}

TEST_CASE("grounding matches exhaustive enumeration", "[grounder]") {
    std::vector<Program> programs = random_programs(3, 60);
    programs.push_back(load_program("3col.lp"));
    programs.push_back(load_program("p2.lp"));
    programs.push_back(parse_program("r(X,Y) :- s(X), s(Y), X < Y.\ns(1). s(2). s(3). s(b).\nt :- not u(9)."));
    for (const Program& p : programs) {
        std::ostringstream text;
        text << p;
        INFO(text.str());
        check_against_naive(p, GroundingMode::NoSimplify);
        check_against_naive(p, GroundingMode::Simplify);
    }
}

TEST_CASE("substitutions reproduce their ground rules", "[grounder]") {
    std::vector<Program> programs = random_programs(5, 30);
    programs.push_back(load_program("3col.lp"));
    for (const Program& p : programs) {
        GroundProgram g = ground(p);
        for (const GroundRule& r : g.rules) {
            REQUIRE(r.origin_rule_id.has_value());
            Rule inst = instantiate(*p.find(*r.origin_rule_id), r.substitution);
            CHECK(inst.is_ground());
            for (const Comparison& c : inst.comparisons) {
                CHECK(c.evaluate());
            }
            std::set<Atom> rule_atoms, ground_atoms;
            for (const Atom& a : inst.head) {
                rule_atoms.insert(a);
            }
            for (const Literal& l : inst.body) {
                rule_atoms.insert(l.atom);
            }
            for (const auto* part : {&r.head, &r.positive_body, &r.negative_body}) {
                for (AtomId a : *part) {
                    ground_atoms.insert(g.atoms.atom(a));
                }
            }
            CHECK(rule_atoms == ground_atoms);
        }
    }
}

TEST_CASE("simplify mode destroys the instrumentation", "[grounder]") {
    Program p = load_program("3col.lp");
    DebuggingProgram d = build_debugging_program(p, default_background(p));
    GroundingOptions simplify;
    simplify.mode = GroundingMode::Simplify;
    GroundProgram g = ground(d.program, simplify);

    CHECK(dropped(g) == std::set<RuleId>{1, 2, 3, 4});
    for (const Atom& a : g.atoms.atoms()) {
        CHECK_FALSE(is_debug_predicate(a.predicate));
        CHECK_FALSE(is_support_predicate(a.predicate));
    }
    std::multiset<std::string> from_source;
    for (const GroundRule& r : g.rules) {
        if (r.origin_rule_id) {
            from_source.insert(to_string(r, g.atoms));
        }
    }
    CHECK(from_source == std::multiset<std::string>{"edge(1,2).", "edge(2,3)."});
    // Support rules lose their underivable negative literal and become facts.
    for (const GroundRule& r : g.rules) {
        CHECK(r.positive_body.empty());
        CHECK(r.negative_body.empty());
    }
}

TEST_CASE("no-simplify keeps variable-free rules verbatim", "[grounder]") {
    Program p = parse_program("a :- b, not c.\nd(X) :- e(X).\n");
    GroundProgram g = ground(p);
    REQUIRE(g.rules.size() == 1);
    CHECK(to_string(g.rules[0], g.atoms) == "a :- b, not c.");
    CHECK(dropped(g) == std::set<RuleId>{2});

    GroundingOptions simplify;
    simplify.mode = GroundingMode::Simplify;
    GroundProgram s = ground(p, simplify);
    CHECK(s.rules.empty());
    CHECK(dropped(s) == std::set<RuleId>{1, 2});
}

TEST_CASE("empty program grounds to nothing", "[grounder]") {
    GroundProgram g = ground(Program{});
    CHECK(g.rules.empty());
    CHECK(g.atoms.size() == 0);
    CHECK(g.warnings.empty());
}

TEST_CASE("grounding budget", "[grounder]") {
    std::string text;
    for (int i = 0; i < 20; ++i) {
        text += "d(" + std::to_string(i) + ").\n";
    }
    text += "p(X,Y,Z) :- d(X), d(Y), d(Z).\n";
    GroundingOptions small;
    small.budget = 1000;
    try {
        (void)ground(parse_program(text), small);
        FAIL("expected the budget to trip");
    } catch (const GroundingError& e) {
        CHECK(std::string(e.what()) == "grounding budget exceeded");
    }
    CHECK(ground(parse_program(text)).rules.size() == 20 + 8000);
}

TEST_CASE("anti-simplification closure reproduces the no-simplify grounding", "[grounder]") {
    std::vector<Program> programs = random_programs(17, 20);
    Program col = load_program("3col.lp");
    programs.push_back(build_debugging_program(col, default_background(col)).program);
    programs.push_back(load_program("p2.lp"));
    GroundingOptions simplify;
    simplify.mode = GroundingMode::Simplify;
    for (const Program& p : programs) {
        GroundProgram plain = ground(p);
        Program closure = anti_simplification_closure(plain, p);
        std::size_t added = closure.rules.size() - p.rules.size();
        std::size_t expected_added = 0;
        for (const Atom& a : plain.atoms.atoms()) {
            expected_added += is_fresh_predicate(a.predicate) ? 0 : 1;
        }
        CHECK(added == expected_added);

        GroundProgram regrounded = ground(closure, simplify);
        std::multiset<std::string> kept;
        // Closure choices are the rules whose head holds a fresh atom numbered
        // past the ones the input already used.
        auto added_choice = [&](const GroundRule& r) {
            return std::any_of(r.head.begin(), r.head.end(), [&](AtomId h) {
                const std::string& name = regrounded.atoms.atom(h).predicate;
                return is_fresh_predicate(name) && std::stoul(name.substr(3)) >= p.fresh_atoms;
            });
        };
        for (const GroundRule& r : regrounded.rules) {
            if (!added_choice(r)) {
                kept.insert(to_string(r, regrounded.atoms));
            }
        }
        std::ostringstream text;
        text << p;
        INFO(text.str());
        CHECK(kept == rule_texts(plain));
    }
    Program empty;
    CHECK(anti_simplification_closure(ground(empty), empty).rules.empty());
}

TEST_CASE("simplification preserves answer sets", "[grounder]") {
    std::vector<Program> programs = random_programs(23, 80);
    GroundingOptions simplify;
    simplify.mode = GroundingMode::Simplify;
    auto keep = [](const Atom& a) { return !is_reserved_predicate(a.predicate); };
    for (const Program& p : programs) {
        GroundProgram full = ground(p);
        GroundProgram small = ground(p, simplify);
        REQUIRE(full.atoms.size() <= 12);
        std::ostringstream text;
        text << p;
        INFO(text.str());
        CHECK(answer_set_texts(full, brute_force_answer_sets(full), keep) ==
              answer_set_texts(small, brute_force_answer_sets(small), keep));
    }
}

TEST_CASE("herbrand base skips reserved predicates", "[grounder]") {
    Program p = parse_program("{a}.\nb :- a.\n");
    GroundProgram g = ground(p);
    std::vector<std::string> base;
    for (AtomId id : g.herbrand_base()) {
        base.push_back(to_string(g.atoms.atom(id)));
    }
    CHECK(base == std::vector<std::string>{"a", "b"});
}

TEST_CASE("textual ground output", "[grounder]") {
    std::ostringstream out;
    print(out, ground(parse_program("a(X) :- b(X).\nc.\n")));
    CHECK(out.str() == "c.\n% atom 0 c\n% warning: rule 1 dropped\n");
}
