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

#include <aspdbg/debug_program.hpp>

#include <algorithm>
#include <tuple>

namespace aspdbg {

Atom support_atom(const Atom& atom) {
    return Atom{std::string(kSupportPredicate), {Term::symbol(to_string(atom))}};
}

std::string debug_predicate(RuleId rule_id) {
    return std::string(kDebugPrefix) + std::to_string(rule_id);
}

std::vector<Rule> make_test_constraints(const TestCase& test, RuleId first_id) {
    std::vector<Rule> rules;
    for (const Literal& l : test.asserted) {
        Rule r;
        r.id = first_id++;
        r.body.push_back(complement(l));
        r.synthetic = true;
        rules.push_back(std::move(r));
    }
    return rules;
}

std::set<RuleId> default_background(const Program& program) {
    std::set<RuleId> ids;
    for (const Rule& r : program.rules) {
        if (r.is_fact()) {
            ids.insert(r.id);
        }
    }
    return ids;
}

namespace {

std::vector<Term> values(const Substitution& s) {
    std::vector<Term> out;
    out.reserve(s.size());
    for (const auto& [name, term] : s) {
        out.push_back(term);
    }
    return out;
}

} // namespace

DebuggingProgram build_debugging_program(const Program& program, const std::set<RuleId>& background,
                                         const GroundingOptions& options) {
    for (RuleId id : background) {
        if (program.find(id) == nullptr) {
            throw InstrumentationError("background names unknown rule " + std::to_string(id));
        }
    }
    GroundingOptions no_simplify = options;
    no_simplify.mode = GroundingMode::NoSimplify;
    GroundProgram g = ground(program, no_simplify);

    DebuggingProgram out;
    out.warnings = g.warnings;
    DebugInstrumentation& instr = out.instrumentation;
    for (AtomId id : g.herbrand_base()) {
        instr.herbrand_base.push_back(g.atoms.atom(id));
    }

    std::vector<DebugOrigin> origins;
    std::set<std::pair<RuleId, std::vector<Term>>> seen;
    for (const GroundRule& r : g.rules) {
        if (!r.origin_rule_id) {
            continue;
        }
        ++out.instance_counts[*r.origin_rule_id];
        if (background.contains(*r.origin_rule_id)) {
            continue;
        }
        if (seen.emplace(*r.origin_rule_id, values(r.substitution)).second) {
            origins.push_back(DebugOrigin{*r.origin_rule_id, r.substitution});
        }
    }
    std::sort(origins.begin(), origins.end(), [](const DebugOrigin& a, const DebugOrigin& b) {
        return std::tie(a.rule_id, a.substitution) < std::tie(b.rule_id, b.substitution);
    });
    for (DebugOrigin& o : origins) {
        Atom atom{debug_predicate(o.rule_id), values(o.substitution)};
        instr.debug_atoms.push_back(atom);
        instr.rule_index.emplace(std::move(atom), std::move(o));
    }

    Program& d = out.program;
    d.background_ids = background;
    d.fresh_atoms = program.fresh_atoms;
    for (const Rule& r : program.rules) {
        Rule copy = r;
        if (!background.contains(r.id)) {
            Atom marker{debug_predicate(r.id), {}};
            for (const std::string& v : r.variables()) {
                marker.args.push_back(Term::variable(v));
            }
            copy.body.push_back(Literal{std::move(marker), false});
        }
        d.rules.push_back(std::move(copy));
    }
    RuleId next = program.next_rule_id();
    for (const Atom& a : instr.herbrand_base) {
        Atom s = support_atom(a);
        Rule r;
        r.id = next++;
        r.head.push_back(a);
        r.body.push_back(Literal{s, true});
        r.synthetic = true;
        d.rules.push_back(std::move(r));
        instr.support_atoms.push_back(s);
        instr.support_index.emplace(std::move(s), a);
    }
    std::sort(instr.support_atoms.begin(), instr.support_atoms.end());
    return out;
}

Program extend_debugging_program(const DebuggingProgram& debugging) {
    Program out = debugging.program;
    FreshAtoms fresh(out.fresh_atoms);
    RuleId next = out.next_rule_id();
    auto add_choice = [&](const Atom& atom) {
        Rule choice = desugar_choice(atom, fresh);
        choice.id = next++;
        choice.synthetic = true;
        out.rules.push_back(std::move(choice));
    };
    for (const Atom& a : debugging.instrumentation.debug_atoms) {
        add_choice(a);
    }
    for (const Atom& a : debugging.instrumentation.support_atoms) {
        add_choice(a);
    }
    out.fresh_atoms = fresh.count();
    return out;
}

AssembledGamma assemble_gamma(const Program& program, const TestCase& test, const std::set<RuleId>& background,
                              const GroundingOptions& options) {
    AssembledGamma out;
    out.debugging = build_debugging_program(program, background, options);
    const DebugInstrumentation& instr = out.debugging.instrumentation;
    for (const Literal& l : test.asserted) {
        if (std::find(instr.herbrand_base.begin(), instr.herbrand_base.end(), l.atom) == instr.herbrand_base.end()) {
            throw InstrumentationError("asserted atom has no occurrence: " + to_string(l.atom));
        }
    }
    out.extended = extend_debugging_program(out.debugging);
    out.test_constraints = make_test_constraints(test, out.extended.next_rule_id());

    Program combined = out.extended;
    combined.rules.insert(combined.rules.end(), out.test_constraints.begin(), out.test_constraints.end());
    GroundingOptions no_simplify = options;
    no_simplify.mode = GroundingMode::NoSimplify;
    out.ground = ground(combined, no_simplify);

    auto id_of = [&](const Atom& a) {
        std::optional<AtomId> id = out.ground.atoms.find(a);
        if (!id) {
            throw InstrumentationError("atom missing from the debugging grounding: " + to_string(a));
        }
        return *id;
    };
    for (const Atom& a : instr.debug_atoms) {
        out.p_a.push_back(id_of(a));
    }
    for (const Atom& a : instr.support_atoms) {
        out.p_a.push_back(id_of(a));
    }
    for (const Atom& a : instr.herbrand_base) {
        out.herbrand_base.push_back(id_of(a));
    }
    for (const Literal& l : test.asserted) {
        out.asserted.push_back(id_of(l.atom));
    }
    return out;
}

} // namespace aspdbg
