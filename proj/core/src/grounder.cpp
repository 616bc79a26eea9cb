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

#include <aspdbg/ground.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <unordered_set>

namespace aspdbg {

AtomId AtomTable::intern(const Atom& atom) {
    auto [it, inserted] = index_.emplace(atom, static_cast<AtomId>(atoms_.size()));
    if (inserted) {
        atoms_.push_back(atom);
    }
    return it->second;
}

std::optional<AtomId> AtomTable::find(const Atom& atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<AtomId> GroundProgram::herbrand_base() const {
    std::vector<AtomId> base;
    for (AtomId id = 0; id < atoms.size(); ++id) {
        if (!is_reserved_predicate(atoms.atom(id).predicate)) {
            base.push_back(id);
        }
    }
    return base;
}

std::set<Term> herbrand_universe(const Program& program) {
    std::set<Term> universe;
    auto add_term = [&](const Term& t) {
        if (t.is_ground()) {
            universe.insert(t);
        }
    };
    auto add_atom = [&](const Atom& a) { std::for_each(a.args.begin(), a.args.end(), add_term); };
    for (const Rule& r : program.rules) {
        std::for_each(r.head.begin(), r.head.end(), add_atom);
        for (const Literal& l : r.body) {
            add_atom(l.atom);
        }
        for (const Comparison& c : r.comparisons) {
            add_term(c.left);
            add_term(c.right);
        }
    }
    return universe;
}

namespace {

using TermId = std::uint32_t;
using Tuple = std::vector<TermId>;
constexpr TermId kUnbound = std::numeric_limits<TermId>::max();

struct TupleHash {
    std::size_t operator()(const Tuple& t) const noexcept {
        std::size_t seed = t.size();
        for (TermId id : t) {
            seed ^= id + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
        }
        return seed;
    }
};

class TermPool {
public:
    TermId intern(const Term& term) {
        auto [it, inserted] = index_.emplace(term, static_cast<TermId>(terms_.size()));
        if (inserted) {
            terms_.push_back(term);
        }
        return it->second;
    }
    [[nodiscard]] const Term& term(TermId id) const { return terms_[id]; }

private:
    std::vector<Term> terms_;
    std::map<Term, TermId> index_;
};

struct Extent {
    std::string predicate;
    std::vector<Tuple> tuples;
    std::unordered_set<Tuple, TupleHash> members;

    bool add(const Tuple& t) {
        if (members.insert(t).second) {
            tuples.push_back(t);
            return true;
        }
        return false;
    }
    [[nodiscard]] bool contains(const Tuple& t) const { return members.count(t) != 0; }
};

struct Arg {
    bool is_var = false;
    std::uint32_t index = 0; // variable slot or TermId
};

struct CompiledAtom {
    std::uint32_t extent = 0;
    std::vector<Arg> args;
};

struct CompiledComparison {
    Arg left;
    Relation relation = Relation::Eq;
    Arg right;
    // Index of the positive atom after which both sides are bound; -1 when
    // the comparison is ground.
    int ready_after = -1;
};

struct CompiledRule {
    const Rule* rule = nullptr;
    std::vector<std::string> variables;
    std::vector<CompiledAtom> head;
    std::vector<CompiledAtom> positive;
    std::vector<CompiledAtom> negative;
    std::vector<CompiledComparison> comparisons;
    bool variable_free = false;
};

struct Range {
    std::size_t begin = 0;
    std::size_t end = 0;
};

class Instantiator {
public:
    Instantiator(const Program& program, const GroundingOptions& options) : program_(program), options_(options) {
        for (const Rule& r : program.rules) {
            compile(r);
        }
    }

    GroundProgram run() {
        compute_extents();
        return instantiate();
    }

private:
    std::uint32_t extent_of(const Atom& atom) {
        std::string key = atom.predicate + "/" + std::to_string(atom.arity());
        auto [it, inserted] = extent_index_.emplace(key, static_cast<std::uint32_t>(extents_.size()));
        if (inserted) {
            extents_.push_back(Extent{atom.predicate, {}, {}});
        }
        return it->second;
    }

    Arg compile_term(const Term& t, const std::vector<std::string>& vars) {
        if (t.is_variable()) {
            auto it = std::find(vars.begin(), vars.end(), t.name());
            return Arg{true, static_cast<std::uint32_t>(it - vars.begin())};
        }
        return Arg{false, pool_.intern(t)};
    }

    CompiledAtom compile_atom(const Atom& atom, const std::vector<std::string>& vars) {
        CompiledAtom out{extent_of(atom), {}};
        for (const Term& t : atom.args) {
            out.args.push_back(compile_term(t, vars));
        }
        return out;
    }

    void compile(const Rule& rule) {
        CompiledRule c;
        c.rule = &rule;
        c.variables = rule.variables();
        c.variable_free = c.variables.empty();
        for (const Atom& a : rule.head) {
            c.head.push_back(compile_atom(a, c.variables));
        }
        for (const Literal& l : rule.body) {
            (l.negated ? c.negative : c.positive).push_back(compile_atom(l.atom, c.variables));
        }
        // Slot of each variable -> position of the positive atom binding it.
        std::vector<int> bound_at(c.variables.size(), std::numeric_limits<int>::max());
        for (std::size_t k = 0; k < c.positive.size(); ++k) {
            for (const Arg& a : c.positive[k].args) {
                if (a.is_var) {
                    bound_at[a.index] = std::min(bound_at[a.index], static_cast<int>(k));
                }
            }
        }
        for (const Comparison& cmp : rule.comparisons) {
            CompiledComparison cc{compile_term(cmp.left, c.variables), cmp.relation,
                                  compile_term(cmp.right, c.variables), -1};
            for (const Arg& a : {cc.left, cc.right}) {
                if (a.is_var) {
                    cc.ready_after = std::max(cc.ready_after, bound_at[a.index]);
                }
            }
            c.comparisons.push_back(cc);
        }
        rules_.push_back(std::move(c));
    }

    [[nodiscard]] TermId resolve(const Arg& a, const std::vector<TermId>& binding) const {
        return a.is_var ? binding[a.index] : a.index;
    }

    [[nodiscard]] Tuple resolve(const CompiledAtom& atom, const std::vector<TermId>& binding) const {
        Tuple t;
        t.reserve(atom.args.size());
        for (const Arg& a : atom.args) {
            t.push_back(resolve(a, binding));
        }
        return t;
    }

    [[nodiscard]] bool comparisons_hold(const CompiledRule& rule, int stage, const std::vector<TermId>& binding) const {
        for (const CompiledComparison& c : rule.comparisons) {
            if (c.ready_after == stage &&
                !evaluate(pool_.term(resolve(c.left, binding)), c.relation, pool_.term(resolve(c.right, binding)))) {
                return false;
            }
        }
        return true;
    }

    // Enumerates bindings of the positive body, atom k ranging over
    // ranges[k] of its extent.
    template <class Emit>
    void join(const CompiledRule& rule, const std::vector<Range>& ranges, Emit&& emit) {
        std::vector<TermId> binding(rule.variables.size(), kUnbound);
        if (!comparisons_hold(rule, -1, binding)) {
            return;
        }
        join_from(rule, ranges, 0, binding, emit);
    }

    template <class Emit>
    void join_from(const CompiledRule& rule, const std::vector<Range>& ranges, std::size_t k,
                   std::vector<TermId>& binding, Emit& emit) {
        if (k == rule.positive.size()) {
            emit(binding);
            return;
        }
        const CompiledAtom& atom = rule.positive[k];
        const Extent& extent = extents_[atom.extent];
        std::vector<std::uint32_t> newly_bound;
        for (std::size_t i = ranges[k].begin; i < ranges[k].end; ++i) {
            const Tuple& tuple = extent.tuples[i];
            bool match = true;
            newly_bound.clear();
            for (std::size_t p = 0; p < atom.args.size(); ++p) {
                const Arg& a = atom.args[p];
                if (!a.is_var) {
                    match = tuple[p] == a.index;
                } else if (binding[a.index] == kUnbound) {
                    binding[a.index] = tuple[p];
                    newly_bound.push_back(a.index);
                } else {
                    match = binding[a.index] == tuple[p];
                }
                if (!match) {
                    break;
                }
            }
            if (match && comparisons_hold(rule, static_cast<int>(k), binding)) {
                join_from(rule, ranges, k + 1, binding, emit);
            }
            for (std::uint32_t slot : newly_bound) {
                binding[slot] = kUnbound;
            }
        }
    }

    [[nodiscard]] bool keep_verbatim(const CompiledRule& rule) const {
        return options_.mode == GroundingMode::NoSimplify && rule.variable_free;
    }

    void charge(std::size_t amount) {
        work_ += amount;
        if (work_ > options_.budget) {
            throw GroundingError("grounding budget exceeded");
        }
    }

    void compute_extents() {
        using Pending = std::vector<std::pair<std::uint32_t, Tuple>>;
        Pending pending;
        auto derive = [&](const CompiledRule& rule, const std::vector<TermId>& binding) {
            for (const CompiledAtom& a : rule.head) {
                pending.emplace_back(a.extent, resolve(a, binding));
            }
            if (options_.mode == GroundingMode::NoSimplify) {
                for (const CompiledAtom& a : rule.negative) {
                    pending.emplace_back(a.extent, resolve(a, binding));
                }
            }
        };
        auto flush = [&] {
            for (auto& [extent, tuple] : pending) {
                if (extents_[extent].add(tuple)) {
                    charge(1);
                }
            }
            pending.clear();
        };

        // Seeds: rules without positive body, and variable-free rules kept
        // verbatim.
        std::vector<TermId> none;
        for (const CompiledRule& rule : rules_) {
            if (keep_verbatim(rule)) {
                if (comparisons_hold(rule, -1, none)) {
                    derive(rule, none);
                    for (const CompiledAtom& a : rule.positive) {
                        pending.emplace_back(a.extent, resolve(a, none));
                    }
                }
            } else if (rule.positive.empty()) {
                join(rule, {}, [&](const std::vector<TermId>& b) { derive(rule, b); });
            }
        }
        flush();

        std::vector<std::size_t> old_end(extents_.size(), 0);
        for (;;) {
            std::vector<std::size_t> cur_end(extents_.size());
            for (std::size_t e = 0; e < extents_.size(); ++e) {
                cur_end[e] = extents_[e].tuples.size();
            }
            old_end.resize(extents_.size(), 0);
            if (cur_end == old_end) {
                break;
            }
            for (const CompiledRule& rule : rules_) {
                if (keep_verbatim(rule) || rule.positive.empty()) {
                    continue;
                }
                for (std::size_t d = 0; d < rule.positive.size(); ++d) {
                    std::uint32_t delta_extent = rule.positive[d].extent;
                    if (old_end[delta_extent] == cur_end[delta_extent]) {
                        continue;
                    }
                    std::vector<Range> ranges(rule.positive.size());
                    for (std::size_t j = 0; j < rule.positive.size(); ++j) {
                        std::uint32_t e = rule.positive[j].extent;
                        if (j < d) {
                            ranges[j] = Range{0, old_end[e]};
                        } else if (j == d) {
                            ranges[j] = Range{old_end[e], cur_end[e]};
                        } else {
                            ranges[j] = Range{0, cur_end[e]};
                        }
                    }
                    join(rule, ranges, [&](const std::vector<TermId>& b) { derive(rule, b); });
                    flush();
                }
            }
            old_end = cur_end;
        }
    }

    Atom to_atom(const CompiledAtom& a, const Tuple& t) const {
        Atom atom{extents_[a.extent].predicate, {}};
        atom.args.reserve(t.size());
        for (TermId id : t) {
            atom.args.push_back(pool_.term(id));
        }
        return atom;
    }

    GroundProgram instantiate() {
        GroundProgram out;
        std::size_t instances = 0;
        for (const CompiledRule& rule : rules_) {
            std::size_t before = out.rules.size();
            auto emit = [&](const std::vector<TermId>& binding) {
                if (++instances > options_.budget) {
                    throw GroundingError("grounding budget exceeded");
                }
                out.rules.push_back(make_ground_rule(rule, binding, out.atoms));
            };
            if (keep_verbatim(rule)) {
                std::vector<TermId> none;
                if (comparisons_hold(rule, -1, none)) {
                    emit(none);
                }
            } else {
                std::vector<Range> ranges;
                for (const CompiledAtom& a : rule.positive) {
                    ranges.push_back(Range{0, extents_[a.extent].tuples.size()});
                }
                join(rule, ranges, emit);
            }
            if (out.rules.size() == before && !rule.rule->synthetic) {
                out.warnings.push_back(DroppedRuleWarning{rule.rule->id});
            }
        }
        return out;
    }

    GroundRule make_ground_rule(const CompiledRule& rule, const std::vector<TermId>& binding, AtomTable& table) {
        GroundRule g;
        if (!rule.rule->synthetic) {
            g.origin_rule_id = rule.rule->id;
        }
        g.synthetic = rule.rule->synthetic;
        for (std::size_t v = 0; v < rule.variables.size(); ++v) {
            g.substitution.emplace_back(rule.variables[v], pool_.term(binding[v]));
        }
        auto add = [&](std::vector<AtomId>& into, const CompiledAtom& a) {
            AtomId id = table.intern(to_atom(a, resolve(a, binding)));
            if (std::find(into.begin(), into.end(), id) == into.end()) {
                into.push_back(id);
            }
        };
        for (const CompiledAtom& a : rule.head) {
            add(g.head, a);
        }
        for (const CompiledAtom& a : rule.positive) {
            add(g.positive_body, a);
        }
        for (const CompiledAtom& a : rule.negative) {
            if (options_.mode == GroundingMode::Simplify && !extents_[a.extent].contains(resolve(a, binding))) {
                continue; // `not a` over an underivable atom always holds
            }
            add(g.negative_body, a);
        }
        return g;
    }

    const Program& program_;
    const GroundingOptions& options_;
    TermPool pool_;
    std::vector<Extent> extents_;
    std::map<std::string, std::uint32_t> extent_index_;
    std::vector<CompiledRule> rules_;
    std::size_t work_ = 0;
};

} // namespace

GroundProgram ground(const Program& program, const GroundingOptions& options) {
    return Instantiator(program, options).run();
}

Program anti_simplification_closure(const GroundProgram& ground, const Program& program) {
    Program out = program;
    FreshAtoms fresh(program.fresh_atoms);
    RuleId next = program.next_rule_id();
    for (const Atom& atom : ground.atoms.atoms()) {
        if (is_fresh_predicate(atom.predicate)) {
            continue;
        }
        Rule choice = desugar_choice(atom, fresh);
        choice.id = next++;
        choice.synthetic = true;
        out.rules.push_back(std::move(choice));
    }
    out.fresh_atoms = fresh.count();
    return out;
}

std::string to_string(const GroundRule& rule, const AtomTable& atoms) {
    Rule r;
    for (AtomId h : rule.head) {
        r.head.push_back(atoms.atom(h));
    }
    for (AtomId b : rule.positive_body) {
        r.body.push_back(Literal{atoms.atom(b), false});
    }
    for (AtomId b : rule.negative_body) {
        r.body.push_back(Literal{atoms.atom(b), true});
    }
    return to_string(r);
}

void print(std::ostream& out, const GroundProgram& program) {
    for (const GroundRule& r : program.rules) {
        out << to_string(r, program.atoms) << '\n';
    }
    for (AtomId id = 0; id < program.atoms.size(); ++id) {
        out << "% atom " << id << ' ' << to_string(program.atoms.atom(id)) << '\n';
    }
    for (const DroppedRuleWarning& w : program.warnings) {
        out << "% warning: rule " << w.rule_id << " dropped\n";
    }
}

} // namespace aspdbg
