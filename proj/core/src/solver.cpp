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

#include <aspdbg/solver.hpp>

#include "sat_core.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace aspdbg {

bool Interpretation::contains(AtomId atom) const {
    return std::binary_search(atoms.begin(), atoms.end(), atom);
}

Interpretation Interpretation::of(std::vector<AtomId> atoms) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return Interpretation{std::move(atoms)};
}

namespace {

using detail::Lit;
using detail::SatCore;
using detail::Var;

struct FlatRule {
    std::vector<AtomId> head;
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;
};

std::vector<FlatRule> flatten(const GroundProgram& program, std::span<const AtomId> extra_facts) {
    std::vector<FlatRule> rules;
    rules.reserve(program.rules.size() + extra_facts.size());
    for (const GroundRule& r : program.rules) {
        rules.push_back(FlatRule{r.head, r.positive_body, r.negative_body});
    }
    for (AtomId a : extra_facts) {
        if (a >= program.atoms.size()) {
            throw std::out_of_range("extra fact outside the atom table");
        }
        rules.push_back(FlatRule{{a}, {}, {}});
    }
    return rules;
}

std::vector<char> membership(std::size_t num_atoms, const Interpretation& interpretation) {
    std::vector<char> in(num_atoms, 0);
    for (AtomId a : interpretation.atoms) {
        if (a >= num_atoms) {
            throw std::out_of_range("interpretation outside the atom table");
        }
        in[a] = 1;
    }
    return in;
}

bool body_holds(const FlatRule& r, const std::vector<char>& in) {
    return std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return in[a] != 0; }) &&
           std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return in[a] != 0; });
}

bool satisfies(const std::vector<FlatRule>& rules, const std::vector<char>& in) {
    return std::all_of(rules.begin(), rules.end(), [&](const FlatRule& r) {
        return !body_holds(r, in) || std::any_of(r.head.begin(), r.head.end(), [&](AtomId a) { return in[a] != 0; });
    });
}

// Atoms of an unfounded subset of the model `in`: I \ J for some J ⊂ I
// modelling the reduct. Empty iff `in` is an answer set. Requires `in` to be
// a model of `rules`.
std::vector<AtomId> unfounded_atoms(const std::vector<FlatRule>& rules, const std::vector<char>& in) {
    struct Relevant {
        std::vector<AtomId> head; // head ∩ I
        const std::vector<AtomId>* pos;
    };
    std::vector<Relevant> relevant;
    bool horn = true;
    for (const FlatRule& r : rules) {
        if (!body_holds(r, in)) {
            continue;
        }
        Relevant rel{{}, &r.pos};
        for (AtomId h : r.head) {
            if (in[h] != 0) {
                rel.head.push_back(h);
            }
        }
        if (rel.head.empty()) {
            throw std::logic_error("unfounded-set check on a non-model");
        }
        horn = horn && rel.head.size() == 1;
        relevant.push_back(std::move(rel));
    }

    std::vector<char> in_j(in.size(), 0);
    if (horn) {
        // Least model of the Horn reduct restricted to I.
        std::vector<std::size_t> missing(relevant.size());
        std::vector<std::vector<std::size_t>> watchers(in.size());
        std::vector<AtomId> queue;
        for (std::size_t i = 0; i < relevant.size(); ++i) {
            missing[i] = relevant[i].pos->size();
            for (AtomId b : *relevant[i].pos) {
                watchers[b].push_back(i);
            }
            if (missing[i] == 0 && in_j[relevant[i].head[0]] == 0) {
                in_j[relevant[i].head[0]] = 1;
                queue.push_back(relevant[i].head[0]);
            }
        }
        while (!queue.empty()) {
            AtomId a = queue.back();
            queue.pop_back();
            for (std::size_t i : watchers[a]) {
                if (--missing[i] == 0 && in_j[relevant[i].head[0]] == 0) {
                    in_j[relevant[i].head[0]] = 1;
                    queue.push_back(relevant[i].head[0]);
                }
            }
        }
    } else {
        // Is there a proper subset of I satisfying every relevant rule?
        SatCore sat;
        std::vector<Var> var_of(in.size(), 0);
        std::vector<AtomId> members;
        for (AtomId a = 0; a < in.size(); ++a) {
            if (in[a] != 0) {
                var_of[a] = sat.new_var();
                members.push_back(a);
            }
        }
        std::vector<Lit> clause;
        for (const Relevant& r : relevant) {
            clause.clear();
            for (AtomId h : r.head) {
                clause.push_back(Lit::pos(var_of[h]));
            }
            for (AtomId b : *r.pos) {
                clause.push_back(Lit::neg(var_of[b]));
            }
            sat.add_clause(clause);
        }
        clause.clear();
        for (AtomId a : members) {
            clause.push_back(Lit::neg(var_of[a]));
        }
        sat.add_clause(clause);
        if (!sat.solve()) {
            return {};
        }
        for (AtomId a : members) {
            in_j[a] = sat.is_true(var_of[a]) ? 1 : 0;
        }
    }
    std::vector<AtomId> unfounded;
    for (AtomId a = 0; a < in.size(); ++a) {
        if (in[a] != 0 && in_j[a] == 0) {
            unfounded.push_back(a);
        }
    }
    return unfounded;
}

// Candidate generation by CDCL over atoms plus completion, with loop nogoods
// learnt from unfounded sets of rejected candidates.
class AnswerSetSearch {
public:
    AnswerSetSearch(std::size_t num_atoms, std::vector<FlatRule> rules) : num_atoms_(num_atoms), rules_(std::move(rules)) {
        for (std::size_t a = 0; a < num_atoms_; ++a) {
            core_.new_var();
        }
        encode();
    }

    std::optional<Interpretation> next() {
        if (!core_.ok()) {
            return std::nullopt;
        }
        std::vector<AtomId> unfounded;
        std::vector<char> in(num_atoms_, 0);
        auto accept = [&](const SatCore& core) {
            for (AtomId a = 0; a < num_atoms_; ++a) {
                in[a] = core.is_true(Var{a}) ? 1 : 0;
            }
            unfounded = unfounded_atoms(rules_, in);
            return unfounded.empty();
        };
        auto refine = [&](SatCore&) { add_loop_nogoods(unfounded, in); };
        if (!core_.solve(accept, refine)) {
            return std::nullopt;
        }
        Interpretation model;
        std::vector<Lit> block;
        for (AtomId a = 0; a < num_atoms_; ++a) {
            if (in[a] != 0) {
                model.atoms.push_back(a);
                block.push_back(Lit::neg(a));
            }
        }
        // Answer sets form an antichain, so excluding supersets is enough.
        core_.backtrack(0);
        core_.add_clause(block);
        return model;
    }

private:
    // Literal equivalent to the conjunction `lits`; nullopt encodes true.
    std::optional<Lit> conjunction(const std::vector<Lit>& lits) {
        if (lits.empty()) {
            return std::nullopt;
        }
        if (lits.size() == 1) {
            return lits[0];
        }
        Lit aux = Lit::pos(core_.new_var());
        std::vector<Lit> back{aux};
        for (Lit l : lits) {
            core_.add_clause({~aux, l});
            back.push_back(~l);
        }
        core_.add_clause(back);
        return aux;
    }

    std::vector<Lit> body_lits(const FlatRule& r) const {
        std::vector<Lit> lits;
        for (AtomId b : r.pos) {
            lits.push_back(Lit::pos(b));
        }
        for (AtomId b : r.neg) {
            lits.push_back(Lit::neg(b));
        }
        return lits;
    }

    void encode() {
        bodies_.reserve(rules_.size());
        for (const FlatRule& r : rules_) {
            std::optional<Lit> body = conjunction(body_lits(r));
            bodies_.push_back(body);
            std::vector<Lit> clause;
            for (AtomId h : r.head) {
                clause.push_back(Lit::pos(h));
            }
            if (body) {
                clause.push_back(~*body);
            }
            core_.add_clause(clause);
        }
        // Completion: a true atom needs a rule whose body holds and whose other
        // head atoms are false.
        std::vector<std::vector<std::size_t>> defining(num_atoms_);
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            for (AtomId h : rules_[i].head) {
                defining[h].push_back(i);
            }
        }
        for (AtomId a = 0; a < num_atoms_; ++a) {
            std::vector<Lit> clause{Lit::neg(a)};
            bool unconditional = false;
            for (std::size_t i : defining[a]) {
                std::optional<Lit> support = support_literal(i, [a](AtomId h) { return h == a; });
                if (!support) {
                    unconditional = true;
                    break;
                }
                clause.push_back(*support);
            }
            if (!unconditional) {
                core_.add_clause(clause);
            }
        }
    }

    // Literal for "body of rule i holds and its head atoms outside `keep`
    // are false".
    template <class Keep>
    std::optional<Lit> support_literal(std::size_t i, Keep&& keep) {
        std::vector<Lit> parts;
        if (bodies_[i]) {
            parts.push_back(*bodies_[i]);
        }
        for (AtomId h : rules_[i].head) {
            if (!keep(h)) {
                parts.push_back(Lit::neg(h));
            }
        }
        return conjunction(parts);
    }

    void add_loop_nogoods(const std::vector<AtomId>& unfounded, const std::vector<char>& in) {
        std::vector<char> in_u(num_atoms_, 0);
        for (AtomId a : unfounded) {
            in_u[a] = 1;
        }
        std::vector<Lit> external;
        bool trivially_supported = false;
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            const FlatRule& r = rules_[i];
            bool touches = std::any_of(r.head.begin(), r.head.end(), [&](AtomId h) { return in_u[h] != 0; });
            bool internal = std::any_of(r.pos.begin(), r.pos.end(), [&](AtomId b) { return in_u[b] != 0; });
            if (!touches || internal) {
                continue;
            }
            std::optional<Lit> support = support_literal(i, [&](AtomId h) { return in_u[h] != 0; });
            if (!support) {
                trivially_supported = true;
                break;
            }
            external.push_back(*support);
        }
        if (!trivially_supported) {
            for (AtomId a : unfounded) {
                std::vector<Lit> clause{Lit::neg(a)};
                clause.insert(clause.end(), external.begin(), external.end());
                core_.add_clause(clause);
            }
        }
        std::vector<Lit> block;
        for (AtomId a = 0; a < num_atoms_; ++a) {
            block.push_back(in[a] != 0 ? Lit::neg(a) : Lit::pos(a));
        }
        core_.add_clause(block);
    }

    std::size_t num_atoms_;
    std::vector<FlatRule> rules_;
    std::vector<std::optional<Lit>> bodies_;
    SatCore core_;
};

} // namespace

bool is_model(const GroundProgram& program, const Interpretation& interpretation) {
    return satisfies(flatten(program, {}), membership(program.atoms.size(), interpretation));
}

GroundProgram reduct(const GroundProgram& program, const Interpretation& interpretation) {
    GroundProgram out;
    out.atoms = program.atoms;
    for (const GroundRule& r : program.rules) {
        if (std::any_of(r.negative_body.begin(), r.negative_body.end(),
                        [&](AtomId a) { return interpretation.contains(a); })) {
            continue;
        }
        GroundRule kept = r;
        kept.negative_body.clear();
        out.rules.push_back(std::move(kept));
    }
    return out;
}

bool is_answer_set(const GroundProgram& program, const Interpretation& interpretation) {
    std::vector<FlatRule> rules = flatten(program, {});
    std::vector<char> in = membership(program.atoms.size(), interpretation);
    return satisfies(rules, in) && unfounded_atoms(rules, in).empty();
}

SolveResult enumerate_answer_sets(const GroundProgram& program, std::size_t limit, std::span<const AtomId> extra_facts) {
    AnswerSetSearch search(program.atoms.size(), flatten(program, extra_facts));
    SolveResult result;
    while (auto model = search.next()) {
        result.coherent = true;
        if (result.models.size() == limit) {
            result.model_limit_hit = true;
            break;
        }
        result.models.push_back(std::move(*model));
    }
    return result;
}

Coherence check_coherence(const GroundProgram& program, std::span<const AtomId> extra_facts) {
    AnswerSetSearch search(program.atoms.size(), flatten(program, extra_facts));
    return search.next() ? Coherence::Coherent : Coherence::Incoherent;
}

std::vector<Interpretation> brute_force_answer_sets(const GroundProgram& program, std::span<const AtomId> extra_facts) {
    const std::size_t n = program.atoms.size();
    if (n > kBruteForceAtomLimit) {
        throw std::invalid_argument("brute force limited to " + std::to_string(kBruteForceAtomLimit) + " atoms");
    }
    struct MaskRule {
        std::uint32_t head = 0;
        std::uint32_t pos = 0;
        std::uint32_t neg = 0;
    };
    std::vector<MaskRule> rules;
    auto mask = [](const std::vector<AtomId>& atoms) {
        std::uint32_t m = 0;
        for (AtomId a : atoms) {
            m |= 1U << a;
        }
        return m;
    };
    for (const GroundRule& r : program.rules) {
        rules.push_back(MaskRule{mask(r.head), mask(r.positive_body), mask(r.negative_body)});
    }
    for (AtomId a : extra_facts) {
        rules.push_back(MaskRule{1U << a, 0, 0});
    }
    // I |= r  iff  body(r) false in I or head(r) ∩ I ≠ ∅.
    auto models = [&](std::uint32_t i, std::uint32_t reduct_of, bool use_reduct) {
        for (const MaskRule& r : rules) {
            if (use_reduct && (r.neg & reduct_of) != 0) {
                continue; // removed by the reduct
            }
            bool body = (r.pos & ~i) == 0 && (use_reduct || (r.neg & i) == 0);
            if (body && (r.head & i) == 0) {
                return false;
            }
        }
        return true;
    };
    std::vector<Interpretation> answer_sets;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        auto i = static_cast<std::uint32_t>(bits);
        if (!models(i, 0, false)) {
            continue;
        }
        bool minimal = true;
        if (i != 0) {
            // Every proper subset J of I, largest first.
            for (std::uint32_t j = (i - 1) & i;; j = (j - 1) & i) {
                if (models(j, i, true)) {
                    minimal = false;
                    break;
                }
                if (j == 0) {
                    break;
                }
            }
        }
        if (minimal) {
            Interpretation model;
            for (AtomId a = 0; a < n; ++a) {
                if ((i >> a) & 1U) {
                    model.atoms.push_back(a);
                }
            }
            answer_sets.push_back(std::move(model));
        }
    }
    return answer_sets;
}

} // namespace aspdbg
