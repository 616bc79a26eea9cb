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

#include <aspdbg/ground.hpp>

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace aspdbg {

/// Set of true atoms, sorted ascending.
struct Interpretation {
    std::vector<AtomId> atoms;

    [[nodiscard]] bool contains(AtomId atom) const;
    [[nodiscard]] static Interpretation of(std::vector<AtomId> atoms);

    friend bool operator==(const Interpretation&, const Interpretation&) = default;
    friend auto operator<=>(const Interpretation&, const Interpretation&) = default;
};

inline constexpr std::size_t kNoModelLimit = std::numeric_limits<std::size_t>::max();

struct SolveResult {
    bool coherent = false;
    std::vector<Interpretation> models;
    /// Enumeration stopped because `limit` models were collected (or the
    /// limit was zero and the program is coherent).
    bool model_limit_hit = false;
};

enum class Coherence { Coherent, Incoherent };

[[nodiscard]] bool is_model(const GroundProgram& program, const Interpretation& interpretation);

/// Drops rules whose negative body intersects the interpretation and strips
/// the negative bodies of the rest.
[[nodiscard]] GroundProgram reduct(const GroundProgram& program, const Interpretation& interpretation);

[[nodiscard]] bool is_answer_set(const GroundProgram& program, const Interpretation& interpretation);

/// Conflict-driven search over atoms (index order, false first) with
/// completion clauses, checking each total candidate for unfounded sets.
/// `extra_facts` are added as `a.` rules. Enumeration order is deterministic.
[[nodiscard]] SolveResult enumerate_answer_sets(const GroundProgram& program, std::size_t limit = kNoModelLimit,
                                                std::span<const AtomId> extra_facts = {});

[[nodiscard]] Coherence check_coherence(const GroundProgram& program, std::span<const AtomId> extra_facts = {});

inline constexpr std::size_t kBruteForceAtomLimit = 25;

/// Reference semantics: every subset of the atom table, filtered by model
/// check and subset-minimality over the reduct. Throws std::invalid_argument
/// above kBruteForceAtomLimit atoms.
[[nodiscard]] std::vector<Interpretation> brute_force_answer_sets(const GroundProgram& program,
                                                                  std::span<const AtomId> extra_facts = {});

} // namespace aspdbg
