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

#include <cstdint>
#include <span>
#include <vector>

namespace aspdbg::detail {

using Var = std::uint32_t;

struct Lit {
    std::uint32_t code = 0;

    static Lit pos(Var v) noexcept { return Lit{v << 1}; }
    static Lit neg(Var v) noexcept { return Lit{(v << 1) | 1U}; }
    [[nodiscard]] Var var() const noexcept { return code >> 1; }
    [[nodiscard]] bool negative() const noexcept { return (code & 1U) != 0; }
    Lit operator~() const noexcept { return Lit{code ^ 1U}; }
    friend bool operator==(Lit, Lit) = default;
};

/// Plain CDCL: two watched literals, first-UIP learning, no restarts, no
/// clause deletion. Decisions pick the lowest-index unassigned variable and
/// try false first, which keeps search (and enumeration order) deterministic.
class SatCore {
public:
    Var new_var();
    [[nodiscard]] std::size_t num_vars() const noexcept { return assigns_.size(); }

    /// Must be called at the root level. Returns false once the clause set is
    /// known to be unsatisfiable.
    bool add_clause(std::span<const Lit> lits);
    bool add_clause(std::initializer_list<Lit> lits) { return add_clause(std::span<const Lit>(lits.begin(), lits.size())); }

    /// Searches for a total assignment approved by `accept(core)`. On
    /// rejection the core backtracks to the root and calls `refine(core)`,
    /// which must add clauses excluding the rejected assignment.
    template <class Accept, class Refine>
    bool solve(Accept&& accept, Refine&& refine) {
        for (;;) {
            switch (search()) {
            case Status::Unsat: return false;
            case Status::Total:
                if (accept(*this)) {
                    return true;
                }
                backtrack(0);
                refine(*this);
                if (!ok_) {
                    return false;
                }
                break;
            }
        }
    }

    bool solve() {
        return solve([](const SatCore&) { return true; }, [](SatCore&) {});
    }

    [[nodiscard]] bool is_true(Var v) const noexcept { return assigns_[v] == kTrue; }
    [[nodiscard]] bool is_true(Lit l) const noexcept { return value(l) == kTrue; }

    void backtrack(std::uint32_t level);
    [[nodiscard]] bool ok() const noexcept { return ok_; }

private:
    enum class Status { Unsat, Total };
    static constexpr std::int8_t kFalse = 0;
    static constexpr std::int8_t kTrue = 1;
    static constexpr std::int8_t kUndef = 2;
    static constexpr std::uint32_t kNoReason = 0xFFFFFFFFU;

    [[nodiscard]] std::int8_t value(Lit l) const noexcept {
        std::int8_t v = assigns_[l.var()];
        return v == kUndef ? kUndef : static_cast<std::int8_t>(v ^ static_cast<std::int8_t>(l.negative()));
    }
    [[nodiscard]] std::uint32_t decision_level() const noexcept {
        return static_cast<std::uint32_t>(trail_lim_.size());
    }

    void enqueue(Lit l, std::uint32_t reason);
    std::uint32_t attach(std::vector<Lit> lits);
    /// Returns the index of a conflicting clause or kNoReason.
    std::uint32_t propagate();
    void analyze(std::uint32_t conflict, std::vector<Lit>& learnt, std::uint32_t& backjump);
    Status search();

    std::vector<std::vector<Lit>> clauses_;
    std::vector<std::vector<std::uint32_t>> watches_; // by literal code
    std::vector<std::int8_t> assigns_;
    std::vector<std::uint32_t> levels_;
    std::vector<std::uint32_t> reasons_;
    std::vector<Lit> trail_;
    std::vector<std::uint32_t> trail_lim_;
    std::vector<char> seen_;
    std::size_t qhead_ = 0;
    bool ok_ = true;
};

} // namespace aspdbg::detail
