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

#include "sat_core.hpp"

#include <algorithm>
#include <cassert>

namespace aspdbg::detail {

Var SatCore::new_var() {
    Var v = static_cast<Var>(assigns_.size());
    assigns_.push_back(kUndef);
    levels_.push_back(0);
    reasons_.push_back(kNoReason);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    return v;
}

void SatCore::enqueue(Lit l, std::uint32_t reason) {
    assigns_[l.var()] = l.negative() ? kFalse : kTrue;
    levels_[l.var()] = decision_level();
    reasons_[l.var()] = reason;
    trail_.push_back(l);
}

std::uint32_t SatCore::attach(std::vector<Lit> lits) {
    auto index = static_cast<std::uint32_t>(clauses_.size());
    watches_[lits[0].code].push_back(index);
    watches_[lits[1].code].push_back(index);
    clauses_.push_back(std::move(lits));
    return index;
}

bool SatCore::add_clause(std::span<const Lit> input) {
    assert(decision_level() == 0);
    if (!ok_) {
        return false;
    }
    std::vector<Lit> lits;
    for (Lit l : input) {
        if (value(l) == kTrue || std::find(lits.begin(), lits.end(), ~l) != lits.end()) {
            return true; // satisfied or tautology
        }
        if (value(l) == kFalse || std::find(lits.begin(), lits.end(), l) != lits.end()) {
            continue;
        }
        lits.push_back(l);
    }
    if (lits.empty()) {
        ok_ = false;
        return false;
    }
    if (lits.size() == 1) {
        enqueue(lits[0], kNoReason);
        ok_ = propagate() == kNoReason;
        return ok_;
    }
    attach(std::move(lits));
    return true;
}

void SatCore::backtrack(std::uint32_t level) {
    if (decision_level() <= level) {
        return;
    }
    std::size_t keep = trail_lim_[level];
    for (std::size_t i = trail_.size(); i > keep; --i) {
        Var v = trail_[i - 1].var();
        assigns_[v] = kUndef;
        reasons_[v] = kNoReason;
    }
    trail_.resize(keep);
    trail_lim_.resize(level);
    qhead_ = std::min(qhead_, trail_.size());
}

std::uint32_t SatCore::propagate() {
    while (qhead_ < trail_.size()) {
        Lit false_lit = ~trail_[qhead_++];
        std::vector<std::uint32_t>& ws = watches_[false_lit.code];
        std::size_t keep = 0;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            std::uint32_t ci = ws[i];
            std::vector<Lit>& c = clauses_[ci];
            if (c[0] == false_lit) {
                std::swap(c[0], c[1]);
            }
            if (value(c[0]) == kTrue) {
                ws[keep++] = ci;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < c.size(); ++k) {
                if (value(c[k]) != kFalse) {
                    std::swap(c[1], c[k]);
                    watches_[c[1].code].push_back(ci);
                    moved = true;
                    break;
                }
            }
            if (moved) {
                continue;
            }
            ws[keep++] = ci;
            if (value(c[0]) == kFalse) {
                for (std::size_t j = i + 1; j < ws.size(); ++j) {
                    ws[keep++] = ws[j];
                }
                ws.resize(keep);
                qhead_ = trail_.size();
                return ci;
            }
            enqueue(c[0], ci);
        }
        ws.resize(keep);
    }
    return kNoReason;
}

void SatCore::analyze(std::uint32_t conflict, std::vector<Lit>& learnt, std::uint32_t& backjump) {
    learnt.assign(1, Lit{});
    int pending = 0;
    Lit p{};
    bool have_p = false;
    std::size_t index = trail_.size();
    std::uint32_t reason = conflict;
    for (;;) {
        const std::vector<Lit>& c = clauses_[reason];
        for (std::size_t j = have_p ? 1 : 0; j < c.size(); ++j) {
            Lit q = c[j];
            Var v = q.var();
            if (seen_[v] == 0 && levels_[v] > 0) {
                seen_[v] = 1;
                if (levels_[v] >= decision_level()) {
                    ++pending;
                } else {
                    learnt.push_back(q);
                }
            }
        }
        while (seen_[trail_[--index].var()] == 0) {
        }
        p = trail_[index];
        have_p = true;
        seen_[p.var()] = 0;
        --pending;
        if (pending <= 0) {
            break;
        }
        reason = reasons_[p.var()];
        // Reason clauses keep their implied literal first.
        assert(clauses_[reason][0] == p);
    }
    learnt[0] = ~p;
    backjump = 0;
    std::size_t max_i = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
        seen_[learnt[i].var()] = 0;
        if (levels_[learnt[i].var()] > backjump) {
            backjump = levels_[learnt[i].var()];
            max_i = i;
        }
    }
    if (learnt.size() > 1) {
        std::swap(learnt[1], learnt[max_i]);
    }
}

SatCore::Status SatCore::search() {
    if (!ok_) {
        return Status::Unsat;
    }
    std::vector<Lit> learnt;
    for (;;) {
        std::uint32_t conflict = propagate();
        if (conflict != kNoReason) {
            if (decision_level() == 0) {
                ok_ = false;
                return Status::Unsat;
            }
            std::uint32_t backjump = 0;
            analyze(conflict, learnt, backjump);
            backtrack(backjump);
            if (learnt.size() == 1) {
                enqueue(learnt[0], kNoReason);
            } else {
                std::uint32_t ci = attach(learnt);
                enqueue(learnt[0], ci);
            }
            continue;
        }
        Var next = 0;
        while (next < assigns_.size() && assigns_[next] != kUndef) {
            ++next;
        }
        if (next == assigns_.size()) {
            return Status::Total;
        }
        trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
        enqueue(Lit::neg(next), kNoReason);
    }
}

} // namespace aspdbg::detail
