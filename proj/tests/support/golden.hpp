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

// Hand-derived answer sets of the instrumented propositional example
// (p2.lp with assertTrue(a)), keyed by the reason element left out of the
// facts. Fresh choice atoms are omitted.

#pragma once

#include <map>
#include <set>
#include <string>

namespace aspdbg::testing {

using AtomTexts = std::set<std::string>;

inline std::map<std::string, std::set<AtomTexts>> p2_pools() {
    return {
        {"_debug4",
         {
             {"a", "c", "_support(a)", "_support(b)", "_debug1", "_debug3"},
             {"a", "c", "_support(a)", "_support(b)", "_debug1", "_debug2", "_debug3"},
             {"a", "c", "_support(a)", "_support(b)", "_support(c)", "_debug1", "_debug3"},
             {"a", "c", "_support(a)", "_support(b)", "_support(c)", "_debug1", "_debug2", "_debug3"},
             {"a", "c", "_support(a)", "_support(b)", "_debug1"},
             {"a", "c", "_support(a)", "_support(b)", "_debug1", "_debug2"},
         }},
        {"_support(a)",
         {
             {"a", "b", "_support(b)", "_support(c)", "_debug2", "_debug4"},
             {"a", "b", "_support(b)", "_support(c)", "_debug2", "_debug3", "_debug4"},
             {"a", "b", "_support(b)", "_support(c)", "_debug1", "_debug2", "_debug4"},
             {"a", "b", "_support(b)", "_support(c)", "_debug1", "_debug2", "_debug3", "_debug4"},
             {"a", "_support(b)", "_support(c)", "_debug4"},
             {"a", "_support(b)", "_support(c)", "_debug1", "_debug4"},
         }},
        {"_support(b)",
         {
             {"a", "b", "c", "_support(a)", "_debug1", "_debug4"},
             {"a", "b", "c", "_support(a)", "_debug1", "_debug2", "_debug4"},
             {"a", "b", "c", "_support(a)", "_debug1", "_debug3", "_debug4"},
             {"a", "b", "c", "_support(a)", "_debug1", "_debug2", "_debug3", "_debug4"},
         }},
    };
}

// Query counts recomputed from pools: atom -> (in, out).
inline std::map<std::string, std::pair<std::size_t, std::size_t>> pool_counts(
    const std::map<std::string, std::set<AtomTexts>>& pools, const AtomTexts& candidates) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> out;
    for (const std::string& c : candidates) {
        auto& [in, out_count] = out[c];
        for (const auto& [omitted, pool] : pools) {
            for (const AtomTexts& m : pool) {
                ++(m.contains(c) ? in : out_count);
            }
        }
    }
    return out;
}

} // namespace aspdbg::testing
