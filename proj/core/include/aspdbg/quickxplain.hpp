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

#include <cstddef>
#include <vector>

namespace aspdbg {

/// QuickXplain. `conflicting(set)` must be monotone (supersets of a
/// conflicting set conflict) and hold for `elements`. Returns a
/// subset-minimal conflicting subset that prefers earlier elements; the
/// result keeps the input order.
template <class T, class Oracle>
std::vector<T> quickxplain(const std::vector<T>& elements, Oracle&& conflicting) {
    struct Run {
        Oracle& oracle;

        static std::vector<T> join(std::vector<T> a, const std::vector<T>& b) {
            a.insert(a.end(), b.begin(), b.end());
            return a;
        }

        std::vector<T> operator()(const std::vector<T>& base, bool base_grew, const std::vector<T>& candidates) {
            if (base_grew && oracle(base)) {
                return {};
            }
            if (candidates.size() == 1) {
                return candidates;
            }
            std::size_t half = candidates.size() / 2;
            std::vector<T> first(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(half));
            std::vector<T> second(candidates.begin() + static_cast<std::ptrdiff_t>(half), candidates.end());
            std::vector<T> from_second = (*this)(join(base, first), !first.empty(), second);
            std::vector<T> from_first = (*this)(join(base, from_second), !from_second.empty(), first);
            return join(std::move(from_first), from_second);
        }
    };
    if (elements.empty() || conflicting(std::vector<T>{})) {
        return {};
    }
    return Run{conflicting}({}, false, elements);
}

} // namespace aspdbg
