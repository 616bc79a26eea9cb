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

#include "protocol.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace aspdbg::cli {

inline constexpr int kExitCompleted = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitTestPassed = 2;

struct TerminalResult {
    int exit_code = kExitCompleted;
    std::vector<Finding> findings;
};

void print_findings(std::ostream& out, const SessionState& state);

/// Interactive loop: prints the diagnosis and asks `atom? [y/n/skip]` for
/// each ranked query. `undo` reverts the last answer, `stop` ends early.
TerminalResult run_terminal_session(const SessionSetup& setup, std::istream& in, std::ostream& out);

/// Protocol over line streams; returns the exit code.
int run_protocol(const SessionSetup& setup, std::istream& in, std::ostream& out);

/// Accepts connections on 127.0.0.1:`port` (0 picks a free port), one
/// protocol session per connection. `on_listening` receives the bound port.
/// Returns after `max_connections` sessions ended (0 = never).
int serve(const SessionSetup& setup, std::uint16_t port, std::size_t max_connections,
          const std::function<void(std::uint16_t)>& on_listening);

} // namespace aspdbg::cli
