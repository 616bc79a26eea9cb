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

#include <aspdbg/diagnosis.hpp>

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aspdbg::cli {

inline constexpr std::string_view kProtocolVersion = "1";

/// Newline-delimited JSON message. On the wire the payload fields sit next
/// to `kind` and `seq` in one flat object.
struct SessionMessage {
    std::string kind;
    std::int64_t seq = 0;
    nlohmann::json payload = nlohmann::json::object();

    friend bool operator==(const SessionMessage&, const SessionMessage&) = default;
};

class ProtocolError : public std::runtime_error {
public:
    ProtocolError(std::int64_t seq, const std::string& message) : std::runtime_error(message), seq_(seq) {}
    [[nodiscard]] std::int64_t seq() const noexcept { return seq_; }

private:
    std::int64_t seq_;
};

[[nodiscard]] bool is_known_kind(std::string_view kind) noexcept;

/// One line, no trailing newline.
[[nodiscard]] std::string serialize(const SessionMessage& message);

/// Throws ProtocolError (seq = `fallback_seq` when the line carries none).
[[nodiscard]] SessionMessage parse_message(std::string_view line, std::int64_t fallback_seq = 0);

/// Everything needed to run a session, loaded from files.
struct SessionSetup {
    std::vector<std::string> program_files;
    std::string test_file;
    std::shared_ptr<const SessionContext> context;
};

/// Reads and parses the inputs. `background` empty means the default (all
/// facts). Throws ParseError, InstrumentationError, GroundingError or
/// std::runtime_error for unreadable files.
[[nodiscard]] SessionSetup load_session(const std::vector<std::string>& program_files, const std::string& test_file,
                                        const std::optional<std::set<RuleId>>& background,
                                        const SessionOptions& options);

[[nodiscard]] std::string read_file(const std::string& path);

[[nodiscard]] nlohmann::json findings_json(const SessionState& state);

/// Protocol state machine for one session. Feed inbound lines, collect the
/// outbound messages.
class ProtocolSession {
public:
    explicit ProtocolSession(const SessionSetup& setup);

    /// hello, ground_report, then diagnosis + queries (+ finding), or bye
    /// when the test passes.
    std::vector<SessionMessage> start();
    std::vector<SessionMessage> handle(std::string_view line);
    /// Emitted when the input ends without a stop.
    std::vector<SessionMessage> close();

    [[nodiscard]] bool finished() const noexcept { return finished_; }
    /// 0 completed, 2 test passed.
    [[nodiscard]] int exit_code() const noexcept { return exit_code_; }
    [[nodiscard]] const SessionState& state() const { return *state_; }

private:
    SessionMessage make(std::string kind, nlohmann::json payload);
    void emit_step(std::vector<SessionMessage>& out);
    SessionMessage bye(std::string_view status);

    SessionSetup setup_;
    std::unique_ptr<SessionState> state_;
    std::int64_t next_seq_ = 1;
    std::int64_t inbound_lines_ = 0;
    bool finished_ = false;
    int exit_code_ = 0;
};

} // namespace aspdbg::cli
