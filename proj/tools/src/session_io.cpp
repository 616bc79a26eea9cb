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

#include "session_io.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <iostream>
#include <string>
#include <thread>

namespace aspdbg::cli {

namespace {

std::string location(const SourceSpan& span) {
    return span.file + ":" + std::to_string(span.line) + ":" + std::to_string(span.column);
}

void print_warnings(std::ostream& out, const SessionContext& c) {
    for (const DroppedRuleWarning& w : c.gamma.debugging.warnings) {
        const Rule* r = c.program.find(w.rule_id);
        out << "warning: rule " << w.rule_id;
        if (r != nullptr) {
            out << " (" << location(r->span) << ")";
        }
        out << " has no ground instances and was dropped\n";
    }
}

void print_queries(std::ostream& out, const SessionState& s) {
    if (s.queries.empty()) {
        return;
    }
    out << "queries:\n";
    for (const Query& q : s.queries) {
        out << "  " << to_string(s.atoms().atom(q.atom)) << "  (in " << q.q_plus << ", out " << q.q_minus
            << " sampled answer sets)\n";
    }
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

} // namespace

void print_findings(std::ostream& out, const SessionState& state) {
    const SessionContext& c = *state.context;
    out << "reason of incoherence:";
    for (AtomId a : state.reason.facts) {
        out << ' ' << to_string(state.atoms().atom(a));
    }
    out << (state.reason.facts.empty() ? " (none)\n" : "\n");
    for (const Finding& f : findings(state)) {
        if (const auto* r = std::get_if<RuleFinding>(&f)) {
            out << "rule " << r->rule_id << " at " << location(r->span) << '\n';
            for (std::size_t i = 0; i < r->substitutions.size(); ++i) {
                out << "  substitution: " << (r->substitutions[i].empty() ? "(none)" : to_string(r->substitutions[i]))
                    << '\n';
                out << "  ground instance: " << r->ground_instances[i] << '\n';
            }
        } else {
            const auto& s = std::get<SupportFinding>(f);
            out << "atom " << to_string(s.atom) << " is unsupported; rules with it in the head:";
            for (RuleId id : s.candidate_rule_ids) {
                out << ' ' << id << " (" << location(c.program.find(id)->span) << ")";
            }
            if (s.candidate_rule_ids.empty()) {
                out << " none";
            }
            out << '\n';
        }
    }
}

TerminalResult run_terminal_session(const SessionSetup& setup, std::istream& in, std::ostream& out) {
    print_warnings(out, *setup.context);
    SessionState state = start_session(setup.context);
    if (state.status == SessionStatus::TestPassed) {
        out << "test passed: program coherent with assertions\n";
        return TerminalResult{kExitTestPassed, {}};
    }
    bool stopped = false;
    while (!stopped) {
        print_findings(out, state);
        if (state.status == SessionStatus::AnswersInconsistent) {
            out << "answers inconsistent with every candidate fix; type undo to revert the last answer\n";
        } else if (is_terminal(state.status)) {
            break;
        }
        print_queries(out, state);
        bool changed = false;
        std::size_t i = 0;
        while (!changed && !stopped) {
            bool can_ask = i < state.queries.size();
            if (!can_ask && state.answered.empty()) {
                break;
            }
            if (can_ask) {
                out << to_string(state.atoms().atom(state.queries[i].atom)) << "? [y/n/skip] " << std::flush;
            } else {
                out << "no further queries; undo or stop? " << std::flush;
            }
            std::string line;
            if (!std::getline(in, line)) {
                stopped = true;
                break;
            }
            line = trim(line);
            if (can_ask && (line == "y" || line == "yes" || line == "n" || line == "no")) {
                state = apply_answer(state, state.queries[i].atom, line[0] == 'y');
                changed = true;
            } else if (can_ask && (line == "skip" || line == "s" || line.empty())) {
                ++i;
            } else if (line == "undo" && !state.answered.empty()) {
                state = undo(state, state.answered.size() - 1);
                changed = true;
            } else if (line == "stop" || line == "q") {
                stopped = true;
            } else {
                out << "please answer y, n, skip, undo or stop\n";
            }
        }
        if (!changed) {
            break;
        }
    }
    out << "session ended (" << to_string(state.status) << ")\n";
    return TerminalResult{kExitCompleted, findings(state)};
}

int run_protocol(const SessionSetup& setup, std::istream& in, std::ostream& out) {
    ProtocolSession session(setup);
    auto write = [&](const std::vector<SessionMessage>& messages) {
        for (const SessionMessage& m : messages) {
            out << serialize(m) << '\n';
        }
        out.flush();
    };
    write(session.start());
    std::string line;
    while (!session.finished() && std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        write(session.handle(line));
    }
    write(session.close());
    return session.exit_code();
}

namespace {

bool send_all(int fd, const std::string& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
        ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            return false;
        }
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

void run_connection(const SessionSetup& setup, int fd) {
    ProtocolSession session(setup);
    auto write = [&](const std::vector<SessionMessage>& messages) {
        std::string data;
        for (const SessionMessage& m : messages) {
            data += serialize(m);
            data += '\n';
        }
        return send_all(fd, data);
    };
    bool alive = write(session.start());
    std::string buffer;
    char chunk[4096];
    while (alive && !session.finished()) {
        ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            break;
        }
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t nl;
        while (alive && !session.finished() && (nl = buffer.find('\n')) != std::string::npos) {
            std::string line = trim(buffer.substr(0, nl));
            buffer.erase(0, nl + 1);
            if (!line.empty()) {
                alive = write(session.handle(line));
            }
        }
    }
    if (alive) {
        write(session.close());
    }
    ::close(fd);
}

} // namespace

int serve(const SessionSetup& setup, std::uint16_t port, std::size_t max_connections,
          const std::function<void(std::uint16_t)>& on_listening) {
    int listener = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listener < 0) {
        throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
    }
    int yes = 1;
    ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(listener, 8) != 0) {
        std::string reason = std::strerror(errno);
        ::close(listener);
        throw std::runtime_error("cannot listen on port " + std::to_string(port) + ": " + reason);
    }
    socklen_t len = sizeof addr;
    ::getsockname(listener, reinterpret_cast<sockaddr*>(&addr), &len);
    on_listening(ntohs(addr.sin_port));

    std::vector<std::thread> sessions;
    for (std::size_t accepted = 0; max_connections == 0 || accepted < max_connections;) {
        int fd = ::accept(listener, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR) {
                continue;
            }
            break;
        }
        ++accepted;
        sessions.emplace_back(run_connection, std::cref(setup), fd);
    }
    ::close(listener);
    for (std::thread& t : sessions) {
        t.join();
    }
    return kExitCompleted;
}

} // namespace aspdbg::cli
