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

#include "protocol.hpp"

#include <aspdbg/parser.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace aspdbg::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 10> kKinds = {"hello", "ground_report", "diagnosis", "queries", "answer",
                                                     "undo",  "stop",          "finding",   "error",   "bye"};

json span_json(const SourceSpan& span) {
    return json{{"file", span.file},
                {"line", span.line},
                {"column", span.column},
                {"begin", span.begin},
                {"end", span.end}};
}

json substitution_json(const Substitution& s) {
    json bindings = json::array();
    for (const auto& [name, term] : s) {
        bindings.push_back(json::array({name, to_string(term)}));
    }
    return json{{"text", to_string(s)}, {"bindings", bindings}};
}

} // namespace

bool is_known_kind(std::string_view kind) noexcept {
    return std::find(kKinds.begin(), kKinds.end(), kind) != kKinds.end();
}

std::string serialize(const SessionMessage& message) {
    json j = message.payload.is_object() ? message.payload : json::object();
    j["kind"] = message.kind;
    j["seq"] = message.seq;
    return j.dump();
}

SessionMessage parse_message(std::string_view line, std::int64_t fallback_seq) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error&) {
        throw ProtocolError(fallback_seq, "malformed message: not valid JSON");
    }
    if (!j.is_object()) {
        throw ProtocolError(fallback_seq, "malformed message: expected an object");
    }
    SessionMessage m;
    m.seq = fallback_seq;
    if (auto seq = j.find("seq"); seq != j.end()) {
        if (!seq->is_number_integer()) {
            throw ProtocolError(fallback_seq, "malformed message: seq must be an integer");
        }
        m.seq = seq->get<std::int64_t>();
    }
    auto kind = j.find("kind");
    if (kind == j.end() || !kind->is_string()) {
        throw ProtocolError(m.seq, "malformed message: missing kind");
    }
    m.kind = kind->get<std::string>();
    if (!is_known_kind(m.kind)) {
        throw ProtocolError(m.seq, "unknown message kind '" + m.kind + "'");
    }
    j.erase("kind");
    j.erase("seq");
    m.payload = std::move(j);
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

SessionSetup load_session(const std::vector<std::string>& program_files, const std::string& test_file,
                          const std::optional<std::set<RuleId>>& background, const SessionOptions& options) {
    std::vector<SourceText> sources;
    for (const std::string& f : program_files) {
        sources.push_back(SourceText{f, read_file(f)});
    }
    Program program = parse_program(sources);
    TestCase test = parse_test_case(read_file(test_file), test_file);
    std::set<RuleId> b = background ? *background : default_background(program);
    SessionSetup setup;
    setup.program_files = program_files;
    setup.test_file = test_file;
    setup.context = make_session_context(std::move(program), std::move(test), b, options);
    return setup;
}

json findings_json(const SessionState& state) {
    const Program& program = state.context->program;
    json out = json::array();
    for (const Finding& f : findings(state)) {
        if (const auto* r = std::get_if<RuleFinding>(&f)) {
            json subs = json::array();
            for (const Substitution& s : r->substitutions) {
                subs.push_back(substitution_json(s));
            }
            out.push_back(json{{"type", "rule"},
                               {"rule_id", r->rule_id},
                               {"span", span_json(r->span)},
                               {"substitutions", subs},
                               {"ground_instances", r->ground_instances}});
        } else {
            const auto& s = std::get<SupportFinding>(f);
            json spans = json::array();
            for (RuleId id : s.candidate_rule_ids) {
                spans.push_back(span_json(program.find(id)->span));
            }
            out.push_back(json{{"type", "support"},
                               {"atom", to_string(s.atom)},
                               {"candidate_rule_ids", s.candidate_rule_ids},
                               {"candidate_spans", spans}});
        }
    }
    return out;
}

ProtocolSession::ProtocolSession(const SessionSetup& setup) : setup_(setup) {}

SessionMessage ProtocolSession::make(std::string kind, json payload) {
    return SessionMessage{std::move(kind), next_seq_++, std::move(payload)};
}

SessionMessage ProtocolSession::bye(std::string_view status) {
    finished_ = true;
    return make("bye", json{{"status", status}});
}

void ProtocolSession::emit_step(std::vector<SessionMessage>& out) {
    const SessionState& s = *state_;
    const AtomTable& atoms = s.atoms();
    json reason = json::array();
    for (AtomId a : s.reason.facts) {
        reason.push_back(to_string(atoms.atom(a)));
    }
    json answered = json::array();
    for (const Answer& a : s.answered) {
        answered.push_back(json{{"atom", to_string(atoms.atom(a.atom))}, {"value", a.value}});
    }
    json fs = findings_json(s);
    out.push_back(make("diagnosis", json{{"step", s.answered.size()},
                                         {"status", to_string(s.status)},
                                         {"minimal", s.reason.minimal},
                                         {"reason", reason},
                                         {"findings", fs},
                                         {"answered", answered}}));
    json queries = json::array();
    for (const Query& q : s.queries) {
        queries.push_back(json{{"atom", to_string(atoms.atom(q.atom))},
                               {"q_plus", q.q_plus},
                               {"q_minus", q.q_minus},
                               {"score", q.score}});
    }
    out.push_back(make("queries", json{{"step", s.answered.size()}, {"queries", queries}}));
    if (is_terminal(s.status)) {
        out.push_back(make("finding", json{{"status", to_string(s.status)}, {"findings", fs}}));
    }
}

std::vector<SessionMessage> ProtocolSession::start() {
    std::vector<SessionMessage> out;
    const SessionContext& c = *setup_.context;
    out.push_back(make("hello", json{{"version", kProtocolVersion},
                                     {"program_files", setup_.program_files},
                                     {"test_file", setup_.test_file}}));
    json warnings = json::array();
    for (const DroppedRuleWarning& w : c.gamma.debugging.warnings) {
        const Rule* r = c.program.find(w.rule_id);
        warnings.push_back(json{{"rule_id", w.rule_id}, {"span", span_json(r ? r->span : SourceSpan{})}});
    }
    const DebugInstrumentation& instr = c.gamma.debugging.instrumentation;
    out.push_back(make("ground_report", json{{"ground_rules", c.gamma.ground.rules.size()},
                                             {"atoms", c.gamma.ground.atoms.size()},
                                             {"herbrand_base", instr.herbrand_base.size()},
                                             {"debug_atoms", instr.debug_atoms.size()},
                                             {"support_atoms", instr.support_atoms.size()},
                                             {"warnings", warnings}}));
    state_ = std::make_unique<SessionState>(start_session(setup_.context));
    if (state_->status == SessionStatus::TestPassed) {
        SessionMessage m = bye("test_passed");
        m.payload["message"] = "test passed: program coherent with assertions";
        out.push_back(std::move(m));
        exit_code_ = 2;
        return out;
    }
    emit_step(out);
    return out;
}

std::vector<SessionMessage> ProtocolSession::handle(std::string_view line) {
    ++inbound_lines_;
    std::vector<SessionMessage> out;
    auto error = [&](std::int64_t offender, const std::string& message) {
        out.push_back(make("error", json{{"offender_seq", offender}, {"message", message}}));
    };
    if (finished_ || !state_) {
        error(inbound_lines_, "session is not running");
        return out;
    }
    SessionMessage in;
    try {
        in = parse_message(line, inbound_lines_);
    } catch (const ProtocolError& e) {
        error(e.seq(), e.what());
        return out;
    }
    const json& p = in.payload;
    if (in.kind == "stop") {
        out.push_back(bye("stopped"));
    } else if (in.kind == "answer") {
        auto atom = p.find("atom");
        auto value = p.find("value");
        if (atom == p.end() || !atom->is_string() || value == p.end() || !value->is_boolean()) {
            error(in.seq, "answer needs a string atom and a boolean value");
            return out;
        }
        std::optional<AtomId> id = find_query_atom(*state_, atom->get<std::string>());
        if (!id) {
            error(in.seq, "unknown atom '" + atom->get<std::string>() + "'");
            return out;
        }
        try {
            *state_ = apply_answer(*state_, *id, value->get<bool>());
        } catch (const SessionError& e) {
            error(in.seq, e.what());
            return out;
        }
        emit_step(out);
    } else if (in.kind == "undo") {
        auto step = p.find("to_step");
        if (step == p.end() || !step->is_number_integer() || step->get<std::int64_t>() < 0) {
            error(in.seq, "undo needs a non-negative integer to_step");
            return out;
        }
        try {
            *state_ = undo(*state_, step->get<std::size_t>());
        } catch (const std::out_of_range& e) {
            error(in.seq, e.what());
            return out;
        }
        emit_step(out);
    } else {
        error(in.seq, "unexpected inbound kind '" + in.kind + "'");
    }
    return out;
}

std::vector<SessionMessage> ProtocolSession::close() {
    if (finished_) {
        return {};
    }
    return {bye("completed")};
}

} // namespace aspdbg::cli
