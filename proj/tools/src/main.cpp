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

#include <aspdbg/debug_program.hpp>
#include <aspdbg/ground.hpp>
#include <aspdbg/parser.hpp>
#include <aspdbg/solver.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

using namespace aspdbg;
using namespace aspdbg::cli;

namespace {

Program load_program(const std::vector<std::string>& files) {
    std::vector<SourceText> sources;
    for (const std::string& f : files) {
        sources.push_back(SourceText{f, read_file(f)});
    }
    return parse_program(sources);
}

std::optional<std::set<RuleId>> parse_background(const std::string& text) {
    if (text.empty()) {
        return std::nullopt;
    }
    std::set<RuleId> ids;
    if (text == "none") {
        return ids;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        unsigned long id = 0;
        try {
            id = std::stoul(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw CLI::ValidationError("--background", "expected comma-separated rule ids, got '" + item + "'");
        }
        ids.insert(static_cast<RuleId>(id));
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return ids;
}

void print_instrumented(std::ostream& out, const AssembledGamma& g) {
    out << g.extended;
    for (const Rule& r : g.test_constraints) {
        out << r << '\n';
    }
    out << "% P_A:\n";
    for (AtomId a : g.p_a) {
        out << "% " << to_string(g.ground.atoms.atom(a)) << ".\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interactive fault localization for answer set programs"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string test_file;
    std::string background_text;

    auto* ground_cmd = app.add_subcommand("ground", "Print the ground program");
    std::string mode = "no-simplify";
    ground_cmd->add_option("files", files, "Program files")->required()->check(CLI::ExistingFile);
    ground_cmd->add_option("--mode", mode, "Grounding mode")->check(CLI::IsMember({"simplify", "no-simplify"}));

    auto* solve_cmd = app.add_subcommand("solve", "Enumerate answer sets");
    std::size_t models = 0;
    solve_cmd->add_option("files", files, "Program files")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--models", models, "Number of answer sets (0 = all)");

    auto* instrument_cmd = app.add_subcommand("instrument", "Print the extended debugging program");
    instrument_cmd->add_option("files", files, "Program files")->required()->check(CLI::ExistingFile);
    instrument_cmd->add_option("--test", test_file, "Test case file")->required()->check(CLI::ExistingFile);
    instrument_cmd->add_option("--background", background_text, "Background rule ids (comma separated, or none)");

    auto* debug_cmd = app.add_subcommand("debug", "Run an interactive debugging session");
    std::size_t max_models = 10;
    bool json_mode = false;
    int serve_port = -1;
    std::size_t max_connections = 0;
    debug_cmd->add_option("files", files, "Program files")->required()->check(CLI::ExistingFile);
    debug_cmd->add_option("--test", test_file, "Test case file")->required()->check(CLI::ExistingFile);
    debug_cmd->add_option("--background", background_text, "Background rule ids (comma separated, or none)");
    debug_cmd->add_option("--max-models-per-query", max_models, "Answer sets sampled per reason element")
        ->check(CLI::PositiveNumber);
    debug_cmd->add_flag("--json", json_mode, "Speak the session protocol on stdin/stdout");
    auto* serve_opt = debug_cmd->add_option("--serve", serve_port, "Serve the session protocol on a local port")
                          ->check(CLI::Range(0, 65535));
    debug_cmd->add_option("--max-connections", max_connections, "Exit after this many sessions (0 = never)")
        ->needs(serve_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (ground_cmd->parsed()) {
            GroundingOptions options;
            options.mode = mode == "simplify" ? GroundingMode::Simplify : GroundingMode::NoSimplify;
            print(std::cout, ground(load_program(files), options));
            return kExitCompleted;
        }
        if (solve_cmd->parsed()) {
            GroundingOptions options;
            options.mode = GroundingMode::Simplify;
            GroundProgram g = ground(load_program(files), options);
            SolveResult result = enumerate_answer_sets(g, models == 0 ? kNoModelLimit : models);
            for (const Interpretation& m : result.models) {
                std::vector<Atom> atoms;
                for (AtomId a : m.atoms) {
                    if (!is_fresh_predicate(g.atoms.atom(a).predicate)) {
                        atoms.push_back(g.atoms.atom(a));
                    }
                }
                std::sort(atoms.begin(), atoms.end());
                for (std::size_t i = 0; i < atoms.size(); ++i) {
                    std::cout << (i == 0 ? "" : " ") << to_string(atoms[i]);
                }
                std::cout << '\n';
            }
            std::cout << (result.coherent ? "COHERENT" : "INCOHERENT") << '\n';
            return kExitCompleted;
        }
        std::optional<std::set<RuleId>> background = parse_background(background_text);
        if (instrument_cmd->parsed()) {
            Program p = load_program(files);
            TestCase t = parse_test_case(read_file(test_file), test_file);
            print_instrumented(std::cout, assemble_gamma(p, t, background ? *background : default_background(p)));
            return kExitCompleted;
        }
        SessionOptions options;
        options.max_models_per_query = max_models;
        SessionSetup setup = load_session(files, test_file, background, options);
        if (serve_port >= 0) {
            return serve(setup, static_cast<std::uint16_t>(serve_port), max_connections, [](std::uint16_t port) {
                std::cout << "listening on 127.0.0.1:" << port << std::endl;
            });
        }
        if (json_mode) {
            return run_protocol(setup, std::cin, std::cout);
        }
        return run_terminal_session(setup, std::cin, std::cout).exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
