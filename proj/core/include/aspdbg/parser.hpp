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

#include <aspdbg/ast.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aspdbg {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, std::uint32_t line, std::uint32_t column, std::string message);

    [[nodiscard]] const std::string& file() const noexcept { return file_; }
    [[nodiscard]] std::uint32_t line() const noexcept { return line_; }
    [[nodiscard]] std::uint32_t column() const noexcept { return column_; }
    [[nodiscard]] const std::string& message() const noexcept { return message_; }

private:
    std::string file_;
    std::uint32_t line_;
    std::uint32_t column_;
    std::string message_;
};

/// Asserted literals of a `.test` file: assertTrue(a) contributes `a`,
/// assertFalse(a) contributes `not a`.
struct TestCase {
    std::vector<Literal> asserted;
    std::string source;
};

struct SourceText {
    std::string name;
    std::string text;
};

/// Grammar:
///   rule  ::= head [":-" body] "." | ":-" body "." | "{" atom "}" "."
///   head  ::= atom ("|" atom)*
///   body  ::= elem ("," elem)*
///   elem  ::= ["not"] atom | term rel term
/// `%` starts a line comment. Rule ids are assigned 1, 2, ... in source
/// order. Throws ParseError on syntax errors, arity clashes, reserved
/// predicate names, non-ground choices and unsafe rules.
[[nodiscard]] Program parse_program(std::string_view text, std::string_view file_name = "<input>");

/// Concatenates several files into one program with continuous rule ids.
[[nodiscard]] Program parse_program(std::span<const SourceText> files);

/// Throws ParseError on malformed statements, non-ground atoms and
/// contradictory assertions.
[[nodiscard]] TestCase parse_test_case(std::string_view text, std::string_view file_name = "<test>");

} // namespace aspdbg
