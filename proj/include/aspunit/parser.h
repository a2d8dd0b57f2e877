// Copyright 2026 The aspunit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ASPUNIT_PARSER_H
#define ASPUNIT_PARSER_H

#include <aspunit/ast.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aspunit {

struct Diagnostic {
	enum class Severity { Warning, Error };

	Severity    severity = Severity::Error;
	std::string message;
	std::string origin;
	int         line   = 0;
	int         column = 0;

	std::string text() const;
};

bool hasErrors(const std::vector<Diagnostic>& diags);

//! Result of parsing one source; the program is only meaningful when ok().
struct ParseResult {
	Program                 program;
	std::vector<Diagnostic> diagnostics;

	bool ok() const { return !hasErrors(diagnostics); }
};

//! Parses DLV-dialect ASP text: facts, disjunctive rules (`|` or `v`),
//! constraints, weak constraints `:~ body. [w:l]`, `not`, strong negation,
//! comparisons, and `#count` in constraint bodies. A `%` comment whose entire
//! trimmed content is a single identifier and that sits on the line
//! immediately preceding a rule names that rule. Rejects unsafe rules,
//! duplicate rule names, and arity conflicts within the source.
ParseResult parseProgram(std::string_view text, std::string origin);

//! One rule per line in DLV syntax; rule names re-emitted as `% name` lines.
//! Weak-constraint brackets are always emitted.
std::string serializeProgram(const Program& p);

struct AtomListResult {
	std::vector<Literal>    literals;
	std::vector<Diagnostic> diagnostics;

	bool ok() const { return !hasErrors(diagnostics); }
};

//! Parses a period-terminated list of possibly non-ground classical
//! literals, e.g. `inClique(2). inClique(5).`. An empty list is an error.
AtomListResult parseAtomList(std::string_view text, std::string origin = "<atoms>");

//! Cross-file checks over an already parsed file set: duplicate rule names
//! and predicate arity conflicts across distinct origins.
std::vector<Diagnostic> checkProgramSet(std::span<const Program> programs);

} // namespace aspunit

#endif
