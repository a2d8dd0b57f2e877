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

#ifndef ASPUNIT_TESTLANG_H
#define ASPUNIT_TESTLANG_H

#include <aspunit/ast.h>
#include <aspunit/parser.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aspunit {

//! An input statement: inline ASP text or a file reference.
struct InputSpec {
	enum class Kind { Inline, File };

	Kind        kind = Kind::Inline;
	std::string text; // program text or path as written
};

enum class ExecutionMode { WholeProgram, SelectedRules, SplitProgram };

const char* executionModeName(ExecutionMode m); // PROGRAM, SELECTED_RULES, SPLIT_PROGRAM

//! filter keeps the listed predicates; pfilter additionally keeps only
//! positive literals, nfilter only strongly negated ones.
struct FilterSpec {
	enum class Polarity { All, PositiveOnly, NegativeOnly };

	Polarity                 polarity = Polarity::All;
	bool                     selectedRulesScope = false;
	std::vector<std::string> predicates; // non-empty unless selectedRulesScope
};

enum class AssertionKind {
	TrueAll,      // assertTrue / assertCautiouslyTrue
	TrueBrave,
	TrueIn,
	TrueInAtLeast,
	TrueInAtMost,
	FalseAll,     // assertFalse / assertCautiouslyFalse
	FalseBrave,
	FalseIn,
	FalseInAtLeast,
	FalseInAtMost,
	ConstraintAll,
	ConstraintIn,
	ConstraintInAtLeast,
	ConstraintInAtMost,
	BestModelCost,
};

//! Canonical assertion statement name, e.g. "assertFalseInAtMost".
const char* assertionKindName(AssertionKind k);

struct Assertion {
	AssertionKind        kind = AssertionKind::TrueAll;
	std::vector<Literal> atoms;      // True* / False* variants
	std::optional<Rule>  constraint; // Constraint* variants
	std::int64_t         count = 0;  // n for In/AtLeast/AtMost, cost for BestModelCost
	int                  level = 1;  // BestModelCost only
};

struct TestCase {
	std::string                name;
	ExecutionMode              mode = ExecutionMode::WholeProgram;
	std::optional<std::string> newOptions;
	std::vector<InputSpec>     inputs;
	std::vector<InputSpec>     exclusions; // Inline => excludeInput, File => excludeInputFile
	std::optional<FilterSpec>  filter;
	std::vector<std::string>   selectedRuleNames;
	std::vector<Assertion>     assertions;
};

struct TestSuite {
	std::string                invocationName;
	std::optional<std::string> solverPath;
	std::optional<std::string> solverOptions;
	std::vector<InputSpec>     globalInputs;
	std::vector<TestCase>      testCases;
	std::vector<Assertion>     globalAssertions;
};

//! Name of the implicit test case that carries suite-level assertions.
inline constexpr const char* kGlobalCaseName = "__global__";

struct SuiteParseResult {
	TestSuite               suite;
	std::vector<Diagnostic> diagnostics;

	bool ok() const { return !hasErrors(diagnostics); }
};

//! Parses a test file written in the suite grammar: one invocation statement,
//! global inputs, test cases with per-case options/inputs/exclusions/filters/
//! selections/assertions, and trailing global assertions.
SuiteParseResult parseTestSuite(std::string_view text, std::string origin);

//! Semantic checks that need the resolved input programs: unknown selectRule
//! names are errors, filter predicates that occur nowhere are warnings.
std::vector<Diagnostic> validateSuite(const TestSuite& suite, const std::map<std::string, Program>& resolvedPrograms);

} // namespace aspunit

#endif
