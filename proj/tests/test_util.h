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

#ifndef ASPUNIT_TEST_UTIL_H
#define ASPUNIT_TEST_UTIL_H

#include <aspunit/parser.h>

#include <doctest.h>

#include <stdexcept>
#include <string>

namespace aspunit::test {

inline Program parseOrDie(const std::string& text, const std::string& origin = "<test>") {
	auto result = parseProgram(text, origin);
	for (const auto& d : result.diagnostics) {
		if (d.severity == Diagnostic::Severity::Error) { throw std::runtime_error(d.text()); }
	}
	return std::move(result.program);
}

inline Rule parseRule(const std::string& text) {
	auto program = parseOrDie(text);
	REQUIRE(program.size() == 1);
	return program.rules()[0];
}

inline Literal parseLit(const std::string& text) {
	auto result = parseAtomList(text + ".");
	REQUIRE(result.ok());
	REQUIRE(result.literals.size() == 1);
	return result.literals[0];
}

} // namespace aspunit::test

#endif
