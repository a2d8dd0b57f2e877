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

#ifndef ASPUNIT_UNIT_ANALYSIS_H
#define ASPUNIT_UNIT_ANALYSIS_H

#include <aspunit/ast.h>
#include <aspunit/testlang.h>

#include <set>
#include <string>
#include <vector>

namespace aspunit {

struct PredicateEdge {
	std::string from; // head predicate
	std::string to;   // body predicate
	bool        negative = false;

	auto operator<=>(const PredicateEdge&) const = default;
};

//! Predicate-level dependency graph: an edge (p,q,s) exists iff some rule has
//! p in its head and q in a body element with sign s. Comparisons and
//! aggregate guards contribute no edges; aggregate patterns are positive.
struct PredicateGraph {
	std::set<std::string>   nodes;
	std::set<PredicateEdge> edges;
};

PredicateGraph buildDependencyGraph(const Program& p);

//! A predicate-level splitting set together with the bottom program it cuts
//! out. Constraints and weak constraints are never part of the bottom.
struct SplitClosure {
	std::set<std::string> predicates;
	std::vector<Rule>     bottom;
};

//! Smallest superset of seed closed under: if a Regular rule's head predicate
//! is in the set, every predicate occurring in that rule is in the set.
SplitClosure splittingClosure(const Program& p, const std::set<std::string>& seed);

//! Warns when a head predicate of a selected rule lies on a dependency cycle
//! that also passes through a head predicate of a non-selected Regular rule.
std::vector<std::string> checkSelectionCompatibility(const Program& p, const std::vector<const Rule*>& selected);

struct AssembledUnit {
	Program                  program;
	std::vector<std::string> warnings;
	std::vector<Rule>        selectedRules; // resolved selection, for filters
};

//! Builds the program a test case actually executes: global and local inputs
//! merged (duplicates collapsed by alpha-equivalence), exclusions applied,
//! then the mode-specific cut. Throws std::invalid_argument on an unknown
//! selected rule name.
AssembledUnit assembleUnit(const Program& global, const Program& local, const std::vector<Program>& exclusionFragments,
                           const std::vector<std::string>& excludedOrigins, ExecutionMode mode,
                           const std::vector<std::string>& selectedRuleNames);

//! Keep-semantics result filtering; the selected rules supply the predicate
//! list for SELECTED_RULES scope.
AnswerSet applyFilter(const AnswerSet& a, const std::optional<FilterSpec>& f, const std::vector<Rule>& selected);

} // namespace aspunit

#endif
