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

#include <aspunit/ast.h>

#include "test_util.h"

#include <doctest.h>

#include <random>

using namespace aspunit;
using aspunit::test::parseLit;
using aspunit::test::parseRule;

TEST_CASE("matchAtom binds variables against ground facts") {
	auto s = matchAtom(parseLit("inClique(X)"), parseLit("inClique(2)"));
	REQUIRE(s.has_value());
	CHECK(s->size() == 1);
	CHECK(s->at("X") == Term::integer(2));

	auto identity = matchAtom(parseLit("inClique(1)"), parseLit("inClique(1)"));
	REQUIRE(identity.has_value());
	CHECK(identity->empty());

	CHECK(!matchAtom(parseLit("edge(X,X)"), parseLit("edge(1,2)")).has_value());
	CHECK(matchAtom(parseLit("edge(X,X)"), parseLit("edge(3,3)")).has_value());
}

TEST_CASE("matchAtom respects predicate, arity, and strong negation") {
	CHECK(!matchAtom(parseLit("p(X)"), parseLit("q(1)")).has_value());
	CHECK(!matchAtom(parseLit("p(X)"), parseLit("p(1,2)")).has_value());
	CHECK(!matchAtom(parseLit("p(X)"), parseLit("-p(1)")).has_value());
	CHECK(matchAtom(parseLit("-p(X)"), parseLit("-p(1)")).has_value());
}

TEST_CASE("applySubstitution replaces exactly the mapped variables") {
	Substitution s{{"X", Term::integer(1)}, {"Y", Term::integer(2)}};
	CHECK(applySubstitution(parseLit("uedge(X,Y)"), s).text() == "uedge(1,2)");
	CHECK(applySubstitution(parseLit("node(X)"), Substitution{}).text() == "node(X)");

	Rule constraint = parseRule(":- inClique(X), inClique(Y), X < Y.");
	Rule bound      = applySubstitution(constraint, Substitution{{"X", Term::integer(3)}});
	CHECK(bound.text() == ":- inClique(3), inClique(Y), 3 < Y.");
}

TEST_CASE("match then apply reproduces the fact") {
	std::mt19937 rng(20260810);
	const char*  preds[] = {"p", "q", "edge"};
	for (int i = 0; i != 300; ++i) {
		Literal pattern;
		pattern.atom.predicate = preds[rng() % 3];
		pattern.strongNeg      = rng() % 4 == 0;
		const int arity        = static_cast<int>(rng() % 4);
		for (int k = 0; k != arity; ++k) {
			switch (rng() % 3) {
				case 0: pattern.atom.terms.push_back(Term::variable(std::string(1, char('X' + rng() % 3)))); break;
				case 1: pattern.atom.terms.push_back(Term::integer(static_cast<int>(rng() % 5))); break;
				default: pattern.atom.terms.push_back(Term::symbol(std::string(1, char('a' + rng() % 3))));
			}
		}
		Substitution ground;
		for (const auto& t : pattern.atom.terms) {
			if (t.kind() == Term::Kind::Variable) { ground[t.name()] = Term::integer(static_cast<int>(rng() % 7)); }
		}
		const Literal fact = applySubstitution(pattern, ground);
		auto          s    = matchAtom(pattern, fact);
		REQUIRE(s.has_value());
		CHECK(applySubstitution(pattern, *s) == fact);
	}
}

TEST_CASE("alphaEqual identifies rules up to consistent renaming") {
	CHECK(alphaEqual(parseRule(":~ outClique(X2)."), parseRule(":~ outClique(X).")));
	CHECK(alphaEqual(parseRule("node(1)."), parseRule("node(1).")));
	// renaming must be consistent across the whole rule: p(X,Y) :- q(X) vs p(Y,X) :- q(X)
	auto pq = [](const char* a, const char* b, const char* c) {
		Rule r;
		r.head.push_back({Atom{"p", {Term::variable(a), Term::variable(b)}}, false});
		r.body.push_back(NafLiteral{{Atom{"q", {Term::variable(c)}}, false}, false});
		return r;
	};
	CHECK(!alphaEqual(pq("X", "Y", "X"), pq("Y", "X", "X")));
	CHECK(!alphaEqual(parseRule("p(X,Y) :- q(X), q(Y)."), parseRule("p(Y,X) :- q(X), q(Y).")));
	CHECK(alphaEqual(parseRule("p(X,Y) :- q(X), q(Y)."), parseRule("p(A,B) :- q(A), q(B).")));
	CHECK(!alphaEqual(parseRule("p(X,X) :- q(X)."), parseRule("p(X,Y) :- q(X), q(Y).")));
	// names, origins, ordinals are ignored
	CHECK(alphaEqual(parseRule("% r1\np(X) :- q(X)."), parseRule("p(Z) :- q(Z).")));
	// weight/level are not
	CHECK(!alphaEqual(parseRule(":~ p(X). [2:1]"), parseRule(":~ p(X). [1:1]")));
}

TEST_CASE("alphaEqual is an equivalence relation") {
	std::vector<Rule> corpus;
	for (const char* text : {"p(X) :- q(X).", "p(Y) :- q(Y).", "p(A) :- q(B), q(A).", "node(1).", "node(2).",
	                         ":- p(X), q(X).", ":- p(U), q(U).", "a | b :- c.", ":~ outClique(X2).",
	                         ":~ outClique(W)."}) {
		corpus.push_back(parseRule(text));
	}
	for (const auto& a : corpus) { CHECK(alphaEqual(a, a)); }
	for (const auto& a : corpus) {
		for (const auto& b : corpus) { CHECK(alphaEqual(a, b) == alphaEqual(b, a)); }
	}
	for (const auto& a : corpus) {
		for (const auto& b : corpus) {
			for (const auto& c : corpus) {
				if (alphaEqual(a, b) && alphaEqual(b, c)) { CHECK(alphaEqual(a, c)); }
			}
		}
	}
}

namespace {

CostVector costs(std::initializer_list<std::pair<int, std::int64_t>> entries) {
	CostVector cv;
	for (const auto& [level, weight] : entries) { cv.add(level, weight); }
	return cv;
}

} // namespace

TEST_CASE("cost vectors compare lexicographically from the highest level") {
	CHECK(CostVector::compare(costs({{1, 3}}), costs({{1, 4}})) < 0);
	CHECK(CostVector::compare(costs({}), costs({})) == 0);
	// higher level dominates: level 2 decides before level 1
	CHECK(CostVector::compare(costs({{2, 1}, {1, 9}}), costs({{2, 2}, {1, 0}})) < 0);
	// absent levels count zero
	CHECK(CostVector::compare(costs({{1, 1}}), costs({{2, 1}})) < 0);
	CHECK(CostVector::compare(costs({{1, 0}}), costs({})) == 0);
}

TEST_CASE("cost comparison is a total order consistent with pointwise equality") {
	std::mt19937            rng(7);
	std::vector<CostVector> vs;
	for (int i = 0; i != 40; ++i) {
		CostVector cv;
		const int  n = static_cast<int>(rng() % 4);
		for (int k = 0; k != n; ++k) { cv.add(1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 4)); }
		vs.push_back(cv);
	}
	for (const auto& a : vs) {
		for (const auto& b : vs) {
			const int ab = CostVector::compare(a, b);
			CHECK(ab == -CostVector::compare(b, a));
			if (ab == 0) { CHECK(a.entries() == b.entries()); }
			for (const auto& c : vs) {
				if (ab <= 0 && CostVector::compare(b, c) <= 0) { CHECK(CostVector::compare(a, c) <= 0); }
			}
		}
	}
}

TEST_CASE("answer sets reject complementary literals and stay sorted") {
	CHECK_THROWS_AS(AnswerSet({parseLit("p(a)"), parseLit("-p(a)")}), std::invalid_argument);

	AnswerSet a({parseLit("q(2)"), parseLit("p(1)"), parseLit("q(2)")});
	CHECK(a.size() == 2);
	CHECK(a.text() == "{p(1), q(2)}");
	CHECK(a.contains(parseLit("p(1)")));
	CHECK(!a.contains(parseLit("-p(1)")));

	AnswerSet ok({parseLit("p(a)"), parseLit("-p(b)")});
	CHECK(ok.size() == 2);
}

TEST_CASE("term order: integers first and numeric, text otherwise") {
	CHECK(Term::compare(Term::integer(2), Term::integer(10)) < 0);
	CHECK(Term::compare(Term::integer(99), Term::symbol("a")) < 0);
	CHECK(Term::compare(Term::symbol("abc"), Term::symbol("abd")) < 0);
	CHECK(Term::compare(Term::string("x"), Term::symbol("y")) < 0);
	CHECK(evalCmp(CmpOp::Lt, Term::integer(1), Term::integer(2)));
	CHECK(evalCmp(CmpOp::Ne, Term::symbol("a"), Term::string("a")));
	CHECK(!evalCmp(CmpOp::Eq, Term::integer(1), Term::symbol("1")));
}

TEST_CASE("solver result best cost tracks the minimum") {
	SolverResult r;
	r.answerSets = {AnswerSet({parseLit("a")}), AnswerSet({parseLit("b")})};
	r.costs      = {costs({{1, 4}}), costs({{1, 3}})};
	r.updateBestCost();
	REQUIRE(r.bestCost.has_value());
	CHECK(r.bestCost->at(1) == 3);
}
