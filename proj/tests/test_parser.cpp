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

#include <aspunit/parser.h>

#include "test_util.h"

#include <doctest.h>

#include <set>

using namespace aspunit;
using aspunit::test::parseOrDie;
using aspunit::test::parseRule;

TEST_CASE("facts, rules, constraints, and weak constraints parse") {
	auto p = parseOrDie("node(1).");
	REQUIRE(p.size() == 1);
	CHECK(p.rules()[0].isFact());
	CHECK(p.rules()[0].text() == "node(1).");

	Rule r2 = parseRule("% r2\nuedge(X,Y) :- edge(X,Y), X < Y.");
	CHECK(r2.kind == RuleKind::Regular);
	CHECK(r2.name == "r2");
	CHECK(r2.head.size() == 1);
	CHECK(r2.body.size() == 2);

	Rule weak = parseRule(":~ outClique(X2).");
	CHECK(weak.kind == RuleKind::Weak);
	CHECK(weak.weight == 1);
	CHECK(weak.level == 1);
	CHECK(weak.head.empty());

	Rule annotated = parseRule(":~ p(X). [3:2]");
	CHECK(annotated.weight == 3);
	CHECK(annotated.level == 2);

	Rule constraint = parseRule(":- inClique(X), inClique(Y), X < Y, not uedge(X,Y).");
	CHECK(constraint.kind == RuleKind::Constraint);
	CHECK(constraint.head.empty());
	CHECK(constraint.body.size() == 4);
}

TEST_CASE("unsafe rules are rejected with the offending variable") {
	auto r = parseProgram("p(X) :- not q(X).", "t.dl");
	CHECK(!r.ok());
	REQUIRE(!r.diagnostics.empty());
	CHECK(r.diagnostics[0].message.find("X") != std::string::npos);
	CHECK(r.diagnostics[0].message.find("unsafe") != std::string::npos);

	CHECK(!parseProgram("p(X).", "t.dl").ok());
	CHECK(!parseProgram(":- p(X), X < Y.", "t.dl").ok());
	CHECK(!parseProgram(":- #count{X: p(X)} < N.", "t.dl").ok());
	CHECK(parseProgram(":- q(Y), #count{X: p(X)} < Y.", "t.dl").ok());
}

TEST_CASE("rule name comments follow the strict single-token convention") {
	auto p = parseOrDie("% r1\ninClique(X) | outClique(X) :- node(X).\n% guesses the clique\nq(X) :- node(X).");
	CHECK(p.rules()[0].name == "r1");
	CHECK(p.rules()[1].name.empty()); // prose comments do not name rules
	CHECK(p.findByName("r1") == &p.rules()[0]);

	// the comment must sit on the line immediately preceding the rule
	auto q = parseOrDie("% r9\n\np(1).");
	CHECK(q.rules()[0].name.empty());

	// second rule starting on the same line cannot claim the comment
	auto two = parseOrDie("% r1\na. b.");
	CHECK(two.rules()[0].name == "r1");
	CHECK(two.rules()[1].name.empty());
}

TEST_CASE("duplicate rule names and arity conflicts are errors") {
	CHECK(!parseProgram("% r1\na.\n% r1\nb.", "t.dl").ok());
	CHECK(!parseProgram("p(1).\np(1,2).", "t.dl").ok());

	auto a = parseProgram("% r1\np(1).", "a.dl");
	auto b = parseProgram("% r1\nq(2).", "b.dl");
	auto c = parseProgram("p(1,2).", "c.dl");
	REQUIRE(a.ok());
	REQUIRE(b.ok());
	REQUIRE(c.ok());
	const Program set[] = {a.program, b.program, c.program};
	auto          diags = checkProgramSet(set);
	REQUIRE(diags.size() == 2);
	CHECK(diags[0].message.find("r1") != std::string::npos);
	CHECK(diags[1].message.find("arity conflict") != std::string::npos);
	// the same origin appearing twice is not a conflict
	const Program twice[] = {a.program, a.program};
	CHECK(checkProgramSet(twice).empty());
}

TEST_CASE("disjunction accepts both | and v, serializer emits |") {
	Rule pipe = parseRule("a | b :- c.");
	Rule vee  = parseRule("a v b :- c.");
	CHECK(alphaEqual(pipe, vee));
	CHECK(vee.text() == "a | b :- c.");
	// v followed by a parenthesis is an atom, not a separator
	Rule atom = parseRule("a | v(1) :- c.");
	CHECK(atom.head[1].atom.predicate == "v");
}

TEST_CASE("strong negation and negative integers disambiguate") {
	Rule r = parseRule("-p(-3) :- q(-3).");
	CHECK(r.head[0].strongNeg);
	CHECK(r.head[0].atom.terms[0] == Term::integer(-3));
}

TEST_CASE("anonymous variables become fresh variables") {
	Rule r = parseRule("p(X) :- q(X, _), r(_).");
	const auto& naf1 = std::get<NafLiteral>(r.body[0]);
	const auto& naf2 = std::get<NafLiteral>(r.body[1]);
	CHECK(naf1.lit.atom.terms[1] != naf2.lit.atom.terms[0]);
	CHECK(naf1.lit.atom.terms[1].kind() == Term::Kind::Variable);
}

TEST_CASE("#count is restricted to constraint bodies") {
	CHECK(parseProgram(":- q(Y), #count{X: p(X)} < Y.", "t.dl").ok());
	CHECK(!parseProgram("a :- #count{X: p(X)} < 3.", "t.dl").ok());
	CHECK(!parseProgram(":~ #count{X: p(X)} < 3.", "t.dl").ok());

	Rule agg = parseRule(":- #count{ X1: inClique(X1) } < 3.");
	const auto& count = std::get<CountAggregate>(agg.body[0]);
	CHECK(count.boundVars.size() == 1);
	CHECK(count.pattern.atom.predicate == "inClique");
	CHECK(count.op == CmpOp::Lt);
	CHECK(count.guard == Term::integer(3));
}

TEST_CASE("syntax errors carry line and column inside the offending token") {
	auto r = parseProgram("node(1).\nedge(1,).", "bad.dl");
	CHECK(!r.ok());
	REQUIRE(!r.diagnostics.empty());
	CHECK(r.diagnostics[0].line == 2);
	CHECK(r.diagnostics[0].column == 8);
	// recovery continues after the broken statement
	auto two = parseProgram("p(.\nq(1).", "bad.dl");
	CHECK(!two.ok());
}

TEST_CASE("serializeProgram emits one rule per line with name comments") {
	CHECK(serializeProgram(parseOrDie("node(1).")) == "node(1).\n");
	CHECK(serializeProgram(parseOrDie("% r1\ninClique(X) | outClique(X) :- node(X).")) ==
	      "% r1\ninClique(X) | outClique(X) :- node(X).\n");
	CHECK(serializeProgram(parseOrDie(":~ outClique(X).")) == ":~ outClique(X). [1:1]\n");
}

TEST_CASE("parse-serialize-parse is a structural fixpoint") {
	const char* sources[] = {
	    "% r1\ninClique(X) | outClique(X) :- node(X).\n% r2\nuedge(X,Y) :- edge(X,Y), X < Y.\n"
	    ":- inClique(X), inClique(Y), X < Y, not uedge(X,Y).\n:~ outClique(X2).\nnode(1). node(2).",
	    "p(\"a \\\"quoted\\\" b\") :- q(_, _).",
	    ":- q(Y), #count{X: p(X,Y)} >= Y.",
	    "-ok(X) :- item(X), not broken(X).",
	};
	for (const char* src : sources) {
		auto once  = parseOrDie(src);
		auto twice = parseOrDie(serializeProgram(once));
		REQUIRE(once.size() == twice.size());
		for (std::size_t i = 0; i != once.size(); ++i) {
			CAPTURE(once.rules()[i].text());
			CHECK(structurallyEqual(once.rules()[i], twice.rules()[i]));
			CHECK(once.rules()[i].kind == twice.rules()[i].kind);
		}
		// serialized form is itself a fixpoint
		CHECK(serializeProgram(once) == serializeProgram(twice));
	}
}

TEST_CASE("parseAtomList splits period-terminated literals") {
	auto two = parseAtomList("inClique(2). inClique(5).");
	REQUIRE(two.ok());
	REQUIRE(two.literals.size() == 2);
	CHECK(two.literals[0].text() == "inClique(2)");
	CHECK(two.literals[1].text() == "inClique(5)");

	auto one = parseAtomList("uedge(2,1).");
	REQUIRE(one.ok());
	CHECK(one.literals.size() == 1);

	auto neg = parseAtomList("-broken(X).");
	REQUIRE(neg.ok());
	CHECK(neg.literals[0].strongNeg);
	CHECK(!neg.literals[0].ground());

	CHECK(!parseAtomList("").ok());
	CHECK(!parseAtomList("p(1) q(2).").ok());
	// string content may contain periods
	auto str = parseAtomList("p(\"a.b\").");
	REQUIRE(str.ok());
	CHECK(str.literals[0].atom.terms[0] == Term::string("a.b"));
}

TEST_CASE("every parsed rule satisfies the safety invariant") {
	auto p = parseOrDie("% r1\ninClique(X) | outClique(X) :- node(X).\nuedge(X,Y) :- edge(X,Y), X < Y.\n"
	                    ":- inClique(X), inClique(Y), X < Y, not uedge(X,Y).\n:~ outClique(X2).\nnode(1).");
	for (const auto& r : p.rules()) {
		std::set<std::string> bound;
		for (const auto& e : r.body) {
			if (const auto* n = std::get_if<NafLiteral>(&e); n && !n->naf) {
				for (const auto& t : n->lit.atom.terms) {
					if (t.kind() == Term::Kind::Variable) { bound.insert(t.name()); }
				}
			}
		}
		for (const auto& h : r.head) {
			for (const auto& t : h.atom.terms) {
				if (t.kind() == Term::Kind::Variable) { CHECK(bound.count(t.name())); }
			}
		}
	}
}
