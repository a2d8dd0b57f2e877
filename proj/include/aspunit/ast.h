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

#ifndef ASPUNIT_AST_H
#define ASPUNIT_AST_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aspunit {

//! Function-free first-order terms of the DLV dialect.
//!
//! A term is ground iff it is not a variable. Variables start with an
//! uppercase letter or '_', symbolic constants with a lowercase letter.
class Term {
public:
	enum class Kind { Variable, Integer, Symbol, String };

	Term() : kind_(Kind::Integer) {}
	static Term variable(std::string name);
	static Term integer(std::int64_t value);
	static Term symbol(std::string name);
	static Term string(std::string value);

	Kind  kind() const { return kind_; }
	bool  ground() const { return kind_ != Kind::Variable; }
	//! Variable or symbol name, or the raw (unquoted) string content.
	const std::string& name() const { return text_; }
	std::int64_t       value() const { return value_; }

	//! Renders the term in source syntax (strings quoted and escaped).
	std::string text() const;

	//! Total order: integers numerically and before everything else;
	//! symbolic constants and strings compare by text; variables by name.
	static int compare(const Term& a, const Term& b);

	bool operator==(const Term& o) const { return kind_ == o.kind_ && value_ == o.value_ && text_ == o.text_; }
	bool operator!=(const Term& o) const { return !(*this == o); }
	bool operator<(const Term& o) const { return compare(*this, o) < 0; }

private:
	Kind         kind_;
	std::string  text_;
	std::int64_t value_ = 0;
};

struct Atom {
	std::string       predicate;
	std::vector<Term> terms;

	std::size_t arity() const { return terms.size(); }
	bool        ground() const;
	std::string text() const;

	static int compare(const Atom& a, const Atom& b);
	bool operator==(const Atom& o) const { return predicate == o.predicate && terms == o.terms; }
	bool operator!=(const Atom& o) const { return !(*this == o); }
	bool operator<(const Atom& o) const { return compare(*this, o) < 0; }
};

//! A possibly strongly negated atom. -p(a) and p(a) are distinct literals.
struct Literal {
	Atom atom;
	bool strongNeg = false;

	bool        ground() const { return atom.ground(); }
	std::string text() const;

	static int compare(const Literal& a, const Literal& b);
	bool operator==(const Literal& o) const { return strongNeg == o.strongNeg && atom == o.atom; }
	bool operator!=(const Literal& o) const { return !(*this == o); }
	bool operator<(const Literal& o) const { return compare(*this, o) < 0; }
};

enum class CmpOp { Lt, Le, Eq, Ne, Gt, Ge };

const char* cmpOpText(CmpOp op);
bool        evalCmp(CmpOp op, const Term& lhs, const Term& rhs);

//! Body literal under default negation: `not lit` when naf is set.
struct NafLiteral {
	Literal lit;
	bool    naf = false;

	bool operator==(const NafLiteral&) const = default;
};

//! Built-in comparison between two terms, e.g. `X < Y`.
struct Comparison {
	Term  lhs;
	CmpOp op = CmpOp::Lt;
	Term  rhs;

	bool operator==(const Comparison&) const = default;
};

//! `#count{ Vars : pattern } op guard`. Only valid in constraint bodies;
//! the bound variables are local to the aggregate.
struct CountAggregate {
	std::vector<Term> boundVars;
	Literal           pattern;
	CmpOp             op = CmpOp::Lt;
	Term              guard;

	bool operator==(const CountAggregate&) const = default;
};

using BodyElement = std::variant<NafLiteral, Comparison, CountAggregate>;

std::string bodyElementText(const BodyElement& e);

enum class RuleKind { Regular, Constraint, Weak };

struct Rule {
	std::string              name;   // empty when unnamed
	std::vector<Literal>     head;   // disjuncts; empty for constraints
	std::vector<BodyElement> body;
	RuleKind                 kind = RuleKind::Regular;
	int                      weight = 1;  // weak constraints only
	int                      level  = 1;  // weak constraints only
	std::string              origin;      // file path or synthetic locus
	int                      ordinal = 0; // position within origin

	bool isFact() const;
	bool ground() const;
	//! Source syntax without the name comment, e.g. `p(X) :- q(X).`
	std::string text() const;
};

//! Structural equality on exact variable names; ignores origin and ordinal
//! but includes the rule name.
bool structurallyEqual(const Rule& a, const Rule& b);

//! True iff a and b are identical up to a consistent renaming of variables,
//! ignoring rule name, origin, and ordinal.
bool alphaEqual(const Rule& a, const Rule& b);

//! An ASP program: an ordered rule list with unique rule names.
class Program {
public:
	Program() = default;
	explicit Program(std::vector<Rule> rules);

	const std::vector<Rule>& rules() const { return rules_; }
	bool                     empty() const { return rules_.empty(); }
	std::size_t              size() const { return rules_.size(); }

	//! Throws std::invalid_argument on a duplicate rule name.
	void append(Rule r);

	const Rule* findByName(std::string_view name) const;

	//! All predicate names occurring anywhere in the program.
	std::vector<std::string> predicates() const;

private:
	std::vector<Rule>                  rules_;
	std::map<std::string, std::size_t> nameIndex_;
};

//! A variable-to-ground-term binding produced by matching.
using Substitution = std::map<std::string, Term>;

//! Matches a possibly non-ground literal against a ground one. Returns the
//! binding iff predicate, arity, and strong-negation flag agree and repeated
//! variables bind consistently; absence on mismatch.
std::optional<Substitution> matchAtom(const Literal& pattern, const Literal& fact);

Literal     applySubstitution(const Literal& lit, const Substitution& s);
BodyElement applySubstitution(const BodyElement& e, const Substitution& s);
Rule        applySubstitution(const Rule& r, const Substitution& s);

//! A consistent set of ground classical literals, kept sorted.
class AnswerSet {
public:
	AnswerSet() = default;
	//! Sorts and deduplicates; throws std::invalid_argument if the list
	//! contains a complementary pair p and -p.
	explicit AnswerSet(std::vector<Literal> literals);

	const std::vector<Literal>& literals() const { return literals_; }
	bool                        empty() const { return literals_.empty(); }
	std::size_t                 size() const { return literals_.size(); }
	bool                        contains(const Literal& lit) const;

	//! `{lit, lit, ...}` with literals in sorted order.
	std::string text() const;

	bool operator==(const AnswerSet& o) const { return literals_ == o.literals_; }
	bool operator!=(const AnswerSet& o) const { return !(*this == o); }
	bool operator<(const AnswerSet& o) const;

private:
	std::vector<Literal> literals_;
};

//! Per-level weak-constraint costs. Absent levels mean cost 0; comparison is
//! lexicographic from the highest level down (DLV convention), less is better.
class CostVector {
public:
	CostVector() = default;

	void         add(int level, std::int64_t weight);
	std::int64_t at(int level) const;
	bool         empty() const { return costs_.empty(); }
	const std::map<int, std::int64_t>& entries() const { return costs_; }

	//! e.g. `<3:1>` for cost 3 at level 1; `<>` when empty.
	std::string text() const;

	static int compare(const CostVector& a, const CostVector& b);
	bool operator==(const CostVector& o) const { return compare(*this, o) == 0; }

private:
	std::map<int, std::int64_t> costs_; // level -> total weight, zero entries dropped
};

//! Complete output of one solver run.
struct SolverResult {
	std::vector<AnswerSet>                 answerSets;
	std::vector<std::optional<CostVector>> costs;    // parallel to answerSets
	bool                                   complete = true;
	std::optional<CostVector>              bestCost;

	//! Recomputes bestCost as the lexicographic minimum of present costs.
	void updateBestCost();
};

} // namespace aspunit

#endif
