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

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace aspunit {

Term Term::variable(std::string name) {
	Term t;
	t.kind_ = Kind::Variable;
	t.text_ = std::move(name);
	return t;
}
Term Term::integer(std::int64_t value) {
	Term t;
	t.kind_  = Kind::Integer;
	t.value_ = value;
	return t;
}
Term Term::symbol(std::string name) {
	Term t;
	t.kind_ = Kind::Symbol;
	t.text_ = std::move(name);
	return t;
}
Term Term::string(std::string value) {
	Term t;
	t.kind_ = Kind::String;
	t.text_ = std::move(value);
	return t;
}

std::string Term::text() const {
	switch (kind_) {
		case Kind::Variable:
		case Kind::Symbol: return text_;
		case Kind::Integer: return std::to_string(value_);
		case Kind::String: {
			std::string out = "\"";
			for (char c : text_) {
				if (c == '"' || c == '\\') { out.push_back('\\'); }
				out.push_back(c);
			}
			out.push_back('"');
			return out;
		}
	}
	return {};
}

int Term::compare(const Term& a, const Term& b) {
	const bool ia = a.kind_ == Kind::Integer, ib = b.kind_ == Kind::Integer;
	if (ia && ib) { return a.value_ < b.value_ ? -1 : a.value_ > b.value_ ? 1 : 0; }
	if (ia != ib) { return ia ? -1 : 1; } // integers sort before everything else
	const bool va = a.kind_ == Kind::Variable, vb = b.kind_ == Kind::Variable;
	if (va != vb) { return va ? -1 : 1; }
	if (int c = a.text_.compare(b.text_)) { return c < 0 ? -1 : 1; }
	if (a.kind_ != b.kind_) { return a.kind_ < b.kind_ ? -1 : 1; }
	return 0;
}

bool Atom::ground() const {
	return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.ground(); });
}

std::string Atom::text() const {
	if (terms.empty()) { return predicate; }
	std::string out = predicate + "(";
	for (std::size_t i = 0; i != terms.size(); ++i) {
		if (i) { out += ","; }
		out += terms[i].text();
	}
	out += ")";
	return out;
}

int Atom::compare(const Atom& a, const Atom& b) {
	if (int c = a.predicate.compare(b.predicate)) { return c < 0 ? -1 : 1; }
	if (a.terms.size() != b.terms.size()) { return a.terms.size() < b.terms.size() ? -1 : 1; }
	for (std::size_t i = 0; i != a.terms.size(); ++i) {
		if (int c = Term::compare(a.terms[i], b.terms[i])) { return c; }
	}
	return 0;
}

std::string Literal::text() const { return strongNeg ? "-" + atom.text() : atom.text(); }

int Literal::compare(const Literal& a, const Literal& b) {
	if (int c = Atom::compare(a.atom, b.atom)) { return c; }
	if (a.strongNeg != b.strongNeg) { return a.strongNeg ? 1 : -1; }
	return 0;
}

const char* cmpOpText(CmpOp op) {
	switch (op) {
		case CmpOp::Lt: return "<";
		case CmpOp::Le: return "<=";
		case CmpOp::Eq: return "=";
		case CmpOp::Ne: return "!=";
		case CmpOp::Gt: return ">";
		case CmpOp::Ge: return ">=";
	}
	return "?";
}

bool evalCmp(CmpOp op, const Term& lhs, const Term& rhs) {
	const int c = Term::compare(lhs, rhs);
	switch (op) {
		case CmpOp::Lt: return c < 0;
		case CmpOp::Le: return c <= 0;
		case CmpOp::Eq: return c == 0;
		case CmpOp::Ne: return c != 0;
		case CmpOp::Gt: return c > 0;
		case CmpOp::Ge: return c >= 0;
	}
	return false;
}

std::string bodyElementText(const BodyElement& e) {
	if (const auto* n = std::get_if<NafLiteral>(&e)) {
		return n->naf ? "not " + n->lit.text() : n->lit.text();
	}
	if (const auto* c = std::get_if<Comparison>(&e)) {
		return c->lhs.text() + " " + cmpOpText(c->op) + " " + c->rhs.text();
	}
	const auto& agg = std::get<CountAggregate>(e);
	std::string vars;
	for (std::size_t i = 0; i != agg.boundVars.size(); ++i) {
		if (i) { vars += ","; }
		vars += agg.boundVars[i].text();
	}
	return "#count{" + vars + ": " + agg.pattern.text() + "} " + cmpOpText(agg.op) + " " + agg.guard.text();
}

bool Rule::isFact() const {
	return kind == RuleKind::Regular && body.empty() && head.size() == 1 && head[0].ground();
}

bool Rule::ground() const {
	for (const auto& h : head) {
		if (!h.ground()) { return false; }
	}
	for (const auto& e : body) {
		if (const auto* n = std::get_if<NafLiteral>(&e)) {
			if (!n->lit.ground()) { return false; }
		}
		else if (const auto* c = std::get_if<Comparison>(&e)) {
			if (!c->lhs.ground() || !c->rhs.ground()) { return false; }
		}
		else {
			// count aggregates: the bound variables are local binders
			const auto& agg = std::get<CountAggregate>(e);
			if (!agg.guard.ground()) { return false; }
			for (const auto& t : agg.pattern.atom.terms) {
				if (t.ground()) { continue; }
				bool bound = false;
				for (const auto& v : agg.boundVars) { bound = bound || v == t; }
				if (!bound) { return false; }
			}
		}
	}
	return true;
}

std::string Rule::text() const {
	std::ostringstream out;
	if (kind == RuleKind::Regular) {
		for (std::size_t i = 0; i != head.size(); ++i) {
			if (i) { out << " | "; }
			out << head[i].text();
		}
		if (!body.empty()) { out << " :- "; }
	}
	else {
		out << (kind == RuleKind::Constraint ? ":- " : ":~ ");
	}
	for (std::size_t i = 0; i != body.size(); ++i) {
		if (i) { out << ", "; }
		out << bodyElementText(body[i]);
	}
	out << ".";
	if (kind == RuleKind::Weak) { out << " [" << weight << ":" << level << "]"; }
	return out.str();
}

bool structurallyEqual(const Rule& a, const Rule& b) {
	return a.name == b.name && a.kind == b.kind && a.weight == b.weight && a.level == b.level && a.head == b.head &&
	       a.body == b.body;
}

namespace {

// Bidirectional variable renaming accumulated during an alpha-equality walk.
struct Renaming {
	std::map<std::string, std::string> fwd, rev;

	bool addPair(const std::string& a, const std::string& b) {
		auto f = fwd.find(a);
		auto r = rev.find(b);
		if (f == fwd.end() && r == rev.end()) {
			fwd.emplace(a, b);
			rev.emplace(b, a);
			return true;
		}
		return f != fwd.end() && r != rev.end() && f->second == b && r->second == a;
	}
	bool terms(const Term& a, const Term& b) {
		if (a.kind() != b.kind()) { return false; }
		if (a.kind() == Term::Kind::Variable) { return addPair(a.name(), b.name()); }
		return a == b;
	}
	bool literals(const Literal& a, const Literal& b) {
		if (a.strongNeg != b.strongNeg || a.atom.predicate != b.atom.predicate ||
		    a.atom.terms.size() != b.atom.terms.size()) {
			return false;
		}
		for (std::size_t i = 0; i != a.atom.terms.size(); ++i) {
			if (!terms(a.atom.terms[i], b.atom.terms[i])) { return false; }
		}
		return true;
	}
	bool elements(const BodyElement& a, const BodyElement& b) {
		if (a.index() != b.index()) { return false; }
		if (const auto* n = std::get_if<NafLiteral>(&a)) {
			const auto& m = std::get<NafLiteral>(b);
			return n->naf == m.naf && literals(n->lit, m.lit);
		}
		if (const auto* c = std::get_if<Comparison>(&a)) {
			const auto& d = std::get<Comparison>(b);
			return c->op == d.op && terms(c->lhs, d.lhs) && terms(c->rhs, d.rhs);
		}
		const auto& x = std::get<CountAggregate>(a);
		const auto& y = std::get<CountAggregate>(b);
		if (x.op != y.op || x.boundVars.size() != y.boundVars.size()) { return false; }
		for (std::size_t i = 0; i != x.boundVars.size(); ++i) {
			if (!terms(x.boundVars[i], y.boundVars[i])) { return false; }
		}
		return literals(x.pattern, y.pattern) && terms(x.guard, y.guard);
	}
};

} // namespace

bool alphaEqual(const Rule& a, const Rule& b) {
	if (a.kind != b.kind || a.weight != b.weight || a.level != b.level || a.head.size() != b.head.size() ||
	    a.body.size() != b.body.size()) {
		return false;
	}
	Renaming ren;
	for (std::size_t i = 0; i != a.head.size(); ++i) {
		if (!ren.literals(a.head[i], b.head[i])) { return false; }
	}
	for (std::size_t i = 0; i != a.body.size(); ++i) {
		if (!ren.elements(a.body[i], b.body[i])) { return false; }
	}
	return true;
}

Program::Program(std::vector<Rule> rules) {
	for (auto& r : rules) { append(std::move(r)); }
}

void Program::append(Rule r) {
	if (!r.name.empty()) {
		auto [it, fresh] = nameIndex_.emplace(r.name, rules_.size());
		if (!fresh) { throw std::invalid_argument("duplicate rule name: " + r.name); }
	}
	rules_.push_back(std::move(r));
}

const Rule* Program::findByName(std::string_view name) const {
	auto it = nameIndex_.find(std::string(name));
	return it == nameIndex_.end() ? nullptr : &rules_[it->second];
}

namespace {

template <typename F>
void forEachLiteral(const Rule& r, F&& f) {
	for (const auto& h : r.head) { f(h); }
	for (const auto& e : r.body) {
		if (const auto* n = std::get_if<NafLiteral>(&e)) { f(n->lit); }
		else if (const auto* agg = std::get_if<CountAggregate>(&e)) { f(agg->pattern); }
	}
}

} // namespace

std::vector<std::string> Program::predicates() const {
	std::vector<std::string> out;
	for (const auto& r : rules_) {
		forEachLiteral(r, [&](const Literal& l) { out.push_back(l.atom.predicate); });
	}
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

std::optional<Substitution> matchAtom(const Literal& pattern, const Literal& fact) {
	if (pattern.strongNeg != fact.strongNeg || pattern.atom.predicate != fact.atom.predicate ||
	    pattern.atom.terms.size() != fact.atom.terms.size()) {
		return std::nullopt;
	}
	Substitution subst;
	for (std::size_t i = 0; i != pattern.atom.terms.size(); ++i) {
		const Term& p = pattern.atom.terms[i];
		const Term& f = fact.atom.terms[i];
		if (p.kind() == Term::Kind::Variable) {
			auto [it, fresh] = subst.emplace(p.name(), f);
			if (!fresh && it->second != f) { return std::nullopt; }
		}
		else if (p != f) {
			return std::nullopt;
		}
	}
	return subst;
}

namespace {

Term substTerm(const Term& t, const Substitution& s) {
	if (t.kind() != Term::Kind::Variable) { return t; }
	auto it = s.find(t.name());
	return it == s.end() ? t : it->second;
}

} // namespace

Literal applySubstitution(const Literal& lit, const Substitution& s) {
	Literal out = lit;
	for (auto& t : out.atom.terms) { t = substTerm(t, s); }
	return out;
}

BodyElement applySubstitution(const BodyElement& e, const Substitution& s) {
	if (const auto* n = std::get_if<NafLiteral>(&e)) { return NafLiteral{applySubstitution(n->lit, s), n->naf}; }
	if (const auto* c = std::get_if<Comparison>(&e)) {
		return Comparison{substTerm(c->lhs, s), c->op, substTerm(c->rhs, s)};
	}
	auto agg = std::get<CountAggregate>(e);
	// bound variables shadow the outer substitution
	Substitution outer = s;
	for (const auto& v : agg.boundVars) { outer.erase(v.name()); }
	agg.pattern = applySubstitution(agg.pattern, outer);
	agg.guard   = substTerm(agg.guard, outer);
	return agg;
}

Rule applySubstitution(const Rule& r, const Substitution& s) {
	Rule out = r;
	for (auto& h : out.head) { h = applySubstitution(h, s); }
	for (auto& e : out.body) { e = applySubstitution(e, s); }
	return out;
}

AnswerSet::AnswerSet(std::vector<Literal> literals) : literals_(std::move(literals)) {
	std::sort(literals_.begin(), literals_.end());
	literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
	for (const auto& lit : literals_) {
		if (lit.strongNeg) { continue; }
		Literal neg = lit;
		neg.strongNeg = true;
		if (std::binary_search(literals_.begin(), literals_.end(), neg)) {
			throw std::invalid_argument("inconsistent answer set: " + lit.text() + " and " + neg.text());
		}
	}
}

bool AnswerSet::contains(const Literal& lit) const {
	return std::binary_search(literals_.begin(), literals_.end(), lit);
}

std::string AnswerSet::text() const {
	std::string out = "{";
	for (std::size_t i = 0; i != literals_.size(); ++i) {
		if (i) { out += ", "; }
		out += literals_[i].text();
	}
	out += "}";
	return out;
}

bool AnswerSet::operator<(const AnswerSet& o) const {
	return std::lexicographical_compare(literals_.begin(), literals_.end(), o.literals_.begin(), o.literals_.end());
}

void CostVector::add(int level, std::int64_t weight) {
	if (weight == 0) { return; }
	auto it = costs_.find(level);
	if (it == costs_.end()) { costs_.emplace(level, weight); }
	else if ((it->second += weight) == 0) {
		costs_.erase(it);
	}
}

std::int64_t CostVector::at(int level) const {
	auto it = costs_.find(level);
	return it == costs_.end() ? 0 : it->second;
}

std::string CostVector::text() const {
	std::string out = "<";
	for (auto it = costs_.rbegin(); it != costs_.rend(); ++it) {
		if (it != costs_.rbegin()) { out += ","; }
		out += std::to_string(it->second) + ":" + std::to_string(it->first);
	}
	return out + ">";
}

int CostVector::compare(const CostVector& a, const CostVector& b) {
	// walk both maps from the highest level down; absent levels cost 0
	auto ia = a.costs_.rbegin();
	auto ib = b.costs_.rbegin();
	while (ia != a.costs_.rend() || ib != b.costs_.rend()) {
		int level;
		if (ia == a.costs_.rend()) { level = ib->first; }
		else if (ib == b.costs_.rend()) {
			level = ia->first;
		}
		else {
			level = std::max(ia->first, ib->first);
		}
		const std::int64_t ca = (ia != a.costs_.rend() && ia->first == level) ? (ia++)->second : 0;
		const std::int64_t cb = (ib != b.costs_.rend() && ib->first == level) ? (ib++)->second : 0;
		if (ca != cb) { return ca < cb ? -1 : 1; }
	}
	return 0;
}

void SolverResult::updateBestCost() {
	bestCost.reset();
	for (const auto& c : costs) {
		if (!c) { continue; }
		if (!bestCost || CostVector::compare(*c, *bestCost) < 0) { bestCost = *c; }
	}
}

} // namespace aspunit
