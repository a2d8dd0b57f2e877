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

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace aspunit {

std::string Diagnostic::text() const {
	std::ostringstream out;
	out << origin << ":" << line << ":" << column << ": "
	    << (severity == Severity::Error ? "error: " : "warning: ") << message;
	return out.str();
}

bool hasErrors(const std::vector<Diagnostic>& diags) {
	return std::any_of(diags.begin(), diags.end(),
	                   [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

namespace {

struct Token {
	enum class Type {
		Ident,    // lowercase-leading identifier
		Var,      // uppercase- or underscore-leading identifier
		Int,
		Str,
		LParen,
		RParen,
		Comma,
		Dot,
		Pipe,
		LBracket,
		RBracket,
		LBrace,
		RBrace,
		Colon,
		If,       // :-
		WeakIf,   // :~
		Count,    // #count
		Cmp,
		Minus,
		End
	};

	Type         type = Type::End;
	std::string  text;
	std::int64_t value = 0;
	CmpOp        cmp   = CmpOp::Lt;
	int          line  = 1;
	int          col   = 1;
};

bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

//! Tokenizer shared by the program parser and the atom-list parser. Records
//! single-line `%` comments so rule-name comments can be resolved later.
class Lexer {
public:
	Lexer(std::string_view text, std::string origin, std::vector<Diagnostic>& diags)
	    : text_(text), origin_(std::move(origin)), diags_(diags) {}

	std::vector<Token> run() {
		std::vector<Token> out;
		for (Token t = next(); ; t = next()) {
			out.push_back(t);
			if (t.type == Token::Type::End) { break; }
		}
		return out;
	}

	//! line -> trimmed comment content
	const std::map<int, std::string>& comments() const { return comments_; }

private:
	void error(int line, int col, const std::string& msg) {
		diags_.push_back({Diagnostic::Severity::Error, msg, origin_, line, col});
	}

	char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

	char advance() {
		char c = text_[pos_++];
		if (c == '\n') {
			++line_;
			col_ = 1;
		}
		else {
			++col_;
		}
		return c;
	}

	Token make(Token::Type type, int line, int col, std::string text = {}) {
		Token t;
		t.type = type;
		t.text = std::move(text);
		t.line = line;
		t.col  = col;
		return t;
	}

	Token next() {
		for (;;) {
			while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(peek()))) { advance(); }
			if (pos_ >= text_.size()) { return make(Token::Type::End, line_, col_); }
			if (peek() != '%') { break; }
			const int cline = line_;
			std::string comment;
			advance();
			while (pos_ < text_.size() && peek() != '\n') { comment.push_back(advance()); }
			const auto b = comment.find_first_not_of(" \t\r");
			const auto e = comment.find_last_not_of(" \t\r");
			comments_[cline] = b == std::string::npos ? std::string() : comment.substr(b, e - b + 1);
		}
		const int line = line_, col = col_;
		const char c = peek();
		if (std::isdigit(static_cast<unsigned char>(c))) {
			std::string num;
			while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) { num.push_back(advance()); }
			Token t = make(Token::Type::Int, line, col, num);
			t.value = std::stoll(num);
			return t;
		}
		if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			std::string id;
			while (pos_ < text_.size() && isIdentChar(peek())) { id.push_back(advance()); }
			const bool var = std::isupper(static_cast<unsigned char>(id[0])) || id[0] == '_';
			return make(var ? Token::Type::Var : Token::Type::Ident, line, col, id);
		}
		switch (c) {
			case '"': {
				advance();
				std::string content;
				while (pos_ < text_.size() && peek() != '"') {
					char d = advance();
					if (d == '\\' && (peek() == '"' || peek() == '\\')) { d = advance(); }
					content.push_back(d);
				}
				if (pos_ >= text_.size()) {
					error(line, col, "unterminated string literal");
					return make(Token::Type::End, line, col);
				}
				advance();
				return make(Token::Type::Str, line, col, content);
			}
			case '(': advance(); return make(Token::Type::LParen, line, col);
			case ')': advance(); return make(Token::Type::RParen, line, col);
			case ',': advance(); return make(Token::Type::Comma, line, col);
			case '.': advance(); return make(Token::Type::Dot, line, col);
			case '|': advance(); return make(Token::Type::Pipe, line, col);
			case '[': advance(); return make(Token::Type::LBracket, line, col);
			case ']': advance(); return make(Token::Type::RBracket, line, col);
			case '{': advance(); return make(Token::Type::LBrace, line, col);
			case '}': advance(); return make(Token::Type::RBrace, line, col);
			case '#': {
				advance();
				std::string id;
				while (pos_ < text_.size() && isIdentChar(peek())) { id.push_back(advance()); }
				if (id != "count") {
					error(line, col, "unsupported aggregate '#" + id + "'");
					return make(Token::Type::End, line, col);
				}
				return make(Token::Type::Count, line, col);
			}
			case ':':
				advance();
				if (peek() == '-') {
					advance();
					return make(Token::Type::If, line, col);
				}
				if (peek() == '~') {
					advance();
					return make(Token::Type::WeakIf, line, col);
				}
				return make(Token::Type::Colon, line, col);
			case '-': advance(); return make(Token::Type::Minus, line, col);
			case '<': {
				advance();
				Token t = make(Token::Type::Cmp, line, col);
				if (peek() == '=') { advance(); t.cmp = CmpOp::Le; }
				else if (peek() == '>') { advance(); t.cmp = CmpOp::Ne; }
				else { t.cmp = CmpOp::Lt; }
				return t;
			}
			case '>': {
				advance();
				Token t = make(Token::Type::Cmp, line, col);
				if (peek() == '=') { advance(); t.cmp = CmpOp::Ge; }
				else { t.cmp = CmpOp::Gt; }
				return t;
			}
			case '=': {
				advance();
				if (peek() == '=') { advance(); }
				Token t = make(Token::Type::Cmp, line, col);
				t.cmp = CmpOp::Eq;
				return t;
			}
			case '!':
				advance();
				if (peek() == '=') {
					advance();
					Token t = make(Token::Type::Cmp, line, col);
					t.cmp = CmpOp::Ne;
					return t;
				}
				[[fallthrough]];
			default:
				error(line, col, std::string("unexpected character '") + c + "'");
				advance();
				return next();
		}
	}

	std::string_view           text_;
	std::string                origin_;
	std::vector<Diagnostic>&   diags_;
	std::size_t                pos_  = 0;
	int                        line_ = 1;
	int                        col_  = 1;
	std::map<int, std::string> comments_;
};

bool isIdentifierText(const std::string& s) {
	if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')) { return false; }
	return std::all_of(s.begin(), s.end(), isIdentChar);
}

struct ParseAbort {};

class RuleParser {
public:
	RuleParser(std::vector<Token> tokens, std::string origin, std::vector<Diagnostic>& diags)
	    : tokens_(std::move(tokens)), origin_(std::move(origin)), diags_(diags) {}

	const Token& cur() const { return tokens_[idx_]; }
	const Token& peek(std::size_t ahead = 1) const {
		return tokens_[std::min(idx_ + ahead, tokens_.size() - 1)];
	}
	bool atEnd() const { return cur().type == Token::Type::End; }
	void bump() {
		if (idx_ + 1 < tokens_.size()) { ++idx_; }
	}

	[[noreturn]] void fail(const Token& at, const std::string& msg) {
		diags_.push_back({Diagnostic::Severity::Error, msg, origin_, at.line, at.col});
		throw ParseAbort{};
	}

	void expect(Token::Type type, const char* what) {
		if (cur().type != type) { fail(cur(), std::string("expected ") + what); }
		bump();
	}

	Term parseTerm() {
		const Token& t = cur();
		switch (t.type) {
			case Token::Type::Var: bump(); return Term::variable(t.text);
			case Token::Type::Int: bump(); return Term::integer(t.value);
			case Token::Type::Ident: bump(); return Term::symbol(t.text);
			case Token::Type::Str: bump(); return Term::string(t.text);
			case Token::Type::Minus:
				if (peek().type == Token::Type::Int) {
					bump();
					const std::int64_t v = cur().value;
					bump();
					return Term::integer(-v);
				}
				[[fallthrough]];
			default: fail(t, "expected term");
		}
	}

	Literal parseLiteral() {
		Literal lit;
		if (cur().type == Token::Type::Minus) {
			lit.strongNeg = true;
			bump();
		}
		if (cur().type != Token::Type::Ident) { fail(cur(), "expected predicate name"); }
		lit.atom.predicate = cur().text;
		bump();
		if (cur().type == Token::Type::LParen) {
			bump();
			lit.atom.terms.push_back(parseTerm());
			while (cur().type == Token::Type::Comma) {
				bump();
				lit.atom.terms.push_back(parseTerm());
			}
			expect(Token::Type::RParen, "')'");
		}
		return lit;
	}

	BodyElement parseBodyElement() {
		const Token& t = cur();
		if (t.type == Token::Type::Ident && t.text == "not") {
			bump();
			return NafLiteral{parseLiteral(), true};
		}
		if (t.type == Token::Type::Count) {
			bump();
			CountAggregate agg;
			expect(Token::Type::LBrace, "'{'");
			if (cur().type != Token::Type::Var) { fail(cur(), "expected variable in #count"); }
			agg.boundVars.push_back(Term::variable(cur().text));
			bump();
			while (cur().type == Token::Type::Comma) {
				bump();
				if (cur().type != Token::Type::Var) { fail(cur(), "expected variable in #count"); }
				agg.boundVars.push_back(Term::variable(cur().text));
				bump();
			}
			expect(Token::Type::Colon, "':'");
			agg.pattern = parseLiteral();
			expect(Token::Type::RBrace, "'}'");
			if (cur().type != Token::Type::Cmp) { fail(cur(), "expected comparison operator after #count"); }
			agg.op = cur().cmp;
			bump();
			agg.guard = parseTerm();
			return agg;
		}
		const bool termStart = t.type == Token::Type::Var || t.type == Token::Type::Int ||
		                       t.type == Token::Type::Str ||
		                       (t.type == Token::Type::Minus && peek().type == Token::Type::Int);
		if (termStart || (t.type == Token::Type::Ident && peek().type == Token::Type::Cmp)) {
			Comparison cmp;
			cmp.lhs = parseTerm();
			if (cur().type != Token::Type::Cmp) { fail(cur(), "expected comparison operator"); }
			cmp.op = cur().cmp;
			bump();
			cmp.rhs = parseTerm();
			return cmp;
		}
		return NafLiteral{parseLiteral(), false};
	}

	//! Parses one rule; the leading token decides the kind.
	Rule parseRule() {
		Rule       rule;
		const auto kindTok = cur().type;
		if (kindTok == Token::Type::If || kindTok == Token::Type::WeakIf) {
			rule.kind = kindTok == Token::Type::If ? RuleKind::Constraint : RuleKind::Weak;
			bump();
			parseBody(rule);
		}
		else {
			rule.head.push_back(parseLiteral());
			for (;;) {
				if (cur().type == Token::Type::Pipe) {
					bump();
					rule.head.push_back(parseLiteral());
					continue;
				}
				// DLV also accepts a bare `v` between head disjuncts
				if (cur().type == Token::Type::Ident && cur().text == "v" &&
				    (peek().type == Token::Type::Ident || peek().type == Token::Type::Minus)) {
					bump();
					rule.head.push_back(parseLiteral());
					continue;
				}
				break;
			}
			if (cur().type == Token::Type::If) {
				bump();
				parseBody(rule);
			}
		}
		expect(Token::Type::Dot, "'.'");
		if (rule.kind == RuleKind::Weak && cur().type == Token::Type::LBracket) {
			bump();
			if (cur().type != Token::Type::Int) { fail(cur(), "expected weight in weak-constraint annotation"); }
			rule.weight = static_cast<int>(cur().value);
			bump();
			expect(Token::Type::Colon, "':'");
			if (cur().type != Token::Type::Int) { fail(cur(), "expected level in weak-constraint annotation"); }
			rule.level = static_cast<int>(cur().value);
			bump();
			expect(Token::Type::RBracket, "']'");
			if (rule.weight <= 0 || rule.level <= 0) { fail(cur(), "weak-constraint weight and level must be positive"); }
		}
		return rule;
	}

	//! Skips past the next '.' so later rules can still be parsed.
	void recover() {
		while (!atEnd() && cur().type != Token::Type::Dot) { bump(); }
		if (!atEnd()) { bump(); }
	}

private:
	void parseBody(Rule& rule) {
		rule.body.push_back(parseBodyElement());
		while (cur().type == Token::Type::Comma) {
			bump();
			rule.body.push_back(parseBodyElement());
		}
	}

	std::vector<Token>       tokens_;
	std::string              origin_;
	std::vector<Diagnostic>& diags_;
	std::size_t              idx_ = 0;
};

//! Renames each bare `_` occurrence to a fresh variable unused in the rule.
void renameAnonymousVariables(Rule& rule) {
	std::set<std::string> used;
	int                   counter = 0;
	auto collect = [&](const Term& t) {
		if (t.kind() == Term::Kind::Variable) { used.insert(t.name()); }
	};
	auto rename = [&](Term& t) {
		if (t.kind() != Term::Kind::Variable || t.name() != "_") { return; }
		std::string fresh;
		do {
			fresh = "_" + std::to_string(++counter);
		} while (used.count(fresh));
		used.insert(fresh);
		t = Term::variable(fresh);
	};
	auto walk = [&](auto&& f) {
		for (auto& h : rule.head) {
			for (auto& t : h.atom.terms) { f(t); }
		}
		for (auto& e : rule.body) {
			if (auto* n = std::get_if<NafLiteral>(&e)) {
				for (auto& t : n->lit.atom.terms) { f(t); }
			}
			else if (auto* c = std::get_if<Comparison>(&e)) {
				f(c->lhs);
				f(c->rhs);
			}
			else {
				auto& agg = std::get<CountAggregate>(e);
				for (auto& t : agg.pattern.atom.terms) { f(t); }
				f(agg.guard);
			}
		}
	};
	walk([&](Term& t) { collect(t); });
	walk(rename);
}

//! Safety: every variable in the head, in default-negated literals, in
//! comparisons, in aggregate guards, or free in aggregate patterns must occur
//! in a positive non-aggregate body literal.
std::vector<std::string> unsafeVariables(const Rule& rule) {
	std::set<std::string> bound;
	for (const auto& e : rule.body) {
		const auto* n = std::get_if<NafLiteral>(&e);
		if (!n || n->naf) { continue; }
		for (const auto& t : n->lit.atom.terms) {
			if (t.kind() == Term::Kind::Variable) { bound.insert(t.name()); }
		}
	}
	std::set<std::string> offending;
	auto need = [&](const Term& t) {
		if (t.kind() == Term::Kind::Variable && !bound.count(t.name())) { offending.insert(t.name()); }
	};
	for (const auto& h : rule.head) {
		for (const auto& t : h.atom.terms) { need(t); }
	}
	for (const auto& e : rule.body) {
		if (const auto* n = std::get_if<NafLiteral>(&e)) {
			if (!n->naf) { continue; }
			for (const auto& t : n->lit.atom.terms) { need(t); }
		}
		else if (const auto* c = std::get_if<Comparison>(&e)) {
			need(c->lhs);
			need(c->rhs);
		}
		else {
			const auto& agg = std::get<CountAggregate>(e);
			need(agg.guard);
			std::set<std::string> local;
			for (const auto& v : agg.boundVars) { local.insert(v.name()); }
			for (const auto& t : agg.pattern.atom.terms) {
				if (t.kind() == Term::Kind::Variable && !local.count(t.name())) { need(t); }
			}
		}
	}
	return {offending.begin(), offending.end()};
}

template <typename F>
void forEachAtomUse(const Rule& r, F&& f) {
	for (const auto& h : r.head) { f(h.atom); }
	for (const auto& e : r.body) {
		if (const auto* n = std::get_if<NafLiteral>(&e)) { f(n->lit.atom); }
		else if (const auto* agg = std::get_if<CountAggregate>(&e)) { f(agg->pattern.atom); }
	}
}

} // namespace

ParseResult parseProgram(std::string_view text, std::string origin) {
	ParseResult result;
	Lexer       lexer(text, origin, result.diagnostics);
	auto        tokens = lexer.run();
	RuleParser  parser(std::move(tokens), origin, result.diagnostics);

	std::vector<Rule>          rules;
	std::map<std::string, int> namesSeen;   // name -> line
	std::map<std::string, int> arities;     // predicate -> arity
	std::set<int>              claimedCommentLines;
	int                        ordinal = 0;

	while (!parser.atEnd()) {
		const Token startTok = parser.cur();
		Rule        rule;
		try {
			rule = parser.parseRule();
		}
		catch (const ParseAbort&) {
			parser.recover();
			continue;
		}
		rule.origin  = origin;
		rule.ordinal = ordinal++;
		renameAnonymousVariables(rule);

		auto comment = lexer.comments().find(startTok.line - 1);
		if (comment != lexer.comments().end() && isIdentifierText(comment->second) &&
		    !claimedCommentLines.count(comment->first)) {
			rule.name = comment->second;
			claimedCommentLines.insert(comment->first);
		}

		auto error = [&](const std::string& msg) {
			result.diagnostics.push_back({Diagnostic::Severity::Error, msg, origin, startTok.line, startTok.col});
		};
		if (!rule.name.empty()) {
			auto [it, fresh] = namesSeen.emplace(rule.name, startTok.line);
			if (!fresh) {
				error("duplicate rule name '" + rule.name + "' (first defined at line " +
				      std::to_string(it->second) + ")");
			}
		}
		for (const auto& v : unsafeVariables(rule)) {
			error("unsafe rule: variable " + v + " does not occur in a positive body literal");
		}
		if (rule.kind != RuleKind::Constraint) {
			for (const auto& e : rule.body) {
				if (std::holds_alternative<CountAggregate>(e)) {
					error("#count is only allowed in constraint bodies");
				}
			}
		}
		forEachAtomUse(rule, [&](const Atom& a) {
			auto [it, fresh] = arities.emplace(a.predicate, static_cast<int>(a.arity()));
			if (!fresh && it->second != static_cast<int>(a.arity())) {
				error("arity conflict for predicate '" + a.predicate + "': used with " +
				      std::to_string(it->second) + " and " + std::to_string(a.arity()) + " arguments");
			}
		});
		rules.push_back(std::move(rule));
	}

	if (result.ok()) { result.program = Program(std::move(rules)); }
	return result;
}

std::string serializeProgram(const Program& p) {
	std::string out;
	for (const auto& r : p.rules()) {
		if (!r.name.empty()) {
			out += "% " + r.name + "\n";
		}
		out += r.text() + "\n";
	}
	return out;
}

AtomListResult parseAtomList(std::string_view text, std::string origin) {
	AtomListResult result;
	Lexer          lexer(text, origin, result.diagnostics);
	RuleParser     parser(lexer.run(), origin, result.diagnostics);
	try {
		while (!parser.atEnd()) {
			result.literals.push_back(parser.parseLiteral());
			parser.expect(Token::Type::Dot, "'.'");
		}
	}
	catch (const ParseAbort&) {
		return result;
	}
	if (result.literals.empty()) {
		result.diagnostics.push_back({Diagnostic::Severity::Error, "empty atom list", origin, 1, 1});
	}
	return result;
}

std::vector<Diagnostic> checkProgramSet(std::span<const Program> programs) {
	std::vector<Diagnostic>            diags;
	std::map<std::string, std::string> nameOrigin;   // rule name -> origin
	std::map<std::string, std::pair<int, std::string>> arities; // predicate -> (arity, origin)

	for (const auto& p : programs) {
		for (const auto& r : p.rules()) {
			if (!r.name.empty()) {
				auto [it, fresh] = nameOrigin.emplace(r.name, r.origin);
				if (!fresh && it->second != r.origin) {
					diags.push_back({Diagnostic::Severity::Error,
					                 "duplicate rule name '" + r.name + "' across file set: defined in " +
					                     it->second + " and " + r.origin,
					                 r.origin, 0, 0});
				}
			}
			forEachAtomUse(r, [&](const Atom& a) {
				auto [it, fresh] = arities.emplace(a.predicate, std::make_pair(static_cast<int>(a.arity()), r.origin));
				if (!fresh && it->second.first != static_cast<int>(a.arity())) {
					diags.push_back({Diagnostic::Severity::Error,
					                 "arity conflict for predicate '" + a.predicate + "' across file set: " +
					                     std::to_string(it->second.first) + " in " + it->second.second + " vs " +
					                     std::to_string(a.arity()) + " in " + r.origin,
					                 r.origin, 0, 0});
				}
			});
		}
	}
	return diags;
}

} // namespace aspunit
