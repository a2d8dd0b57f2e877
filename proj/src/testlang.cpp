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

#include <aspunit/testlang.h>

#include <algorithm>
#include <cctype>
#include <set>

namespace aspunit {

const char* executionModeName(ExecutionMode m) {
	switch (m) {
		case ExecutionMode::WholeProgram: return "PROGRAM";
		case ExecutionMode::SelectedRules: return "SELECTED_RULES";
		case ExecutionMode::SplitProgram: return "SPLIT_PROGRAM";
	}
	return "?";
}

const char* assertionKindName(AssertionKind k) {
	switch (k) {
		case AssertionKind::TrueAll: return "assertTrue";
		case AssertionKind::TrueBrave: return "assertBravelyTrue";
		case AssertionKind::TrueIn: return "assertTrueIn";
		case AssertionKind::TrueInAtLeast: return "assertTrueInAtLeast";
		case AssertionKind::TrueInAtMost: return "assertTrueInAtMost";
		case AssertionKind::FalseAll: return "assertFalse";
		case AssertionKind::FalseBrave: return "assertBravelyFalse";
		case AssertionKind::FalseIn: return "assertFalseIn";
		case AssertionKind::FalseInAtLeast: return "assertFalseInAtLeast";
		case AssertionKind::FalseInAtMost: return "assertFalseInAtMost";
		case AssertionKind::ConstraintAll: return "assertConstraint";
		case AssertionKind::ConstraintIn: return "assertConstraintIn";
		case AssertionKind::ConstraintInAtLeast: return "assertConstraintInAtLeast";
		case AssertionKind::ConstraintInAtMost: return "assertConstraintInAtMost";
		case AssertionKind::BestModelCost: return "assertBestModelCost";
	}
	return "?";
}

namespace {

struct Token {
	enum class Type { Ident, Int, Str, LParen, RParen, LBrace, RBrace, Comma, Semi, End };

	Type         type = Type::End;
	std::string  text;
	std::int64_t value = 0;
	int          line  = 1;
	int          col   = 1;
};

struct SuiteAbort {};

class SuiteParser {
public:
	SuiteParser(std::string_view text, std::string origin, std::vector<Diagnostic>& diags)
	    : origin_(std::move(origin)), diags_(diags) {
		tokenize(text);
	}

	TestSuite parse() {
		TestSuite suite;
		parseInvocation(suite);
		while (accept("input", suite.globalInputs, InputSpec::Kind::Inline) ||
		       accept("inputFile", suite.globalInputs, InputSpec::Kind::File)) {}
		std::set<std::string> caseNames;
		while (cur().type == Token::Type::Ident && peek().type == Token::Type::LParen && !isAssertName(cur().text)) {
			const Token nameTok = cur();
			TestCase    tc      = parseTestCase();
			if (tc.name == kGlobalCaseName) {
				error(nameTok, std::string("test case name ") + kGlobalCaseName + " is reserved");
			}
			else if (!caseNames.insert(tc.name).second) {
				error(nameTok, "duplicate test case name '" + tc.name + "'");
			}
			suite.testCases.push_back(std::move(tc));
		}
		while (cur().type == Token::Type::Ident && isAssertName(cur().text)) {
			suite.globalAssertions.push_back(parseAssertion());
		}
		if (cur().type != Token::Type::End) { fail(cur(), "unexpected trailing content"); }
		return suite;
	}

private:
	// --- lexing ---------------------------------------------------------
	void tokenize(std::string_view text) {
		int         line = 1, col = 1;
		std::size_t i = 0;
		auto push = [&](Token::Type type, std::string s, int l, int c, std::int64_t v = 0) {
			tokens_.push_back({type, std::move(s), v, l, c});
		};
		while (i < text.size()) {
			const char c = text[i];
			if (c == '\n') { ++line; col = 1; ++i; continue; }
			if (std::isspace(static_cast<unsigned char>(c))) { ++col; ++i; continue; }
			if (c == '%') { // comment to end of line
				while (i < text.size() && text[i] != '\n') { ++i; }
				continue;
			}
			const int tline = line, tcol = col;
			if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
				std::string id;
				while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
					id.push_back(text[i++]);
					++col;
				}
				push(Token::Type::Ident, std::move(id), tline, tcol);
				continue;
			}
			if (std::isdigit(static_cast<unsigned char>(c))) {
				std::string num;
				while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
					num.push_back(text[i++]);
					++col;
				}
				push(Token::Type::Int, num, tline, tcol, std::stoll(num));
				continue;
			}
			if (c == '"') {
				++i;
				++col;
				std::string content;
				bool        closed = false;
				while (i < text.size()) {
					char d = text[i++];
					if (d == '\n') { ++line; col = 1; }
					else { ++col; }
					if (d == '\\' && i < text.size() && (text[i] == '"' || text[i] == '\\')) {
						d = text[i++];
						++col;
					}
					else if (d == '"') {
						closed = true;
						break;
					}
					content.push_back(d);
				}
				if (!closed) {
					diags_.push_back({Diagnostic::Severity::Error, "unterminated string", origin_, tline, tcol});
				}
				push(Token::Type::Str, std::move(content), tline, tcol);
				continue;
			}
			++i;
			++col;
			switch (c) {
				case '(': push(Token::Type::LParen, "(", tline, tcol); break;
				case ')': push(Token::Type::RParen, ")", tline, tcol); break;
				case '{': push(Token::Type::LBrace, "{", tline, tcol); break;
				case '}': push(Token::Type::RBrace, "}", tline, tcol); break;
				case ',': push(Token::Type::Comma, ",", tline, tcol); break;
				case ';': push(Token::Type::Semi, ";", tline, tcol); break;
				default:
					diags_.push_back({Diagnostic::Severity::Error, std::string("unexpected character '") + c + "'",
					                  origin_, tline, tcol});
			}
		}
		tokens_.push_back({Token::Type::End, "", 0, line, col});
	}

	const Token& cur() const { return tokens_[idx_]; }
	const Token& peek(std::size_t ahead = 1) const { return tokens_[std::min(idx_ + ahead, tokens_.size() - 1)]; }
	void         bump() { idx_ = std::min(idx_ + 1, tokens_.size() - 1); }

	void error(const Token& at, const std::string& msg) {
		diags_.push_back({Diagnostic::Severity::Error, msg, origin_, at.line, at.col});
	}
	[[noreturn]] void fail(const Token& at, const std::string& msg) {
		error(at, msg);
		throw SuiteAbort{};
	}
	void expect(Token::Type type, const char* what) {
		if (cur().type != type) { fail(cur(), std::string("expected ") + what); }
		bump();
	}
	std::string expectString(const char* what) {
		if (cur().type != Token::Type::Str) { fail(cur(), std::string("expected ") + what); }
		std::string s = cur().text;
		bump();
		return s;
	}

	// --- statements -----------------------------------------------------
	void parseInvocation(TestSuite& suite) {
		if (cur().type != Token::Type::Ident || cur().text != "invocation") {
			fail(cur(), "missing invocation statement");
		}
		bump();
		expect(Token::Type::LParen, "'('");
		suite.invocationName = expectString("invocation name string");
		if (cur().type == Token::Type::Comma) {
			bump();
			suite.solverPath = expectString("solver path string");
			expect(Token::Type::Comma, "','");
			suite.solverOptions = expectString("solver options string");
		}
		expect(Token::Type::RParen, "')'");
		expect(Token::Type::Semi, "';'");
	}

	bool accept(const char* keyword, std::vector<InputSpec>& into, InputSpec::Kind kind) {
		if (cur().type != Token::Type::Ident || cur().text != keyword) { return false; }
		const Token at = cur();
		bump();
		expect(Token::Type::LParen, "'('");
		std::string arg = expectString("string argument");
		expect(Token::Type::RParen, "')'");
		expect(Token::Type::Semi, "';'");
		if (kind == InputSpec::Kind::Inline) {
			auto parsed = parseProgram(arg, origin_ + ":" + keyword + "@" + std::to_string(at.line));
			for (const auto& d : parsed.diagnostics) {
				if (d.severity == Diagnostic::Severity::Error) {
					error(at, std::string("invalid inline program: ") + d.message);
				}
			}
		}
		into.push_back({kind, std::move(arg)});
		return true;
	}

	TestCase parseTestCase() {
		TestCase tc;
		tc.name = cur().text;
		const Token nameTok = cur();
		bump();
		expect(Token::Type::LParen, "'('");
		if (cur().type == Token::Type::Ident) {
			if (cur().text == "SELECTED_RULES") { tc.mode = ExecutionMode::SelectedRules; }
			else if (cur().text == "SPLIT_PROGRAM") { tc.mode = ExecutionMode::SplitProgram; }
			else if (cur().text == "PROGRAM") { tc.mode = ExecutionMode::WholeProgram; }
			else { fail(cur(), "expected SELECTED_RULES, SPLIT_PROGRAM, or PROGRAM"); }
			bump();
		}
		expect(Token::Type::RParen, "')'");
		expect(Token::Type::LBrace, "'{'");

		if (cur().type == Token::Type::Ident && cur().text == "newOptions") {
			bump();
			expect(Token::Type::LParen, "'('");
			tc.newOptions = expectString("options string");
			expect(Token::Type::RParen, "')'");
			expect(Token::Type::Semi, "';'");
		}
		while (accept("input", tc.inputs, InputSpec::Kind::Inline) ||
		       accept("inputFile", tc.inputs, InputSpec::Kind::File)) {}
		while (acceptExclusion(tc)) {}
		if (cur().type == Token::Type::Ident &&
		    (cur().text == "filter" || cur().text == "pfilter" || cur().text == "nfilter")) {
			tc.filter = parseFilter();
		}
		while (cur().type == Token::Type::Ident && cur().text == "selectRule") {
			bump();
			expect(Token::Type::LParen, "'('");
			tc.selectedRuleNames.push_back(expectString("rule name string"));
			expect(Token::Type::RParen, "')'");
			expect(Token::Type::Semi, "';'");
		}
		while (cur().type == Token::Type::Ident && isAssertName(cur().text)) {
			tc.assertions.push_back(parseAssertion());
		}
		expect(Token::Type::RBrace, "'}'");

		if (tc.mode != ExecutionMode::WholeProgram && tc.selectedRuleNames.empty()) {
			error(nameTok, "test case '" + tc.name + "' runs in " + executionModeName(tc.mode) +
			                   " mode but selects no rules");
		}
		return tc;
	}

	bool acceptExclusion(TestCase& tc) {
		if (cur().type != Token::Type::Ident) { return false; }
		const bool inline_ = cur().text == "excludeInput";
		const bool file    = cur().text == "excludeInputFile";
		if (!inline_ && !file) { return false; }
		const Token at = cur();
		bump();
		expect(Token::Type::LParen, "'('");
		std::string arg = expectString("string argument");
		expect(Token::Type::RParen, "')'");
		expect(Token::Type::Semi, "';'");
		if (inline_) {
			auto parsed = parseProgram(arg, origin_ + ":excludeInput@" + std::to_string(at.line));
			for (const auto& d : parsed.diagnostics) {
				if (d.severity == Diagnostic::Severity::Error) {
					error(at, std::string("invalid excludeInput program: ") + d.message);
				}
			}
		}
		tc.exclusions.push_back({inline_ ? InputSpec::Kind::Inline : InputSpec::Kind::File, std::move(arg)});
		return true;
	}

	FilterSpec parseFilter() {
		FilterSpec spec;
		if (cur().text == "pfilter") { spec.polarity = FilterSpec::Polarity::PositiveOnly; }
		else if (cur().text == "nfilter") { spec.polarity = FilterSpec::Polarity::NegativeOnly; }
		bump();
		// both `filter(p, q);` and `filter SELECTED_RULES;` forms are accepted
		const bool parens = cur().type == Token::Type::LParen;
		if (parens) { bump(); }
		if (cur().type == Token::Type::Ident && cur().text == "SELECTED_RULES") {
			spec.selectedRulesScope = true;
			bump();
		}
		else {
			if (cur().type != Token::Type::Ident) { fail(cur(), "expected predicate name or SELECTED_RULES"); }
			spec.predicates.push_back(cur().text);
			bump();
			while (cur().type == Token::Type::Comma) {
				bump();
				if (cur().type != Token::Type::Ident) { fail(cur(), "expected predicate name"); }
				spec.predicates.push_back(cur().text);
				bump();
			}
		}
		if (parens) { expect(Token::Type::RParen, "')'"); }
		expect(Token::Type::Semi, "';'");
		return spec;
	}

	static bool isAssertName(const std::string& s) { return s.rfind("assert", 0) == 0; }

	Assertion parseAssertion() {
		const Token at   = cur();
		std::string name = cur().text;
		bump();
		expect(Token::Type::LParen, "'('");

		struct Entry {
			const char*   name;
			AssertionKind kind;
			bool          counted;
			bool          constraint;
		};
		static const Entry table[] = {
		    {"assertTrue", AssertionKind::TrueAll, false, false},
		    {"assertCautiouslyTrue", AssertionKind::TrueAll, false, false},
		    {"assertBravelyTrue", AssertionKind::TrueBrave, false, false},
		    {"assertTrueIn", AssertionKind::TrueIn, true, false},
		    {"assertTrueInAtLeast", AssertionKind::TrueInAtLeast, true, false},
		    {"assertTrueInAtMost", AssertionKind::TrueInAtMost, true, false},
		    {"assertFalse", AssertionKind::FalseAll, false, false},
		    {"assertCautiouslyFalse", AssertionKind::FalseAll, false, false},
		    {"assertBravelyFalse", AssertionKind::FalseBrave, false, false},
		    {"assertFalseIn", AssertionKind::FalseIn, true, false},
		    {"assertFalseInAtLeast", AssertionKind::FalseInAtLeast, true, false},
		    {"assertFalseInAtMost", AssertionKind::FalseInAtMost, true, false},
		    {"assertConstraint", AssertionKind::ConstraintAll, false, true},
		    {"assertConstraintIn", AssertionKind::ConstraintIn, true, true},
		    {"assertConstraintInAtLeast", AssertionKind::ConstraintInAtLeast, true, true},
		    {"assertConstraintInAtMost", AssertionKind::ConstraintInAtMost, true, true},
		};

		Assertion assertion;
		if (name == "assertBestModelCost") {
			assertion.kind = AssertionKind::BestModelCost;
			if (cur().type != Token::Type::Int) { fail(cur(), "expected integer cost"); }
			assertion.count = cur().value;
			bump();
			if (cur().type == Token::Type::Comma) {
				bump();
				if (cur().type != Token::Type::Int) { fail(cur(), "expected integer level"); }
				assertion.level = static_cast<int>(cur().value);
				if (assertion.level < 1) { fail(cur(), "level must be >= 1"); }
				bump();
			}
			expect(Token::Type::RParen, "')'");
			expect(Token::Type::Semi, "';'");
			return assertion;
		}

		const Entry* entry = nullptr;
		for (const auto& e : table) {
			if (name == e.name) {
				entry = &e;
				break;
			}
		}
		if (!entry) { fail(at, "unknown assertion name '" + name + "'"); }
		assertion.kind = entry->kind;
		if (entry->counted) {
			if (cur().type != Token::Type::Int) { fail(cur(), "expected non-negative integer count"); }
			assertion.count = cur().value;
			bump();
			expect(Token::Type::Comma, "','");
		}
		std::string arg = expectString(entry->constraint ? "constraint string" : "atom list string");
		if (entry->constraint) {
			auto parsed = parseProgram(arg, origin_ + ":" + name + "@" + std::to_string(at.line));
			if (!parsed.ok()) {
				for (const auto& d : parsed.diagnostics) {
					if (d.severity == Diagnostic::Severity::Error) {
						error(at, "invalid constraint argument: " + d.message);
					}
				}
			}
			else if (parsed.program.size() != 1 || parsed.program.rules()[0].kind != RuleKind::Constraint) {
				error(at, "constraint argument must be a single headless rule");
			}
			else {
				assertion.constraint = parsed.program.rules()[0];
			}
		}
		else {
			auto atoms = parseAtomList(arg, origin_ + ":" + name + "@" + std::to_string(at.line));
			if (!atoms.ok()) {
				for (const auto& d : atoms.diagnostics) {
					if (d.severity == Diagnostic::Severity::Error) { error(at, "invalid atom list: " + d.message); }
				}
			}
			assertion.atoms = std::move(atoms.literals);
		}
		expect(Token::Type::RParen, "')'");
		expect(Token::Type::Semi, "';'");
		return assertion;
	}

	std::string              origin_;
	std::vector<Diagnostic>& diags_;
	std::vector<Token>       tokens_;
	std::size_t              idx_ = 0;
};

} // namespace

SuiteParseResult parseTestSuite(std::string_view text, std::string origin) {
	SuiteParseResult result;
	SuiteParser      parser(text, std::move(origin), result.diagnostics);
	try {
		result.suite = parser.parse();
	}
	catch (const SuiteAbort&) {
	}
	return result;
}

std::vector<Diagnostic> validateSuite(const TestSuite& suite, const std::map<std::string, Program>& resolvedPrograms) {
	std::vector<Diagnostic> diags;

	auto resolved = [&](const InputSpec& spec) -> const Program* {
		auto it = resolvedPrograms.find(spec.text);
		return it == resolvedPrograms.end() ? nullptr : &it->second;
	};

	for (const auto& tc : suite.testCases) {
		std::set<std::string> ruleNames;
		std::set<std::string> predicates;
		auto scan = [&](const std::vector<InputSpec>& specs) {
			for (const auto& spec : specs) {
				const Program* p = resolved(spec);
				if (!p) { continue; }
				for (const auto& r : p->rules()) {
					if (!r.name.empty()) { ruleNames.insert(r.name); }
				}
				for (const auto& pred : p->predicates()) { predicates.insert(pred); }
			}
		};
		scan(suite.globalInputs);
		scan(tc.inputs);

		for (const auto& name : tc.selectedRuleNames) {
			if (!ruleNames.count(name)) {
				diags.push_back({Diagnostic::Severity::Error,
				                 "unknown rule name " + name + " in test case '" + tc.name + "'", tc.name, 0, 0});
			}
		}
		if (tc.filter && !tc.filter->selectedRulesScope) {
			for (const auto& pred : tc.filter->predicates) {
				if (!predicates.count(pred)) {
					diags.push_back({Diagnostic::Severity::Warning,
					                 "filter predicate '" + pred + "' does not occur in the inputs of test case '" +
					                     tc.name + "'",
					                 tc.name, 0, 0});
				}
			}
		}
	}
	return diags;
}

} // namespace aspunit
