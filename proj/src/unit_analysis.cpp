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

#include <aspunit/unit_analysis.h>

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace aspunit {

namespace {

void collectPredicates(const Rule& r, std::set<std::string>& out) {
	for (const auto& h : r.head) { out.insert(h.atom.predicate); }
	for (const auto& e : r.body) {
		if (const auto* n = std::get_if<NafLiteral>(&e)) { out.insert(n->lit.atom.predicate); }
		else if (const auto* agg = std::get_if<CountAggregate>(&e)) {
			out.insert(agg->pattern.atom.predicate);
		}
	}
}

std::set<std::string> headPredicates(const Rule& r) {
	std::set<std::string> out;
	for (const auto& h : r.head) { out.insert(h.atom.predicate); }
	return out;
}

} // namespace

PredicateGraph buildDependencyGraph(const Program& p) {
	PredicateGraph g;
	for (const auto& r : p.rules()) {
		collectPredicates(r, g.nodes);
		for (const auto& h : r.head) {
			for (const auto& e : r.body) {
				if (const auto* n = std::get_if<NafLiteral>(&e)) {
					g.edges.insert({h.atom.predicate, n->lit.atom.predicate, n->naf});
				}
				else if (const auto* agg = std::get_if<CountAggregate>(&e)) {
					g.edges.insert({h.atom.predicate, agg->pattern.atom.predicate, false});
				}
			}
		}
	}
	return g;
}

SplitClosure splittingClosure(const Program& p, const std::set<std::string>& seed) {
	SplitClosure closure;
	closure.predicates = seed;
	bool changed = true;
	while (changed) {
		changed = false;
		for (const auto& r : p.rules()) {
			if (r.kind != RuleKind::Regular) { continue; }
			const bool touches = std::any_of(r.head.begin(), r.head.end(), [&](const Literal& h) {
				return closure.predicates.count(h.atom.predicate) != 0;
			});
			if (!touches) { continue; }
			std::set<std::string> all;
			collectPredicates(r, all);
			for (const auto& pred : all) { changed = closure.predicates.insert(pred).second || changed; }
		}
	}
	for (const auto& r : p.rules()) {
		if (r.kind != RuleKind::Regular) { continue; }
		const auto heads = headPredicates(r);
		const bool in    = !heads.empty() && std::all_of(heads.begin(), heads.end(), [&](const std::string& h) {
			return closure.predicates.count(h) != 0;
		});
		if (in) { closure.bottom.push_back(r); }
	}
	return closure;
}

namespace {

//! Tarjan strongly connected components over predicate names.
class SccFinder {
public:
	explicit SccFinder(const PredicateGraph& g) : graph_(g) {
		for (const auto& e : g.edges) { succ_[e.from].push_back(e.to); }
		for (const auto& n : g.nodes) {
			if (!index_.count(n)) { visit(n); }
		}
	}

	const std::vector<std::set<std::string>>& components() const { return sccs_; }

private:
	void visit(const std::string& v) {
		index_[v] = low_[v] = next_++;
		stack_.push_back(v);
		onStack_.insert(v);
		for (const auto& w : succ_[v]) {
			if (!index_.count(w)) {
				visit(w);
				low_[v] = std::min(low_[v], low_[w]);
			}
			else if (onStack_.count(w)) {
				low_[v] = std::min(low_[v], index_[w]);
			}
		}
		if (low_[v] == index_[v]) {
			std::set<std::string> scc;
			for (;;) {
				std::string w = stack_.back();
				stack_.pop_back();
				onStack_.erase(w);
				scc.insert(w);
				if (w == v) { break; }
			}
			sccs_.push_back(std::move(scc));
		}
	}

	const PredicateGraph&                            graph_;
	std::map<std::string, std::vector<std::string>> succ_;
	std::map<std::string, int>                       index_, low_;
	std::vector<std::string>                         stack_;
	std::set<std::string>                            onStack_;
	std::vector<std::set<std::string>>               sccs_;
	int                                              next_ = 0;
};

//! Shortest predicate path from -> to within one component, as "p -> q -> r".
std::vector<std::string> pathWithin(const PredicateGraph& g, const std::set<std::string>& scc, const std::string& from,
                                    const std::string& to) {
	std::map<std::string, std::string> parent;
	std::deque<std::string>            queue{from};
	std::set<std::string>              seen{from};
	while (!queue.empty()) {
		std::string v = queue.front();
		queue.pop_front();
		for (const auto& e : g.edges) {
			if (e.from != v || !scc.count(e.to) || seen.count(e.to)) { continue; }
			parent[e.to] = v;
			if (e.to == to) {
				std::vector<std::string> path{to};
				for (std::string w = to; w != from; w = parent[w]) { path.push_back(parent[w]); }
				std::reverse(path.begin(), path.end());
				return path;
			}
			seen.insert(e.to);
			queue.push_back(e.to);
		}
	}
	return {};
}

bool cyclic(const PredicateGraph& g, const std::set<std::string>& scc) {
	if (scc.size() > 1) { return true; }
	const std::string& only = *scc.begin();
	return g.edges.count({only, only, false}) || g.edges.count({only, only, true});
}

} // namespace

std::vector<std::string> checkSelectionCompatibility(const Program& p, const std::vector<const Rule*>& selected) {
	std::vector<std::string> warnings;
	if (selected.empty()) { return warnings; }

	std::set<std::string> selectedHeads, outsideHeads;
	for (const Rule* r : selected) {
		for (const auto& pred : headPredicates(*r)) { selectedHeads.insert(pred); }
	}
	for (const auto& r : p.rules()) {
		if (r.kind != RuleKind::Regular) { continue; }
		const bool isSelected = std::any_of(selected.begin(), selected.end(),
		                                    [&](const Rule* s) { return s == &r || structurallyEqual(*s, r); });
		if (isSelected) { continue; }
		for (const auto& pred : headPredicates(r)) { outsideHeads.insert(pred); }
	}

	const PredicateGraph graph = buildDependencyGraph(p);
	const SccFinder      sccs(graph);
	for (const auto& scc : sccs.components()) {
		if (!cyclic(graph, scc)) { continue; }
		std::string inSel, outSel;
		for (const auto& pred : scc) {
			if (inSel.empty() && selectedHeads.count(pred)) { inSel = pred; }
			if (outSel.empty() && outsideHeads.count(pred)) { outSel = pred; }
		}
		if (inSel.empty() || outSel.empty()) { continue; }
		std::string cycle;
		if (inSel == outSel) {
			cycle = inSel + " -> " + inSel;
			for (const auto& e : graph.edges) {
				if (e.from == inSel && scc.count(e.to) && e.to != inSel) {
					auto back = pathWithin(graph, scc, e.to, inSel);
					if (!back.empty()) {
						cycle = inSel;
						for (const auto& step : back) { cycle += " -> " + step; }
						break;
					}
				}
			}
		}
		else {
			auto there = pathWithin(graph, scc, inSel, outSel);
			auto back  = pathWithin(graph, scc, outSel, inSel);
			cycle      = inSel;
			for (std::size_t i = 1; i < there.size(); ++i) { cycle += " -> " + there[i]; }
			for (std::size_t i = 1; i < back.size(); ++i) { cycle += " -> " + back[i]; }
		}
		warnings.push_back("selected rules do not form a splitting set: predicate " + inSel +
		                   " shares the cycle [" + cycle + "] with unselected predicate " + outSel);
	}
	return warnings;
}

namespace {

struct TaggedRule {
	Rule rule;
	bool inGlobal = false;
	bool inLocal  = false;
};

} // namespace

AssembledUnit assembleUnit(const Program& global, const Program& local, const std::vector<Program>& exclusionFragments,
                           const std::vector<std::string>& excludedOrigins, ExecutionMode mode,
                           const std::vector<std::string>& selectedRuleNames) {
	AssembledUnit out;

	// union with set semantics by alpha-equivalence, locals appended after
	std::vector<TaggedRule> pool;
	auto merge = [&pool](const Rule& r, bool isLocal) {
		for (auto& t : pool) {
			if (alphaEqual(t.rule, r)) {
				t.inGlobal = t.inGlobal || !isLocal;
				t.inLocal  = t.inLocal || isLocal;
				if (t.rule.name.empty() && !r.name.empty()) { t.rule.name = r.name; }
				return;
			}
		}
		pool.push_back({r, !isLocal, isLocal});
	};
	for (const auto& r : global.rules()) { merge(r, false); }
	for (const auto& r : local.rules()) { merge(r, true); }

	// excludeInputFile drops whole origins, excludeInput drops alpha-equal rules
	for (const auto& origin : excludedOrigins) {
		bool any = false;
		for (auto it = pool.begin(); it != pool.end();) {
			if (it->rule.origin == origin) {
				it  = pool.erase(it);
				any = true;
			}
			else {
				++it;
			}
		}
		if (!any) { out.warnings.push_back("excludeInputFile(\"" + origin + "\") matched no rules"); }
	}
	for (const auto& fragment : exclusionFragments) {
		for (const auto& pattern : fragment.rules()) {
			bool any = false;
			for (auto it = pool.begin(); it != pool.end();) {
				if (alphaEqual(it->rule, pattern)) {
					it  = pool.erase(it);
					any = true;
				}
				else {
					++it;
				}
			}
			if (!any) { out.warnings.push_back("excludeInput rule `" + pattern.text() + "` matched no rules"); }
		}
	}

	Program survivors;
	for (const auto& t : pool) { survivors.append(t.rule); }

	std::set<std::string> selectedSet(selectedRuleNames.begin(), selectedRuleNames.end());
	std::vector<const Rule*> selectedPtrs;
	for (const auto& name : selectedRuleNames) {
		const Rule* r = survivors.findByName(name);
		if (!r) { throw std::invalid_argument("unknown rule name " + name); }
		selectedPtrs.push_back(r);
		out.selectedRules.push_back(*r);
	}
	if (!selectedPtrs.empty()) {
		auto warnings = checkSelectionCompatibility(survivors, selectedPtrs);
		out.warnings.insert(out.warnings.end(), warnings.begin(), warnings.end());
	}

	switch (mode) {
		case ExecutionMode::WholeProgram:
			out.program = std::move(survivors);
			break;
		case ExecutionMode::SelectedRules:
			for (const auto& t : pool) {
				if (t.inLocal || (!t.rule.name.empty() && selectedSet.count(t.rule.name))) {
					out.program.append(t.rule);
				}
			}
			break;
		case ExecutionMode::SplitProgram: {
			std::set<std::string> seed;
			for (const Rule* r : selectedPtrs) { collectPredicates(*r, seed); }
			SplitClosure closure = splittingClosure(survivors, seed);
			for (auto& r : closure.bottom) { out.program.append(std::move(r)); }
			for (const auto& t : pool) {
				if (!t.inLocal) { continue; }
				const bool already = std::any_of(out.program.rules().begin(), out.program.rules().end(),
				                                 [&](const Rule& r) { return alphaEqual(r, t.rule); });
				if (!already) { out.program.append(t.rule); }
			}
			break;
		}
	}
	return out;
}

AnswerSet applyFilter(const AnswerSet& a, const std::optional<FilterSpec>& f, const std::vector<Rule>& selected) {
	if (!f) { return a; }
	std::set<std::string> keep(f->predicates.begin(), f->predicates.end());
	if (f->selectedRulesScope) {
		for (const auto& r : selected) {
			for (const auto& pred : headPredicates(r)) { keep.insert(pred); }
		}
	}
	std::vector<Literal> kept;
	for (const auto& lit : a.literals()) {
		if (!keep.count(lit.atom.predicate)) { continue; }
		if (f->polarity == FilterSpec::Polarity::PositiveOnly && lit.strongNeg) { continue; }
		if (f->polarity == FilterSpec::Polarity::NegativeOnly && !lit.strongNeg) { continue; }
		kept.push_back(lit);
	}
	return AnswerSet(std::move(kept));
}

} // namespace aspunit
