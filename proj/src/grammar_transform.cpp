#include <algorithm>
#include <map>
#include <set>

#include "abcat/errors.hpp"
#include "abcat/grammar.hpp"

namespace abcat {

namespace {

// Hands out names that do not collide with any symbol seen so far; a taken
// base name gets a numeric suffix.
class NameAllocator {
 public:
  explicit NameAllocator(const Cfg& g) {
    for (const Symbol& s : g.terminals()) used_.insert(s);
    for (const Symbol& s : g.nonterminals()) used_.insert(s);
  }

  Symbol fresh(const Symbol& base) {
    if (used_.insert(base).second) return base;
    for (int i = 2;; ++i) {
      Symbol candidate = base + "_" + std::to_string(i);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::unordered_set<Symbol> used_;
};

// Rule list that ignores exact duplicates and keeps first-insertion order.
class RuleList {
 public:
  void add(Rule r) {
    if (seen_.insert(key(r)).second) rules_.push_back(std::move(r));
  }
  std::vector<Rule> take() { return std::move(rules_); }

 private:
  static std::string key(const Rule& r) {
    std::string k = r.lhs;
    for (const Symbol& s : r.rhs) {
      k += '\x1f';
      k += s;
    }
    return k;
  }
  std::vector<Rule> rules_;
  std::unordered_set<std::string> seen_;
};

struct Pruned {
  std::vector<Symbol> nonterminals;
  std::vector<Rule> rules;
  bool start_generates = false;
};

Pruned prune(const std::vector<Symbol>& terminals, const std::vector<Symbol>& nonterminals,
             const std::vector<Rule>& rules, const Symbol& start, bool drop_unreachable) {
  std::unordered_set<Symbol> term_set(terminals.begin(), terminals.end());
  std::unordered_set<Symbol> generating;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Rule& r : rules) {
      if (generating.contains(r.lhs)) continue;
      bool ok = std::all_of(r.rhs.begin(), r.rhs.end(), [&](const Symbol& s) {
        return term_set.contains(s) || generating.contains(s);
      });
      if (ok) {
        generating.insert(r.lhs);
        changed = true;
      }
    }
  }

  std::vector<Rule> kept;
  for (const Rule& r : rules) {
    bool ok = generating.contains(r.lhs) &&
              std::all_of(r.rhs.begin(), r.rhs.end(), [&](const Symbol& s) {
                return term_set.contains(s) || generating.contains(s);
              });
    if (ok) kept.push_back(r);
  }

  Pruned out;
  out.start_generates = generating.contains(start);
  std::unordered_set<Symbol> live = generating;

  if (drop_unreachable) {
    std::unordered_set<Symbol> reachable{start};
    std::vector<Symbol> stack{start};
    std::unordered_map<Symbol, std::vector<const Rule*>> by_lhs;
    for (const Rule& r : kept) by_lhs[r.lhs].push_back(&r);
    while (!stack.empty()) {
      Symbol x = stack.back();
      stack.pop_back();
      for (const Rule* r : by_lhs[x]) {
        for (const Symbol& s : r->rhs) {
          if (!term_set.contains(s) && reachable.insert(s).second) stack.push_back(s);
        }
      }
    }
    std::erase_if(kept, [&](const Rule& r) { return !reachable.contains(r.lhs); });
    std::erase_if(live, [&](const Symbol& s) { return !reachable.contains(s); });
  }

  for (const Symbol& n : nonterminals) {
    if (live.contains(n) || n == start) out.nonterminals.push_back(n);
  }
  out.rules = std::move(kept);
  return out;
}

// TERM, BIN and UNIT steps of the CNF construction on an epsilon-free grammar.
// Source nonterminals keep their names and their languages.
Cfg cnf_core(const Cfg& g) {
  NameAllocator names(g);
  std::vector<Symbol> nonterminals = g.nonterminals();
  std::vector<Rule> proper;  // every rule whose rhs is not a single nonterminal
  std::vector<Rule> units;
  std::map<Symbol, Symbol> proxies;
  std::vector<Rule> proxy_rules;

  auto proxy = [&](const Symbol& t) {
    auto it = proxies.find(t);
    if (it != proxies.end()) return it->second;
    Symbol name = names.fresh("T_" + t);
    nonterminals.push_back(name);
    proxies.emplace(t, name);
    proxy_rules.push_back(Rule{name, {t}});
    return name;
  };

  for (const Rule& r : g.rules()) {
    if (r.rhs.size() == 1) {
      (g.is_nonterminal(r.rhs[0]) ? units : proper).push_back(r);
      continue;
    }
    std::vector<Symbol> rhs;
    for (const Symbol& s : r.rhs) rhs.push_back(g.is_terminal(s) ? proxy(s) : s);
    Symbol lhs = r.lhs;
    std::size_t piece = 1;
    while (rhs.size() > 2) {
      Symbol rest = names.fresh(r.lhs + "_" + std::to_string(piece++));
      nonterminals.push_back(rest);
      proper.push_back(Rule{lhs, {rhs.front(), rest}});
      rhs.erase(rhs.begin());
      lhs = rest;
    }
    proper.push_back(Rule{lhs, std::move(rhs)});
  }
  proper.insert(proper.end(), proxy_rules.begin(), proxy_rules.end());

  std::unordered_map<Symbol, std::vector<Symbol>> unit_succ;
  for (const Rule& r : units) unit_succ[r.lhs].push_back(r.rhs[0]);
  std::unordered_map<Symbol, std::vector<const Rule*>> proper_by_lhs;
  for (const Rule& r : proper) proper_by_lhs[r.lhs].push_back(&r);

  RuleList out;
  for (const Symbol& a : nonterminals) {
    std::vector<Symbol> closure{a};
    std::unordered_set<Symbol> seen{a};
    for (std::size_t i = 0; i < closure.size(); ++i) {
      for (const Symbol& b : unit_succ[closure[i]]) {
        if (seen.insert(b).second) closure.push_back(b);
      }
    }
    for (const Symbol& b : closure) {
      for (const Rule* r : proper_by_lhs[b]) out.add(Rule{a, r->rhs});
    }
  }
  return Cfg(g.terminals(), std::move(nonterminals), out.take(), g.start());
}

}  // namespace

Cfg remove_useless(const Cfg& g) {
  Pruned p = prune(g.terminals(), g.nonterminals(), g.rules(), g.start(), true);
  if (!p.start_generates) {
    throw EmptyLanguage("start symbol '" + g.start() + "' derives no terminal string");
  }
  return Cfg(g.terminals(), std::move(p.nonterminals), std::move(p.rules), g.start());
}

Cfg to_cnf(const Cfg& g) { return remove_useless(cnf_core(remove_useless(g))); }

// Left-corner construction from CNF. With [A-X] read as "A with left corner X
// already recognized":
//   A     -> b [A-B]      for each B -> b
//   A     -> b            for each A -> b
//   [A-X] -> Z [A-Y]      for each Y -> X Z
//   [A-X] -> Z            for each A -> X Z
// and each leading Z is then replaced by its own terminal-initial rules. Tails
// have length at most two because Z's rules have tails of length at most one.
Cfg to_gnf2(const Cfg& g) {
  if (is_gnf2(g)) return remove_useless(g);
  Cfg cnf = to_cnf(g);
  NameAllocator names(cnf);

  const auto& nts = cnf.nonterminals();
  std::map<std::pair<Symbol, Symbol>, Symbol> lc;
  std::vector<Symbol> nonterminals = nts;
  for (const Symbol& a : nts) {
    for (const Symbol& x : nts) {
      Symbol name = names.fresh(a + "-" + x);
      lc.emplace(std::pair{a, x}, name);
      nonterminals.push_back(name);
    }
  }

  std::vector<const Rule*> terminal_rules, binary_rules;
  for (const Rule& r : cnf.rules()) {
    (r.rhs.size() == 1 ? terminal_rules : binary_rules).push_back(&r);
  }

  struct Expansion {
    Symbol terminal;
    std::vector<Symbol> tail;
  };
  std::unordered_map<Symbol, std::vector<Expansion>> expansions;
  RuleList out;
  for (const Symbol& a : nts) {
    for (const Rule* r : terminal_rules) {
      const Symbol& b = r->rhs[0];
      expansions[a].push_back({b, {lc.at({a, r->lhs})}});
      if (r->lhs == a) expansions[a].push_back({b, {}});
    }
    for (const Expansion& e : expansions[a]) {
      Rule rule{a, {e.terminal}};
      rule.rhs.insert(rule.rhs.end(), e.tail.begin(), e.tail.end());
      out.add(std::move(rule));
    }
  }

  for (const Symbol& a : nts) {
    for (const Rule* r : binary_rules) {
      const Symbol& y = r->lhs;
      const Symbol& x = r->rhs[0];
      const Symbol& z = r->rhs[1];
      std::vector<std::vector<Symbol>> rests{{lc.at({a, y})}};
      if (y == a) rests.push_back({});
      for (const auto& rest : rests) {
        for (const Expansion& e : expansions[z]) {
          Rule rule{lc.at({a, x}), {e.terminal}};
          rule.rhs.insert(rule.rhs.end(), e.tail.begin(), e.tail.end());
          rule.rhs.insert(rule.rhs.end(), rest.begin(), rest.end());
          out.add(std::move(rule));
        }
      }
    }
  }

  return remove_useless(Cfg(cnf.terminals(), std::move(nonterminals), out.take(), cnf.start()));
}

// ---------------------------------------------------------------------------

CykRecognizer::CykRecognizer(const Cfg& g)
    : start_(g.start()),
      source_nonterminals_(g.nonterminals()),
      terminals_(g.terminals().begin(), g.terminals().end()) {
  Pruned p = prune(g.terminals(), g.nonterminals(), g.rules(), g.start(), false);
  Cfg cnf = cnf_core(Cfg(g.terminals(), std::move(p.nonterminals), std::move(p.rules), g.start()));
  names_ = cnf.nonterminals();
  for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
  for (const Rule& r : cnf.rules()) {
    if (r.rhs.size() == 1) {
      by_terminal_[r.rhs[0]].push_back(index_.at(r.lhs));
    } else {
      binary_.push_back({index_.at(r.lhs), index_.at(r.rhs[0]), index_.at(r.rhs[1])});
    }
  }
}

std::vector<std::vector<std::vector<bool>>> CykRecognizer::table(const Word& word) const {
  const std::size_t n = word.size();
  const std::size_t k = names_.size();
  // t[len-1][begin][nonterminal]
  std::vector<std::vector<std::vector<bool>>> t(n);
  for (std::size_t len = 1; len <= n; ++len) {
    t[len - 1].assign(n - len + 1, std::vector<bool>(k, false));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!terminals_.contains(word[i])) {
      throw UnknownTerminal("'" + word[i] + "' is not a terminal of the grammar");
    }
    if (auto it = by_terminal_.find(word[i]); it != by_terminal_.end()) {
      for (std::size_t x : it->second) t[0][i][x] = true;
    }
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      auto& cell = t[len - 1][i];
      for (std::size_t split = 1; split < len; ++split) {
        const auto& left = t[split - 1][i];
        const auto& right = t[len - split - 1][i + split];
        for (const Binary& b : binary_) {
          if (!cell[b.lhs] && left[b.left] && right[b.right]) cell[b.lhs] = true;
        }
      }
    }
  }
  return t;
}

bool CykRecognizer::member_of(const Symbol& nonterminal, const Word& word) const {
  if (std::find(source_nonterminals_.begin(), source_nonterminals_.end(), nonterminal) ==
      source_nonterminals_.end()) {
    throw UndeclaredSymbol("'" + nonterminal + "' is not a nonterminal of the grammar");
  }
  if (word.empty()) return false;
  auto t = table(word);
  auto it = index_.find(nonterminal);
  if (it == index_.end()) return false;
  return t[word.size() - 1][0][it->second];
}

std::vector<Symbol> CykRecognizer::derivers(const Word& word) const {
  std::vector<Symbol> out;
  if (word.empty()) return out;
  auto t = table(word);
  for (const Symbol& x : source_nonterminals_) {
    auto it = index_.find(x);
    if (it != index_.end() && t[word.size() - 1][0][it->second]) out.push_back(x);
  }
  return out;
}

bool cyk_member(const Cfg& g, const Word& word) { return CykRecognizer(g).member(word); }

bool member_of(const Cfg& g, const Symbol& nonterminal, const Word& word) {
  return CykRecognizer(g).member_of(nonterminal, word);
}

}  // namespace abcat
