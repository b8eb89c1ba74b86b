#include "abcat/grammar.hpp"

#include <cctype>
#include <sstream>

#include "abcat/errors.hpp"

namespace abcat {

namespace {

bool is_token_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '\'' ||
         ch == '.';
}

bool valid_token(std::string_view t) {
  if (t.empty()) return false;
  for (char ch : t) {
    if (!is_token_char(ch)) return false;
  }
  return true;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_nonterminal_token(std::string_view token) {
  return valid_token(token) && std::isupper(static_cast<unsigned char>(token.front()));
}

bool is_terminal_token(std::string_view token) {
  return valid_token(token) && (std::islower(static_cast<unsigned char>(token.front())) ||
                                std::isdigit(static_cast<unsigned char>(token.front())));
}

Cfg::Cfg(std::vector<Symbol> terminals, std::vector<Symbol> nonterminals, std::vector<Rule> rules,
         Symbol start)
    : terminals_(std::move(terminals)),
      nonterminals_(std::move(nonterminals)),
      rules_(std::move(rules)),
      start_(std::move(start)) {
  for (const Symbol& t : terminals_) {
    if (!terminal_set_.insert(t).second) throw SyntaxError("terminal '" + t + "' declared twice");
  }
  for (const Symbol& n : nonterminals_) {
    if (terminal_set_.contains(n)) {
      throw SyntaxError("symbol '" + n + "' is both a terminal and a nonterminal");
    }
    if (!nonterminal_set_.insert(n).second) {
      throw SyntaxError("nonterminal '" + n + "' declared twice");
    }
  }
  if (!nonterminal_set_.contains(start_)) {
    throw UndeclaredSymbol("start symbol '" + start_ + "' is not a declared nonterminal");
  }
  for (const Rule& r : rules_) {
    if (!nonterminal_set_.contains(r.lhs)) {
      throw UndeclaredSymbol("rule for undeclared nonterminal '" + r.lhs + "'");
    }
    if (r.rhs.empty()) {
      throw EmptyRhs("empty right-hand side for '" + r.lhs +
                     "': grammars are epsilon-free, languages never contain the empty string");
    }
    for (const Symbol& s : r.rhs) {
      if (!terminal_set_.contains(s) && !nonterminal_set_.contains(s)) {
        throw UndeclaredSymbol("undeclared symbol '" + s + "' in a rule for '" + r.lhs + "'");
      }
    }
  }
}

std::optional<Gnf2Rule> as_gnf2(const Cfg& g, const Rule& r) {
  if (r.rhs.empty() || r.rhs.size() > 3 || !g.is_terminal(r.rhs.front())) return std::nullopt;
  Gnf2Rule out{r.lhs, r.rhs.front(), {}};
  for (std::size_t i = 1; i < r.rhs.size(); ++i) {
    if (!g.is_nonterminal(r.rhs[i])) return std::nullopt;
    out.tail.push_back(r.rhs[i]);
  }
  return out;
}

bool is_gnf2(const Cfg& g) {
  for (const Rule& r : g.rules()) {
    if (!as_gnf2(g, r)) return false;
  }
  return true;
}

Cfg parse_cfg(std::string_view text) {
  std::optional<Symbol> start;
  std::optional<std::vector<Symbol>> declared_terminals;
  std::vector<Rule> rules;
  std::vector<Symbol> nonterminals;
  std::unordered_set<Symbol> nonterminal_set;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw SyntaxError("line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.starts_with("start:")) {
      if (start) fail("duplicate start line");
      auto toks = split_ws(line.substr(6));
      if (toks.size() != 1 || !is_nonterminal_token(toks[0])) {
        fail("expected 'start: <Nonterminal>'");
      }
      start = Symbol(toks[0]);
      continue;
    }
    if (line.starts_with("terminals:")) {
      if (declared_terminals) fail("duplicate terminals line");
      declared_terminals.emplace();
      for (auto t : split_ws(line.substr(10))) {
        if (!is_terminal_token(t)) fail("'" + std::string(t) + "' is not a terminal token");
        declared_terminals->emplace_back(t);
      }
      continue;
    }

    auto arrow = line.find("->");
    if (arrow == std::string_view::npos) fail("expected '<Nonterminal> -> ...'");
    std::string_view lhs = trim(line.substr(0, arrow));
    if (!is_nonterminal_token(lhs)) fail("'" + std::string(lhs) + "' is not a nonterminal");
    Symbol lhs_sym(lhs);
    if (nonterminal_set.insert(lhs_sym).second) nonterminals.push_back(lhs_sym);

    std::string_view body = line.substr(arrow + 2);
    std::size_t pos = 0;
    while (true) {
      std::size_t bar = body.find('|', pos);
      std::string_view alt = body.substr(pos, bar == std::string_view::npos ? bar : bar - pos);
      Rule rule{lhs_sym, {}};
      for (auto tok : split_ws(alt)) {
        if (!is_nonterminal_token(tok) && !is_terminal_token(tok)) {
          fail("'" + std::string(tok) + "' is neither a terminal nor a nonterminal token");
        }
        rule.rhs.emplace_back(tok);
      }
      if (rule.rhs.empty()) {
        throw EmptyRhs("line " + std::to_string(line_no) + ": empty alternative for '" +
                       lhs_sym +
                       "': grammars are epsilon-free, languages never contain the empty string");
      }
      rules.push_back(std::move(rule));
      if (bar == std::string_view::npos) break;
      pos = bar + 1;
    }
  }

  if (!start) throw SyntaxError("missing 'start: <Nonterminal>' line");

  std::vector<Symbol> terminals;
  if (declared_terminals) {
    terminals = *declared_terminals;
  } else {
    std::unordered_set<Symbol> seen;
    for (const Rule& r : rules) {
      for (const Symbol& s : r.rhs) {
        if (is_terminal_token(s) && seen.insert(s).second) terminals.push_back(s);
      }
    }
  }
  for (const Rule& r : rules) {
    for (const Symbol& s : r.rhs) {
      if (is_nonterminal_token(s) && !nonterminal_set.contains(s)) {
        throw UndeclaredSymbol("nonterminal '" + s + "' has no rules");
      }
    }
  }
  return Cfg(std::move(terminals), std::move(nonterminals), std::move(rules), *start);
}

std::string format_cfg(const Cfg& g) {
  std::string out = "start: " + g.start() + "\n";
  out += "terminals:";
  for (const Symbol& t : g.terminals()) out += " " + t;
  out += "\n";
  const auto& rules = g.rules();
  for (std::size_t i = 0; i < rules.size();) {
    out += rules[i].lhs + " ->";
    std::size_t j = i;
    for (; j < rules.size() && rules[j].lhs == rules[i].lhs; ++j) {
      if (j > i) out += " |";
      for (const Symbol& s : rules[j].rhs) out += " " + s;
    }
    out += "\n";
    i = j;
  }
  return out;
}

Word tokenize_word(std::string_view text, bool chars) {
  Word out;
  if (chars) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) out.emplace_back(1, ch);
    }
  } else {
    for (auto t : split_ws(text)) out.emplace_back(t);
  }
  return out;
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

}  // namespace abcat
