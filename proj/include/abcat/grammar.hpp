#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace abcat {

using Symbol = std::string;
using Word = std::vector<Symbol>;

struct Rule {
  Symbol lhs;
  std::vector<Symbol> rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Epsilon-free context-free grammar. Symbol sets keep first-appearance order
/// so every transform is reproducible.
class Cfg {
 public:
  /// Throws UndeclaredSymbol, EmptyRhs or SyntaxError on malformed input.
  Cfg(std::vector<Symbol> terminals, std::vector<Symbol> nonterminals, std::vector<Rule> rules,
      Symbol start);

  const std::vector<Symbol>& terminals() const { return terminals_; }
  const std::vector<Symbol>& nonterminals() const { return nonterminals_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const Symbol& start() const { return start_; }

  bool is_terminal(const Symbol& s) const { return terminal_set_.contains(s); }
  bool is_nonterminal(const Symbol& s) const { return nonterminal_set_.contains(s); }

 private:
  std::vector<Symbol> terminals_;
  std::vector<Symbol> nonterminals_;
  std::vector<Rule> rules_;
  Symbol start_;
  std::unordered_set<Symbol> terminal_set_;
  std::unordered_set<Symbol> nonterminal_set_;
};

/// Rule shapes X -> a, X -> a Y, X -> a Y Z.
struct Gnf2Rule {
  Symbol lhs;
  Symbol terminal;
  std::vector<Symbol> tail;
};

std::optional<Gnf2Rule> as_gnf2(const Cfg& g, const Rule& r);
bool is_gnf2(const Cfg& g);

bool is_nonterminal_token(std::string_view token);
bool is_terminal_token(std::string_view token);

/// Grammar file format:
///   start: S
///   terminals: a b        (optional; defaults to the terminals used in rules)
///   S -> a S B | a B
///   # comment
Cfg parse_cfg(std::string_view text);
std::string format_cfg(const Cfg& g);

/// Whitespace-separated tokens, or one terminal per character.
Word tokenize_word(std::string_view text, bool chars);
std::string format_word(const Word& w);

/// Drops non-generating symbols, then symbols unreachable from the start.
/// Throws EmptyLanguage when the start symbol generates nothing.
Cfg remove_useless(const Cfg& g);

/// Chomsky normal form (X -> Y Z, X -> a). Throws EmptyLanguage.
Cfg to_cnf(const Cfg& g);

/// Greibach normal form with at most two nonterminals after the terminal.
/// Grammars already in that shape are only cleaned of useless symbols.
/// Throws EmptyLanguage.
Cfg to_gnf2(const Cfg& g);

/// CYK membership over a CNF copy of the grammar, answering for any
/// nonterminal of the source grammar.
class CykRecognizer {
 public:
  explicit CykRecognizer(const Cfg& g);

  bool member(const Word& word) const { return member_of(start_, word); }
  /// Throws UnknownTerminal, UndeclaredSymbol.
  bool member_of(const Symbol& nonterminal, const Word& word) const;
  /// Nonterminals of the source grammar that derive `word`.
  std::vector<Symbol> derivers(const Word& word) const;

 private:
  std::vector<std::vector<std::vector<bool>>> table(const Word& word) const;

  Symbol start_;
  std::vector<Symbol> source_nonterminals_;
  std::unordered_set<Symbol> terminals_;
  std::vector<Symbol> names_;
  std::unordered_map<Symbol, std::size_t> index_;
  std::unordered_map<Symbol, std::vector<std::size_t>> by_terminal_;
  struct Binary {
    std::size_t lhs, left, right;
  };
  std::vector<Binary> binary_;
};

bool cyk_member(const Cfg& g, const Word& word);
bool member_of(const Cfg& g, const Symbol& nonterminal, const Word& word);

}  // namespace abcat
