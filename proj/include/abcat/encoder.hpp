#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abcat/category.hpp"
#include "abcat/gadgets.hpp"
#include "abcat/grammar.hpp"

namespace abcat {

/// Categorial grammar with exactly one category per symbol.
class UcaGrammar {
 public:
  /// Throws DuplicateCategory if a symbol is assigned twice.
  UcaGrammar(std::vector<std::pair<Symbol, Category>> assignment, Category target);

  const std::vector<Symbol>& alphabet() const { return alphabet_; }
  /// Throws UnknownSymbol.
  const Category& category_of(const Symbol& symbol) const;
  bool contains(const Symbol& symbol) const { return assignment_.contains(symbol); }
  const std::set<Prim>& primitives() const { return primitives_; }
  const Category& target() const { return target_; }

  /// Category string of a word over the alphabet. Throws UnknownSymbol.
  CategoryString categories(const Word& word) const;

 private:
  std::vector<Symbol> alphabet_;
  std::map<Symbol, Category> assignment_;
  std::set<Prim> primitives_;
  Category target_;
};

class Homomorphism {
 public:
  Homomorphism() = default;
  explicit Homomorphism(std::map<Symbol, Word> images) : images_(std::move(images)) {}

  const std::map<Symbol, Word>& images() const { return images_; }
  /// Throws UnknownTerminal.
  const Word& image(const Symbol& letter) const;
  Word apply(const Word& word) const;

 private:
  std::map<Symbol, Word> images_;
};

struct SymbolProvenance {
  Symbol letter;
  std::size_t position;
  GadgetKind gadget;
  std::vector<Category> params;
};

/// The rule category of a 2-GNF rule: X -> a is X, X -> a Y is X/Y, and
/// X -> a Z Y is (X/Y)/Z.
Category rule_category(const Gnf2Rule& rule);

/// Output of encoding a 2-GNF grammar: h(a) = _l ; w(categories of a) ; _r,
/// with one fresh symbol `<letter>.<position>` per item.
struct Encoding {
  Cfg grammar;
  UcaGrammar uca;
  Homomorphism h;
  /// Distinct rule categories per letter, in rule order.
  std::map<Symbol, std::vector<Category>> rule_categories;
  /// phi(X) for every nonterminal X.
  std::map<Symbol, Category> nonterminal_targets;
  std::map<Symbol, SymbolProvenance> provenance;

  /// Categories of h(word). Throws UnknownTerminal.
  CategoryString image(const Word& word) const;
};

/// Throws NotGnf2, UncoveredTerminal.
Encoding encode_grammar(const Cfg& g);

/// Throws UnknownSymbol.
bool uca_member(const UcaGrammar& g, const Word& word);

/// 2-GNF form of g with terminals that occur in no rule dropped, encoded.
/// Words using a dropped terminal are outside the language.
Encoding encode_for_membership(const Cfg& g);

/// Converts to 2-GNF when needed, encodes, and decides h(word) against S/S.
/// Throws UnknownTerminal for letters that are not terminals of g.
bool member_via_encoding(const Cfg& g, const Word& word);
/// Same, reusing `e = encode_for_membership(g)`.
bool member_via_encoding(const Cfg& g, const Encoding& e, const Word& word);
/// Throws UnknownTerminal for letters without an image.
bool member_via_encoding(const Encoding& e, const Word& word);

/// Machine-readable JSON bundle with fields alphabet, target, homomorphism,
/// primitives, provenance.
std::string format_bundle(const Encoding& e);

struct LoadedBundle {
  UcaGrammar uca;
  Homomorphism h;
};

/// Reads back the grammar and homomorphism of a bundle. Throws SyntaxError.
LoadedBundle parse_bundle(std::string_view text);

}  // namespace abcat
