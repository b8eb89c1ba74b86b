#include "abcat/encoder.hpp"

#include <algorithm>
#include <set>

#include "abcat/errors.hpp"
#include "abcat/reduction.hpp"

namespace abcat {

UcaGrammar::UcaGrammar(std::vector<std::pair<Symbol, Category>> assignment, Category target)
    : target_(std::move(target)) {
  for (auto& [symbol, category] : assignment) {
    if (assignment_.contains(symbol)) {
      throw DuplicateCategory("symbol '" + symbol + "' is assigned more than one category");
    }
    primitives_.merge(abcat::primitives(category));
    alphabet_.push_back(symbol);
    assignment_.emplace(symbol, std::move(category));
  }
  primitives_.merge(abcat::primitives(target_));
}

const Category& UcaGrammar::category_of(const Symbol& symbol) const {
  auto it = assignment_.find(symbol);
  if (it == assignment_.end()) throw UnknownSymbol("'" + symbol + "' is not in the alphabet");
  return it->second;
}

CategoryString UcaGrammar::categories(const Word& word) const {
  CategoryString out;
  out.reserve(word.size());
  for (const Symbol& s : word) out.push_back(category_of(s));
  return out;
}

const Word& Homomorphism::image(const Symbol& letter) const {
  auto it = images_.find(letter);
  if (it == images_.end()) throw UnknownTerminal("no image for letter '" + letter + "'");
  return it->second;
}

Word Homomorphism::apply(const Word& word) const {
  Word out;
  for (const Symbol& a : word) {
    const Word& img = image(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Category rule_category(const Gnf2Rule& rule) {
  Category x = Category::atom(rule.lhs);
  switch (rule.tail.size()) {
    case 0:
      return x;
    case 1:
      return Category::right_div(x, Category::atom(rule.tail[0]));
    default:
      // X -> a Z Y
      return Category::right_div(Category::right_div(x, Category::atom(rule.tail[1])),
                                 Category::atom(rule.tail[0]));
  }
}

CategoryString Encoding::image(const Word& word) const {
  CategoryString out;
  for (const Symbol& a : word) {
    for (const Symbol& s : h.image(a)) out.push_back(uca.category_of(s));
  }
  return out;
}

Encoding encode_grammar(const Cfg& g) {
  std::map<Symbol, std::vector<Category>> rule_categories;
  for (const Rule& r : g.rules()) {
    auto shaped = as_gnf2(g, r);
    if (!shaped) {
      std::string rhs;
      for (const Symbol& s : r.rhs) rhs += " " + s;
      throw NotGnf2("rule " + r.lhs + " ->" + rhs + " is not of the form X -> a, X -> a Y, X -> a Y Z");
    }
    auto& cats = rule_categories[shaped->terminal];
    Category c = rule_category(*shaped);
    if (std::find(cats.begin(), cats.end(), c) == cats.end()) cats.push_back(std::move(c));
  }

  std::vector<std::pair<Symbol, Category>> assignment;
  std::map<Symbol, Word> images;
  std::map<Symbol, SymbolProvenance> provenance;
  for (const Symbol& a : g.terminals()) {
    auto it = rule_categories.find(a);
    if (it == rule_categories.end()) {
      throw UncoveredTerminal("terminal '" + a + "' occurs in no rule, so h(" + a +
                              ") is undefined");
    }
    GadgetString w = build_w(it->second, a);

    CategoryString items;
    std::vector<ItemOrigin> origins;
    items.push_back(Category(Prim::left_sentinel()));
    origins.push_back({GadgetKind::sentinel, {}});
    items.insert(items.end(), w.items.begin(), w.items.end());
    origins.insert(origins.end(), w.origins.begin(), w.origins.end());
    items.push_back(Category(Prim::right_sentinel()));
    origins.push_back({GadgetKind::sentinel, {}});

    Word& img = images[a];
    for (std::size_t i = 0; i < items.size(); ++i) {
      Symbol sym = a + "." + std::to_string(i);
      img.push_back(sym);
      assignment.emplace_back(sym, items[i]);
      provenance.emplace(sym, SymbolProvenance{a, i, origins[i].kind, origins[i].params});
    }
  }

  std::map<Symbol, Category> targets;
  for (const Symbol& x : g.nonterminals()) targets.emplace(x, phi(Category::atom(x)));
  Category target = phi(Category::atom(g.start()));

  return Encoding{g,
                  UcaGrammar(std::move(assignment), std::move(target)),
                  Homomorphism(std::move(images)),
                  std::move(rule_categories),
                  std::move(targets),
                  std::move(provenance)};
}

bool uca_member(const UcaGrammar& g, const Word& word) {
  if (word.empty()) return false;
  return reducible_to(g.categories(word), g.target());
}

bool member_via_encoding(const Encoding& e, const Word& word) {
  if (word.empty()) return false;
  return uca_member(e.uca, e.h.apply(word));
}

Encoding encode_for_membership(const Cfg& g) {
  Cfg gnf = to_gnf2(g);
  std::set<Symbol> used;
  for (const Rule& r : gnf.rules()) used.insert(r.rhs.front());
  std::vector<Symbol> covered;
  for (const Symbol& a : gnf.terminals()) {
    if (used.contains(a)) covered.push_back(a);
  }
  return encode_grammar(Cfg(std::move(covered), gnf.nonterminals(), gnf.rules(), gnf.start()));
}

bool member_via_encoding(const Cfg& g, const Encoding& e, const Word& word) {
  for (const Symbol& a : word) {
    if (!g.is_terminal(a)) throw UnknownTerminal("'" + a + "' is not a terminal of the grammar");
    if (!e.grammar.is_terminal(a)) return false;
  }
  return member_via_encoding(e, word);
}

bool member_via_encoding(const Cfg& g, const Word& word) {
  return member_via_encoding(g, encode_for_membership(g), word);
}

}  // namespace abcat
