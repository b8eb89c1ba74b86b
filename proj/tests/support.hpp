#pragma once

// Test-only generators and oracles. Nothing here calls into the chart
// parser, the CNF pipeline or the gadget builders, so it can check them.

#include <functional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "abcat/category.hpp"
#include "abcat/grammar.hpp"

namespace abcat::testing {

inline Category cat(std::string_view text) { return parse_category(text); }
inline Category mcat(std::string_view text) {
  return parse_category(text, ParseOptions{.allow_reserved = true});
}
inline CategoryString cats(std::string_view text) { return parse_category_string(text); }
inline CategoryString mcats(std::string_view text) {
  return parse_category_string(text, ParseOptions{.allow_reserved = true});
}

inline std::vector<Prim> base_prims() { return {Prim("p"), Prim("q"), Prim("s")}; }

/// Every category over `prims` with division depth at most `depth`.
inline std::vector<Category> all_categories(std::size_t depth, const std::vector<Prim>& prims) {
  std::vector<Category> level;
  for (const Prim& p : prims) level.emplace_back(p);
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Category> next;
    for (const Prim& p : prims) next.emplace_back(p);
    for (const Category& a : level) {
      for (const Category& b : level) {
        next.push_back(Category::right_div(a, b));
        next.push_back(Category::left_div(a, b));
      }
    }
    level = std::move(next);
  }
  return level;
}

inline Category random_category(std::mt19937_64& rng, std::size_t max_depth,
                                const std::vector<Prim>& prims) {
  std::uniform_int_distribution<std::size_t> pick(0, prims.size() - 1);
  if (max_depth == 0 || std::bernoulli_distribution(0.4)(rng)) return Category(prims[pick(rng)]);
  Category a = random_category(rng, max_depth - 1, prims);
  Category b = random_category(rng, max_depth - 1, prims);
  return std::bernoulli_distribution(0.5)(rng) ? Category::right_div(a, b)
                                               : Category::left_div(a, b);
}

inline CategoryString random_string(std::mt19937_64& rng, std::size_t max_len,
                                    std::size_t max_depth, const std::vector<Prim>& prims) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  CategoryString s;
  for (std::size_t i = len(rng); i > 0; --i) s.push_back(random_category(rng, max_depth, prims));
  return s;
}

/// A string that reduces to its seed, made by repeatedly splitting an item C
/// into C/B ; B or B ; B\C. Items are kept within `max_depth`.
inline CategoryString random_reducible_string(std::mt19937_64& rng, std::size_t max_len,
                                              std::size_t max_depth,
                                              const std::vector<Prim>& prims) {
  CategoryString s{random_category(rng, 1, prims)};
  std::uniform_int_distribution<std::size_t> target_len(1, max_len);
  const std::size_t want = target_len(rng);
  for (int attempts = 0; s.size() < want && attempts < 50; ++attempts) {
    std::uniform_int_distribution<std::size_t> pos(0, s.size() - 1);
    std::size_t i = pos(rng);
    Category b = random_category(rng, 1, prims);
    Category c = s[i];
    Category fn = std::bernoulli_distribution(0.5)(rng) ? Category::right_div(c, b)
                                                        : Category::left_div(b, c);
    if (fn.depth() > max_depth) continue;
    if (fn.kind() == Category::Kind::right_div) {
      s[i] = fn;
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, b);
    } else {
      s[i] = b;
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, fn);
    }
  }
  return s;
}

/// All subtrees of c, including c.
inline void subtrees(const Category& c, std::set<Category>& out) {
  out.insert(c);
  if (c.is_division()) {
    subtrees(c.numerator(), out);
    subtrees(c.denominator(), out);
  }
}

/// Numerators straight from the inductive definition.
inline std::set<Category> num_by_definition(const Category& c) {
  if (c.is_primitive()) return {};
  std::set<Category> out = num_by_definition(c.numerator());
  out.insert(c.numerator());
  return out;
}

inline std::set<Category> den_by_definition(const Category& c) {
  if (c.is_primitive()) return {};
  std::set<Category> out = den_by_definition(c.numerator());
  out.insert(c.denominator());
  return out;
}

/// Counts every binary bracketing of `s` whose internal nodes are valid
/// applications with the given root. Exponential; for short strings only.
inline std::size_t count_trees_by_bracketing(const CategoryString& s, const Category& root) {
  // results(i, j): multiset of roots over all valid trees of s[i..j)
  std::function<std::vector<Category>(std::size_t, std::size_t)> roots =
      [&](std::size_t i, std::size_t j) -> std::vector<Category> {
    if (j - i == 1) return {s[i]};
    std::vector<Category> out;
    for (std::size_t k = i + 1; k < j; ++k) {
      for (const Category& l : roots(i, k)) {
        for (const Category& r : roots(k, j)) {
          if (l.kind() == Category::Kind::right_div && l.denominator() == r) {
            out.push_back(l.numerator());
          }
          if (r.kind() == Category::Kind::left_div && r.denominator() == l) {
            out.push_back(r.numerator());
          }
        }
      }
    }
    return out;
  };
  std::size_t n = 0;
  for (const Category& c : roots(0, s.size())) n += (c == root);
  return n;
}

/// Membership by searching leftmost derivations. Sentential forms never
/// shrink (no epsilon rules), so forms longer than the word are dropped.
inline bool derives(const Cfg& g, const Symbol& start, const Word& word) {
  std::set<std::vector<Symbol>> seen;
  std::vector<std::vector<Symbol>> stack{{start}};
  while (!stack.empty()) {
    std::vector<Symbol> form = std::move(stack.back());
    stack.pop_back();
    if (form.size() > word.size() || !seen.insert(form).second) continue;
    std::size_t i = 0;
    while (i < form.size() && g.is_terminal(form[i])) {
      if (form[i] != word[i]) break;
      ++i;
    }
    if (i < form.size() && g.is_terminal(form[i])) continue;  // mismatch
    if (i == form.size()) {
      if (form.size() == word.size()) return true;
      continue;
    }
    for (const Rule& r : g.rules()) {
      if (r.lhs != form[i]) continue;
      std::vector<Symbol> next(form.begin(), form.begin() + static_cast<std::ptrdiff_t>(i));
      next.insert(next.end(), r.rhs.begin(), r.rhs.end());
      next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(i) + 1, form.end());
      stack.push_back(std::move(next));
    }
  }
  return false;
}

/// Every word over `alphabet` of length 1..max_len, shortest first.
inline std::vector<Word> all_words(const std::vector<Symbol>& alphabet, std::size_t max_len) {
  std::vector<Word> out;
  std::vector<Word> level{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : level) {
      for (const Symbol& a : alphabet) {
        Word v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

// Grammars shared by the grammar, encoder and acceptance suites.
inline constexpr std::string_view kAnBn = "start: S\nS -> a S b | a b\n";
inline constexpr std::string_view kAnBnGnf = "start: S\nS -> a S B | a B\nB -> b\n";
inline constexpr std::string_view kAnCBn = "start: S\nS -> a S b | c\n";
inline constexpr std::string_view kAnCBnGnf = "start: S\nS -> a S B | c\nB -> b\n";
inline constexpr std::string_view kDyck = "start: S\nS -> S S | a S b | a b\n";
inline constexpr std::string_view kUnion =
    "start: S\n"
    "S -> A X | Y C      # a^i b^n c^n  |  a^m b^m c^j\n"
    "A -> a A | a\n"
    "X -> b X c | b c\n"
    "Y -> a Y b | a b\n"
    "C -> c C | c\n";

}  // namespace abcat::testing
