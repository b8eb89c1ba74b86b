// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "abcat/encoder.hpp"
#include "abcat/gadgets.hpp"
#include "abcat/reduction.hpp"
#include "support.hpp"

using namespace abcat;
namespace t = abcat::testing;
using t::cat;
using t::cats;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

// count(p, c) straight from its definition.
int count_by_definition(const Prim& p, const Category& c) {
  if (c.is_primitive()) return c.prim() == p ? 1 : 0;
  return count_by_definition(p, c.numerator()) - count_by_definition(p, c.denominator());
}

CategoryString slice(const CategoryString& s, std::size_t b, std::size_t e) {
  return {s.begin() + static_cast<std::ptrdiff_t>(b), s.begin() + static_cast<std::ptrdiff_t>(e)};
}

const std::vector<std::string_view> kGrammars = {t::kAnBn, t::kAnCBn, t::kDyck, t::kUnion};

const std::vector<const char*> kPool = {"p", "p/q", "(p/q)/s", "q", "q/p", "(q/s)/p"};

Outcome golden() {
  std::size_t failures = 0;
  std::ostringstream note;

  CategorySet two_way = derivable_singletons(cats("(p/p)/p; p; p; p\\(p\\p)"));
  if (two_way != CategorySet{cat("p/p"), cat("p\\p")}) {
    ++failures;
    note << "derivable set of the two-way string differs; ";
  }

  CategoryString x = build_x(cat("p"), Prim("t")).items;
  if (x != cats("(p/p)/(t/t); t/t; t; t\\p; p\\(t/t)") || !reducible_to(x, cat("p/p")) ||
      !reducible_to(x, cat("t/t"))) {
    ++failures;
    note << "x_{p,t} is wrong; ";
  }

  UcaGrammar example({{"c", cat("p")}, {"a", cat("q/p")}, {"b", cat("q\\p")}}, cat("p"));
  std::set<Word> expected;
  for (std::size_t n = 0; n <= 5; ++n) {
    Word w(n, "a");
    w.push_back("c");
    w.insert(w.end(), n, "b");
    expected.insert(w);
  }
  std::set<Word> accepted;
  auto words = t::all_words({"a", "b", "c"}, 11);
  for (const Word& w : words) {
    if (uca_member(example, w)) accepted.insert(w);
  }
  if (accepted != expected) {
    ++failures;
    note << "example grammar accepts " << accepted.size() << " words; ";
  }

  UcaGrammar single({{"a", cat("S")}}, cat("S"));
  for (std::size_t k = 1; k <= 6; ++k) {
    if (uca_member(single, Word(k, "a")) != (k == 1)) {
      ++failures;
      note << "a^" << k << " misjudged; ";
    }
  }
  note << words.size() << " words over {a,b,c} checked, " << accepted.size() << " accepted";
  return {failures == 0, note.str()};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  auto prims = t::base_prims();
  std::size_t discrepancies = 0, nonempty = 0;
  const std::size_t n = 1200;
  for (std::size_t i = 0; i < n; ++i) {
    CategoryString s = (i % 2) ? t::random_string(rng, 6, 3, prims)
                               : t::random_reducible_string(rng, 6, 3, prims);
    CategorySet chart = derivable_singletons(s);
    nonempty += !chart.empty();
    if (chart != brute_force_derivable(s, 6)) ++discrepancies;
  }
  std::ostringstream note;
  note << n << " strings, " << nonempty << " with a non-empty result, " << discrepancies
       << " discrepancies";
  return {discrepancies == 0, note.str()};
}

Outcome count_invariance() {
  std::mt19937_64 rng(77);
  auto prims = t::base_prims();
  std::size_t successors = 0, violations = 0;
  for (std::size_t i = 0; i < 1200; ++i) {
    CategoryString s = (i % 2) ? t::random_string(rng, 6, 3, prims)
                               : t::random_reducible_string(rng, 6, 3, prims);
    for (const CategoryString& next : one_step(s)) {
      ++successors;
      for (const Prim& p : prims) violations += count(p, s) != count(p, next);
    }
  }

  // all categories of depth <= 3, built level by level without storing level 3
  std::vector<Category> level2 = t::all_categories(2, prims);
  std::size_t checked = 0;
  auto check_phi = [&](const Category& c) {
    ++checked;
    Category f = phi(c);
    for (const Prim& p : prims) {
      if (count(p, f) != 0 || count_by_definition(p, f) != 0) ++violations;
    }
  };
  for (const Prim& p : prims) check_phi(Category(p));
  for (const Category& a : level2) {
    for (const Category& b : level2) {
      check_phi(Category::right_div(a, b));
      check_phi(Category::left_div(a, b));
    }
  }
  std::ostringstream note;
  note << successors << " one-step successors, " << checked << " categories under phi, "
       << violations << " violations";
  return {violations == 0 && checked == 3 + 2 * level2.size() * level2.size(), note.str()};
}

Outcome gadget_properties() {
  std::size_t pairs = 0, violations = 0;
  std::ostringstream note;
  for (const char* a_text : kPool) {
    for (const char* b_text : kPool) {
      if (std::string_view(a_text) == b_text) continue;
      ++pairs;
      Category a = cat(a_text), b = cat(b_text);
      auto check = [&](const CategoryString& s, const Category& ca, const Category& cb,
                       const char* name) {
        std::size_t before = violations;
        violations += !reducible_to(s, ca);
        violations += !reducible_to(s, cb);
        for (std::size_t e = 1; e < s.size(); ++e) violations += reducible_to(slice(s, 0, e), cb);
        for (std::size_t i = 1; i < s.size(); ++i) {
          violations += reducible_to(slice(s, i, s.size()), ca);
        }
        if (violations != before) note << name << "(" << a_text << ", " << b_text << ") fails; ";
      };
      UPrims f = UPrims::named("");
      check(build_z(a, b, f.zprime.z).items, phi(a), phi(b), "z");
      check(build_u(a, b, f).items, psi(a), psi(b), "u");
    }
  }
  note << pairs << " ordered pairs, " << violations << " violations";
  return {violations == 0 && pairs == 30, note.str()};
}

Outcome w_coverage() {
  std::size_t sequences = 0, violations = 0;
  std::ostringstream note;
  auto check = [&](const std::vector<Category>& seq) {
    ++sequences;
    CategoryString w = build_w(seq, "w").items;
    for (const Category& c : seq) {
      if (!reducible_to(w, psi(c))) {
        ++violations;
        note << "w misses psi(" << format_category(c) << "); ";
      }
    }
  };
  const std::size_t n = kPool.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      check({cat(kPool[i]), cat(kPool[j])});
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        check({cat(kPool[i]), cat(kPool[j]), cat(kPool[k])});
      }
    }
  }
  note << sequences << " sequences, " << violations << " violations";
  return {violations == 0 && sequences == 150, note.str()};
}

Outcome normal_form_differential() {
  std::size_t words = 0, mismatches = 0, bad_shape = 0;
  for (auto text : kGrammars) {
    Cfg g = parse_cfg(text);
    Cfg gnf = to_gnf2(g);
    bad_shape += !is_gnf2(gnf);
    CykRecognizer cyk(gnf);
    for (const Word& w : t::all_words(g.terminals(), 8)) {
      ++words;
      bool expected = t::derives(g, g.start(), w);
      if (cyk.member(w) != expected || t::derives(gnf, gnf.start(), w) != expected) ++mismatches;
    }
  }
  std::ostringstream note;
  note << kGrammars.size() << " grammars, " << words << " words, " << bad_shape
       << " shape failures, " << mismatches << " mismatches";
  return {mismatches == 0 && bad_shape == 0, note.str()};
}

Outcome encoding_membership() {
  std::size_t words = 0, mismatches = 0, accepted = 0;
  for (auto text : kGrammars) {
    Cfg g = parse_cfg(text);
    Encoding e = encode_for_membership(g);
    CykRecognizer cyk(g);
    for (const Word& w : t::all_words(g.terminals(), 6)) {
      ++words;
      bool via = member_via_encoding(g, e, w);
      bool expected = t::derives(g, g.start(), w);
      accepted += expected;
      if (via != cyk.member(w) || via != expected) ++mismatches;
    }
  }
  std::ostringstream note;
  note << words << " words, " << accepted << " in the language, " << mismatches << " mismatches";
  return {mismatches == 0, note.str()};
}

Outcome per_nonterminal() {
  std::size_t checks = 0, mismatches = 0, positives = 0;
  for (auto text : {t::kAnBnGnf, t::kAnCBnGnf}) {
    Cfg g = parse_cfg(text);
    Encoding e = encode_grammar(g);
    for (const Word& w : t::all_words(g.terminals(), 5)) {
      CategoryString image = e.image(w);
      ReductionChart chart(image);
      for (const Symbol& x : g.nonterminals()) {
        ++checks;
        bool in = t::derives(g, x, w);
        positives += in;
        if (chart.derivable(phi(Category::atom(x))) != in) ++mismatches;
      }
    }
  }
  std::ostringstream note;
  note << checks << " (nonterminal, word) pairs, " << positives << " positive, " << mismatches
       << " mismatches";
  return {mismatches == 0 && positives > 0, note.str()};
}

bool replays(const ReductionTree& tr) {
  if (tr.is_leaf()) return true;
  const Category& l = tr.left().root();
  const Category& r = tr.right().root();
  bool ok = tr.rule() == ReductionTree::Rule::apply_right
                ? l.kind() == Category::Kind::right_div && l.denominator() == r &&
                      l.numerator() == tr.root()
                : r.kind() == Category::Kind::left_div && r.denominator() == l &&
                      r.numerator() == tr.root();
  return ok && replays(tr.left()) && replays(tr.right());
}

Outcome ambiguity() {
  Cfg g = parse_cfg(t::kUnion);
  // shortest a^m b^m c^m derivable through both S -> A X and S -> Y C
  Cfg left = parse_cfg(
      "start: S\nS -> A X\nA -> a A | a\nX -> b X c | b c\nY -> a Y b | a b\nC -> c C | c\n");
  Cfg right = parse_cfg(
      "start: S\nS -> Y C\nA -> a A | a\nX -> b X c | b c\nY -> a Y b | a b\nC -> c C | c\n");
  Word witness;
  for (std::size_t m = 1; m <= 4 && witness.empty(); ++m) {
    Word w(m, "a");
    w.insert(w.end(), m, "b");
    w.insert(w.end(), m, "c");
    if (t::derives(left, "S", w) && t::derives(right, "S", w)) witness = w;
  }
  if (witness.empty()) return {false, "no witness word found"};

  Encoding e = encode_for_membership(g);
  CategoryString image = e.image(witness);
  auto trees = reduction_trees(image, e.uca.target(), 10);
  bool distinct = true, sound = true;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    sound = sound && replays(trees[i]) && trees[i].frontier() == image &&
            trees[i].root() == e.uca.target();
    for (std::size_t j = i + 1; j < trees.size(); ++j) distinct = distinct && !(trees[i] == trees[j]);
  }
  std::ostringstream note;
  note << "witness " << format_word(witness) << ", image of " << image.size() << " items, "
       << trees.size() << " trees (limit 10)";
  return {trees.size() >= 2 && distinct && sound, note.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden reductions", golden},
      {"chart equals exhaustive search", oracle_equivalence},
      {"counts are invariant", count_invariance},
      {"z and u reduce as intended", gadget_properties},
      {"w covers every category", w_coverage},
      {"2-GNF keeps the language", normal_form_differential},
      {"encoding decides membership", encoding_membership},
      {"per-nonterminal images", per_nonterminal},
      {"ambiguous witness has several trees", ambiguity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first
              << " -- " << o.detail << " [" << time << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
