#include "abcat/reduction.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "abcat/errors.hpp"

namespace abcat {

// ---------------------------------------------------------------------------
// ReductionTree

struct ReductionTree::Node {
  Category root;
  Rule rule;
  std::optional<ReductionTree> left;
  std::optional<ReductionTree> right;
};

ReductionTree ReductionTree::leaf(Category c) {
  return ReductionTree(std::make_shared<const Node>(Node{std::move(c), Rule::leaf, {}, {}}));
}

ReductionTree ReductionTree::apply_right(ReductionTree left, ReductionTree right) {
  const Category& fn = left.root();
  if (fn.kind() != Category::Kind::right_div || fn.denominator() != right.root()) {
    throw std::invalid_argument("A/B ; B does not apply to " + format_category(fn) + " ; " +
                                format_category(right.root()));
  }
  Category root = fn.numerator();
  return ReductionTree(std::make_shared<const Node>(
      Node{std::move(root), Rule::apply_right, std::move(left), std::move(right)}));
}

ReductionTree ReductionTree::apply_left(ReductionTree left, ReductionTree right) {
  const Category& fn = right.root();
  if (fn.kind() != Category::Kind::left_div || fn.denominator() != left.root()) {
    throw std::invalid_argument("B ; B\\A does not apply to " + format_category(left.root()) +
                                " ; " + format_category(fn));
  }
  Category root = fn.numerator();
  return ReductionTree(std::make_shared<const Node>(
      Node{std::move(root), Rule::apply_left, std::move(left), std::move(right)}));
}

const Category& ReductionTree::root() const { return node_->root; }
ReductionTree::Rule ReductionTree::rule() const { return node_->rule; }

const ReductionTree& ReductionTree::left() const {
  if (is_leaf()) throw std::logic_error("leaf has no children");
  return *node_->left;
}

const ReductionTree& ReductionTree::right() const {
  if (is_leaf()) throw std::logic_error("leaf has no children");
  return *node_->right;
}

CategoryString ReductionTree::frontier() const {
  CategoryString out;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->rule == Rule::leaf) {
      out.push_back(n->root);
    } else {
      stack.push_back(n->right->node_.get());
      stack.push_back(n->left->node_.get());
    }
  }
  return out;
}

bool operator==(const ReductionTree& a, const ReductionTree& b) {
  if (a.node_ == b.node_) return true;
  if (a.rule() != b.rule() || a.root() != b.root()) return false;
  if (a.is_leaf()) return true;
  return a.left() == b.left() && a.right() == b.right();
}

// ---------------------------------------------------------------------------
// ReductionUniverse

ReductionUniverse::ReductionUniverse(const CategoryString& items) {
  seeds_.reserve(items.size());
  for (const Category& c : items) {
    seeds_.push_back(intern(c));
    for (const Category* cur = &c; cur->is_division(); cur = &cur->numerator()) {
      intern(cur->numerator());
    }
  }
  nums_.assign(categories_.size(), npos);
  dens_.assign(categories_.size(), npos);
  kinds_.reserve(categories_.size());
  for (Id id = 0; id < categories_.size(); ++id) {
    const Category& c = categories_[id];
    kinds_.push_back(c.kind());
    if (c.is_division()) {
      nums_[id] = id_of(c.numerator());
      dens_[id] = id_of(c.denominator());
    }
  }
}

ReductionUniverse::Id ReductionUniverse::intern(const Category& c) {
  auto [it, inserted] = index_.try_emplace(c, static_cast<Id>(categories_.size()));
  if (inserted) categories_.push_back(c);
  return it->second;
}

ReductionUniverse::Id ReductionUniverse::id_of(const Category& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? npos : it->second;
}

// ---------------------------------------------------------------------------
// ReductionChart
//
// Agenda-driven CYK: a new entry (span, category) is combined with every
// processed entry of the adjacent spans on either side. Each adjacent pair is
// therefore tried exactly once, when its second member is processed, and the
// fixpoint equals the bottom-up CYK chart.

namespace {

struct PendingKey {
  std::uint64_t span;
  std::uint32_t id;
  bool operator==(const PendingKey&) const = default;
};

struct PendingKeyHash {
  std::size_t operator()(const PendingKey& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.span * 0x9e3779b97f4a7c15ULL ^ k.id);
  }
};

}  // namespace

ReductionChart::ReductionChart(CategoryString items)
    : items_(std::move(items)), universe_(items_) {
  build();
}

void ReductionChart::build() {
  const std::size_t n = items_.size();
  ends_from_.assign(n + 1, {});
  begins_to_.assign(n + 1, {});

  struct Item {
    std::uint32_t begin, end;
    Id id;
  };
  std::vector<Item> agenda;
  std::unordered_set<PendingKey, PendingKeyHash> seen;

  auto push = [&](std::uint32_t b, std::uint32_t e, Id id) {
    if (seen.insert(PendingKey{key(b, e), id}).second) agenda.push_back({b, e, id});
  };

  // Results of combining `l` (left) with `r` (right); at most two.
  auto combine = [&](Id l, Id r, auto&& emit) {
    if (universe_.kind(l) == Category::Kind::right_div && universe_.denominator(l) == r) {
      emit(universe_.numerator(l));
    }
    if (universe_.kind(r) == Category::Kind::left_div && universe_.denominator(r) == l) {
      emit(universe_.numerator(r));
    }
  };

  for (std::size_t i = n; i-- > 0;) {
    push(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1), universe_.seeds()[i]);
  }

  while (!agenda.empty()) {
    Item it = agenda.back();
    agenda.pop_back();

    auto& cell = cells_[key(it.begin, it.end)];
    if (cell.empty()) {
      ends_from_[it.begin].push_back(it.end);
      begins_to_[it.end].push_back(it.begin);
    }
    cell.push_back(it.id);
    ++entries_;

    for (std::uint32_t h : begins_to_[it.begin]) {
      const auto& left = cells_.find(key(h, it.begin))->second;
      for (Id l : left) {
        combine(l, it.id, [&](Id r) { push(h, it.end, r); });
      }
    }
    for (std::uint32_t m : ends_from_[it.end]) {
      const auto& right = cells_.find(key(it.end, m))->second;
      for (Id r : right) {
        combine(it.id, r, [&](Id x) { push(it.begin, m, x); });
      }
    }
  }

  for (auto& [k, ids] : cells_) std::sort(ids.begin(), ids.end());
}

std::span<const ReductionChart::Id> ReductionChart::cell(std::size_t begin,
                                                         std::size_t end) const {
  if (begin >= end || end > items_.size()) return {};
  auto it = cells_.find(key(begin, end));
  if (it == cells_.end()) return {};
  return it->second;
}

bool ReductionChart::derivable(std::size_t begin, std::size_t end, const Category& c) const {
  Id id = universe_.id_of(c);
  if (id == ReductionUniverse::npos) return false;
  auto ids = cell(begin, end);
  return std::binary_search(ids.begin(), ids.end(), id);
}

CategorySet ReductionChart::derivable_set(std::size_t begin, std::size_t end) const {
  CategorySet out;
  for (Id id : cell(begin, end)) out.insert(universe_.category(id));
  return out;
}

std::vector<ReductionTree> ReductionChart::trees(std::size_t begin, std::size_t end,
                                                 const Category& root,
                                                 std::size_t limit) const {
  if (limit == 0) throw std::invalid_argument("tree limit must be positive");
  Id root_id = universe_.id_of(root);
  if (root_id == ReductionUniverse::npos || !derivable(begin, end, root)) return {};

  std::unordered_map<PendingKey, std::vector<ReductionTree>, PendingKeyHash> memo;

  auto contains = [this](std::size_t b, std::size_t e, Id id) {
    auto ids = cell(b, e);
    return std::binary_search(ids.begin(), ids.end(), id);
  };

  struct Candidate {
    Id left, right;
    ReductionTree::Rule rule;
  };

  auto enumerate = [&](auto&& self, std::size_t b, std::size_t e,
                       Id target) -> const std::vector<ReductionTree>& {
    PendingKey k{key(b, e), target};
    if (auto it = memo.find(k); it != memo.end()) return it->second;

    std::vector<ReductionTree> out;
    if (e - b == 1) {
      out.push_back(ReductionTree::leaf(items_[b]));
      return memo.emplace(k, std::move(out)).first->second;
    }
    for (std::size_t split = b + 1; split < e && out.size() < limit; ++split) {
      std::vector<Candidate> candidates;
      for (Id l : cell(b, split)) {
        if (universe_.kind(l) == Category::Kind::right_div && universe_.numerator(l) == target) {
          Id d = universe_.denominator(l);
          if (d != ReductionUniverse::npos && contains(split, e, d)) {
            candidates.push_back({l, d, ReductionTree::Rule::apply_right});
          }
        }
      }
      for (Id r : cell(split, e)) {
        if (universe_.kind(r) == Category::Kind::left_div && universe_.numerator(r) == target) {
          Id d = universe_.denominator(r);
          if (d != ReductionUniverse::npos && contains(b, split, d)) {
            candidates.push_back({d, r, ReductionTree::Rule::apply_left});
          }
        }
      }
      std::sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
        if (x.left != y.left) return universe_.category(x.left) < universe_.category(y.left);
        return universe_.category(x.right) < universe_.category(y.right);
      });
      for (const Candidate& cand : candidates) {
        // Copies: the memo may rehash during the recursive calls.
        std::vector<ReductionTree> lefts = self(self, b, split, cand.left);
        std::vector<ReductionTree> rights = self(self, split, e, cand.right);
        for (const auto& lt : lefts) {
          for (const auto& rt : rights) {
            if (out.size() >= limit) break;
            out.push_back(cand.rule == ReductionTree::Rule::apply_right
                              ? ReductionTree::apply_right(lt, rt)
                              : ReductionTree::apply_left(lt, rt));
          }
          if (out.size() >= limit) break;
        }
        if (out.size() >= limit) break;
      }
    }
    return memo.emplace(k, std::move(out)).first->second;
  };

  return enumerate(enumerate, begin, end, root_id);
}

// ---------------------------------------------------------------------------

std::set<CategoryString> one_step(const CategoryString& s) {
  std::set<CategoryString> out;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const Category& l = s[i];
    const Category& r = s[i + 1];
    auto replace = [&](const Category& result) {
      CategoryString next;
      next.reserve(s.size() - 1);
      next.insert(next.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i));
      next.push_back(result);
      next.insert(next.end(), s.begin() + static_cast<std::ptrdiff_t>(i + 2), s.end());
      out.insert(std::move(next));
    };
    if (l.kind() == Category::Kind::right_div && l.denominator() == r) replace(l.numerator());
    if (r.kind() == Category::Kind::left_div && r.denominator() == l) replace(r.numerator());
  }
  return out;
}

bool reducible_to(const CategoryString& s, const Category& target) {
  if (s.empty()) return false;
  if (!count_preserved_check(s, CategoryString{target})) return false;
  return ReductionChart(s).derivable(target);
}

CategorySet derivable_singletons(const CategoryString& s) {
  if (s.empty()) return {};
  return ReductionChart(s).derivable_set();
}

std::vector<ReductionTree> reduction_trees(const CategoryString& s, const Category& target,
                                           std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("tree limit must be positive");
  if (s.empty()) return {};
  return ReductionChart(s).trees(0, s.size(), target, limit);
}

namespace {

struct IdSeqHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h = h * 1000003u ^ x;
    return h;
  }
};

}  // namespace

CategorySet brute_force_derivable(const CategoryString& s, std::size_t max_len,
                                  std::size_t cap) {
  if (s.size() > max_len) {
    throw std::invalid_argument("string of length " + std::to_string(s.size()) +
                                " exceeds max_len " + std::to_string(max_len));
  }
  if (s.empty()) return {};

  std::vector<Category> table;
  std::unordered_map<Category, std::uint32_t> index;
  auto intern = [&](const Category& c) {
    auto [it, inserted] = index.try_emplace(c, static_cast<std::uint32_t>(table.size()));
    if (inserted) table.push_back(c);
    return it->second;
  };

  using Seq = std::vector<std::uint32_t>;
  Seq start;
  for (const Category& c : s) start.push_back(intern(c));

  std::unordered_set<Seq, IdSeqHash> visited{start};
  std::deque<Seq> frontier{start};
  CategorySet out;

  while (!frontier.empty()) {
    Seq cur = std::move(frontier.front());
    frontier.pop_front();
    if (cur.size() == 1) {
      out.insert(table[cur[0]]);
      continue;
    }
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const Category l = table[cur[i]];
      const Category r = table[cur[i + 1]];
      auto visit = [&](const Category& result) {
        Seq next;
        next.reserve(cur.size() - 1);
        next.insert(next.end(), cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(i));
        next.push_back(intern(result));
        next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(i + 2), cur.end());
        if (visited.insert(next).second) {
          if (visited.size() > cap) {
            throw BudgetExceeded("brute-force search visited more than " + std::to_string(cap) +
                                 " strings");
          }
          frontier.push_back(std::move(next));
        }
      };
      if (l.kind() == Category::Kind::right_div && l.denominator() == r) visit(l.numerator());
      if (r.kind() == Category::Kind::left_div && r.denominator() == l) visit(r.numerator());
    }
  }
  return out;
}

bool count_preserved_check(const CategoryString& s, const CategoryString& s2) {
  std::set<Prim> prims = primitives(s);
  prims.merge(primitives(s2));
  for (const Prim& p : prims) {
    if (count(p, s) != count(p, s2)) return false;
  }
  return true;
}

}  // namespace abcat
