#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "abcat/category.hpp"

namespace abcat {

/// Binary derivation tree built from the two application rules.
class ReductionTree {
 public:
  enum class Rule : std::uint8_t { leaf, apply_right, apply_left };

  static ReductionTree leaf(Category c);
  /// A/B ; B => A. Throws std::invalid_argument if the rule does not apply.
  static ReductionTree apply_right(ReductionTree left, ReductionTree right);
  /// B ; B\A => A. Throws std::invalid_argument if the rule does not apply.
  static ReductionTree apply_left(ReductionTree left, ReductionTree right);

  const Category& root() const;
  Rule rule() const;
  const ReductionTree& left() const;
  const ReductionTree& right() const;
  bool is_leaf() const { return rule() == Rule::leaf; }

  CategoryString frontier() const;

  friend bool operator==(const ReductionTree& a, const ReductionTree& b);

 private:
  struct Node;
  explicit ReductionTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Dense ids over the numerator closure of an input string. Every category a
/// substring can reduce to lives here.
class ReductionUniverse {
 public:
  using Id = std::uint32_t;
  static constexpr Id npos = ~Id{0};

  explicit ReductionUniverse(const CategoryString& items);

  std::size_t size() const { return categories_.size(); }
  Id id_of(const Category& c) const;
  const Category& category(Id id) const { return categories_[id]; }
  Category::Kind kind(Id id) const { return kinds_[id]; }
  /// Numerator of a division member; always a member itself.
  Id numerator(Id id) const { return nums_[id]; }
  /// Denominator of a division member, or npos when it is not a member.
  Id denominator(Id id) const { return dens_[id]; }
  /// Ids of the input items, in order.
  const std::vector<Id>& seeds() const { return seeds_; }

 private:
  Id intern(const Category& c);

  std::vector<Category> categories_;
  std::vector<Category::Kind> kinds_;
  std::vector<Id> nums_;
  std::vector<Id> dens_;
  std::vector<Id> seeds_;
  std::unordered_map<Category, Id> index_;
};

/// Chart of every substring's derivable categories. Spans are half-open
/// [begin, end). Only non-empty cells are stored.
class ReductionChart {
 public:
  using Id = ReductionUniverse::Id;

  explicit ReductionChart(CategoryString items);

  std::size_t length() const { return items_.size(); }
  const CategoryString& items() const { return items_; }
  const ReductionUniverse& universe() const { return universe_; }

  std::span<const Id> cell(std::size_t begin, std::size_t end) const;
  bool derivable(std::size_t begin, std::size_t end, const Category& c) const;
  bool derivable(const Category& c) const { return derivable(0, length(), c); }
  CategorySet derivable_set(std::size_t begin, std::size_t end) const;
  CategorySet derivable_set() const { return derivable_set(0, length()); }

  /// Up to `limit` trees for the span with the given root, ordered by split
  /// point ascending, then left subtree, then right subtree.
  std::vector<ReductionTree> trees(std::size_t begin, std::size_t end, const Category& root,
                                   std::size_t limit) const;

  /// Total number of (span, category) entries.
  std::size_t entry_count() const { return entries_; }

 private:
  std::uint64_t key(std::size_t begin, std::size_t end) const {
    return static_cast<std::uint64_t>(begin) * (items_.size() + 1) + end;
  }
  void build();

  CategoryString items_;
  ReductionUniverse universe_;
  std::unordered_map<std::uint64_t, std::vector<Id>> cells_;
  std::vector<std::vector<std::uint32_t>> ends_from_;   // begin -> ends of non-empty cells
  std::vector<std::vector<std::uint32_t>> begins_to_;   // end -> begins of non-empty cells
  std::size_t entries_ = 0;
};

std::set<CategoryString> one_step(const CategoryString& s);

bool reducible_to(const CategoryString& s, const Category& target);

CategorySet derivable_singletons(const CategoryString& s);

std::vector<ReductionTree> reduction_trees(const CategoryString& s, const Category& target,
                                           std::size_t limit);

inline constexpr std::size_t kDefaultBruteForceCap = 10'000'000;

/// Exhaustive search over one-step sequences. Throws BudgetExceeded when the
/// visited set outgrows `cap`.
CategorySet brute_force_derivable(const CategoryString& s, std::size_t max_len,
                                  std::size_t cap = kDefaultBruteForceCap);

/// True iff every primitive occurring in either string has the same count in both.
bool count_preserved_check(const CategoryString& s, const CategoryString& s2);

}  // namespace abcat
