#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace abcat {

enum class PrimOrigin : std::uint8_t { user, auxiliary, sentinel };

std::string_view to_string(PrimOrigin origin);

/// A primitive category. Identity is the name; the origin is read off the
/// name (`_l` and `_r` are the sentinels, any other `_` name is auxiliary).
class Prim {
 public:
  explicit Prim(std::string name);

  static const Prim& left_sentinel();
  static const Prim& right_sentinel();

  const std::string& name() const noexcept { return name_; }
  PrimOrigin origin() const noexcept;

  friend bool operator==(const Prim&, const Prim&) = default;
  friend auto operator<=>(const Prim&, const Prim&) = default;

 private:
  std::string name_;
};

/// Immutable category tree. Copies share structure; equality and ordering are
/// structural.
class Category {
 public:
  enum class Kind : std::uint8_t { primitive, right_div, left_div };

  explicit Category(Prim p);

  static Category atom(std::string name) { return Category(Prim(std::move(name))); }
  /// num/den
  static Category right_div(Category num, Category den);
  /// den\num
  static Category left_div(Category den, Category num);

  Kind kind() const noexcept;
  bool is_primitive() const noexcept { return kind() == Kind::primitive; }
  bool is_division() const noexcept { return !is_primitive(); }

  const Prim& prim() const;
  const Category& numerator() const;
  const Category& denominator() const;

  std::size_t hash() const noexcept;
  /// Division nesting depth; primitives have depth 0.
  std::size_t depth() const noexcept;
  /// Number of tree nodes.
  std::size_t size() const noexcept;

  friend bool operator==(const Category& a, const Category& b);
  friend std::strong_ordering operator<=>(const Category& a, const Category& b);

 private:
  struct Node;
  explicit Category(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using CategoryString = std::vector<Category>;
using CategorySet = std::set<Category>;

struct ParseOptions {
  // Machine-generated text (gadgets, encode bundles) may use reserved `_` names.
  bool allow_reserved = false;
};

Category parse_category(std::string_view text, ParseOptions options = {});
std::string format_category(const Category& c);

/// Items separated by `;`. A trailing `;` is accepted.
CategoryString parse_category_string(std::string_view text, ParseOptions options = {});
std::string format_category_string(const CategoryString& s);

CategorySet numerators(const Category& c);
CategorySet numerators(const CategoryString& s);
CategorySet denominators(const Category& c);
CategorySet denominators(const CategoryString& s);

std::int64_t count(const Prim& p, const Category& c);
std::int64_t count(const Prim& p, const CategoryString& s);

std::set<Prim> primitives(const Category& c);
std::set<Prim> primitives(const CategoryString& s);
bool occurs(const Prim& p, const Category& c);

/// Splitting map: every primitive p becomes p/p, homomorphically.
Category phi(const Category& c);
/// _l\(phi(c)/_r)
Category psi(const Category& c);

}  // namespace abcat

template <>
struct std::hash<abcat::Category> {
  std::size_t operator()(const abcat::Category& c) const noexcept { return c.hash(); }
};

template <>
struct std::hash<abcat::Prim> {
  std::size_t operator()(const abcat::Prim& p) const noexcept {
    return std::hash<std::string>{}(p.name());
  }
};
