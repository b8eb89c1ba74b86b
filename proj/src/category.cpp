#include "abcat/category.hpp"

#include <cctype>
#include <functional>
#include <optional>

#include "abcat/errors.hpp"

namespace abcat {

namespace {

bool is_name_char(char ch) {
  switch (ch) {
    case '/': case '\\': case '(': case ')': case ';': case ',':
      return false;
    default:
      return !std::isspace(static_cast<unsigned char>(ch));
  }
}

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::string_view to_string(PrimOrigin origin) {
  switch (origin) {
    case PrimOrigin::user: return "user";
    case PrimOrigin::auxiliary: return "auxiliary";
    case PrimOrigin::sentinel: return "sentinel";
  }
  return "user";
}

Prim::Prim(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw NameError("primitive category name is empty");
  for (char ch : name_) {
    if (!is_name_char(ch)) {
      throw NameError("invalid character in primitive category name '" + name_ + "'");
    }
  }
}

const Prim& Prim::left_sentinel() {
  static const Prim l("_l");
  return l;
}

const Prim& Prim::right_sentinel() {
  static const Prim r("_r");
  return r;
}

PrimOrigin Prim::origin() const noexcept {
  if (name_ == "_l" || name_ == "_r") return PrimOrigin::sentinel;
  if (name_.front() == '_') return PrimOrigin::auxiliary;
  return PrimOrigin::user;
}

// ---------------------------------------------------------------------------

struct Category::Node {
  Kind kind;
  std::optional<Prim> prim;
  std::optional<Category> num;
  std::optional<Category> den;
  std::size_t hash;
  std::size_t depth;
  std::size_t size;
};

Category::Category(Prim p) {
  const std::size_t h = mix(0x51ed27, std::hash<std::string>{}(p.name()));
  node_ = std::make_shared<const Node>(Node{Kind::primitive, std::move(p), std::nullopt,
                                            std::nullopt, h, 0, 1});
}

Category Category::right_div(Category num, Category den) {
  std::size_t h = mix(mix(0x2f, num.hash()), den.hash());
  std::size_t d = 1 + std::max(num.depth(), den.depth());
  std::size_t n = 1 + num.size() + den.size();
  return Category(std::make_shared<const Node>(
      Node{Kind::right_div, std::nullopt, std::move(num), std::move(den), h, d, n}));
}

Category Category::left_div(Category den, Category num) {
  std::size_t h = mix(mix(0x5c, num.hash()), den.hash());
  std::size_t d = 1 + std::max(num.depth(), den.depth());
  std::size_t n = 1 + num.size() + den.size();
  return Category(std::make_shared<const Node>(
      Node{Kind::left_div, std::nullopt, std::move(num), std::move(den), h, d, n}));
}

Category::Kind Category::kind() const noexcept { return node_->kind; }
const Prim& Category::prim() const { return *node_->prim; }
const Category& Category::numerator() const { return *node_->num; }
const Category& Category::denominator() const { return *node_->den; }
std::size_t Category::hash() const noexcept { return node_->hash; }
std::size_t Category::depth() const noexcept { return node_->depth; }
std::size_t Category::size() const noexcept { return node_->size; }

bool operator==(const Category& a, const Category& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  if (a.is_primitive()) return a.prim() == b.prim();
  return a.numerator() == b.numerator() && a.denominator() == b.denominator();
}

std::strong_ordering operator<=>(const Category& a, const Category& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_primitive()) return a.prim().name() <=> b.prim().name();
  if (auto c = a.numerator() <=> b.numerator(); c != 0) return c;
  return a.denominator() <=> b.denominator();
}

// ---------------------------------------------------------------------------
// Text syntax
//
//   Cat  := Atom | Atom '/' Atom | Atom '\' Atom
//   Atom := Prim | '(' Cat ')'

namespace {

class CategoryParser {
 public:
  CategoryParser(std::string_view text, ParseOptions options)
      : text_(text), options_(options) {}

  Category parse_all() {
    skip_ws();
    if (at_end()) fail("empty category");
    Category c = parse_cat();
    skip_ws();
    if (!at_end()) {
      if (text_[pos_] == '/' || text_[pos_] == '\\') {
        fail("division operators are non-associative; parenthesize nested divisions");
      }
      fail(std::string("unexpected '") + text_[pos_] + "'");
    }
    return c;
  }

 private:
  Category parse_cat() {
    Category left = parse_atom();
    skip_ws();
    if (at_end()) return left;
    char op = text_[pos_];
    if (op != '/' && op != '\\') return left;
    ++pos_;
    Category right = parse_atom();
    return op == '/' ? Category::right_div(std::move(left), std::move(right))
                     : Category::left_div(std::move(left), std::move(right));
  }

  Category parse_atom() {
    skip_ws();
    if (at_end()) fail("expected a category");
    if (text_[pos_] == '(') {
      ++pos_;
      Category inner = parse_cat();
      skip_ws();
      if (at_end()) fail("unbalanced parentheses: missing ')'");
      if (text_[pos_] != ')') {
        if (text_[pos_] == '/' || text_[pos_] == '\\') {
          fail("division operators are non-associative; parenthesize nested divisions");
        }
        fail(std::string("expected ')' but found '") + text_[pos_] + "'");
      }
      ++pos_;
      return inner;
    }
    std::size_t start = pos_;
    while (!at_end() && is_name_char(text_[pos_])) ++pos_;
    if (start == pos_) fail(std::string("expected a category but found '") + text_[pos_] + "'");
    std::string name(text_.substr(start, pos_ - start));
    if (name.front() == '_' && !options_.allow_reserved) {
      throw NameError("primitive name '" + name + "' uses the reserved '_' prefix");
    }
    return Category(Prim(std::move(name)));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " at offset " + std::to_string(pos_) + " in \"" +
                      std::string(text_) + "\"");
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

void format_into(const Category& c, bool nested, std::string& out) {
  if (c.is_primitive()) {
    out += c.prim().name();
    return;
  }
  if (nested) out += '(';
  if (c.kind() == Category::Kind::right_div) {
    format_into(c.numerator(), true, out);
    out += '/';
    format_into(c.denominator(), true, out);
  } else {
    format_into(c.denominator(), true, out);
    out += '\\';
    format_into(c.numerator(), true, out);
  }
  if (nested) out += ')';
}

}  // namespace

Category parse_category(std::string_view text, ParseOptions options) {
  return CategoryParser(text, options).parse_all();
}

std::string format_category(const Category& c) {
  std::string out;
  format_into(c, false, out);
  return out;
}

CategoryString parse_category_string(std::string_view text, ParseOptions options) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t semi = text.find(';', start);
    parts.push_back(text.substr(start, semi == std::string_view::npos ? semi : semi - start));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  auto blank = [](std::string_view s) {
    for (char ch : s) {
      if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
  };
  if (parts.size() > 1 && blank(parts.back())) parts.pop_back();

  CategoryString out;
  out.reserve(parts.size());
  for (std::string_view part : parts) {
    if (blank(part)) throw SyntaxError("empty item in category string \"" + std::string(text) + "\"");
    out.push_back(parse_category(part, options));
  }
  return out;
}

std::string format_category_string(const CategoryString& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "; ";
    out += format_category(s[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

CategorySet numerators(const Category& c) {
  CategorySet out;
  for (const Category* cur = &c; cur->is_division(); cur = &cur->numerator()) {
    out.insert(cur->numerator());
  }
  return out;
}

CategorySet numerators(const CategoryString& s) {
  CategorySet out;
  for (const Category& c : s) out.merge(numerators(c));
  return out;
}

CategorySet denominators(const Category& c) {
  CategorySet out;
  for (const Category* cur = &c; cur->is_division(); cur = &cur->numerator()) {
    out.insert(cur->denominator());
  }
  return out;
}

CategorySet denominators(const CategoryString& s) {
  CategorySet out;
  for (const Category& c : s) out.merge(denominators(c));
  return out;
}

std::int64_t count(const Prim& p, const Category& c) {
  if (c.is_primitive()) return c.prim() == p ? 1 : 0;
  return count(p, c.numerator()) - count(p, c.denominator());
}

std::int64_t count(const Prim& p, const CategoryString& s) {
  std::int64_t total = 0;
  for (const Category& c : s) total += count(p, c);
  return total;
}

namespace {
void collect_prims(const Category& c, std::set<Prim>& out) {
  if (c.is_primitive()) {
    out.insert(c.prim());
    return;
  }
  collect_prims(c.numerator(), out);
  collect_prims(c.denominator(), out);
}
}  // namespace

std::set<Prim> primitives(const Category& c) {
  std::set<Prim> out;
  collect_prims(c, out);
  return out;
}

std::set<Prim> primitives(const CategoryString& s) {
  std::set<Prim> out;
  for (const Category& c : s) collect_prims(c, out);
  return out;
}

bool occurs(const Prim& p, const Category& c) {
  if (c.is_primitive()) return c.prim() == p;
  return occurs(p, c.numerator()) || occurs(p, c.denominator());
}

Category phi(const Category& c) {
  switch (c.kind()) {
    case Category::Kind::primitive:
      return Category::right_div(c, c);
    case Category::Kind::right_div:
      return Category::right_div(phi(c.numerator()), phi(c.denominator()));
    case Category::Kind::left_div:
      return Category::left_div(phi(c.denominator()), phi(c.numerator()));
  }
  return c;
}

Category psi(const Category& c) {
  return Category::left_div(Category(Prim::left_sentinel()),
                            Category::right_div(phi(c), Category(Prim::right_sentinel())));
}

}  // namespace abcat
