#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abcat/category.hpp"

namespace abcat {

/// Category strings that reduce to several prescribed categories. Together
/// they let a grammar with one category per symbol stand in for a grammar
/// that assigns several.
///
///   x(A,t), y(t,B)  reduce to phi(A) and t/t, resp. t/t and phi(B)
///   z(A,B)          reduces to phi(A) and phi(B)
///   z'(A,B)         reduces to phi(A)/_r and phi(B)/_r
///   u(A,B)          reduces to psi(A) and psi(B)
///   w(A1..An)       reduces to every psi(Ai)
///
/// Parameters must have one of the shapes p, p/q, (p/q)/s over primitives.

enum class GadgetKind { x, y, z, zprime, u, w, sentinel };

std::string_view to_string(GadgetKind kind);

enum class RuleShape { atom, frac, double_frac };

std::optional<RuleShape> rule_shape(const Category& c);

/// Gadget an item was emitted by (the innermost one) and its parameters.
struct ItemOrigin {
  GadgetKind kind;
  std::vector<Category> params;
};

struct GadgetString {
  CategoryString items;
  GadgetKind kind;
  std::vector<Category> params;
  /// Auxiliary primitives introduced here or in nested gadgets.
  std::vector<Prim> fresh;
  /// Parallel to `items`.
  std::vector<ItemOrigin> origins;
};

struct ZPrims {
  Prim t, k1, k2, k3, k4;
};

struct ZPrimePrims {
  ZPrims z;
  Prim o1, o2;
};

struct UPrims {
  ZPrimePrims zprime;
  Prim o3, o4;

  /// `_t<suffix>`, `_k1<suffix>`, ..., `_o4<suffix>`.
  static UPrims named(std::string_view suffix);
};

GadgetString build_x(const Category& a, const Prim& t);
GadgetString build_y(const Prim& t, const Category& b);
GadgetString build_z(const Category& a, const Category& b, const ZPrims& fresh);
GadgetString build_z_prime(const Category& a, const Category& b, const ZPrimePrims& fresh);
GadgetString build_u(const Category& a, const Category& b, const UPrims& fresh);

/// Every nested u gets its own primitives `_t.<scope>.<i>`, ...; connectors
/// use `_e<j>.<scope>`. An empty scope drops the scope component.
GadgetString build_w(const std::vector<Category>& cats, std::string_view scope = {});

}  // namespace abcat
