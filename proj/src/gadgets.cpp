#include "abcat/gadgets.hpp"

#include <set>

#include "abcat/errors.hpp"

namespace abcat {

namespace {

Category cat(const Prim& p) { return Category(p); }
Category over(Category num, Category den) {
  return Category::right_div(std::move(num), std::move(den));
}
Category under(Category den, Category num) {
  return Category::left_div(std::move(den), std::move(num));
}

// p, q, s of a shaped category: p | p/q | (p/q)/s
struct Decomposed {
  RuleShape shape;
  Prim p;
  std::optional<Prim> q;
  std::optional<Prim> s;
};

Decomposed decompose(const Category& c, std::string_view role) {
  auto shape = rule_shape(c);
  if (!shape) {
    throw ShapeError(std::string(role) + " category " + format_category(c) +
                     " is not of the form p, p/q or (p/q)/s");
  }
  switch (*shape) {
    case RuleShape::atom:
      return {*shape, c.prim(), std::nullopt, std::nullopt};
    case RuleShape::frac:
      return {*shape, c.numerator().prim(), c.denominator().prim(), std::nullopt};
    case RuleShape::double_frac:
      return {*shape, c.numerator().numerator().prim(), c.numerator().denominator().prim(),
              c.denominator().prim()};
  }
  throw ShapeError("unreachable");
}

class Builder {
 public:
  Builder(GadgetKind kind, std::vector<Category> params) {
    out_.kind = kind;
    out_.params = std::move(params);
  }

  Builder& add(Category c) {
    out_.items.push_back(std::move(c));
    out_.origins.push_back({out_.kind, out_.params});
    return *this;
  }

  Builder& splice(const GadgetString& inner) {
    out_.items.insert(out_.items.end(), inner.items.begin(), inner.items.end());
    out_.origins.insert(out_.origins.end(), inner.origins.begin(), inner.origins.end());
    out_.fresh.insert(out_.fresh.end(), inner.fresh.begin(), inner.fresh.end());
    return *this;
  }

  Builder& fresh(std::initializer_list<Prim> prims) {
    out_.fresh.insert(out_.fresh.end(), prims.begin(), prims.end());
    return *this;
  }

  GadgetString done() { return std::move(out_); }

 private:
  GadgetString out_;
};

void require_fresh(const std::vector<Prim>& fresh, const std::vector<Category>& params) {
  std::set<Prim> seen;
  for (const Prim& f : fresh) {
    if (!seen.insert(f).second) {
      throw FreshnessError("fresh primitive '" + f.name() + "' is used twice");
    }
    for (const Category& c : params) {
      if (occurs(f, c)) {
        throw FreshnessError("fresh primitive '" + f.name() + "' occurs in " +
                             format_category(c));
      }
    }
  }
}

void require_no_sentinels(const std::vector<Category>& params) {
  for (const Category& c : params) {
    if (occurs(Prim::left_sentinel(), c) || occurs(Prim::right_sentinel(), c)) {
      throw FreshnessError("sentinel primitive occurs in " + format_category(c));
    }
  }
}

}  // namespace

std::string_view to_string(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::x: return "x";
    case GadgetKind::y: return "y";
    case GadgetKind::z: return "z";
    case GadgetKind::zprime: return "zprime";
    case GadgetKind::u: return "u";
    case GadgetKind::w: return "w";
    case GadgetKind::sentinel: return "sentinel";
  }
  return "x";
}

std::optional<RuleShape> rule_shape(const Category& c) {
  using K = Category::Kind;
  if (c.is_primitive()) return RuleShape::atom;
  if (c.kind() != K::right_div || !c.denominator().is_primitive()) return std::nullopt;
  const Category& num = c.numerator();
  if (num.is_primitive()) return RuleShape::frac;
  if (num.kind() == K::right_div && num.numerator().is_primitive() &&
      num.denominator().is_primitive()) {
    return RuleShape::double_frac;
  }
  return std::nullopt;
}

UPrims UPrims::named(std::string_view suffix) {
  auto n = [&](const char* base) { return Prim(std::string(base) + std::string(suffix)); };
  return UPrims{ZPrimePrims{ZPrims{n("_t"), n("_k1"), n("_k2"), n("_k3"), n("_k4")}, n("_o1"),
                            n("_o2")},
                n("_o3"), n("_o4")};
}

GadgetString build_x(const Category& a, const Prim& t) {
  Decomposed d = decompose(a, "x parameter");
  require_fresh({t}, {a});
  const Category tt = phi(cat(t));
  Builder b(GadgetKind::x, {a});
  b.fresh({t});
  b.add(over(phi(a), tt)).add(tt).add(cat(t));
  switch (d.shape) {
    case RuleShape::atom:
      b.add(under(cat(t), cat(d.p)));
      break;
    case RuleShape::frac:
      b.add(under(cat(t), phi(cat(*d.q))))
          .add(cat(*d.q))
          .add(under(cat(*d.q), cat(d.p)));
      break;
    case RuleShape::double_frac:
      b.add(under(cat(t), phi(cat(*d.s))))
          .add(cat(*d.s))
          .add(under(cat(*d.s), phi(cat(*d.q))))
          .add(cat(*d.q))
          .add(under(cat(*d.q), cat(d.p)));
      break;
  }
  b.add(under(cat(d.p), tt));
  return b.done();
}

GadgetString build_y(const Prim& t, const Category& bcat) {
  Decomposed d = decompose(bcat, "y parameter");
  require_fresh({t}, {bcat});
  const Category tt = phi(cat(t));
  const Category phib = phi(bcat);
  Builder b(GadgetKind::y, {bcat});
  b.fresh({t});
  b.add(over(tt, phib)).add(phib);
  switch (d.shape) {
    case RuleShape::atom:
      b.add(cat(d.p));
      break;
    case RuleShape::frac:
      b.add(phi(cat(*d.q))).add(cat(*d.q)).add(under(cat(*d.q), cat(d.p)));
      break;
    case RuleShape::double_frac:
      b.add(phi(cat(*d.s)))
          .add(cat(*d.s))
          .add(under(cat(*d.s), phi(cat(*d.q))))
          .add(cat(*d.q))
          .add(under(cat(*d.q), cat(d.p)));
      break;
  }
  b.add(under(cat(d.p), cat(t))).add(under(cat(t), phib));
  return b.done();
}

namespace {

void check_pair(const Category& a, const Category& b) {
  decompose(a, "first");
  decompose(b, "second");
  if (a == b) {
    throw EqualCategories("the two categories must differ, both are " + format_category(a));
  }
}

}  // namespace

GadgetString build_z(const Category& a, const Category& b, const ZPrims& f) {
  check_pair(a, b);
  require_fresh({f.t, f.k1, f.k2, f.k3, f.k4}, {a, b});
  const Category pa = phi(a), pb = phi(b), tt = phi(cat(f.t));
  Builder z(GadgetKind::z, {a, b});
  z.fresh({f.t, f.k1, f.k2, f.k3, f.k4});
  z.add(over(pa, cat(f.k1))).add(over(cat(f.k1), tt));
  GadgetString x = build_x(a, f.t);
  x.fresh.clear();
  z.splice(x);
  z.add(under(pa, cat(f.k2)))
      .add(under(cat(f.k2), over(tt, cat(f.k3))))
      .add(over(cat(f.k3), pb));
  GadgetString y = build_y(f.t, b);
  y.fresh.clear();
  z.splice(y);
  z.add(under(tt, cat(f.k4))).add(under(cat(f.k4), pb));
  return z.done();
}

GadgetString build_z_prime(const Category& a, const Category& b, const ZPrimePrims& f) {
  check_pair(a, b);
  require_no_sentinels({a, b});
  require_fresh({f.z.t, f.z.k1, f.z.k2, f.z.k3, f.z.k4, f.o1, f.o2}, {a, b});
  const Category pa = phi(a), pb = phi(b), r = cat(Prim::right_sentinel());
  Builder zp(GadgetKind::zprime, {a, b});
  zp.add(over(over(pa, r), over(pb, r)))
      .add(over(pa, cat(f.o1)))
      .add(over(cat(f.o1), pb));
  zp.splice(build_z(a, b, f.z));
  zp.add(under(pa, cat(f.o2)))
      .add(under(cat(f.o2), over(pb, r)))
      .add(r)
      .add(under(pa, over(pb, r)));
  zp.fresh({f.o1, f.o2});
  return zp.done();
}

GadgetString build_u(const Category& a, const Category& b, const UPrims& f) {
  check_pair(a, b);
  require_no_sentinels({a, b});
  const auto& zf = f.zprime.z;
  require_fresh({zf.t, zf.k1, zf.k2, zf.k3, zf.k4, f.zprime.o1, f.zprime.o2, f.o3, f.o4}, {a, b});
  const Category pa_r = over(phi(a), cat(Prim::right_sentinel()));
  const Category pb_r = over(phi(b), cat(Prim::right_sentinel()));
  const Category l = cat(Prim::left_sentinel());
  const Category psia = psi(a), psib = psi(b);
  Builder u(GadgetKind::u, {a, b});
  u.add(over(psia, pb_r))
      .add(l)
      .add(over(psia, cat(f.o3)))
      .add(over(cat(f.o3), pb_r));
  u.splice(build_z_prime(a, b, f.zprime));
  u.add(under(pa_r, cat(f.o4)))
      .add(under(cat(f.o4), pb_r))
      .add(under(psia, psib));
  u.fresh({f.o3, f.o4});
  return u.done();
}

GadgetString build_w(const std::vector<Category>& cats, std::string_view scope) {
  if (cats.empty()) throw ShapeError("w needs at least one category");
  for (const Category& c : cats) decompose(c, "w parameter");
  for (std::size_t i = 0; i < cats.size(); ++i) {
    for (std::size_t j = i + 1; j < cats.size(); ++j) {
      if (cats[i] == cats[j]) {
        throw DuplicateCategory("category " + format_category(cats[i]) + " listed twice");
      }
    }
  }
  require_no_sentinels(cats);

  Builder w(GadgetKind::w, cats);
  const std::size_t n = cats.size();
  if (n == 1) {
    w.add(psi(cats[0]));
    return w.done();
  }

  std::string scope_part = scope.empty() ? "" : "." + std::string(scope);
  std::vector<Category> e;  // e[j] is e_{j}, 1-based
  e.push_back(cat(Prim::left_sentinel()));
  for (std::size_t j = 1; j <= 2 * n - 2; ++j) {
    Prim p("_e" + std::to_string(j) + scope_part);
    require_fresh({p}, cats);
    w.fresh({p});
    e.push_back(cat(p));
  }
  std::vector<Category> psis;
  for (const Category& c : cats) psis.push_back(psi(c));

  // x_1
  w.add(over(psis[0], e[1])).add(over(e[1], psis[1]));
  for (std::size_t i = 1; i <= n - 1; ++i) {
    // u_{A_i, A_{i+1}} with 1-based i
    UPrims f = UPrims::named(scope_part + "." + std::to_string(i - 1));
    w.splice(build_u(cats[i - 1], cats[i], f));
    if (i + 1 < n) {
      // x_{i+1} for a middle position
      const std::size_t k = i + 1;
      w.add(under(psis[k - 2], e[2 * k - 2]))
          .add(over(under(e[2 * k - 2], psis[k - 1]), e[2 * k - 1]))
          .add(over(e[2 * k - 1], psis[k]));
    }
  }
  // x_n
  w.add(under(psis[n - 2], e[2 * (n - 1)])).add(under(e[2 * (n - 1)], psis[n - 1]));
  return w.done();
}

}  // namespace abcat
