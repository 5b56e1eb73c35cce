#include "grpd/fraction.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace grpd {

namespace {

bool same_shape(const Groupoid& a, const Groupoid& b) {
  return a.object_names() == b.object_names() &&
         a.arrow_names() == b.arrow_names();
}

bool same_functor(const Functor& f, const Functor& g) {
  return same_shape(*f.source, *g.source) && same_shape(*f.target, *g.target) &&
         f.arrow_map == g.arrow_map && f.object_map == g.object_map;
}

}  // namespace

Fraction make_fraction(Functor num, Functor den) {
  if (!same_shape(*num.source, *den.source))
    throw std::invalid_argument("fraction legs must share their source");
  if (!classify_morphism(num).exactor)
    throw std::invalid_argument("fraction numerator is not an exactor");
  if (!classify_morphism(den).exactor)
    throw std::invalid_argument("fraction denominator is not an exactor");
  return {std::move(num), std::move(den)};
}

Cotransversality cotransversality(const Fraction& f) {
  Groupoid n = kernel(f.num);
  Groupoid m = kernel(f.den);
  TransversalityCheck t = transversality(*f.num.source, m, n);
  switch (t.kind) {
    case Transversality::kTransverse:
      return Cotransversality::kCotransverse;
    case Transversality::kTransversal:
      return Cotransversality::kCotransversal;
    default:
      return Cotransversality::kNeither;
  }
}

Meromorphism make_meromorphism(Fraction f) {
  Meromorphism m;
  m.denominator_s_equivalence = classify_morphism(f.den).s_equivalence;
  Cotransversality c = cotransversality(f);
  m.cotransversal = c != Cotransversality::kNeither;
  m.cotransverse = c == Cotransversality::kCotransverse;
  m.irreducible = m.cotransverse;
  if (!m.denominator_s_equivalence)
    throw std::invalid_argument(
        "meromorphism requires an s-equivalence denominator");
  if (!m.cotransversal)
    throw std::invalid_argument("meromorphism requires cotransversal kernels");
  m.rep = std::move(f);
  return m;
}

Functor section_of(const Functor& q) {
  if (!classify_morphism(q).s_equivalence)
    throw std::invalid_argument("section_of: not an s-equivalence");
  const Groupoid& k = *q.source;
  const Groupoid& h = *q.target;
  std::vector<int> osec(h.object_count(), -1);
  for (int x = 0; x < k.object_count(); ++x) {
    int b = q.object_map[x];
    if (osec[b] < 0) osec[b] = x;
  }
  Functor s{q.target, q.source, std::vector<int>(h.arrow_count(), -1), osec};
  for (int a = 0; a < h.arrow_count(); ++a) {
    int x = osec[h.src(a)], y = osec[h.tgt(a)];
    for (int u = 0; u < k.arrow_count(); ++u)
      if (k.src(u) == x && k.tgt(u) == y && q.arrow_map[u] == a) {
        s.arrow_map[a] = u;
        break;
      }
    if (s.arrow_map[a] < 0)
      throw std::logic_error("section_of: full faithfulness failed");
  }
  Diagnostics issues = check_functor(s);
  if (!issues.empty())
    throw std::logic_error("section_of produced a non-functor\n" +
                           format_diagnostics(issues));
  return s;
}

// ---------------------------------------------------------------------------
// Fraction equivalence

namespace {

// Searches a functor k: a-core -> b-core with num_b.k = num_a and
// den_b.k = den_a, by backtracking over objects and arrows.
std::optional<Functor> leg_preserving_functor(const Fraction& a,
                                              const Fraction& b) {
  const Groupoid& ka = *a.num.source;
  const Groupoid& kb = *b.num.source;
  if (static_cast<long>(ka.arrow_count()) * kb.arrow_count() > 40000)
    return std::nullopt;  // out of the bounded search's budget
  long budget = 2000000;
  std::vector<int> omap(ka.object_count(), -1), amap(ka.arrow_count(), -1);

  std::function<bool(int)> assign_arrows = [&](int u) -> bool {
    if (--budget < 0) return false;
    while (u < ka.arrow_count() && amap[u] >= 0) ++u;
    if (u == ka.arrow_count()) return true;
    for (int v = 0; v < kb.arrow_count(); ++v) {
      if (kb.src(v) != omap[ka.src(u)] || kb.tgt(v) != omap[ka.tgt(u)])
        continue;
      if (b.num.arrow_map[v] != a.num.arrow_map[u] ||
          b.den.arrow_map[v] != a.den.arrow_map[u])
        continue;
      std::vector<std::pair<int, int>> forced;
      auto force = [&](int arrow, int image) {
        if (amap[arrow] >= 0) return amap[arrow] == image;
        amap[arrow] = image;
        forced.push_back({arrow, image});
        return true;
      };
      bool ok = force(u, v) && force(ka.inv(u), kb.inv(v));
      for (int x = 0; x < ka.arrow_count() && ok; ++x) {
        if (amap[x] < 0) continue;
        if (ka.composable(u, x))
          ok = ok && force(ka.comp(u, x), kb.comp(amap[u], amap[x]));
        if (ok && ka.composable(x, u))
          ok = ok && force(ka.comp(x, u), kb.comp(amap[x], amap[u]));
      }
      if (ok && assign_arrows(u + 1)) return true;
      for (auto& [arrow, image] : forced) amap[arrow] = -1;
    }
    return false;
  };

  std::function<bool(int)> assign_objects = [&](int x) -> bool {
    if (x == ka.object_count()) {
      std::fill(amap.begin(), amap.end(), -1);
      return assign_arrows(0);
    }
    for (int y = 0; y < kb.object_count(); ++y) {
      if (b.num.object_map[y] != a.num.object_map[x] ||
          b.den.object_map[y] != a.den.object_map[x])
        continue;
      omap[x] = y;
      if (assign_objects(x + 1)) return true;
      omap[x] = -1;
    }
    return false;
  };
  if (!assign_objects(0)) return std::nullopt;
  Functor f{a.num.source, b.num.source, amap, omap};
  if (!check_functor(f).empty()) return std::nullopt;
  return f;
}

// Strict double pullback of the two cores over matching legs.
struct PairedCore {
  GroupoidPtr core;
  Functor to_a, to_b;
};

std::optional<PairedCore> strict_pullback(const Fraction& a,
                                          const Fraction& b) {
  const Groupoid& ka = *a.num.source;
  const Groupoid& kb = *b.num.source;
  std::vector<std::pair<int, int>> objtags;
  std::map<std::pair<int, int>, int> objindex;
  for (int x = 0; x < ka.object_count(); ++x)
    for (int y = 0; y < kb.object_count(); ++y)
      if (a.num.object_map[x] == b.num.object_map[y] &&
          a.den.object_map[x] == b.den.object_map[y]) {
        objindex[{x, y}] = static_cast<int>(objtags.size());
        objtags.push_back({x, y});
      }
  std::vector<std::pair<int, int>> tags;
  std::map<std::pair<int, int>, int> index;
  for (int u = 0; u < ka.arrow_count(); ++u)
    for (int v = 0; v < kb.arrow_count(); ++v) {
      if (a.num.arrow_map[u] != b.num.arrow_map[v] ||
          a.den.arrow_map[u] != b.den.arrow_map[v])
        continue;
      if (!objindex.count({ka.src(u), kb.src(v)}) ||
          !objindex.count({ka.tgt(u), kb.tgt(v)}))
        continue;
      index[{u, v}] = static_cast<int>(tags.size());
      tags.push_back({u, v});
    }
  if (tags.size() > 4000) return std::nullopt;
  std::vector<std::string> objects, arrows;
  for (auto [x, y] : objtags)
    objects.push_back("{" + ka.object_name(x) + "*" + kb.object_name(y) + "}");
  std::vector<int> src, tgt, inv, unit(objtags.size(), -1);
  for (auto [u, v] : tags) {
    arrows.push_back("{" + ka.arrow_name(u) + "*" + kb.arrow_name(v) + "}");
    src.push_back(objindex.at({ka.src(u), kb.src(v)}));
    tgt.push_back(objindex.at({ka.tgt(u), kb.tgt(v)}));
    inv.push_back(-1);
  }
  for (size_t i = 0; i < tags.size(); ++i)
    inv[i] = index.at({ka.inv(tags[i].first), kb.inv(tags[i].second)});
  for (size_t o = 0; o < objtags.size(); ++o) {
    auto [x, y] = objtags[o];
    unit[o] = index.at({ka.unit(x), kb.unit(y)});
  }
  std::vector<std::array<int, 3>> comp;
  for (size_t l = 0; l < tags.size(); ++l)
    for (size_t r = 0; r < tags.size(); ++r) {
      if (src[l] != tgt[r]) continue;
      comp.push_back({static_cast<int>(l), static_cast<int>(r),
                      index.at({ka.comp(tags[l].first, tags[r].first),
                                kb.comp(tags[l].second, tags[r].second)})});
    }
  PairedCore out;
  out.core = share(Groupoid::from_tables(objects, arrows, src, tgt, unit, inv,
                                         comp));
  out.to_a = Functor{out.core, a.num.source, {}, {}};
  out.to_b = Functor{out.core, b.num.source, {}, {}};
  for (auto [u, v] : tags) {
    out.to_a.arrow_map.push_back(u);
    out.to_b.arrow_map.push_back(v);
  }
  for (auto [x, y] : objtags) {
    out.to_a.object_map.push_back(x);
    out.to_b.object_map.push_back(y);
  }
  return out;
}

bool witness_grade(const Functor& f, bool extended) {
  MorphismClassification c = classify_morphism(f);
  return extended ? c.s_exactor || c.s_equivalence : c.s_equivalence;
}

}  // namespace

FractionEquivalence fractions_equivalent(const Fraction& a, const Fraction& b,
                                         bool extended) {
  if (!same_shape(*a.num.target, *b.num.target) ||
      !same_shape(*a.den.target, *b.den.target))
    throw std::invalid_argument("fractions_equivalent: target mismatch");

  FractionEquivalence out;

  // split-denominator normal form: compare the section composites up to
  // natural isomorphism
  if (classify_morphism(a.den).s_equivalence &&
      classify_morphism(b.den).s_equivalence) {
    Functor ma = compose_functors(a.num, section_of(a.den));
    Functor mb = compose_functors(b.num, section_of(b.den));
    if (auto iso = natural_iso(ma, mb)) {
      out.equivalent = true;
      out.certificate = *iso;
    }
  }

  // strict witnesses: identical fractions first
  if (same_functor(a.num, b.num) && same_functor(a.den, b.den)) {
    out.equivalent = true;
    out.witnesses = {identity_functor(a.num.source),
                     identity_functor(b.num.source)};
  }

  // direct functor witness in either direction
  if (!out.witnesses) {
    if (auto k = leg_preserving_functor(a, b); k && witness_grade(*k, extended)) {
      out.equivalent = true;
      out.witnesses = {identity_functor(a.num.source), *k};
    }
  }
  if (!out.witnesses) {
    if (auto k = leg_preserving_functor(b, a); k && witness_grade(*k, extended)) {
      out.equivalent = true;
      out.witnesses = {*k, identity_functor(b.num.source)};
    }
  }

  // pullback of the two cores over both legs
  if (!out.witnesses) {
    if (auto t = strict_pullback(a, b)) {
      if (witness_grade(t->to_a, extended) && witness_grade(t->to_b, extended)) {
        out.equivalent = true;
        out.witnesses = {t->to_a, t->to_b};
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Fraction make_irreducible(const Meromorphism& m) {
  const Fraction& f = m.rep;
  const Groupoid& k = *f.num.source;
  std::vector<int> num_kernel = kernel_arrows(f.num);
  std::set<int> sn(num_kernel.begin(), num_kernel.end());
  std::vector<int> shared;
  for (int a : kernel_arrows(f.den))
    if (sn.count(a)) shared.push_back(a);
  Groupoid s = wide_subgroupoid(k, shared);
  BilateralQuotient q = bilateral_quotient(f.num.source, s);
  const Groupoid& kq = *q.quotient;

  auto induce = [&](const Functor& leg) {
    Functor out{q.quotient, leg.target,
                std::vector<int>(kq.arrow_count(), -1),
                std::vector<int>(kq.object_count(), -1)};
    for (int a = 0; a < k.arrow_count(); ++a)
      out.arrow_map[q.projection.arrow_map[a]] = leg.arrow_map[a];
    for (int b = 0; b < k.object_count(); ++b)
      out.object_map[q.projection.object_map[b]] = leg.object_map[b];
    // the leg must factor exactly through the projection
    for (int a = 0; a < k.arrow_count(); ++a)
      if (out.arrow_map[q.projection.arrow_map[a]] != leg.arrow_map[a])
        throw std::logic_error("make_irreducible: leg does not factor");
    Diagnostics issues = check_functor(out);
    if (!issues.empty())
      throw std::logic_error("make_irreducible: induced leg fails\n" +
                             format_diagnostics(issues));
    return out;
  };
  Fraction reduced = make_fraction(induce(f.num), induce(f.den));
  if (cotransversality(reduced) != Cotransversality::kCotransverse)
    throw std::logic_error("make_irreducible: result is not cotransverse");
  return reduced;
}

Meromorphism compose_meromorphisms(const Meromorphism& m2,
                                   const Meromorphism& m1) {
  const Functor& den2 = m2.rep.den;  // K2 -> H
  const Functor& num1 = m1.rep.num;  // K1 -> H
  if (!same_shape(*den2.target, *num1.target))
    throw std::invalid_argument("compose: middle groupoid mismatch");
  const Groupoid& k2 = *den2.source;
  const Groupoid& k1 = *num1.source;

  std::vector<std::pair<int, int>> objtags;
  std::vector<int> objindex(
      static_cast<size_t>(k2.object_count()) * k1.object_count(), -1);
  auto oat = [&](int x, int y) {
    return static_cast<size_t>(x) * k1.object_count() + y;
  };
  for (int x = 0; x < k2.object_count(); ++x)
    for (int y = 0; y < k1.object_count(); ++y)
      if (den2.object_map[x] == num1.object_map[y]) {
        objindex[oat(x, y)] = static_cast<int>(objtags.size());
        objtags.push_back({x, y});
      }
  std::vector<std::pair<int, int>> tags;
  std::vector<int> index(
      static_cast<size_t>(k2.arrow_count()) * k1.arrow_count(), -1);
  auto at = [&](int u, int v) {
    return static_cast<size_t>(u) * k1.arrow_count() + v;
  };
  for (int u = 0; u < k2.arrow_count(); ++u)
    for (int v = 0; v < k1.arrow_count(); ++v) {
      if (den2.arrow_map[u] != num1.arrow_map[v]) continue;
      index[at(u, v)] = static_cast<int>(tags.size());
      tags.push_back({u, v});
    }
  std::vector<std::string> objects, arrows;
  for (auto [x, y] : objtags)
    objects.push_back("{" + k2.object_name(x) + "*" + k1.object_name(y) + "}");
  std::vector<int> src, tgt, inv, unit(objtags.size(), -1);
  for (auto [u, v] : tags) {
    arrows.push_back("{" + k2.arrow_name(u) + "*" + k1.arrow_name(v) + "}");
    src.push_back(objindex[oat(k2.src(u), k1.src(v))]);
    tgt.push_back(objindex[oat(k2.tgt(u), k1.tgt(v))]);
    inv.push_back(-1);
  }
  for (size_t i = 0; i < tags.size(); ++i)
    inv[i] = index[at(k2.inv(tags[i].first), k1.inv(tags[i].second))];
  for (size_t o = 0; o < objtags.size(); ++o)
    unit[o] = index[at(k2.unit(objtags[o].first), k1.unit(objtags[o].second))];
  std::vector<std::array<int, 3>> comp;
  for (size_t l = 0; l < tags.size(); ++l)
    for (size_t r = 0; r < tags.size(); ++r) {
      if (src[l] != tgt[r]) continue;
      comp.push_back({static_cast<int>(l), static_cast<int>(r),
                      index[at(k2.comp(tags[l].first, tags[r].first),
                               k1.comp(tags[l].second, tags[r].second))]});
    }
  GroupoidPtr core = share(Groupoid::from_tables(objects, arrows, src, tgt,
                                                 unit, inv, comp));
  Functor pr2{core, den2.source, {}, {}};
  Functor pr1{core, num1.source, {}, {}};
  for (auto [u, v] : tags) {
    pr2.arrow_map.push_back(u);
    pr1.arrow_map.push_back(v);
  }
  for (auto [x, y] : objtags) {
    pr2.object_map.push_back(x);
    pr1.object_map.push_back(y);
  }
  for (const Functor* f : {&pr2, &pr1}) {
    Diagnostics issues = check_functor(*f);
    if (!issues.empty())
      throw std::logic_error("compose: pullback projection fails\n" +
                             format_diagnostics(issues));
  }
  Functor num = compose_functors(m2.rep.num, pr2);
  Functor den = compose_functors(m1.rep.den, pr1);
  if (!classify_morphism(den).s_equivalence)
    throw std::invalid_argument(
        "compose: denominator of the result is not an s-equivalence");
  return make_meromorphism(make_fraction(std::move(num), std::move(den)));
}

// ---------------------------------------------------------------------------
// Holograph

Holograph holograph(const Functor& f) {
  const Groupoid& h = *f.source;
  const Groupoid& g = *f.target;

  std::vector<std::pair<int, int>> wtags;  // (object of h, arrow of g)
  std::map<std::pair<int, int>, int> windex;
  for (int x = 0; x < h.object_count(); ++x)
    for (int a = 0; a < g.arrow_count(); ++a)
      if (g.src(a) == f.object_map[x]) {
        windex[{x, a}] = static_cast<int>(wtags.size());
        wtags.push_back({x, a});
      }
  std::vector<std::string> objects;
  for (auto [x, a] : wtags)
    objects.push_back("(" + h.object_name(x) + "~" + g.arrow_name(a) + ")");

  std::vector<std::array<int, 3>> tags;  // (arrow of h, l, r)
  const int ga = g.arrow_count();
  std::vector<int> index(static_cast<size_t>(h.arrow_count()) * ga * ga, -1);
  auto at = [&](int ha, int l, int r) {
    return (static_cast<size_t>(ha) * ga + l) * ga + r;
  };
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, inv, unit(wtags.size(), -1);
  for (int ha = 0; ha < h.arrow_count(); ++ha)
    for (int l = 0; l < ga; ++l) {
      if (g.src(l) != f.object_map[h.tgt(ha)]) continue;
      for (int r = 0; r < ga; ++r) {
        if (g.src(r) != f.object_map[h.src(ha)]) continue;
        index[at(ha, l, r)] = static_cast<int>(tags.size());
        tags.push_back({ha, l, r});
        arrows.push_back("(" + h.arrow_name(ha) + "~" + g.arrow_name(l) + "~" +
                         g.arrow_name(r) + ")");
        src.push_back(windex.at({h.src(ha), r}));
        tgt.push_back(windex.at({h.tgt(ha), l}));
      }
    }
  for (const auto& [ha, l, r] : tags)
    inv.push_back(index[at(h.inv(ha), r, l)]);
  for (size_t w = 0; w < wtags.size(); ++w) {
    auto [x, a] = wtags[w];
    unit[w] = index[at(h.unit(x), a, a)];
  }
  std::vector<std::array<int, 3>> comp;
  for (size_t i = 0; i < tags.size(); ++i)
    for (size_t j = 0; j < tags.size(); ++j) {
      if (src[i] != tgt[j]) continue;  // h-parts chain and l_j = r_i
      comp.push_back({static_cast<int>(i), static_cast<int>(j),
                      index[at(h.comp(tags[i][0], tags[j][0]), tags[i][1],
                               tags[j][2])]});
    }
  GroupoidPtr core = share(Groupoid::from_tables(objects, arrows, src, tgt,
                                                 unit, inv, comp));
  // numerator: framed composite l . f(h) . r^-1 over beta of the frame
  Functor num{core, f.target, {}, {}};
  for (const auto& [ha, l, r] : tags)
    num.arrow_map.push_back(g.comp(l, g.comp(f.arrow_map[ha], g.inv(r))));
  for (auto [x, a] : wtags) num.object_map.push_back(g.tgt(a));
  // denominator: forget the frame
  Functor den{core, f.source, {}, {}};
  for (const auto& [ha, l, r] : tags) den.arrow_map.push_back(ha);
  for (auto [x, a] : wtags) den.object_map.push_back(x);
  for (const Functor* leg : {&num, &den}) {
    Diagnostics issues = check_functor(*leg);
    if (!issues.empty())
      throw std::logic_error("holograph leg is not a functor\n" +
                             format_diagnostics(issues));
  }
  // section of the denominator through unit frames
  Functor section{f.source, core, {}, {}};
  for (int ha = 0; ha < h.arrow_count(); ++ha)
    section.arrow_map.push_back(index[at(ha, g.unit(f.object_map[h.tgt(ha)]),
                                         g.unit(f.object_map[h.src(ha)]))]);
  for (int x = 0; x < h.object_count(); ++x)
    section.object_map.push_back(windex.at({x, g.unit(f.object_map[x])}));
  Diagnostics issues = check_functor(section);
  if (!issues.empty())
    throw std::logic_error("holograph section is not a functor\n" +
                           format_diagnostics(issues));
  for (int a = 0; a < h.arrow_count(); ++a)
    if (den.arrow_map[section.arrow_map[a]] != a)
      throw std::logic_error("holograph: section does not split the denominator");

  return {make_fraction(std::move(num), std::move(den)), std::move(section)};
}

// ---------------------------------------------------------------------------
// Morita equivalence

namespace {

// Minimal-name arrow from the base point to each object of its orbit.
std::vector<int> orbit_section(const Groupoid& g, int base,
                               const std::vector<int>& objects) {
  std::vector<int> eta(g.object_count(), -1);
  for (int b : objects) {
    int best = -1;
    for (int a = 0; a < g.arrow_count(); ++a)
      if (g.src(a) == base && g.tgt(a) == b)
        if (best < 0 || g.arrow_name(a) < g.arrow_name(best)) best = a;
    eta[b] = best;
  }
  return eta;
}

}  // namespace

std::optional<Functor> equivalence_functor(GroupoidPtr gp, GroupoidPtr hp) {
  const Groupoid& g = *gp;
  const Groupoid& h = *hp;
  AnchorAnalysis gan = analyze_anchor(g);
  AnchorAnalysis han = analyze_anchor(h);
  if (gan.orbits.size() != han.orbits.size()) return std::nullopt;
  const int norb = static_cast<int>(gan.orbits.size());
  std::vector<GroupTable> gtab(norb), htab(norb);
  for (int i = 0; i < norb; ++i) {
    gtab[i] = isotropy_table(g, gan.orbits[i][0]);
    htab[i] = isotropy_table(h, han.orbits[i][0]);
  }
  std::vector<int> match(norb, -1);
  std::vector<bool> used(norb, false);
  std::function<bool(int)> pick = [&](int i) -> bool {
    if (i == norb) return true;
    for (int j = 0; j < norb; ++j) {
      if (used[j] || !group_isomorphism(htab[i], gtab[j])) continue;
      match[i] = j;
      used[j] = true;
      if (pick(i + 1)) return true;
      used[j] = false;
      match[i] = -1;
    }
    return false;
  };
  if (!pick(0)) return std::nullopt;

  // assemble f: H -> G collapsing each component onto the matched base point
  Functor f{hp, gp, std::vector<int>(h.arrow_count(), -1),
            std::vector<int>(h.object_count(), -1)};
  for (int i = 0; i < norb; ++i) {
    int eh = han.orbits[i][0];
    int eg = gan.orbits[match[i]][0];
    auto iso = group_isomorphism(htab[i], gtab[match[i]]);
    assert(iso);
    std::vector<int> eta = orbit_section(h, eh, han.orbits[i]);
    std::map<int, int> hpos;
    for (size_t k = 0; k < htab[i].elements.size(); ++k)
      hpos[h.arrow_index(htab[i].elements[k])] = static_cast<int>(k);
    std::vector<int> gelem;
    for (const auto& name : gtab[match[i]].elements)
      gelem.push_back(g.arrow_index(name));
    for (int b : han.orbits[i]) f.object_map[b] = eg;
    for (int a = 0; a < h.arrow_count(); ++a) {
      if (han.orbit_of[h.src(a)] != i) continue;
      int kpart = h.comp(h.inv(eta[h.tgt(a)]), h.comp(a, eta[h.src(a)]));
      f.arrow_map[a] = gelem[(*iso)[hpos.at(kpart)]];
    }
  }
  Diagnostics issues = check_functor(f);
  if (!issues.empty())
    throw std::logic_error("equivalence_functor produced a non-functor\n" +
                           format_diagnostics(issues));
  if (!classify_morphism(f).equivalence)
    throw std::logic_error("equivalence_functor is not an equivalence");
  return f;
}

Diagnostics check_morita_witness(const MoritaWitness& w) {
  Diagnostics issues;
  for (auto [leg, ker, which] :
       {std::tuple{&w.leg_first, &w.ker_first, "first"},
        std::tuple{&w.leg_second, &w.ker_second, "second"}}) {
    Diagnostics fi = check_functor(*leg);
    issues.insert(issues.end(), fi.begin(), fi.end());
    if (!fi.empty()) continue;
    if (!classify_morphism(*leg).s_equivalence)
      issues.push_back({"leg", std::string(which) + " leg is not an s-equivalence"});
    Groupoid kk = kernel(*leg);
    if (kk.arrow_names() != ker->arrow_names())
      issues.push_back({"kernel", std::string(which) + " kernel mismatch"});
    if (!classify(*ker).principal)
      issues.push_back({"kernel", std::string(which) + " kernel is not principal"});
  }
  if (issues.empty()) {
    bool irr = transversality(*w.core, w.ker_first, w.ker_second).kind ==
               Transversality::kTransverse;
    if (irr != w.irreducible)
      issues.push_back({"irreducible", "irreducibility flag is wrong"});
  }
  return issues;
}

MoritaResult morita_equivalent(GroupoidPtr g, GroupoidPtr h) {
  auto f = equivalence_functor(g, h);
  if (!f) return {false, std::nullopt};
  Holograph hol = holograph(*f);
  MoritaWitness w;
  w.core = hol.fraction.num.source;
  w.leg_first = hol.fraction.num;   // -> G
  w.leg_second = hol.fraction.den;  // -> H
  w.ker_first = kernel(w.leg_first);
  w.ker_second = kernel(w.leg_second);
  w.irreducible = transversality(*w.core, w.ker_first, w.ker_second).kind ==
                  Transversality::kTransverse;
  Diagnostics issues = check_morita_witness(w);
  if (!issues.empty())
    throw std::logic_error("morita witness failed validation\n" +
                           format_diagnostics(issues));
  return {true, std::move(w)};
}

MoritaWitness split_base_witness(const MoritaWitness& w) {
  const Groupoid& k = *w.core;
  std::vector<std::string> doubled;
  std::vector<int> fold;
  for (int b = 0; b < k.object_count(); ++b) {
    doubled.push_back("+" + k.object_name(b));
    fold.push_back(b);
  }
  for (int b = 0; b < k.object_count(); ++b) {
    doubled.push_back("-" + k.object_name(b));
    fold.push_back(b);
  }
  PullbackGroupoid pb = pullback_groupoid(w.core, doubled, fold);
  MoritaWitness out;
  out.core = pb.groupoid;
  out.leg_first = compose_functors(w.leg_first, pb.projection);
  out.leg_second = compose_functors(w.leg_second, pb.projection);
  out.ker_first = kernel(out.leg_first);
  out.ker_second = kernel(out.leg_second);
  // the fold kernel sits inside both kernels, so transversality is gone for
  // any nonempty core
  out.irreducible = transversality(*out.core, out.ker_first,
                                   out.ker_second).kind ==
                    Transversality::kTransverse;
  Diagnostics issues = check_morita_witness(out);
  if (!issues.empty())
    throw std::logic_error("split_base_witness failed validation\n" +
                           format_diagnostics(issues));
  return out;
}

HatPresentation hat_presentation(const MoritaWitness& w) {
  const Groupoid& k = *w.core;
  const Groupoid& g = *w.leg_first.target;
  const Groupoid& h = *w.leg_second.target;

  // sections of the two object maps with disjoint images
  std::vector<int> sec_g(g.object_count(), -1), sec_h(h.object_count(), -1);
  std::vector<bool> taken(k.object_count(), false);
  std::function<bool(int, bool)> choose = [&](int b, bool second) -> bool {
    if (!second && b == g.object_count()) return choose(0, true);
    if (second && b == h.object_count()) return true;
    const Functor& leg = second ? w.leg_second : w.leg_first;
    std::vector<int>& sec = second ? sec_h : sec_g;
    for (int e = 0; e < k.object_count(); ++e) {
      if (taken[e] || leg.object_map[e] != b) continue;
      sec[b] = e;
      taken[e] = true;
      if (choose(b + 1, second)) return true;
      taken[e] = false;
      sec[b] = -1;
    }
    return false;
  };
  if (!choose(0, false))
    throw std::invalid_argument(
        "hat_presentation: no disjoint sections of the two bases");

  std::vector<int> kept;
  std::vector<bool> in_first(k.object_count(), false),
      in_second(k.object_count(), false);
  for (int e : sec_g) {
    kept.push_back(e);
    in_first[e] = true;
  }
  for (int e : sec_h) {
    kept.push_back(e);
    in_second[e] = true;
  }
  Groupoid hat = full_restriction_by_index(k, kept);
  HatPresentation out;
  for (int a = 0; a < hat.arrow_count(); ++a) {
    int ksrc = k.object_index(hat.object_name(hat.src(a)));
    int ktgt = k.object_index(hat.object_name(hat.tgt(a)));
    if (in_first[ksrc] && in_first[ktgt]) ++out.count_first;
    if (in_second[ksrc] && in_second[ktgt]) ++out.count_second;
    if (in_first[ksrc] && in_second[ktgt]) ++out.count_cross;
  }
  GroupoidPtr hatp = share(std::move(hat));
  out.hat = hatp;

  auto include = [&](GroupoidPtr base, const Functor& leg,
                     const std::vector<int>& sec) {
    const Groupoid& bg = *base;
    Functor inc{base, hatp, std::vector<int>(bg.arrow_count(), -1),
                std::vector<int>(bg.object_count(), -1)};
    for (int b = 0; b < bg.object_count(); ++b)
      inc.object_map[b] = hatp->object_index(k.object_name(sec[b]));
    for (int a = 0; a < bg.arrow_count(); ++a) {
      int x = sec[bg.src(a)], y = sec[bg.tgt(a)];
      for (int u = 0; u < k.arrow_count(); ++u)
        if (k.src(u) == x && k.tgt(u) == y && leg.arrow_map[u] == a) {
          inc.arrow_map[a] = hatp->arrow_index(k.arrow_name(u));
          break;
        }
      if (inc.arrow_map[a] < 0)
        throw std::logic_error("hat_presentation: inclusion failed");
    }
    Diagnostics issues = check_functor(inc);
    if (!issues.empty())
      throw std::logic_error("hat inclusion is not a functor\n" +
                             format_diagnostics(issues));
    MorphismClassification c = classify_morphism(inc);
    if (!c.i_functor || !c.fully_faithful || !c.equivalence)
      throw std::logic_error("hat inclusion is not an i-equivalence");
    return inc;
  };
  out.include_first = include(w.leg_first.target, w.leg_first, sec_g);
  out.include_second = include(w.leg_second.target, w.leg_second, sec_h);
  return out;
}

// ---------------------------------------------------------------------------
// Covering presentation

CechPresentation cech_presentation(GroupoidPtr g,
                                   const std::vector<std::string>& cover,
                                   const std::vector<int>& r) {
  const Groupoid& gg = *g;
  if (cover.size() != r.size())
    throw std::invalid_argument("cech_presentation: cover sizes differ");
  std::vector<bool> hit(gg.object_count(), false);
  for (int b : r) {
    if (b < 0 || b >= gg.object_count())
      throw std::invalid_argument("cech_presentation: cover map out of range");
    hit[b] = true;
  }
  if (!std::all_of(hit.begin(), hit.end(), [](bool x) { return x; }))
    throw std::invalid_argument("cech_presentation: cover is not surjective");

  PullbackGroupoid hpb = pullback_groupoid(g, cover, r);
  const Groupoid& h = *hpb.groupoid;

  // kernel pair of the cover
  std::vector<std::string> pairs;
  std::vector<int> p1, p2, rr;
  for (int i = 0; i < static_cast<int>(cover.size()); ++i)
    for (int j = 0; j < static_cast<int>(cover.size()); ++j)
      if (r[i] == r[j]) {
        pairs.push_back("(" + cover[i] + "|" + cover[j] + ")");
        p1.push_back(i);
        p2.push_back(j);
        rr.push_back(r[i]);
      }
  PullbackGroupoid kpb = pullback_groupoid(g, pairs, rr);
  const Groupoid& k = *kpb.groupoid;

  // lookup of H-arrows by (tgt object, G-arrow, src object)
  std::map<std::array<int, 3>, int> harrows;
  for (int a = 0; a < h.arrow_count(); ++a)
    harrows[{h.tgt(a), hpb.projection.arrow_map[a], h.src(a)}] = a;

  auto leg = [&](const std::vector<int>& side) {
    Functor f{kpb.groupoid, hpb.groupoid,
              std::vector<int>(k.arrow_count(), -1),
              std::vector<int>(k.object_count(), -1)};
    for (int e = 0; e < k.object_count(); ++e) f.object_map[e] = side[e];
    for (int a = 0; a < k.arrow_count(); ++a)
      f.arrow_map[a] = harrows.at(
          {side[k.tgt(a)], kpb.projection.arrow_map[a], side[k.src(a)]});
    Diagnostics issues = check_functor(f);
    if (!issues.empty())
      throw std::logic_error("cech leg is not a functor\n" +
                             format_diagnostics(issues));
    if (!classify_morphism(f).s_equivalence)
      throw std::logic_error("cech leg is not an s-equivalence");
    return f;
  };
  CechPresentation out;
  out.induced = hpb.groupoid;
  out.induced_projection = hpb.projection;
  out.cover_core = kpb.groupoid;
  out.leg_one = leg(p1);
  out.leg_two = leg(p2);

  // diagonal sections
  std::vector<int> diag(cover.size(), -1);
  for (size_t q = 0; q < pairs.size(); ++q)
    if (p1[q] == p2[q]) diag[p1[q]] = static_cast<int>(q);
  std::map<std::array<int, 3>, int> karrows;
  for (int a = 0; a < k.arrow_count(); ++a)
    karrows[{k.tgt(a), kpb.projection.arrow_map[a], k.src(a)}] = a;
  auto section = [&](const Functor& lg) {
    Functor s{hpb.groupoid, kpb.groupoid,
              std::vector<int>(h.arrow_count(), -1),
              std::vector<int>(h.object_count(), -1)};
    for (int e = 0; e < h.object_count(); ++e) s.object_map[e] = diag[e];
    for (int a = 0; a < h.arrow_count(); ++a)
      s.arrow_map[a] = karrows.at(
          {diag[h.tgt(a)], hpb.projection.arrow_map[a], diag[h.src(a)]});
    Diagnostics issues = check_functor(s);
    if (!issues.empty())
      throw std::logic_error("cech section is not a functor\n" +
                             format_diagnostics(issues));
    for (int a = 0; a < h.arrow_count(); ++a)
      if (lg.arrow_map[s.arrow_map[a]] != a)
        throw std::logic_error("cech section does not split its leg");
    return s;
  };
  out.section_one = section(out.leg_one);
  out.section_two = section(out.leg_two);
  return out;
}

}  // namespace grpd
