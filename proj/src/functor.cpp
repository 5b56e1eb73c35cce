#include "grpd/functor.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace grpd {

namespace {

bool same_shape(const Groupoid& a, const Groupoid& b) {
  return a.object_names() == b.object_names() &&
         a.arrow_names() == b.arrow_names();
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Diagnostics check_functor(const Functor& f) {
  Diagnostics issues;
  const Groupoid& h = *f.source;
  const Groupoid& g = *f.target;
  auto arrow = [&](int a) { return h.arrow_name(a); };
  if (f.arrow_map.size() != static_cast<size_t>(h.arrow_count()) ||
      f.object_map.size() != static_cast<size_t>(h.object_count())) {
    issues.push_back({"totality", "map sizes do not match the source"});
    return issues;
  }
  for (int a = 0; a < h.arrow_count(); ++a)
    if (f.arrow_map[a] < 0 || f.arrow_map[a] >= g.arrow_count()) {
      issues.push_back({"totality", "arrow map out of range at '" + arrow(a) + "'"});
      return issues;
    }
  for (int b = 0; b < h.object_count(); ++b)
    if (f.object_map[b] < 0 || f.object_map[b] >= g.object_count()) {
      issues.push_back({"totality", "object map out of range at '" +
                                        h.object_name(b) + "'"});
      return issues;
    }
  for (int a = 0; a < h.arrow_count(); ++a) {
    if (g.src(f.arrow_map[a]) != f.object_map[h.src(a)])
      issues.push_back({"src-square", "src square violated at arrow '" + arrow(a) + "'"});
    if (g.tgt(f.arrow_map[a]) != f.object_map[h.tgt(a)])
      issues.push_back({"tgt-square", "tgt square violated at arrow '" + arrow(a) + "'"});
    if (f.arrow_map[h.inv(a)] != g.inv(f.arrow_map[a]))
      issues.push_back({"inv-square", "inv square violated at arrow '" + arrow(a) + "'"});
  }
  for (int b = 0; b < h.object_count(); ++b)
    if (f.arrow_map[h.unit(b)] != g.unit(f.object_map[b]))
      issues.push_back({"unit-square", "unit square violated at object '" +
                                           h.object_name(b) + "'"});
  for (int l = 0; l < h.arrow_count(); ++l)
    for (int r = 0; r < h.arrow_count(); ++r)
      if (h.composable(l, r) &&
          f.arrow_map[h.comp(l, r)] !=
              g.comp(f.arrow_map[l], f.arrow_map[r]))
        issues.push_back({"comp-square", "comp square violated at ('" +
                                             arrow(l) + "', '" + arrow(r) + "')"});
  return issues;
}

FunctorValidation validate_functor(const RawFunctor& raw) {
  Diagnostics issues;
  const Groupoid& h = *raw.source;
  const Groupoid& g = *raw.target;
  Functor f{raw.source, raw.target,
            std::vector<int>(h.arrow_count(), -1),
            std::vector<int>(h.object_count(), -1)};
  for (int a = 0; a < h.arrow_count(); ++a) {
    auto it = raw.arrow_map.find(h.arrow_name(a));
    if (it == raw.arrow_map.end()) {
      issues.push_back({"totality", "arrow map missing for '" + h.arrow_name(a) + "'"});
      continue;
    }
    int img = g.arrow_index(it->second);
    if (img < 0)
      issues.push_back({"dangling-reference", "arrow map of '" + h.arrow_name(a) +
                                                  "' names unknown arrow '" +
                                                  it->second + "'"});
    f.arrow_map[a] = img;
  }
  for (int b = 0; b < h.object_count(); ++b) {
    auto it = raw.object_map.find(h.object_name(b));
    if (it == raw.object_map.end()) {
      issues.push_back({"totality", "object map missing for '" + h.object_name(b) + "'"});
      continue;
    }
    int img = g.object_index(it->second);
    if (img < 0)
      issues.push_back({"dangling-reference", "object map of '" + h.object_name(b) +
                                                  "' names unknown object '" +
                                                  it->second + "'"});
    f.object_map[b] = img;
  }
  if (!issues.empty()) return {std::nullopt, issues};
  issues = check_functor(f);
  if (!issues.empty()) return {std::nullopt, issues};
  return {f, {}};
}

Functor identity_functor(GroupoidPtr g) {
  Functor f{g, g, std::vector<int>(g->arrow_count()),
            std::vector<int>(g->object_count())};
  std::iota(f.arrow_map.begin(), f.arrow_map.end(), 0);
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
  if (!same_shape(*f.target, *g.source))
    throw std::invalid_argument("compose_functors: middle groupoids differ");
  Functor out{f.source, g.target, {}, {}};
  out.arrow_map.reserve(f.arrow_map.size());
  for (int a : f.arrow_map) out.arrow_map.push_back(g.arrow_map[a]);
  for (int b : f.object_map) out.object_map.push_back(g.object_map[b]);
  return out;
}

Functor make_functor(
    GroupoidPtr source, GroupoidPtr target,
    const std::function<std::string(const std::string&)>& on_arrow,
    const std::function<std::string(const std::string&)>& on_object) {
  Functor f{source, target, {}, {}};
  for (const auto& name : source->arrow_names()) {
    int img = target->arrow_index(on_arrow(name));
    if (img < 0)
      throw std::logic_error("make_functor: image of arrow '" + name +
                             "' not found");
    f.arrow_map.push_back(img);
  }
  for (const auto& name : source->object_names()) {
    int img = target->object_index(on_object(name));
    if (img < 0)
      throw std::logic_error("make_functor: image of object '" + name +
                             "' not found");
    f.object_map.push_back(img);
  }
  Diagnostics issues = check_functor(f);
  if (!issues.empty())
    throw std::logic_error("make_functor: not a functor\n" +
                           format_diagnostics(issues));
  return f;
}

// ---------------------------------------------------------------------------
// Classification

MorphismClassification classify_morphism(const Functor& f) {
  const Groupoid& h = *f.source;
  const Groupoid& g = *f.target;
  MorphismClassification c;

  std::vector<bool> arrow_hit(g.arrow_count(), false);
  std::vector<bool> object_hit(g.object_count(), false);
  bool arrows_injective = true;
  {
    std::set<int> seen;
    for (int a : f.arrow_map) {
      if (!seen.insert(a).second) arrows_injective = false;
      arrow_hit[a] = true;
    }
    for (int b : f.object_map) object_hit[b] = true;
  }
  bool arrows_surjective =
      std::all_of(arrow_hit.begin(), arrow_hit.end(), [](bool x) { return x; });
  bool objects_surjective = std::all_of(object_hit.begin(), object_hit.end(),
                                        [](bool x) { return x; });
  c.i_functor = arrows_injective;
  c.s_functor = arrows_surjective && objects_surjective;

  // anchor-square comparison: h |-> (f(h), tgt h, src h)
  std::map<std::array<int, 3>, int> anchor_count;
  for (int a = 0; a < h.arrow_count(); ++a)
    ++anchor_count[{f.arrow_map[a], h.tgt(a), h.src(a)}];
  c.faithful = true;
  for (const auto& [key, n] : anchor_count)
    if (n > 1) c.faithful = false;
  c.full = true;
  for (int ga = 0; ga < g.arrow_count() && c.full; ++ga)
    for (int e2 = 0; e2 < h.object_count() && c.full; ++e2) {
      if (f.object_map[e2] != g.tgt(ga)) continue;
      for (int e1 = 0; e1 < h.object_count(); ++e1) {
        if (f.object_map[e1] != g.src(ga)) continue;
        if (!anchor_count.count({ga, e2, e1})) {
          c.full = false;
          break;
        }
      }
    }
  c.fully_faithful = c.faithful && c.full;

  auto gan = analyze_anchor(g);
  std::vector<bool> orbit_hit(gan.orbits.size(), false);
  for (int b : f.object_map) orbit_hit[gan.orbit_of[b]] = true;
  c.essentially_surjective = std::all_of(orbit_hit.begin(), orbit_hit.end(),
                                         [](bool x) { return x; });
  c.equivalence = c.fully_faithful && c.essentially_surjective;
  c.s_equivalence = c.fully_faithful && objects_surjective;
  c.extensor = c.full;
  c.s_extensor = c.extensor && arrows_surjective && objects_surjective;

  // source-square comparison: h |-> (f(h), src h)
  std::map<std::pair<int, int>, int> source_count;
  for (int a = 0; a < h.arrow_count(); ++a)
    ++source_count[{f.arrow_map[a], h.src(a)}];
  bool a_injective = true, a_surjective = true;
  for (const auto& [key, n] : source_count)
    if (n > 1) a_injective = false;
  for (int ga = 0; ga < g.arrow_count() && a_surjective; ++ga)
    for (int e = 0; e < h.object_count(); ++e) {
      if (f.object_map[e] != g.src(ga)) continue;
      if (!source_count.count({ga, e})) {
        a_surjective = false;
        break;
      }
    }
  c.exactor = a_surjective;
  c.actor = a_surjective && a_injective;
  c.s_exactor = c.exactor && arrows_surjective && objects_surjective;

  c.principal_source = classify(h).principal;
  c.null = classify(h).null || classify(g).null;
  return c;
}

std::set<std::string> MorphismClassification::labels() const {
  std::set<std::string> out;
  auto put = [&](bool flag, const char* name) {
    if (flag) out.insert(name);
  };
  put(i_functor, "i-functor");
  put(s_functor, "s-functor");
  put(faithful, "faithful");
  put(full, "full");
  put(fully_faithful, "fully-faithful");
  put(essentially_surjective, "essentially-surjective");
  put(equivalence, "equivalence");
  put(s_equivalence, "s-equivalence");
  put(extensor, "extensor");
  put(s_extensor, "s-extensor");
  put(actor, "actor");
  put(exactor, "exactor");
  put(s_exactor, "s-exactor");
  put(principal_source, "principal-source");
  put(null, "null");
  return out;
}

// ---------------------------------------------------------------------------
// Pullback, kernel, bilateral quotient

PullbackGroupoid pullback_groupoid(GroupoidPtr g,
                                   const std::vector<std::string>& space,
                                   const std::vector<int>& p) {
  if (space.size() != p.size())
    throw std::invalid_argument("pullback_groupoid: map and space sizes differ");
  for (int b : p)
    if (b < 0 || b >= g->object_count())
      throw std::invalid_argument("pullback_groupoid: map value out of range");
  const int ne = static_cast<int>(space.size());
  const int na = g->arrow_count();
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, inv;
  std::vector<int> unit(ne, -1);
  // arrow (e2, a, e1) with a: p(e1) -> p(e2)
  std::vector<std::array<int, 3>> tags;
  std::vector<int> index(static_cast<size_t>(ne) * na * ne, -1);
  auto key = [&](int e2, int a, int e1) {
    return (static_cast<size_t>(e2) * na + a) * ne + e1;
  };
  for (int e2 = 0; e2 < ne; ++e2)
    for (int a = 0; a < na; ++a) {
      if (g->tgt(a) != p[e2]) continue;
      for (int e1 = 0; e1 < ne; ++e1) {
        if (g->src(a) != p[e1]) continue;
        index[key(e2, a, e1)] = static_cast<int>(tags.size());
        tags.push_back({e2, a, e1});
        arrows.push_back("(" + space[e2] + ";" + g->arrow_name(a) + ";" +
                         space[e1] + ")");
        src.push_back(e1);
        tgt.push_back(e2);
      }
    }
  for (const auto& t : tags) inv.push_back(index[key(t[2], g->inv(t[1]), t[0])]);
  for (int e = 0; e < ne; ++e) unit[e] = index[key(e, g->unit(p[e]), e)];
  std::vector<std::array<int, 3>> comp;
  for (size_t l = 0; l < tags.size(); ++l)
    for (size_t r = 0; r < tags.size(); ++r) {
      if (tags[r][0] != tags[l][2]) continue;
      comp.push_back({static_cast<int>(l), static_cast<int>(r),
                      index[key(tags[l][0], g->comp(tags[l][1], tags[r][1]),
                                tags[r][2])]});
    }
  GroupoidPtr pb = share(Groupoid::from_tables(space, arrows, src, tgt, unit,
                                               inv, comp));
  Functor proj{pb, g, {}, {}};
  for (const auto& t : tags) proj.arrow_map.push_back(t[1]);
  proj.object_map = p;
  return {pb, proj};
}

std::vector<int> kernel_arrows(const Functor& f) {
  std::vector<int> out;
  for (int a = 0; a < f.source->arrow_count(); ++a)
    if (f.target->is_unit(f.arrow_map[a])) out.push_back(a);
  return out;
}

Groupoid kernel(const Functor& f) {
  return wide_subgroupoid(*f.source, kernel_arrows(f));
}

namespace {

// Resolves a wide subgroupoid given by value against its ambient groupoid.
std::vector<int> resolve_subgroupoid(const Groupoid& h, const Groupoid& k) {
  if (k.object_names() != h.object_names())
    throw std::invalid_argument("subgroupoid must share the ambient objects");
  std::vector<int> arrows;
  std::vector<bool> present(h.arrow_count(), false);
  for (int a = 0; a < k.arrow_count(); ++a) {
    int img = h.arrow_index(k.arrow_name(a));
    if (img < 0 || h.src(img) != k.src(a) || h.tgt(img) != k.tgt(a))
      throw std::invalid_argument("subgroupoid arrow '" + k.arrow_name(a) +
                                  "' does not occur in the ambient groupoid");
    arrows.push_back(img);
    present[img] = true;
  }
  for (int b = 0; b < h.object_count(); ++b)
    if (!present[h.unit(b)])
      throw std::invalid_argument("subgroupoid is not wide: missing unit of '" +
                                  h.object_name(b) + "'");
  for (int l : arrows) {
    if (!present[h.inv(l)])
      throw std::invalid_argument("subgroupoid not closed under inv");
    for (int r : arrows)
      if (h.composable(l, r) && !present[h.comp(l, r)])
        throw std::invalid_argument("subgroupoid not closed under comp");
  }
  return arrows;
}

}  // namespace

BilateralQuotient bilateral_quotient(GroupoidPtr hp, const Groupoid& k) {
  const Groupoid& h = *hp;
  std::vector<int> karrows = resolve_subgroupoid(h, k);
  std::vector<bool> in_k(h.arrow_count(), false);
  for (int a : karrows) in_k[a] = true;

  // object classes: orbits of k
  UnionFind uf(h.object_count());
  for (int a : karrows) uf.merge(h.src(a), h.tgt(a));

  // arrow classes: closure of h under left/right composition with k
  std::vector<int> cls(h.arrow_count(), -1);
  std::vector<int> rep;  // class -> representative arrow (minimal index)
  for (int a = 0; a < h.arrow_count(); ++a) {
    if (cls[a] >= 0) continue;
    int id = static_cast<int>(rep.size());
    rep.push_back(a);
    std::vector<int> stack = {a};
    cls[a] = id;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int ka : karrows) {
        if (h.composable(ka, x)) {
          int y = h.comp(ka, x);
          if (cls[y] < 0) {
            cls[y] = id;
            stack.push_back(y);
          }
        }
        if (h.composable(x, ka)) {
          int y = h.comp(x, ka);
          if (cls[y] < 0) {
            cls[y] = id;
            stack.push_back(y);
          }
        }
      }
    }
  }
  const int ncls = static_cast<int>(rep.size());

  // well-definedness: class of a composite must only depend on the classes
  std::map<std::pair<int, int>, int> table;
  for (int l = 0; l < h.arrow_count(); ++l)
    for (int r = 0; r < h.arrow_count(); ++r) {
      if (!h.composable(l, r)) continue;
      auto key = std::make_pair(cls[l], cls[r]);
      int value = cls[h.comp(l, r)];
      auto [it, fresh] = table.emplace(key, value);
      if (!fresh && it->second != value)
        throw std::invalid_argument(
            "quotient not well-defined: classes [" +
            h.arrow_name(rep[cls[l]]) + "]*[" + h.arrow_name(rep[cls[r]]) +
            "] land in both [" + h.arrow_name(rep[it->second]) + "] and [" +
            h.arrow_name(rep[value]) + "] (witness pair '" + h.arrow_name(l) +
            "', '" + h.arrow_name(r) + "')");
    }

  // quotient objects
  std::map<int, int> root_to_cls;
  std::vector<std::string> qobjects;
  std::vector<int> objcls(h.object_count());
  for (int b = 0; b < h.object_count(); ++b) {
    int r = uf.find(b);
    auto it = root_to_cls.find(r);
    if (it == root_to_cls.end()) {
      it = root_to_cls.emplace(r, static_cast<int>(qobjects.size())).first;
      qobjects.push_back("");
    }
    objcls[b] = it->second;
    const std::string& name = h.object_name(b);
    if (qobjects[objcls[b]].empty() || name < qobjects[objcls[b]])
      qobjects[objcls[b]] = name;
  }
  for (auto& name : qobjects) name = "[" + name + "]";

  std::vector<std::string> qarrows;
  for (int c = 0; c < ncls; ++c)
    qarrows.push_back("[" + h.arrow_name(rep[c]) + "]");
  std::vector<int> qsrc(ncls), qtgt(ncls), qinv(ncls), qunit(qobjects.size(), -1);
  for (int c = 0; c < ncls; ++c) {
    qsrc[c] = objcls[h.src(rep[c])];
    qtgt[c] = objcls[h.tgt(rep[c])];
    qinv[c] = cls[h.inv(rep[c])];
  }
  for (int b = 0; b < h.object_count(); ++b) qunit[objcls[b]] = cls[h.unit(b)];
  std::vector<std::array<int, 3>> qcomp;
  for (int l = 0; l < ncls; ++l)
    for (int r = 0; r < ncls; ++r) {
      if (qsrc[l] != qtgt[r]) continue;
      // connect representatives through k (possible since the classes match)
      int a = rep[l], b = rep[r], result = -1;
      for (int ka : karrows)
        if (h.src(a) == h.tgt(ka) && h.src(ka) == h.tgt(b)) {
          result = cls[h.comp(h.comp(a, ka), b)];
          break;
        }
      if (result < 0)
        throw std::logic_error("bilateral_quotient: no connecting arrow");
      qcomp.push_back({l, r, result});
    }
  Groupoid q = Groupoid::from_tables(qobjects, qarrows, qsrc, qtgt, qunit,
                                     qinv, qcomp);
  auto check = validate(to_raw(q));
  if (!check.ok())
    throw std::logic_error("bilateral_quotient produced an invalid groupoid\n" +
                           format_diagnostics(check.issues));
  GroupoidPtr qp = share(std::move(q));
  Functor proj{hp, qp, cls, objcls};
  Diagnostics issues = check_functor(proj);
  if (!issues.empty())
    throw std::logic_error("bilateral_quotient projection is not a functor\n" +
                           format_diagnostics(issues));
  return {qp, proj};
}

// ---------------------------------------------------------------------------
// Natural isomorphisms and isomorphism search

std::optional<NaturalTransformation> natural_iso(const Functor& f,
                                                 const Functor& g) {
  if (!same_shape(*f.source, *g.source) || !same_shape(*f.target, *g.target))
    throw std::invalid_argument("natural_iso: functors are not parallel");
  const Groupoid& h = *f.source;
  const Groupoid& t = *f.target;
  const int n = h.object_count();
  std::vector<int> comp(n, -1);

  // arrows grouped by source object for the pruning step
  std::vector<std::vector<int>> outgoing(n);
  for (int a = 0; a < h.arrow_count(); ++a) outgoing[h.src(a)].push_back(a);

  std::function<bool(int)> extend = [&](int b) -> bool {
    if (b == n) return true;
    for (int cand = 0; cand < t.arrow_count(); ++cand) {
      if (t.src(cand) != g.object_map[b] || t.tgt(cand) != f.object_map[b])
        continue;
      comp[b] = cand;
      bool ok = true;
      // naturality on all arrows whose endpoints are both assigned
      for (int x = 0; x <= b && ok; ++x) {
        for (int a : outgoing[x]) {
          int y = h.tgt(a);
          if (y > b || comp[y] < 0) continue;
          // f(a) . comp[x] = comp[y] . g(a)
          if (t.comp(f.arrow_map[a], comp[x]) !=
              t.comp(comp[y], g.arrow_map[a])) {
            ok = false;
            break;
          }
        }
      }
      if (ok && extend(b + 1)) return true;
      comp[b] = -1;
    }
    return false;
  };
  if (extend(0)) return NaturalTransformation{comp};
  return std::nullopt;
}

namespace {

// Per-object section arrows out of a base point of a transitive component:
// eta[b] is the minimal-name arrow e -> b.
std::vector<int> component_section(const Groupoid& g, int e,
                                   const std::vector<int>& objects) {
  std::vector<int> eta(g.object_count(), -1);
  for (int b : objects) {
    int best = -1;
    for (int a = 0; a < g.arrow_count(); ++a)
      if (g.src(a) == e && g.tgt(a) == b)
        if (best < 0 || g.arrow_name(a) < g.arrow_name(best)) best = a;
    if (best < 0) return {};
    eta[b] = best;
  }
  return eta;
}

}  // namespace

std::optional<Functor> find_isomorphism(GroupoidPtr ap, GroupoidPtr bp) {
  const Groupoid& a = *ap;
  const Groupoid& b = *bp;
  if (a.object_count() != b.object_count() || a.arrow_count() != b.arrow_count())
    return std::nullopt;
  auto aan = analyze_anchor(a);
  auto ban = analyze_anchor(b);
  if (aan.orbits.size() != ban.orbits.size()) return std::nullopt;
  const int norb = static_cast<int>(aan.orbits.size());

  // match orbits: equal object counts and isomorphic isotropy
  std::vector<int> match(norb, -1);
  std::vector<bool> used(norb, false);
  std::vector<GroupTable> atab(norb), btab(norb);
  for (int i = 0; i < norb; ++i) {
    atab[i] = isotropy_table(a, aan.orbits[i][0]);
    btab[i] = isotropy_table(b, ban.orbits[i][0]);
  }
  std::function<bool(int)> pick = [&](int i) -> bool {
    if (i == norb) return true;
    for (int j = 0; j < norb; ++j) {
      if (used[j]) continue;
      if (aan.orbits[i].size() != ban.orbits[j].size()) continue;
      if (!group_isomorphism(atab[i], btab[j])) continue;
      match[i] = j;
      used[j] = true;
      if (pick(i + 1)) return true;
      used[j] = false;
      match[i] = -1;
    }
    return false;
  };
  if (!pick(0)) return std::nullopt;

  // assemble the isomorphism componentwise through base points and sections
  std::vector<int> object_map(a.object_count(), -1);
  std::vector<int> arrow_map(a.arrow_count(), -1);
  for (int i = 0; i < norb; ++i) {
    const auto& aobjs = aan.orbits[i];
    const auto& bobjs = ban.orbits[match[i]];
    int ea = aobjs[0], eb = bobjs[0];
    auto iso = group_isomorphism(atab[i], btab[match[i]]);
    assert(iso);
    std::vector<int> eta_a = component_section(a, ea, aobjs);
    std::vector<int> eta_b = component_section(b, eb, bobjs);
    assert(!eta_a.empty() && !eta_b.empty());
    for (size_t k = 0; k < aobjs.size(); ++k) object_map[aobjs[k]] = bobjs[k];
    // isotropy arrow index -> position in the table
    std::map<int, int> apos;
    for (size_t k = 0; k < atab[i].elements.size(); ++k)
      apos[a.arrow_index(atab[i].elements[k])] = static_cast<int>(k);
    std::vector<int> belem;
    for (const auto& name : btab[match[i]].elements)
      belem.push_back(b.arrow_index(name));
    for (int g = 0; g < a.arrow_count(); ++g) {
      if (aan.orbit_of[a.src(g)] != i) continue;
      // group part: eta(tgt)^-1 . g . eta(src)
      int kpart = a.comp(a.inv(eta_a[a.tgt(g)]), a.comp(g, eta_a[a.src(g)]));
      int image_k = belem[(*iso)[apos.at(kpart)]];
      int bsrc = object_map[a.src(g)], btgt = object_map[a.tgt(g)];
      arrow_map[g] =
          b.comp(eta_b[btgt], b.comp(image_k, b.inv(eta_b[bsrc])));
    }
  }
  Functor f{ap, bp, arrow_map, object_map};
  Diagnostics issues = check_functor(f);
  if (!issues.empty())
    throw std::logic_error("find_isomorphism produced a non-functor\n" +
                           format_diagnostics(issues));
  MorphismClassification c = classify_morphism(f);
  if (!c.i_functor || !c.s_functor)
    throw std::logic_error("find_isomorphism produced a non-bijective map");
  return f;
}

std::vector<Functor> enumerate_functors(GroupoidPtr hp, GroupoidPtr gp) {
  const Groupoid& h = *hp;
  const Groupoid& g = *gp;
  std::vector<Functor> out;
  const int nobj = h.object_count();
  std::vector<int> omap(nobj, 0);

  std::function<void(int)> per_object_map = [&](int next) {
    if (next < nobj) {
      for (int img = 0; img < g.object_count(); ++img) {
        omap[next] = img;
        per_object_map(next + 1);
      }
      return;
    }
    // arrow assignment with forced units/inverses and comp pruning
    std::vector<int> amap(h.arrow_count(), -1);
    for (int b = 0; b < nobj; ++b) amap[h.unit(b)] = g.unit(omap[b]);
    std::function<bool(int)> assign = [&](int a) -> bool {
      while (a < h.arrow_count() && amap[a] >= 0) ++a;
      if (a == h.arrow_count()) {
        Functor f{hp, gp, amap, omap};
        if (check_functor(f).empty()) out.push_back(f);
        return false;  // keep enumerating
      }
      for (int cand = 0; cand < g.arrow_count(); ++cand) {
        if (g.src(cand) != omap[h.src(a)] || g.tgt(cand) != omap[h.tgt(a)])
          continue;
        std::vector<std::pair<int, int>> forced;
        auto force = [&](int arrow, int image) {
          if (amap[arrow] >= 0) return amap[arrow] == image;
          amap[arrow] = image;
          forced.push_back({arrow, image});
          return true;
        };
        bool ok = force(a, cand) && force(h.inv(a), g.inv(cand));
        // close against already-assigned arrows
        for (int x = 0; x < h.arrow_count() && ok; ++x) {
          if (amap[x] < 0) continue;
          if (h.composable(a, x)) ok = ok && force(h.comp(a, x), g.comp(amap[a], amap[x]));
          if (ok && h.composable(x, a))
            ok = ok && force(h.comp(x, a), g.comp(amap[x], amap[a]));
        }
        if (ok) assign(a + 1);
        for (auto& [arrow, image] : forced) amap[arrow] = -1;
      }
      return false;
    };
    assign(0);
  };
  if (nobj == 0) {
    Functor f{hp, gp, {}, {}};
    out.push_back(f);
    return out;
  }
  per_object_map(0);
  return out;
}

}  // namespace grpd
