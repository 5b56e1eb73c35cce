#include "grpd/groupoid.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace grpd {

namespace {

constexpr size_t kMaxArrows = 4096;  // flat composition table bound

// Union-find on object indices.
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

std::string format_diagnostics(const Diagnostics& issues) {
  std::ostringstream os;
  for (const auto& d : issues) os << d.rule << ": " << d.detail << "\n";
  return os.str();
}

int Groupoid::object_index(const std::string& name) const {
  auto it = object_index_.find(name);
  return it == object_index_.end() ? -1 : it->second;
}

int Groupoid::arrow_index(const std::string& name) const {
  auto it = arrow_index_.find(name);
  return it == arrow_index_.end() ? -1 : it->second;
}

std::vector<int> Groupoid::hom(int b, int c) const {
  std::vector<int> out;
  for (int a = 0; a < arrow_count(); ++a)
    if (src_[a] == b && tgt_[a] == c) out.push_back(a);
  return out;
}

Groupoid Groupoid::from_tables(std::vector<std::string> objects,
                               std::vector<std::string> arrows,
                               std::vector<int> src, std::vector<int> tgt,
                               std::vector<int> unit, std::vector<int> inv,
                               const std::vector<std::array<int, 3>>& compose) {
  if (arrows.size() > kMaxArrows)
    throw std::length_error("groupoid too large: " +
                            std::to_string(arrows.size()) + " arrows");
  Groupoid g;
  g.object_names_ = std::move(objects);
  g.arrow_names_ = std::move(arrows);
  g.src_ = std::move(src);
  g.tgt_ = std::move(tgt);
  g.unit_ = std::move(unit);
  g.inv_ = std::move(inv);
  const size_t n = g.arrow_names_.size();
  assert(g.src_.size() == n && g.tgt_.size() == n && g.inv_.size() == n);
  assert(g.unit_.size() == g.object_names_.size());
  g.comp_.assign(n * n, -1);
  for (const auto& [l, r, res] : compose) {
    assert(g.src_[l] == g.tgt_[r]);
    g.comp_[static_cast<size_t>(l) * n + r] = res;
  }
  for (int i = 0; i < g.object_count(); ++i) {
    auto [_, fresh] = g.object_index_.emplace(g.object_names_[i], i);
    assert(fresh);
    (void)fresh;
  }
  for (int i = 0; i < g.arrow_count(); ++i) {
    auto [_, fresh] = g.arrow_index_.emplace(g.arrow_names_[i], i);
    assert(fresh);
    (void)fresh;
  }
  return g;
}

GroupoidPtr share(Groupoid g) {
  return std::make_shared<const Groupoid>(std::move(g));
}

// ---------------------------------------------------------------------------
// Validation

ValidationResult validate(const RawGroupoid& raw) {
  Diagnostics issues;
  auto report = [&](const std::string& rule, const std::string& detail) {
    issues.push_back({rule, detail});
  };

  std::map<std::string, int> ob, ar;
  for (size_t i = 0; i < raw.objects.size(); ++i) {
    if (!ob.emplace(raw.objects[i], static_cast<int>(i)).second)
      report("duplicate-id", "object '" + raw.objects[i] + "' declared twice");
  }
  for (size_t i = 0; i < raw.arrows.size(); ++i) {
    if (!ar.emplace(raw.arrows[i], static_cast<int>(i)).second)
      report("duplicate-id", "arrow '" + raw.arrows[i] + "' declared twice");
    if (ob.count(raw.arrows[i]))
      report("duplicate-id",
             "identifier '" + raw.arrows[i] + "' is both object and arrow");
  }
  if (!issues.empty()) return {std::nullopt, issues};

  const int nobj = static_cast<int>(raw.objects.size());
  const int narr = static_cast<int>(raw.arrows.size());

  auto lookup = [&](const std::map<std::string, std::string>& table,
                    const std::string& key, const std::map<std::string, int>& ids,
                    const char* what, const char* in) -> int {
    auto it = table.find(key);
    if (it == table.end()) {
      report("totality", std::string(in) + " missing for " + what + " '" +
                             key + "'");
      return -1;
    }
    auto jt = ids.find(it->second);
    if (jt == ids.end()) {
      report("dangling-reference", std::string(in) + " of '" + key +
                                       "' names unknown id '" + it->second +
                                       "'");
      return -1;
    }
    return jt->second;
  };

  std::vector<int> src(narr, -1), tgt(narr, -1), inv(narr, -1);
  std::vector<int> unit(nobj, -1);
  for (int a = 0; a < narr; ++a) {
    src[a] = lookup(raw.src, raw.arrows[a], ob, "arrow", "src");
    tgt[a] = lookup(raw.tgt, raw.arrows[a], ob, "arrow", "tgt");
    inv[a] = lookup(raw.inv, raw.arrows[a], ar, "arrow", "inv");
  }
  for (int b = 0; b < nobj; ++b)
    unit[b] = lookup(raw.unit, raw.objects[b], ar, "object", "unit");
  if (!issues.empty()) return {std::nullopt, issues};

  // unit endpoints
  for (int b = 0; b < nobj; ++b) {
    int u = unit[b];
    if (src[u] != b || tgt[u] != b)
      report("unit-endpoints", "unit '" + raw.arrows[u] + "' of object '" +
                                   raw.objects[b] + "' has src '" +
                                   raw.objects[src[u]] + "', tgt '" +
                                   raw.objects[tgt[u]] + "'");
  }

  // inverse endpoints and involution
  for (int a = 0; a < narr; ++a) {
    if (inv[inv[a]] != a)
      report("inverse-involution", "inv(inv('" + raw.arrows[a] +
                                       "')) = '" + raw.arrows[inv[inv[a]]] +
                                       "'");
    if (src[inv[a]] != tgt[a] || tgt[inv[a]] != src[a])
      report("inverse-law-left", "inverse law violated at arrow '" +
                                     raw.arrows[a] +
                                     "' (endpoints of inverse are wrong)");
  }

  // composition table: domain and endpoint laws
  size_t comp_issues_before = issues.size();
  std::vector<int> comp(static_cast<size_t>(narr) * narr, -1);
  for (const auto& triple : raw.compose) {
    int l = ar.count(triple[0]) ? ar[triple[0]] : -1;
    int r = ar.count(triple[1]) ? ar[triple[1]] : -1;
    int res = ar.count(triple[2]) ? ar[triple[2]] : -1;
    if (l < 0 || r < 0 || res < 0) {
      report("dangling-reference",
             "compose entry (" + triple[0] + ", " + triple[1] + ", " +
                 triple[2] + ") names an unknown arrow");
      continue;
    }
    if (src[l] != tgt[r]) {
      report("comp-domain", "compose defined on non-composable pair ('" +
                                triple[0] + "', '" + triple[1] + "')");
      continue;
    }
    if (comp[static_cast<size_t>(l) * narr + r] >= 0) {
      report("duplicate-id", "compose entry ('" + triple[0] + "', '" +
                                 triple[1] + "') given twice");
      continue;
    }
    comp[static_cast<size_t>(l) * narr + r] = res;
    if (src[res] != src[r] || tgt[res] != tgt[l])
      report("comp-endpoints",
             "composite '" + triple[2] + "' of ('" + triple[0] + "', '" +
                 triple[1] + "') has wrong endpoints");
  }
  for (int l = 0; l < narr; ++l)
    for (int r = 0; r < narr; ++r)
      if (src[l] == tgt[r] && comp[static_cast<size_t>(l) * narr + r] < 0)
        report("comp-domain", "composable pair ('" + raw.arrows[l] + "', '" +
                                  raw.arrows[r] +
                                  "') has no compose entry");
  // the laws below read the table, so stop here when it is unusable
  if (issues.size() > comp_issues_before) return {std::nullopt, issues};

  auto cmp = [&](int l, int r) { return comp[static_cast<size_t>(l) * narr + r]; };

  // unit laws; guard against units with wrong endpoints
  for (int a = 0; a < narr; ++a) {
    int ru = unit[src[a]], lu = unit[tgt[a]];
    if (src[a] == tgt[ru] && cmp(a, ru) != a)
      report("unit-law-right", "g.unit(src(g)) != g at arrow '" +
                                   raw.arrows[a] + "'");
    if (src[lu] == tgt[a] && cmp(lu, a) != a)
      report("unit-law-left", "unit(tgt(g)).g != g at arrow '" +
                                  raw.arrows[a] + "'");
  }

  // inverse composition laws, where the endpoints allow composing
  for (int a = 0; a < narr; ++a) {
    if (src[inv[a]] != tgt[a] || tgt[inv[a]] != src[a]) continue;
    if (cmp(a, inv[a]) != unit[tgt[a]])
      report("inverse-law-left", "inverse law violated at arrow '" +
                                     raw.arrows[a] + "': g.inv(g) is not a unit");
    if (cmp(inv[a], a) != unit[src[a]])
      report("inverse-law-right", "inverse law violated at arrow '" +
                                      raw.arrows[a] +
                                      "': inv(g).g is not a unit");
  }

  // associativity over all composable triples
  for (int f = 0; f < narr && issues.size() < 1000; ++f)
    for (int g = 0; g < narr; ++g) {
      if (src[f] != tgt[g]) continue;
      int fg = cmp(f, g);
      for (int h = 0; h < narr; ++h) {
        if (src[g] != tgt[h]) continue;
        int gh = cmp(g, h);
        if (cmp(fg, h) != cmp(f, gh)) {
          report("associativity", "(f.g).h != f.(g.h) for f='" +
                                      raw.arrows[f] + "', g='" + raw.arrows[g] +
                                      "', h='" + raw.arrows[h] + "'");
        }
      }
    }

  if (!issues.empty()) return {std::nullopt, issues};

  std::vector<std::array<int, 3>> triples;
  for (int l = 0; l < narr; ++l)
    for (int r = 0; r < narr; ++r)
      if (src[l] == tgt[r])
        triples.push_back({l, r, cmp(l, r)});
  return {Groupoid::from_tables(raw.objects, raw.arrows, src, tgt, unit, inv,
                                triples),
          {}};
}

RawGroupoid to_raw(const Groupoid& g) {
  RawGroupoid raw;
  raw.objects = g.object_names();
  raw.arrows = g.arrow_names();
  for (int a = 0; a < g.arrow_count(); ++a) {
    raw.src[g.arrow_name(a)] = g.object_name(g.src(a));
    raw.tgt[g.arrow_name(a)] = g.object_name(g.tgt(a));
    raw.inv[g.arrow_name(a)] = g.arrow_name(g.inv(a));
  }
  for (int b = 0; b < g.object_count(); ++b)
    raw.unit[g.object_name(b)] = g.arrow_name(g.unit(b));
  for (int l = 0; l < g.arrow_count(); ++l)
    for (int r = 0; r < g.arrow_count(); ++r)
      if (g.composable(l, r))
        raw.compose.push_back(
            {g.arrow_name(l), g.arrow_name(r), g.arrow_name(g.comp(l, r))});
  return raw;
}

// ---------------------------------------------------------------------------
// Group tables

std::optional<std::string> check_group_table(const GroupTable& t) {
  const int n = t.order();
  if (n == 0) return "empty element set";
  if (t.mult.size() != static_cast<size_t>(n) * n) return "multiplication table has wrong size";
  if (t.identity < 0 || t.identity >= n) return "identity out of range";
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = t.times(a, b);
      if (ab < 0 || ab >= n) return "entry out of range";
    }
  for (int a = 0; a < n; ++a)
    if (t.times(a, t.identity) != a || t.times(t.identity, a) != a)
      return "identity law fails at element '" + t.elements[a] + "'";
  for (int a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (int b = 0; b < n; ++b)
      if (t.times(a, b) == t.identity && t.times(b, a) == t.identity)
        has_inverse = true;
    if (!has_inverse)
      return "no inverse for element '" + t.elements[a] + "'";
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t.times(t.times(a, b), c) != t.times(a, t.times(b, c)))
          return "associativity fails at ('" + t.elements[a] + "', '" +
                 t.elements[b] + "', '" + t.elements[c] + "')";
  return std::nullopt;
}

GroupTable cyclic_table(int n) {
  GroupTable t;
  t.name = "Z" + std::to_string(n);
  for (int i = 0; i < n; ++i) t.elements.push_back(std::to_string(i));
  t.mult.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.mult[static_cast<size_t>(a) * n + b] = (a + b) % n;
  t.identity = 0;
  return t;
}

GroupTable klein_table() {
  GroupTable t = product_table(cyclic_table(2), cyclic_table(2));
  t.name = "V4";
  return t;
}

GroupTable symmetric3_table() {
  // permutations of {0,1,2}; composition acts left-to-right through indices
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                           {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  std::vector<std::string> names = {"e", "r", "rr", "s", "sr", "srr"};
  GroupTable t;
  t.name = "S3";
  t.elements = names;
  t.mult.resize(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> ab{};
      for (int i = 0; i < 3; ++i) ab[i] = perms[a][perms[b][i]];
      int idx = -1;
      for (int k = 0; k < 6; ++k)
        if (perms[k] == ab) idx = k;
      t.mult[static_cast<size_t>(a) * 6 + b] = idx;
    }
  t.identity = 0;
  return t;
}

GroupTable dihedral4_table() {
  // elements s^a r^i with r^4 = s^2 = e and r s = s r^-1
  GroupTable t;
  t.name = "D4";
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 4; ++i)
      t.elements.push_back((a ? "s" : "") + std::string("r") +
                           std::to_string(i));
  t.mult.resize(64);
  auto id = [](int a, int i) { return a * 4 + i; };
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 4; ++i)
      for (int b = 0; b < 2; ++b)
        for (int j = 0; j < 4; ++j) {
          // (s^a r^i)(s^b r^j) = s^(a+b) r^(j + (b ? -i : i))
          int exp = ((b ? -i : i) + j) % 4;
          if (exp < 0) exp += 4;
          t.mult[static_cast<size_t>(id(a, i)) * 8 + id(b, j)] =
              id((a + b) % 2, exp);
        }
  t.identity = 0;
  return t;
}

GroupTable quaternion_table() {
  // elements 1,-1,i,-i,j,-j,k,-k encoded as (axis, sign)
  GroupTable t;
  t.name = "Q8";
  t.elements = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  t.mult.resize(64);
  auto enc = [](int axis, int sign) { return axis * 2 + (sign < 0 ? 1 : 0); };
  auto axis_of = [](int e) { return e / 2; };
  auto sign_of = [](int e) { return e % 2 ? -1 : 1; };
  // axis multiplication: 0=1, 1=i, 2=j, 3=k
  static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sg[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int axis = ax[axis_of(a)][axis_of(b)];
      int sign = sign_of(a) * sign_of(b) * sg[axis_of(a)][axis_of(b)];
      t.mult[static_cast<size_t>(a) * 8 + b] = enc(axis, sign);
    }
  t.identity = 0;
  return t;
}

GroupTable product_table(const GroupTable& a, const GroupTable& b) {
  GroupTable t;
  t.name = a.name + "x" + b.name;
  const int n = a.order(), m = b.order();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      t.elements.push_back("(" + a.elements[i] + "," + b.elements[j] + ")");
  t.mult.resize(static_cast<size_t>(n) * m * n * m);
  auto id = [m](int i, int j) { return i * m + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < m; ++l)
          t.mult[static_cast<size_t>(id(i, j)) * n * m + id(k, l)] =
              id(a.times(i, k), b.times(j, l));
  t.identity = id(a.identity, b.identity);
  return t;
}

namespace {

bool extend_group_iso(const GroupTable& a, const GroupTable& b,
                      std::vector<int>& map, std::vector<bool>& used, int next) {
  const int n = a.order();
  if (next == n) return true;
  if (map[next] >= 0) return extend_group_iso(a, b, map, used, next + 1);
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    map[next] = cand;
    used[cand] = true;
    bool ok = true;
    // products with every already-assigned element must be assigned consistently
    std::vector<std::pair<int, int>> forced;
    for (int x = 0; x < n && ok; ++x) {
      if (map[x] < 0) continue;
      for (auto [p, q] : {std::pair{next, x}, std::pair{x, next}}) {
        int pq = a.times(p, q);
        int img = b.times(map[p], map[q]);
        if (map[pq] >= 0) {
          if (map[pq] != img) { ok = false; break; }
        } else {
          if (used[img]) { ok = false; break; }
          map[pq] = img;
          used[img] = true;
          forced.push_back({pq, img});
        }
      }
    }
    if (ok && extend_group_iso(a, b, map, used, next + 1)) return true;
    for (auto [pq, img] : forced) {
      map[pq] = -1;
      used[img] = false;
    }
    map[next] = -1;
    used[cand] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> group_isomorphism(const GroupTable& a,
                                                  const GroupTable& b) {
  if (a.order() != b.order()) return std::nullopt;
  std::vector<int> map(a.order(), -1);
  std::vector<bool> used(b.order(), false);
  map[a.identity] = b.identity;
  used[b.identity] = true;
  if (extend_group_iso(a, b, map, used, 0)) return map;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructors

Groupoid pair_groupoid(const std::vector<std::string>& objects) {
  const int n = static_cast<int>(objects.size());
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, inv, unit(n);
  auto idx = [n](int to, int from) { return to * n + from; };
  for (int to = 0; to < n; ++to)
    for (int from = 0; from < n; ++from) {
      arrows.push_back("(" + objects[to] + "," + objects[from] + ")");
      src.push_back(from);
      tgt.push_back(to);
      inv.push_back(idx(from, to));
    }
  for (int b = 0; b < n; ++b) unit[b] = idx(b, b);
  std::vector<std::array<int, 3>> comp;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        comp.push_back({idx(i, j), idx(j, k), idx(i, k)});
  return Groupoid::from_tables(objects, arrows, src, tgt, unit, inv, comp);
}

Groupoid null_groupoid(const std::vector<std::string>& objects) {
  const int n = static_cast<int>(objects.size());
  std::vector<std::string> arrows;
  std::vector<int> src(n), tgt(n), inv(n), unit(n);
  std::vector<std::array<int, 3>> comp;
  for (int b = 0; b < n; ++b) {
    arrows.push_back("1_" + objects[b]);
    src[b] = tgt[b] = b;
    inv[b] = b;
    unit[b] = b;
    comp.push_back({b, b, b});
  }
  return Groupoid::from_tables(objects, arrows, src, tgt, unit, inv, comp);
}

Groupoid group_groupoid(const GroupTable& table, const std::string& object) {
  if (auto err = check_group_table(table))
    throw std::invalid_argument("not a group table: " + *err);
  const int n = table.order();
  std::vector<int> src(n, 0), tgt(n, 0), inv(n, -1), unit = {table.identity};
  std::vector<std::array<int, 3>> comp;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      comp.push_back({a, b, table.times(a, b)});
      if (table.times(a, b) == table.identity && table.times(b, a) == table.identity)
        inv[a] = b;
    }
  }
  return Groupoid::from_tables({object}, table.elements, src, tgt, unit, inv,
                               comp);
}

Groupoid equivalence_groupoid(
    const std::vector<std::string>& objects,
    const std::vector<std::pair<std::string, std::string>>& relation) {
  const int n = static_cast<int>(objects.size());
  std::map<std::string, int> ob;
  for (int i = 0; i < n; ++i) ob[objects[i]] = i;
  std::set<std::pair<int, int>> rel;
  for (const auto& [b, a] : relation) {
    if (!ob.count(b) || !ob.count(a))
      throw std::invalid_argument("relation names unknown object");
    rel.insert({ob[b], ob[a]});
  }
  for (int i = 0; i < n; ++i)
    if (!rel.count({i, i}))
      throw std::invalid_argument("relation not reflexive at '" + objects[i] +
                                  "'");
  for (auto [b, a] : rel) {
    if (!rel.count({a, b}))
      throw std::invalid_argument("relation not symmetric at ('" + objects[b] +
                                  "', '" + objects[a] + "')");
    for (auto [d, c] : rel)
      if (d == a && !rel.count({b, c}))
        throw std::invalid_argument("relation not transitive at ('" +
                                    objects[b] + "', '" + objects[a] + "', '" +
                                    objects[c] + "')");
  }
  // arrows are the related pairs (to, from)
  std::vector<std::pair<int, int>> pairs(rel.begin(), rel.end());
  std::map<std::pair<int, int>, int> idx;
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, inv, unit(n);
  for (size_t i = 0; i < pairs.size(); ++i) {
    idx[pairs[i]] = static_cast<int>(i);
    arrows.push_back("(" + objects[pairs[i].first] + "," +
                     objects[pairs[i].second] + ")");
    tgt.push_back(pairs[i].first);
    src.push_back(pairs[i].second);
  }
  for (const auto& p : pairs) inv.push_back(idx[{p.second, p.first}]);
  for (int b = 0; b < n; ++b) unit[b] = idx[{b, b}];
  std::vector<std::array<int, 3>> comp;
  for (size_t l = 0; l < pairs.size(); ++l)
    for (size_t r = 0; r < pairs.size(); ++r)
      if (pairs[l].second == pairs[r].first)
        comp.push_back({static_cast<int>(l), static_cast<int>(r),
                        idx[{pairs[l].first, pairs[r].second}]});
  return Groupoid::from_tables(objects, arrows, src, tgt, unit, inv, comp);
}

Groupoid plurigroup_groupoid(const std::vector<GroupTable>& tables) {
  Groupoid out = null_groupoid({});
  for (size_t k = 0; k < tables.size(); ++k) {
    GroupTable t = tables[k];
    std::string prefix = std::to_string(k) + ":";
    for (auto& e : t.elements) e = prefix + e;
    out = disjoint_union(out, group_groupoid(t, prefix + "*"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Combinators

Groupoid opposite(const Groupoid& g) {
  std::vector<int> src(g.arrow_count()), tgt(g.arrow_count()),
      inv(g.arrow_count()), unit(g.object_count());
  std::vector<std::array<int, 3>> comp;
  for (int a = 0; a < g.arrow_count(); ++a) {
    src[a] = g.tgt(a);
    tgt[a] = g.src(a);
    inv[a] = g.inv(a);
  }
  for (int b = 0; b < g.object_count(); ++b) unit[b] = g.unit(b);
  for (int l = 0; l < g.arrow_count(); ++l)
    for (int r = 0; r < g.arrow_count(); ++r)
      if (g.composable(r, l)) comp.push_back({l, r, g.comp(r, l)});
  return Groupoid::from_tables(g.object_names(), g.arrow_names(), src, tgt,
                               unit, inv, comp);
}

Groupoid product(const Groupoid& a, const Groupoid& b) {
  std::vector<std::string> objects, arrows;
  const int bo = b.object_count(), ba = b.arrow_count();
  for (int i = 0; i < a.object_count(); ++i)
    for (int j = 0; j < bo; ++j)
      objects.push_back("(" + a.object_name(i) + "," + b.object_name(j) + ")");
  std::vector<int> src, tgt, inv, unit;
  auto oid = [bo](int i, int j) { return i * bo + j; };
  auto aid = [ba](int i, int j) { return i * ba + j; };
  for (int i = 0; i < a.arrow_count(); ++i)
    for (int j = 0; j < ba; ++j) {
      arrows.push_back("(" + a.arrow_name(i) + "," + b.arrow_name(j) + ")");
      src.push_back(oid(a.src(i), b.src(j)));
      tgt.push_back(oid(a.tgt(i), b.tgt(j)));
      inv.push_back(aid(a.inv(i), b.inv(j)));
    }
  for (int i = 0; i < a.object_count(); ++i)
    for (int j = 0; j < bo; ++j)
      unit.push_back(aid(a.unit(i), b.unit(j)));
  std::vector<std::array<int, 3>> comp;
  for (int l1 = 0; l1 < a.arrow_count(); ++l1)
    for (int r1 = 0; r1 < a.arrow_count(); ++r1) {
      if (!a.composable(l1, r1)) continue;
      for (int l2 = 0; l2 < ba; ++l2)
        for (int r2 = 0; r2 < ba; ++r2)
          if (b.composable(l2, r2))
            comp.push_back({aid(l1, l2), aid(r1, r2),
                            aid(a.comp(l1, r1), b.comp(l2, r2))});
    }
  return Groupoid::from_tables(objects, arrows, src, tgt, unit, inv, comp);
}

Groupoid disjoint_union(const Groupoid& a, const Groupoid& b) {
  std::vector<std::string> objects = a.object_names();
  std::vector<std::string> arrows = a.arrow_names();
  // keep names when disjoint; qualify on collision
  std::set<std::string> obs(objects.begin(), objects.end());
  std::set<std::string> ars(arrows.begin(), arrows.end());
  auto obname = [&](const std::string& n) {
    return obs.count(n) ? n + "'" : n;
  };
  auto arname = [&](const std::string& n) {
    return ars.count(n) ? n + "'" : n;
  };
  for (int j = 0; j < b.object_count(); ++j) objects.push_back(obname(b.object_name(j)));
  for (int j = 0; j < b.arrow_count(); ++j) arrows.push_back(arname(b.arrow_name(j)));
  const int oo = a.object_count(), ao = a.arrow_count();
  std::vector<int> src, tgt, inv, unit;
  for (int i = 0; i < ao; ++i) {
    src.push_back(a.src(i));
    tgt.push_back(a.tgt(i));
    inv.push_back(a.inv(i));
  }
  for (int j = 0; j < b.arrow_count(); ++j) {
    src.push_back(oo + b.src(j));
    tgt.push_back(oo + b.tgt(j));
    inv.push_back(ao + b.inv(j));
  }
  for (int i = 0; i < oo; ++i) unit.push_back(a.unit(i));
  for (int j = 0; j < b.object_count(); ++j) unit.push_back(ao + b.unit(j));
  std::vector<std::array<int, 3>> comp;
  for (int l = 0; l < ao; ++l)
    for (int r = 0; r < ao; ++r)
      if (a.composable(l, r)) comp.push_back({l, r, a.comp(l, r)});
  for (int l = 0; l < b.arrow_count(); ++l)
    for (int r = 0; r < b.arrow_count(); ++r)
      if (b.composable(l, r))
        comp.push_back({ao + l, ao + r, ao + b.comp(l, r)});
  return Groupoid::from_tables(objects, arrows, src, tgt, unit, inv, comp);
}

Groupoid full_restriction_by_index(const Groupoid& g,
                                   const std::vector<int>& objects) {
  std::vector<bool> keep(g.object_count(), false);
  for (int b : objects) {
    if (b < 0 || b >= g.object_count())
      throw std::invalid_argument("full_restriction: object out of range");
    keep[b] = true;
  }
  std::vector<int> omap(g.object_count(), -1), amap(g.arrow_count(), -1);
  std::vector<std::string> obs, ars;
  for (int b = 0; b < g.object_count(); ++b)
    if (keep[b]) {
      omap[b] = static_cast<int>(obs.size());
      obs.push_back(g.object_name(b));
    }
  std::vector<int> src, tgt, inv, unit(obs.size());
  std::vector<int> kept;
  for (int a = 0; a < g.arrow_count(); ++a)
    if (keep[g.src(a)] && keep[g.tgt(a)]) {
      amap[a] = static_cast<int>(ars.size());
      ars.push_back(g.arrow_name(a));
      kept.push_back(a);
    }
  for (int a : kept) {
    src.push_back(omap[g.src(a)]);
    tgt.push_back(omap[g.tgt(a)]);
    inv.push_back(amap[g.inv(a)]);
  }
  for (int b = 0; b < g.object_count(); ++b)
    if (keep[b]) unit[omap[b]] = amap[g.unit(b)];
  std::vector<std::array<int, 3>> comp;
  for (int l : kept)
    for (int r : kept)
      if (g.composable(l, r))
        comp.push_back({amap[l], amap[r], amap[g.comp(l, r)]});
  return Groupoid::from_tables(obs, ars, src, tgt, unit, inv, comp);
}

Groupoid full_restriction(const Groupoid& g,
                          const std::vector<std::string>& objects) {
  std::vector<int> idx;
  for (const auto& name : objects) {
    int b = g.object_index(name);
    if (b < 0)
      throw std::invalid_argument("full_restriction: '" + name +
                                  "' is not an object");
    idx.push_back(b);
  }
  return full_restriction_by_index(g, idx);
}

Groupoid wide_subgroupoid(const Groupoid& g, const std::vector<int>& arrows) {
  std::vector<bool> keep(g.arrow_count(), false);
  for (int a : arrows) keep[a] = true;
  for (int b = 0; b < g.object_count(); ++b)
    if (!keep[g.unit(b)])
      throw std::invalid_argument("wide_subgroupoid: missing unit of '" +
                                  g.object_name(b) + "'");
  for (int a = 0; a < g.arrow_count(); ++a) {
    if (!keep[a]) continue;
    if (!keep[g.inv(a)])
      throw std::invalid_argument("wide_subgroupoid: not closed under inv at '" +
                                  g.arrow_name(a) + "'");
    for (int r = 0; r < g.arrow_count(); ++r)
      if (keep[r] && g.composable(a, r) && !keep[g.comp(a, r)])
        throw std::invalid_argument(
            "wide_subgroupoid: not closed under comp at ('" + g.arrow_name(a) +
            "', '" + g.arrow_name(r) + "')");
  }
  std::vector<int> amap(g.arrow_count(), -1);
  std::vector<std::string> ars;
  std::vector<int> kept;
  for (int a = 0; a < g.arrow_count(); ++a)
    if (keep[a]) {
      amap[a] = static_cast<int>(ars.size());
      ars.push_back(g.arrow_name(a));
      kept.push_back(a);
    }
  std::vector<int> src, tgt, inv, unit(g.object_count());
  for (int a : kept) {
    src.push_back(g.src(a));
    tgt.push_back(g.tgt(a));
    inv.push_back(amap[g.inv(a)]);
  }
  for (int b = 0; b < g.object_count(); ++b) unit[b] = amap[g.unit(b)];
  std::vector<std::array<int, 3>> comp;
  for (int l : kept)
    for (int r : kept)
      if (g.composable(l, r)) comp.push_back({amap[l], amap[r], amap[g.comp(l, r)]});
  return Groupoid::from_tables(g.object_names(), ars, src, tgt, unit, inv,
                               comp);
}

// ---------------------------------------------------------------------------
// Anchor analysis and classification

AnchorAnalysis analyze_anchor(const Groupoid& g) {
  AnchorAnalysis out;
  out.anchor.reserve(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a) {
    out.anchor.push_back({g.tgt(a), g.src(a)});
    out.orbit_graph.insert({g.tgt(a), g.src(a)});
  }
  out.isotropy.resize(g.object_count());
  for (int a = 0; a < g.arrow_count(); ++a)
    if (g.src(a) == g.tgt(a)) out.isotropy[g.src(a)].push_back(a);
  UnionFind uf(g.object_count());
  for (int a = 0; a < g.arrow_count(); ++a) uf.merge(g.src(a), g.tgt(a));
  std::map<int, int> roots;
  out.orbit_of.resize(g.object_count());
  for (int b = 0; b < g.object_count(); ++b) {
    int r = uf.find(b);
    auto [it, fresh] = roots.emplace(r, static_cast<int>(out.orbits.size()));
    if (fresh) out.orbits.push_back({});
    out.orbit_of[b] = it->second;
    out.orbits[it->second].push_back(b);
  }
  return out;
}

GroupoidClasses classify(const Groupoid& g) {
  GroupoidClasses c;
  const int n = g.object_count();
  std::set<std::pair<int, int>> image;
  bool injective = true;
  for (int a = 0; a < g.arrow_count(); ++a)
    if (!image.insert({g.tgt(a), g.src(a)}).second) injective = false;
  c.transitive = static_cast<int>(image.size()) == n * n;
  c.principal = injective;
  c.banal = c.transitive && c.principal;
  c.plurigroup = true;
  for (int a = 0; a < g.arrow_count(); ++a)
    if (g.src(a) != g.tgt(a)) c.plurigroup = false;
  c.null = g.arrow_count() == g.object_count();  // units are always distinct
  return c;
}

std::set<std::string> GroupoidClasses::labels() const {
  std::set<std::string> out;
  if (transitive) out.insert("transitive");
  if (principal) out.insert("principal");
  if (banal) out.insert("banal");
  if (plurigroup) out.insert("plurigroup");
  if (null) out.insert("null");
  return out;
}

GroupTable isotropy_table(const Groupoid& g, int object) {
  GroupTable t;
  t.name = "iso(" + g.object_name(object) + ")";
  std::vector<int> elems;
  for (int a = 0; a < g.arrow_count(); ++a)
    if (g.src(a) == object && g.tgt(a) == object) elems.push_back(a);
  std::map<int, int> pos;
  for (size_t i = 0; i < elems.size(); ++i) {
    pos[elems[i]] = static_cast<int>(i);
    t.elements.push_back(g.arrow_name(elems[i]));
  }
  const int n = static_cast<int>(elems.size());
  t.mult.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t.mult[static_cast<size_t>(i) * n + j] = pos[g.comp(elems[i], elems[j])];
  t.identity = pos[g.unit(object)];
  return t;
}

}  // namespace grpd
