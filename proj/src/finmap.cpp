#include "grpd/finmap.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace grpd {

bool FinMap::injective() const {
  std::vector<bool> seen(codomain, false);
  for (int v : graph) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool FinMap::surjective() const {
  std::vector<bool> seen(codomain, false);
  for (int v : graph) seen[v] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool x) { return x; });
}

FinMap identity_map(int n) {
  FinMap f{n, n, std::vector<int>(n)};
  std::iota(f.graph.begin(), f.graph.end(), 0);
  return f;
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.codomain != g.domain)
    throw std::invalid_argument("compose: domains do not match");
  FinMap out{f.domain, g.codomain, {}};
  out.graph.reserve(f.domain);
  for (int v : f.graph) out.graph.push_back(g.graph[v]);
  return out;
}

FinMap product_map(const FinMap& f, const FinMap& g) {
  FinMap out{f.domain * g.domain, f.codomain * g.codomain, {}};
  for (int x = 0; x < f.domain; ++x)
    for (int y = 0; y < g.domain; ++y)
      out.graph.push_back(f.graph[x] * g.codomain + g.graph[y]);
  return out;
}

PullbackSquare good_pullback(const FinMap& f, const FinMap& u) {
  if (f.codomain != u.codomain)
    throw std::invalid_argument("good_pullback: common codomain required");
  PullbackSquare out;
  for (int b = 0; b < f.domain; ++b)
    for (int c = 0; c < u.domain; ++c)
      if (f.graph[b] == u.graph[c]) out.elements.push_back({b, c});
  const int n = static_cast<int>(out.elements.size());
  out.to_first = FinMap{n, f.domain, {}};
  out.to_second = FinMap{n, u.domain, {}};
  for (auto [b, c] : out.elements) {
    out.to_first.graph.push_back(b);
    out.to_second.graph.push_back(c);
  }
  // tuples are pairwise distinct by construction
  out.comparison_injective = true;
  return out;
}

bool square_commutes(const CommutingSquare& s) {
  if (s.top.domain != s.left.domain || s.right.domain != s.top.codomain ||
      s.bottom.domain != s.left.codomain ||
      s.right.codomain != s.bottom.codomain)
    return false;
  for (int x = 0; x < s.top.domain; ++x)
    if (s.right.graph[s.top.graph[x]] != s.bottom.graph[s.left.graph[x]])
      return false;
  return true;
}

bool full_square(const CommutingSquare& s) {
  if (!square_commutes(s))
    throw std::invalid_argument("full_square: square does not commute");
  PullbackSquare pb = good_pullback(s.bottom, s.right);
  // comparison B' -> P, x |-> (left x, top x); full = surjective
  std::vector<bool> hit(pb.elements.size(), false);
  for (int x = 0; x < s.top.domain; ++x) {
    auto needle = std::make_pair(s.left.graph[x], s.top.graph[x]);
    for (size_t i = 0; i < pb.elements.size(); ++i)
      if (pb.elements[i] == needle) hit[i] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool x) { return x; });
}

bool is_coequalizer(const FinMap& l, const FinMap& r, const FinMap& q) {
  if (l.domain != r.domain || l.codomain != r.codomain ||
      q.domain != l.codomain)
    throw std::invalid_argument("is_coequalizer: shapes do not match");
  if (!q.surjective()) return false;
  // partition generated by l(p) ~ r(p)
  std::vector<int> parent(q.domain);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int p = 0; p < l.domain; ++p)
    parent[find(l.graph[p])] = find(r.graph[p]);
  for (int x = 0; x < q.domain; ++x)
    for (int y = 0; y < q.domain; ++y)
      if ((find(x) == find(y)) != (q.graph[x] == q.graph[y])) return false;
  return true;
}

bool perfect_square_pushout(const CommutingSquare& s) {
  if (!square_commutes(s))
    throw std::invalid_argument("perfect_square_pushout: square does not commute");
  for (const FinMap* side : {&s.top, &s.left, &s.right, &s.bottom})
    if (!side->surjective())
      throw std::invalid_argument("perfect_square_pushout: a side is not surjective");
  // cartesian: B' must be exactly the fiber product of (bottom, right)
  PullbackSquare pb = good_pullback(s.bottom, s.right);
  if (pb.elements.size() != static_cast<size_t>(s.top.domain))
    throw std::invalid_argument("perfect_square_pushout: square is not cartesian");
  {
    std::set<std::pair<int, int>> got;
    for (int x = 0; x < s.top.domain; ++x)
      got.insert({s.left.graph[x], s.top.graph[x]});
    std::set<std::pair<int, int>> want(pb.elements.begin(), pb.elements.end());
    if (got != want)
      throw std::invalid_argument("perfect_square_pushout: square is not cartesian");
  }
  // pushout: the quotient of B + A' by the relation through B' equals A
  const int nb = s.bottom.domain, na2 = s.right.domain;
  std::vector<int> parent(nb + na2);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int x = 0; x < s.top.domain; ++x)
    parent[find(s.left.graph[x])] = find(nb + s.top.graph[x]);
  auto image = [&](int z) {
    return z < nb ? s.bottom.graph[z] : s.right.graph[z - nb];
  };
  for (int x = 0; x < nb + na2; ++x)
    for (int y = 0; y < nb + na2; ++y)
      if ((find(x) == find(y)) != (image(x) == image(y))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Axiom harness

namespace {

// All maps from a set of size n to a set of size m, in lexicographic order.
std::vector<FinMap> all_maps(int n, int m) {
  std::vector<FinMap> out;
  if (n == 0) {
    out.push_back(FinMap{0, m, {}});
    return out;
  }
  if (m == 0) return out;
  std::vector<int> g(n, 0);
  while (true) {
    out.push_back(FinMap{n, m, g});
    int i = n - 1;
    while (i >= 0 && g[i] == m - 1) g[i--] = 0;
    if (i < 0) break;
    ++g[i];
  }
  return out;
}

}  // namespace

AxiomReport check_axioms(int max_size) {
  AxiomReport report;
  auto fail = [&](const std::string& what) { report.failures.push_back(what); };

  std::vector<std::vector<std::vector<FinMap>>> maps(max_size + 1);
  for (int n = 0; n <= max_size; ++n) {
    maps[n].resize(max_size + 1);
    for (int m = 0; m <= max_size; ++m) maps[n][m] = all_maps(n, m);
  }

  // (1) injective and surjective = bijective; (3a) injections are monos
  for (int n = 0; n <= max_size; ++n)
    for (int m = 0; m <= max_size; ++m)
      for (const FinMap& f : maps[n][m]) {
        ++report.checked;
        bool bij = f.injective() && f.surjective();
        bool iso = f.injective() && f.surjective() && n == m;
        if (bij != iso) fail("axiom 1: a non-iso is both mono and epi");
      }

  // (2) stability under products
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      for (const FinMap& f : maps[n][m])
        for (int n2 = 0; n2 <= 2; ++n2)
          for (int m2 = 0; m2 <= 2; ++m2)
            for (const FinMap& g : maps[n2][m2]) {
              ++report.checked;
              FinMap p = product_map(f, g);
              if (f.injective() && g.injective() && !p.injective())
                fail("axiom 2: product of injections is not injective");
              if (f.surjective() && g.surjective() && !p.surjective())
                fail("axiom 2: product of surjections is not surjective");
            }

  // (3b) surjections are strict epis: coequalizers of their kernel pair
  for (int n = 0; n <= max_size; ++n)
    for (int m = 0; m <= max_size; ++m)
      for (const FinMap& f : maps[n][m]) {
        if (!f.surjective()) continue;
        ++report.checked;
        PullbackSquare kp = good_pullback(f, f);
        if (!is_coequalizer(kp.to_first, kp.to_second, f))
          fail("axiom 3b: a surjection is not a strict epi");
      }

  // (4a) h = g.f injective implies f injective;
  // (4b) g.f surjective with f surjective implies g surjective
  for (int n = 0; n <= max_size; ++n)
    for (int m = 0; m <= max_size; ++m)
      for (int k = 0; k <= max_size; ++k)
        for (const FinMap& f : maps[n][m])
          for (const FinMap& g : maps[m][k]) {
            ++report.checked;
            FinMap h = compose(g, f);
            if (h.injective() && !f.injective())
              fail("axiom 4a: strong alpha-stability fails");
            if (h.surjective() && f.surjective() && !g.surjective())
              fail("axiom 4b: weak beta-stability fails");
          }

  // (5a) parallel transfer: the pullback of a surjection along an injection
  // is a surjection (and the injection side pulls back to an injection)
  // (5b) descent: in a cartesian square with s, s' surjective and i'
  // injective, i is injective
  for (int a = 0; a <= max_size; ++a)
    for (int b = 0; b <= max_size; ++b)
      for (int b2 = 0; b2 <= max_size; ++b2)
        for (const FinMap& s : maps[a][b])
          for (const FinMap& i : maps[b2][b]) {
            ++report.checked;
            PullbackSquare pb = good_pullback(s, i);
            const int np = static_cast<int>(pb.elements.size());
            FinMap s2{np, b2, pb.to_second.graph};
            FinMap i2{np, a, pb.to_first.graph};
            if (s.surjective()) {
              if (i.injective()) {
                if (!s2.surjective())
                  fail("axiom 5a: pulled-back surjection is not surjective");
                if (!i2.injective())
                  fail("axiom 5a: pulled-back injection is not injective");
              }
              // 5b with roles: s, s2 in D_s and i2 in D_i force i in D_i
              if (s2.surjective() && i2.injective() && !i.injective())
                fail("axiom 5b: descent fails");
              // consequence: D_s is stable under pullback along anything
              if (!s2.surjective())
                fail("consequence: surjections are not pullback-stable");
            }
          }

  // B.2: perfect squares are pushouts
  for (int a = 1; a <= max_size; ++a)
    for (int b = 1; b <= max_size; ++b)
      for (int c = 1; c <= max_size; ++c)
        for (const FinMap& f : maps[a][c])
          for (const FinMap& u : maps[b][c]) {
            if (!f.surjective() || !u.surjective()) continue;
            ++report.checked;
            PullbackSquare pb = good_pullback(f, u);
            const int np = static_cast<int>(pb.elements.size());
            CommutingSquare sq{FinMap{np, b, pb.to_second.graph},
                               FinMap{np, a, pb.to_first.graph}, u, f};
            if (!square_commutes(sq)) {
              fail("B.2: fiber-product square does not commute");
              continue;
            }
            if (!sq.top.surjective() || !sq.left.surjective()) continue;
            if (!perfect_square_pushout(sq))
              fail("B.2: a perfect square is not a pushout");
          }

  return report;
}

}  // namespace grpd
