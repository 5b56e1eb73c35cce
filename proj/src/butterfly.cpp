#include "grpd/butterfly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace grpd {

namespace {

// Membership mask of a wide subgroupoid inside its ambient groupoid,
// resolved by arrow names.
std::vector<bool> membership(const Groupoid& k, const Groupoid& sub) {
  if (sub.object_names() != k.object_names())
    throw std::invalid_argument("wing must share the ambient objects");
  std::vector<bool> in(k.arrow_count(), false);
  for (int a = 0; a < sub.arrow_count(); ++a) {
    int img = k.arrow_index(sub.arrow_name(a));
    if (img < 0 || k.src(img) != sub.src(a) || k.tgt(img) != sub.tgt(a))
      throw std::invalid_argument("wing arrow '" + sub.arrow_name(a) +
                                  "' does not occur in the ambient groupoid");
    in[img] = true;
  }
  for (int b = 0; b < k.object_count(); ++b)
    if (!in[k.unit(b)])
      throw std::invalid_argument("wing is not wide: missing unit of '" +
                                  k.object_name(b) + "'");
  for (int l = 0; l < k.arrow_count(); ++l) {
    if (!in[l]) continue;
    if (!in[k.inv(l)])
      throw std::invalid_argument("wing not closed under inv");
    for (int r = 0; r < k.arrow_count(); ++r)
      if (in[r] && k.composable(l, r) && !in[k.comp(l, r)])
        throw std::invalid_argument("wing not closed under comp");
  }
  return in;
}

}  // namespace

TransversalityCheck transversality(const Groupoid& k, const Groupoid& m,
                                   const Groupoid& n) {
  std::vector<bool> in_m = membership(k, m);
  std::vector<bool> in_n = membership(k, n);
  TransversalityCheck out;
  const bool materialize =
      static_cast<long>(m.arrow_count()) * n.arrow_count() <= 100000;
  std::vector<int> hits(k.arrow_count(), 0);
  std::vector<int> first_pair(k.arrow_count(), -1);
  out.collision = std::nullopt;
  for (int x = 0; x < k.arrow_count(); ++x) {
    if (!in_m[x]) continue;
    for (int y = 0; y < k.arrow_count(); ++y) {
      if (!in_n[y] || k.src(x) != k.src(y)) continue;
      int image = k.divide(x, y);  // x.y^-1 : tgt y -> tgt x
      long entry = out.pair_count++;
      if (materialize) {
        out.domain.push_back({x, y});
        out.image.push_back(image);
      }
      if (hits[image]++ == 0)
        first_pair[image] = static_cast<int>(entry);
      else if (!out.collision)
        out.collision =
            std::make_pair(first_pair[image], static_cast<int>(entry));
    }
  }
  bool surjective = true;
  for (int a = 0; a < k.arrow_count(); ++a)
    if (hits[a] == 0) {
      surjective = false;
      if (!out.missed_arrow) out.missed_arrow = a;
    }
  if (surjective && !out.collision)
    out.kind = Transversality::kTransverse;
  else if (surjective)
    out.kind = Transversality::kTransversal;
  else
    out.kind = Transversality::kNeither;
  out.intersection_is_null = true;
  for (int a = 0; a < k.arrow_count(); ++a)
    if (in_m[a] && in_n[a] && !k.is_unit(a)) out.intersection_is_null = false;
  return out;
}

SquareCompletion mixed_law_complete(const Groupoid& k, const Groupoid& r,
                                    const Groupoid& r2, int r_edge,
                                    int r2_edge) {
  std::vector<bool> in_r = membership(k, r);
  std::vector<bool> in_r2 = membership(k, r2);
  if (r_edge < 0 || r_edge >= k.arrow_count() || !in_r[r_edge])
    throw std::invalid_argument("mixed_law_complete: first edge is not in R");
  if (r2_edge < 0 || r2_edge >= k.arrow_count() || !in_r2[r2_edge])
    throw std::invalid_argument("mixed_law_complete: second edge is not in R'");
  if (k.src(r2_edge) != k.tgt(r_edge))
    throw std::invalid_argument("mixed_law_complete: chain endpoints mismatch");
  int composite = k.comp(r2_edge, r_edge);
  // factor composite = m . n^-1 with m in R, n in R' sharing a source
  SquareCompletion out{-1, -1, -1, composite};
  int found = 0;
  for (int m = 0; m < k.arrow_count(); ++m) {
    if (!in_r[m] || k.tgt(m) != k.tgt(composite)) continue;
    int n = k.comp(k.inv(composite), m);  // src m -> src composite
    if (!in_r2[n]) continue;
    ++found;
    out.fourth_vertex = k.src(m);
    out.new_r_edge = m;
    out.new_r2_edge = k.inv(n);
  }
  if (found != 1)
    throw std::invalid_argument(
        "mixed_law_complete: the wings are not transverse (found " +
        std::to_string(found) + " factorizations)");
  return out;
}

CoreSquare core_square(const Groupoid& k, const Groupoid& r,
                       const Groupoid& r2, int arrow) {
  std::vector<bool> in_r = membership(k, r);
  std::vector<bool> in_r2 = membership(k, r2);
  CoreSquare sq{k.src(arrow), -1, -1, k.tgt(arrow), arrow};
  int found = 0;
  for (int m = 0; m < k.arrow_count(); ++m) {
    if (!in_r[m] || k.tgt(m) != sq.d) continue;
    int n = k.comp(k.inv(arrow), m);  // src m -> a, must be in R'
    if (in_r2[n]) {
      sq.c = k.src(m);
      ++found;
    }
  }
  if (found != 1)
    throw std::invalid_argument("core_square: no unique (R, R') factorization");
  found = 0;
  for (int m = 0; m < k.arrow_count(); ++m) {
    if (!in_r2[m] || k.tgt(m) != sq.d) continue;
    int n = k.comp(k.inv(arrow), m);
    if (in_r[n]) {
      sq.c2 = k.src(m);
      ++found;
    }
  }
  if (found != 1)
    throw std::invalid_argument("core_square: no unique (R', R) factorization");
  return sq;
}

namespace {

// Unique wing arrow between related objects (the wings are principal).
int wing_arrow(const Groupoid& k, const std::vector<bool>& in, int from,
               int to) {
  int found = -1;
  for (int a = 0; a < k.arrow_count(); ++a)
    if (in[a] && k.src(a) == from && k.tgt(a) == to) {
      if (found >= 0) throw std::logic_error("wing is not principal");
      found = a;
    }
  if (found < 0) throw std::invalid_argument("wing blocks do not match");
  return found;
}

}  // namespace

int wing_compose_horizontal(const Groupoid& k, const Groupoid& r,
                            const Groupoid& r2, int second, int first) {
  CoreSquare s1 = core_square(k, r, r2, first);
  CoreSquare s2 = core_square(k, r, r2, second);
  if (s2.c != s1.d || s2.a != s1.c2)
    throw std::invalid_argument("wing blocks do not match horizontally");
  std::vector<bool> in_r = membership(k, r);
  std::vector<bool> in_r2 = membership(k, r2);
  // glued square: corners a = s1.a, c = s1.c, c2 = s2.c2, d = s2.d
  int m1 = wing_arrow(k, in_r, s1.c, s1.d);
  int m2 = wing_arrow(k, in_r, s2.c, s2.d);
  int n1 = wing_arrow(k, in_r2, s1.c, s1.a);
  return k.comp(k.comp(m2, m1), k.inv(n1));
}

int wing_compose_vertical(const Groupoid& k, const Groupoid& r,
                          const Groupoid& r2, int second, int first) {
  CoreSquare s1 = core_square(k, r, r2, first);
  CoreSquare s2 = core_square(k, r, r2, second);
  if (s2.a != s1.c || s2.c2 != s1.d)
    throw std::invalid_argument("wing blocks do not match vertically");
  std::vector<bool> in_r = membership(k, r);
  std::vector<bool> in_r2 = membership(k, r2);
  int m2 = wing_arrow(k, in_r, s2.c, s2.d);
  int n1 = wing_arrow(k, in_r2, s1.c, s1.a);
  int n2 = wing_arrow(k, in_r2, s2.c, s2.a);
  return k.comp(m2, k.inv(k.comp(n1, n2)));
}

// ---------------------------------------------------------------------------

Diagnostics check_butterfly(const Butterfly& b) {
  Diagnostics issues;
  auto note = [&](const std::string& rule, const std::string& detail) {
    issues.push_back({rule, detail});
  };
  const Groupoid& k = *b.core;
  try {
    if (!classify(b.wing_r).principal) note("wing", "R is not principal");
    if (!classify(b.wing_r2).principal) note("wing", "R' is not principal");
    auto t = transversality(k, b.wing_r, b.wing_r2);
    if (t.kind != Transversality::kTransverse)
      note("transversality", "R and R' are not transverse");
    if (!t.intersection_is_null)
      note("transversality", "R and R' intersect beyond the units");
    auto t2 = transversality(k, b.wing_r2, b.wing_r);
    if (t2.kind != Transversality::kTransverse)
      note("transversality", "R' and R are not transverse");
  } catch (const std::exception& e) {
    note("wing", e.what());
  }
  for (const Functor* leg : {&b.leg_q, &b.leg_q2}) {
    Diagnostics fi = check_functor(*leg);
    issues.insert(issues.end(), fi.begin(), fi.end());
    if (fi.empty() && !classify_morphism(*leg).s_equivalence)
      note("leg", "leg is not an s-equivalence");
  }
  if (issues.empty()) {
    auto names = [&](const std::vector<int>& arrows) {
      std::set<std::string> out;
      for (int a : arrows) out.insert(k.arrow_name(a));
      return out;
    };
    std::set<std::string> kq = names(kernel_arrows(b.leg_q));
    std::set<std::string> kq2 = names(kernel_arrows(b.leg_q2));
    std::set<std::string> r_names(b.wing_r.arrow_names().begin(),
                                  b.wing_r.arrow_names().end());
    std::set<std::string> r2_names(b.wing_r2.arrow_names().begin(),
                                   b.wing_r2.arrow_names().end());
    if (kq != r2_names) note("kernel", "kernel of q is not R'");
    if (kq2 != r_names) note("kernel", "kernel of q' is not R");
    // actors restrict the legs
    for (auto [actor, leg, wing] :
         {std::tuple{&b.actor_r, &b.leg_q, &b.wing_r},
          std::tuple{&b.actor_r2, &b.leg_q2, &b.wing_r2}}) {
      Diagnostics fi = check_functor(*actor);
      issues.insert(issues.end(), fi.begin(), fi.end());
      if (!fi.empty()) continue;
      for (int a = 0; a < wing->arrow_count(); ++a) {
        int amb = k.arrow_index(wing->arrow_name(a));
        if (actor->arrow_map[a] != leg->arrow_map[amb]) {
          note("actor", "actor does not restrict the leg at '" +
                            wing->arrow_name(a) + "'");
          break;
        }
      }
      if (!classify_morphism(*actor).actor)
        note("actor", "restricted map is not an actor");
    }
  }
  return issues;
}

Butterfly conjugate_principal_actor(const Functor& r) {
  MorphismClassification c = classify_morphism(r);
  if (!c.actor || !c.principal_source)
    throw std::invalid_argument(
        "conjugate_principal_actor: not a principal actor");
  std::vector<bool> hit(r.target->object_count(), false);
  for (int b : r.object_map) hit[b] = true;
  if (!std::all_of(hit.begin(), hit.end(), [](bool x) { return x; }))
    throw std::invalid_argument(
        "conjugate_principal_actor: object map is not surjective");

  const Groupoid& rg = *r.source;
  PullbackGroupoid pb =
      pullback_groupoid(r.target, rg.object_names(), r.object_map);
  const Groupoid& k = *pb.groupoid;

  // embed R into the core as (tgt m, r(m), src m)
  std::vector<int> embedded;
  for (int m = 0; m < rg.arrow_count(); ++m) {
    std::string name = "(" + rg.object_name(rg.tgt(m)) + ";" +
                       r.target->arrow_name(r.arrow_map[m]) + ";" +
                       rg.object_name(rg.src(m)) + ")";
    int idx = k.arrow_index(name);
    if (idx < 0) throw std::logic_error("conjugation: embedding failed");
    embedded.push_back(idx);
  }
  Groupoid wing_r = wide_subgroupoid(k, embedded);
  Groupoid wing_r2 = kernel(pb.projection);

  BilateralQuotient quog = bilateral_quotient(pb.groupoid, wing_r);

  Butterfly out;
  out.core = pb.groupoid;
  out.wing_r = wing_r;
  out.wing_r2 = wing_r2;
  out.leg_q = pb.projection;
  out.leg_q2 = quog.projection;
  GroupoidPtr wrp = share(wing_r);
  GroupoidPtr wr2p = share(wing_r2);
  out.actor_r = make_functor(
      wrp, r.target,
      [&](const std::string& name) {
        return r.target->arrow_name(pb.projection.arrow_map[k.arrow_index(name)]);
      },
      [&](const std::string& name) {
        return r.target->object_name(
            pb.projection.object_map[k.object_index(name)]);
      });
  out.actor_r2 = make_functor(
      wr2p, quog.quotient,
      [&](const std::string& name) {
        return quog.quotient->arrow_name(
            quog.projection.arrow_map[k.arrow_index(name)]);
      },
      [&](const std::string& name) {
        return quog.quotient->object_name(
            quog.projection.object_map[k.object_index(name)]);
      });

  Diagnostics issues = check_butterfly(out);
  if (!issues.empty())
    throw std::invalid_argument("conjugation did not produce a butterfly\n" +
                                format_diagnostics(issues));
  return out;
}

// ---------------------------------------------------------------------------

SquareGroupoid square_groupoid(GroupoidPtr gp) {
  const Groupoid& g = *gp;
  // squares (t, b, l, r) with l.t = b.r; l is determined by the other three
  std::vector<std::array<int, 4>> tags;
  std::map<std::array<int, 2>, std::map<int, int>> index;  // (l, r) -> t -> id
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, inv;
  std::vector<int> unit(g.arrow_count(), -1);
  for (int t = 0; t < g.arrow_count(); ++t)
    for (int b = 0; b < g.arrow_count(); ++b)
      for (int r = 0; r < g.arrow_count(); ++r) {
        if (g.src(r) != g.src(t) || g.tgt(r) != g.src(b)) continue;
        int l = g.comp(g.comp(b, r), g.inv(t));
        index[{l, r}][t] = static_cast<int>(tags.size());
        tags.push_back({t, b, l, r});
        arrows.push_back("[" + g.arrow_name(t) + ";" + g.arrow_name(b) + ";" +
                         g.arrow_name(l) + ";" + g.arrow_name(r) + "]");
        src.push_back(r);
        tgt.push_back(l);
      }
  auto find = [&](int t, int l, int r) { return index.at({l, r}).at(t); };
  for (const auto& [t, b, l, r] : tags)
    inv.push_back(find(g.inv(t), r, l));
  for (int a = 0; a < g.arrow_count(); ++a)
    unit[a] = find(g.unit(g.src(a)), a, a);
  std::vector<std::array<int, 3>> comp;
  for (size_t i = 0; i < tags.size(); ++i)
    for (size_t j = 0; j < tags.size(); ++j) {
      if (tags[i][3] != tags[j][2]) continue;  // r2 = l1
      comp.push_back({static_cast<int>(i), static_cast<int>(j),
                      find(g.comp(tags[i][0], tags[j][0]), tags[i][2],
                           tags[j][3])});
    }
  GroupoidPtr box = share(Groupoid::from_tables(
      g.arrow_names(), arrows, src, tgt, unit, inv, comp));

  SquareGroupoid out;
  out.box = box;
  out.pi_up = Functor{box, gp, {}, {}};
  out.pi_down = Functor{box, gp, {}, {}};
  for (const auto& [t, b, l, r] : tags) {
    out.pi_up.arrow_map.push_back(t);
    out.pi_down.arrow_map.push_back(b);
  }
  for (int a = 0; a < g.arrow_count(); ++a) {
    out.pi_up.object_map.push_back(g.src(a));
    out.pi_down.object_map.push_back(g.tgt(a));
  }
  for (const Functor* f : {&out.pi_up, &out.pi_down}) {
    Diagnostics issues = check_functor(*f);
    if (!issues.empty())
      throw std::logic_error("square projection is not a functor\n" +
                             format_diagnostics(issues));
  }

  Butterfly& canon = out.canonical;
  canon.core = box;
  canon.wing_r = kernel(out.pi_down);   // squares with a unit bottom
  canon.wing_r2 = kernel(out.pi_up);    // squares with a unit top
  canon.leg_q = out.pi_up;
  canon.leg_q2 = out.pi_down;
  GroupoidPtr wrp = share(canon.wing_r);
  GroupoidPtr wr2p = share(canon.wing_r2);
  canon.actor_r = make_functor(
      wrp, gp,
      [&](const std::string& name) {
        return g.arrow_name(out.pi_up.arrow_map[box->arrow_index(name)]);
      },
      [&](const std::string& name) {
        return g.object_name(out.pi_up.object_map[box->object_index(name)]);
      });
  canon.actor_r2 = make_functor(
      wr2p, gp,
      [&](const std::string& name) {
        return g.arrow_name(out.pi_down.arrow_map[box->arrow_index(name)]);
      },
      [&](const std::string& name) {
        return g.object_name(out.pi_down.object_map[box->object_index(name)]);
      });
  Diagnostics issues = check_butterfly(canon);
  if (!issues.empty())
    throw std::logic_error("canonical butterfly is invalid\n" +
                           format_diagnostics(issues));
  return out;
}

}  // namespace grpd
