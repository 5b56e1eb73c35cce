#include "grpd/action.hpp"

#include <algorithm>
#include <stdexcept>

namespace grpd {

int ActionLaw::point_index(const std::string& name) const {
  for (size_t i = 0; i < points.size(); ++i)
    if (points[i] == name) return static_cast<int>(i);
  return -1;
}

Diagnostics check_action(const ActionLaw& a) {
  Diagnostics issues;
  const Groupoid& g = *a.actor;
  const int ne = static_cast<int>(a.points.size());
  if (a.proj.size() != static_cast<size_t>(ne) ||
      a.act.size() != static_cast<size_t>(g.arrow_count()) * ne) {
    issues.push_back({"totality", "action tables have the wrong size"});
    return issues;
  }
  for (int x = 0; x < ne; ++x)
    if (a.proj[x] < 0 || a.proj[x] >= g.object_count()) {
      issues.push_back({"totality", "projection out of range at point '" +
                                        a.points[x] + "'"});
      return issues;
    }
  for (int ga = 0; ga < g.arrow_count(); ++ga)
    for (int x = 0; x < ne; ++x) {
      int y = a.operate(ga, x);
      bool composable = g.src(ga) == a.proj[x];
      if (composable && y < 0)
        issues.push_back({"act-domain", "action undefined on ('" +
                                            g.arrow_name(ga) + "', '" +
                                            a.points[x] + "')"});
      if (!composable && y >= 0)
        issues.push_back({"act-domain", "action defined off the domain at ('" +
                                            g.arrow_name(ga) + "', '" +
                                            a.points[x] + "')"});
      if (y >= 0 && composable && a.proj[y] != g.tgt(ga))
        issues.push_back({"act-fiber", "g |- x lies over the wrong object at ('" +
                                           g.arrow_name(ga) + "', '" +
                                           a.points[x] + "')"});
    }
  if (!issues.empty()) return issues;
  for (int x = 0; x < ne; ++x)
    if (a.operate(g.unit(a.proj[x]), x) != x)
      issues.push_back({"act-unit", "unit acts nontrivially on '" + a.points[x] + "'"});
  for (int ga = 0; ga < g.arrow_count(); ++ga)
    for (int h = 0; h < g.arrow_count(); ++h) {
      if (!g.composable(ga, h)) continue;
      for (int x = 0; x < ne; ++x) {
        if (a.proj[x] != g.src(h)) continue;
        if (a.operate(g.comp(ga, h), x) != a.operate(ga, a.operate(h, x)))
          issues.push_back({"act-assoc", "(g.h) |- x != g |- (h |- x) at ('" +
                                             g.arrow_name(ga) + "', '" +
                                             g.arrow_name(h) + "', '" +
                                             a.points[x] + "')"});
      }
    }
  return issues;
}

ActionLaw make_action(GroupoidPtr actor, std::vector<std::string> points,
                      std::vector<int> proj, std::vector<int> act) {
  ActionLaw a{std::move(actor), std::move(points), std::move(proj),
              std::move(act)};
  Diagnostics issues = check_action(a);
  if (!issues.empty())
    throw std::invalid_argument("invalid action law\n" +
                                format_diagnostics(issues));
  return a;
}

ActionGroupoid action_to_actor(const ActionLaw& a) {
  const Groupoid& g = *a.actor;
  const int ne = static_cast<int>(a.points.size());
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, inv, unit(ne, -1);
  std::vector<std::pair<int, int>> tags;  // (arrow of g, point)
  std::map<std::pair<int, int>, int> index;
  for (int ga = 0; ga < g.arrow_count(); ++ga)
    for (int x = 0; x < ne; ++x) {
      if (!a.defined(ga, x)) continue;
      index[{ga, x}] = static_cast<int>(tags.size());
      tags.push_back({ga, x});
      arrows.push_back("(" + g.arrow_name(ga) + "@" + a.points[x] + ")");
      src.push_back(x);
      tgt.push_back(a.operate(ga, x));
    }
  for (auto [ga, x] : tags) inv.push_back(index.at({g.inv(ga), a.operate(ga, x)}));
  for (int x = 0; x < ne; ++x) unit[x] = index.at({g.unit(a.proj[x]), x});
  std::vector<std::array<int, 3>> comp;
  for (size_t l = 0; l < tags.size(); ++l)
    for (size_t r = 0; r < tags.size(); ++r) {
      if (src[l] != tgt[r]) continue;
      comp.push_back({static_cast<int>(l), static_cast<int>(r),
                      index.at({g.comp(tags[l].first, tags[r].first),
                                tags[r].second})});
    }
  GroupoidPtr h = share(Groupoid::from_tables(a.points, arrows, src, tgt,
                                              unit, inv, comp));
  Functor f{h, a.actor, {}, a.proj};
  for (auto [ga, x] : tags) f.arrow_map.push_back(ga);
  Diagnostics issues = check_functor(f);
  if (!issues.empty())
    throw std::logic_error("action groupoid projection is not a functor\n" +
                           format_diagnostics(issues));
  return {h, f};
}

ActionLaw actor_to_action(const Functor& f) {
  MorphismClassification c = classify_morphism(f);
  if (!c.actor)
    throw std::invalid_argument(
        "actor_to_action: source-square comparison map is not bijective");
  const Groupoid& h = *f.source;
  const Groupoid& g = *f.target;
  const int ne = h.object_count();
  std::vector<int> act(static_cast<size_t>(g.arrow_count()) * ne, -1);
  for (int a = 0; a < h.arrow_count(); ++a)
    act[static_cast<size_t>(f.arrow_map[a]) * ne + h.src(a)] = h.tgt(a);
  return make_action(f.target, h.object_names(), f.object_map, std::move(act));
}

namespace {

// Principal groupoid of pairs of arrows sharing the given endpoint
// (src for delta-pairs, tgt for nabla-pairs). As arrows, (y,x): x -> y.
struct ArrowPairs {
  GroupoidPtr groupoid;
  std::vector<std::pair<int, int>> tags;  // arrow -> (y, x) in the base groupoid
};

ArrowPairs arrow_pairs(const Groupoid& g, bool by_source) {
  auto endpoint = [&](int a) { return by_source ? g.src(a) : g.tgt(a); };
  ArrowPairs out;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, inv, unit(g.arrow_count());
  for (int y = 0; y < g.arrow_count(); ++y)
    for (int x = 0; x < g.arrow_count(); ++x) {
      if (endpoint(y) != endpoint(x)) continue;
      index[{y, x}] = static_cast<int>(out.tags.size());
      out.tags.push_back({y, x});
      arrows.push_back("(" + g.arrow_name(y) + "," + g.arrow_name(x) + ")");
      src.push_back(x);
      tgt.push_back(y);
    }
  for (auto [y, x] : out.tags) inv.push_back(index.at({x, y}));
  for (int a = 0; a < g.arrow_count(); ++a) unit[a] = index.at({a, a});
  std::vector<std::array<int, 3>> comp;
  for (size_t l = 0; l < out.tags.size(); ++l)
    for (size_t r = 0; r < out.tags.size(); ++r)
      if (out.tags[l].second == out.tags[r].first)
        comp.push_back({static_cast<int>(l), static_cast<int>(r),
                        index.at({out.tags[l].first, out.tags[r].second})});
  out.groupoid = share(Groupoid::from_tables(g.arrow_names(), arrows, src,
                                             tgt, unit, inv, comp));
  return out;
}

}  // namespace

CanonicalActions canonical_actions(GroupoidPtr gp) {
  const Groupoid& g = *gp;
  CanonicalActions out;
  ArrowPairs delta_pairs = arrow_pairs(g, true);
  ArrowPairs nabla_pairs = arrow_pairs(g, false);
  out.delta_src = delta_pairs.groupoid;
  out.nabla_tgt = nabla_pairs.groupoid;
  out.op = share(opposite(g));

  auto build = [&](const ArrowPairs& pairs, GroupoidPtr target,
                   auto&& arrow_of, auto&& object_of) {
    Functor f{pairs.groupoid, target, {}, {}};
    for (auto [y, x] : pairs.tags) f.arrow_map.push_back(arrow_of(y, x));
    for (int a = 0; a < g.arrow_count(); ++a)
      f.object_map.push_back(object_of(a));
    Diagnostics issues = check_functor(f);
    if (!issues.empty())
      throw std::logic_error("canonical actor is not a functor\n" +
                             format_diagnostics(issues));
    return f;
  };

  out.delta = build(delta_pairs, gp,
                    [&](int y, int x) { return g.divide(y, x); },
                    [&](int a) { return g.tgt(a); });
  out.delta_bar = build(nabla_pairs, gp,
                        [&](int y, int x) { return g.comp(g.inv(y), x); },
                        [&](int a) { return g.src(a); });
  out.delta_conj = build(delta_pairs, out.op,
                         [&](int y, int x) { return g.divide(x, y); },
                         [&](int a) { return g.tgt(a); });
  out.delta_bar_conj = build(nabla_pairs, out.op,
                             [&](int y, int x) { return g.comp(g.inv(x), y); },
                             [&](int a) { return g.src(a); });

  const int ne = g.arrow_count();
  auto table = [&](const Groupoid& actor, auto&& proj_of, auto&& result) {
    std::vector<int> proj(ne), act(static_cast<size_t>(actor.arrow_count()) * ne, -1);
    for (int x = 0; x < ne; ++x) proj[x] = proj_of(x);
    for (int ga = 0; ga < actor.arrow_count(); ++ga)
      for (int x = 0; x < ne; ++x)
        if (actor.src(ga) == proj[x])
          act[static_cast<size_t>(ga) * ne + x] = result(ga, x);
    return std::make_pair(proj, act);
  };

  {
    auto [proj, act] = table(g, [&](int x) { return g.tgt(x); },
                             [&](int ga, int x) { return g.comp(ga, x); });
    out.lambda = make_action(gp, g.arrow_names(), proj, act);
  }
  {
    auto [proj, act] = table(g, [&](int x) { return g.src(x); },
                             [&](int ga, int x) { return g.comp(x, g.inv(ga)); });
    out.lambda_bar = make_action(gp, g.arrow_names(), proj, act);
  }
  {
    const Groupoid& op = *out.op;
    auto [proj, act] = table(op, [&](int x) { return g.tgt(x); },
                             [&](int ga, int x) { return g.comp(g.inv(ga), x); });
    out.rho = make_action(out.op, g.arrow_names(), proj, act);
  }
  {
    const Groupoid& op = *out.op;
    auto [proj, act] = table(op, [&](int x) { return g.src(x); },
                             [&](int ga, int x) { return g.comp(x, ga); });
    out.rho_bar = make_action(out.op, g.arrow_names(), proj, act);
  }
  return out;
}

PrincipalityCheck is_principal_action(const ActionLaw& a) {
  const Groupoid& g = *a.actor;
  for (int ga = 0; ga < g.arrow_count(); ++ga) {
    if (g.is_unit(ga)) continue;
    for (int x = 0; x < static_cast<int>(a.points.size()); ++x)
      if (a.defined(ga, x) && a.operate(ga, x) == x)
        return {false, std::make_pair(ga, x)};
  }
  return {true, std::nullopt};
}

}  // namespace grpd
