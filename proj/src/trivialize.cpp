#include "grpd/trivialize.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace grpd {

Trivialization trivialize(GroupoidPtr gp, int base_point,
                          const std::vector<int>* section) {
  const Groupoid& g = *gp;
  if (base_point < 0 || base_point >= g.object_count())
    throw std::invalid_argument("trivialize: base point out of range");

  Trivialization out;
  out.base_point = base_point;
  for (int a = 0; a < g.arrow_count(); ++a)
    if (g.src(a) == base_point) out.fiber.push_back(a);

  // section: for each object, an arrow base_point -> object
  if (section) {
    if (section->size() != static_cast<size_t>(g.object_count()))
      throw std::invalid_argument("trivialize: section has the wrong size");
    for (int b = 0; b < g.object_count(); ++b) {
      int a = (*section)[b];
      if (a < 0 || a >= g.arrow_count() || g.src(a) != base_point ||
          g.tgt(a) != b)
        throw std::invalid_argument("trivialize: bad section at object '" +
                                    g.object_name(b) + "'");
    }
    out.section = *section;
  } else {
    out.section.assign(g.object_count(), -1);
    for (int a : out.fiber) {
      int b = g.tgt(a);
      if (out.section[b] < 0 ||
          g.arrow_name(a) < g.arrow_name(out.section[b]))
        out.section[b] = a;
    }
    for (int b = 0; b < g.object_count(); ++b)
      if (out.section[b] < 0)
        throw std::invalid_argument(
            "trivialize: not transitive, no arrow from '" +
            g.object_name(base_point) + "' to '" + g.object_name(b) + "'");
  }

  GroupTable iso = isotropy_table(g, base_point);
  GroupoidPtr model =
      share(product(group_groupoid(iso, g.object_name(base_point)),
                    pair_groupoid(g.object_names())));
  out.trivial_model = model;

  // g |-> (eta(tgt g)^-1 . g . eta(src g), (tgt g, src g))
  std::map<int, int> iso_pos;
  for (size_t i = 0; i < iso.elements.size(); ++i)
    iso_pos[g.arrow_index(iso.elements[i])] = static_cast<int>(i);
  const int nobj = g.object_count();
  auto model_arrow = [&](int k, int to, int from) {
    // arrows of the product enumerate group elements x pair arrows in order
    return k * nobj * nobj + to * nobj + from;
  };
  Functor fwd{gp, model, std::vector<int>(g.arrow_count(), -1),
              std::vector<int>(g.object_count(), -1)};
  for (int a = 0; a < g.arrow_count(); ++a) {
    int k = g.comp(g.inv(out.section[g.tgt(a)]),
                   g.comp(a, out.section[g.src(a)]));
    fwd.arrow_map[a] = model_arrow(iso_pos.at(k), g.tgt(a), g.src(a));
  }
  for (int b = 0; b < nobj; ++b) fwd.object_map[b] = b;

  Functor back{model, gp, std::vector<int>(model->arrow_count(), -1),
               std::vector<int>(model->object_count(), -1)};
  for (size_t i = 0; i < iso.elements.size(); ++i) {
    int k = g.arrow_index(iso.elements[i]);
    for (int to = 0; to < nobj; ++to)
      for (int from = 0; from < nobj; ++from)
        back.arrow_map[model_arrow(static_cast<int>(i), to, from)] =
            g.comp(out.section[to], g.comp(k, g.inv(out.section[from])));
  }
  for (int b = 0; b < nobj; ++b) back.object_map[b] = b;

  for (const Functor* f : {&fwd, &back}) {
    Diagnostics issues = check_functor(*f);
    if (!issues.empty())
      throw std::logic_error("trivialization map is not a functor\n" +
                             format_diagnostics(issues));
  }
  // the two maps must invert each other
  for (int a = 0; a < g.arrow_count(); ++a)
    if (back.arrow_map[fwd.arrow_map[a]] != a)
      throw std::logic_error("trivialization is not invertible");
  for (int a = 0; a < model->arrow_count(); ++a)
    if (fwd.arrow_map[back.arrow_map[a]] != a)
      throw std::logic_error("trivialization is not invertible");

  out.to_trivial = std::move(fwd);
  out.from_trivial = std::move(back);
  return out;
}

std::vector<TransitiveComponent> transitive_components(const Groupoid& g) {
  AnchorAnalysis an = analyze_anchor(g);
  std::vector<TransitiveComponent> out;
  for (const auto& orbit : an.orbits)
    out.push_back({orbit, full_restriction_by_index(g, orbit)});
  return out;
}

GaugeGroupoid gauge_groupoid(const ActionLaw& action,
                             const std::vector<int>* fiber_map,
                             const std::vector<std::string>* base_names) {
  const Groupoid& grp = *action.actor;
  if (grp.object_count() != 1)
    throw std::invalid_argument("gauge_groupoid: the actor must be a group");
  const int ne = static_cast<int>(action.points.size());
  if (ne == 0) throw std::invalid_argument("gauge_groupoid: empty space");

  PrincipalityCheck freeness = is_principal_action(action);
  if (!freeness.principal)
    throw std::invalid_argument(
        "gauge_groupoid: non-free action, arrow '" +
        grp.arrow_name(freeness.witness->first) + "' fixes point '" +
        action.points[freeness.witness->second] + "'");

  // orbits of the action
  std::vector<int> orbit(ne, -1);
  int norb = 0;
  for (int x = 0; x < ne; ++x) {
    if (orbit[x] >= 0) continue;
    orbit[x] = norb;
    for (int ga = 0; ga < grp.arrow_count(); ++ga)
      if (action.defined(ga, x)) orbit[action.operate(ga, x)] = norb;
    ++norb;
  }
  if (fiber_map) {
    if (fiber_map->size() != static_cast<size_t>(ne))
      throw std::invalid_argument("gauge_groupoid: fiber map has wrong size");
    // fibers must be exactly the orbits
    std::map<int, int> fiber_orbit;
    for (int x = 0; x < ne; ++x) {
      auto [it, fresh] = fiber_orbit.emplace((*fiber_map)[x], orbit[x]);
      if (!fresh && it->second != orbit[x])
        throw std::invalid_argument(
            "gauge_groupoid: action is not transitive on the fiber of point '" +
            action.points[x] + "'");
    }
    std::map<int, int> orbit_fiber;
    for (int x = 0; x < ne; ++x) {
      auto [it, fresh] = orbit_fiber.emplace(orbit[x], (*fiber_map)[x]);
      if (!fresh && it->second != (*fiber_map)[x])
        throw std::invalid_argument(
            "gauge_groupoid: action does not preserve the fiber of point '" +
            action.points[x] + "'");
    }
  }

  std::vector<std::string> objects(norb);
  for (int x = 0; x < ne; ++x) {
    std::string candidate =
        base_names ? (*base_names)[x] : "[" + action.points[x] + "]";
    if (objects[orbit[x]].empty() || candidate < objects[orbit[x]])
      objects[orbit[x]] = candidate;
  }

  // diagonal orbits on pairs; representatives are minimal pair indices
  auto act_pair = [&](int ga, int y, int x) -> std::pair<int, int> {
    if (!action.defined(ga, y) || !action.defined(ga, x)) return {-1, -1};
    return {action.operate(ga, y), action.operate(ga, x)};
  };
  std::vector<int> cls(static_cast<size_t>(ne) * ne, -1);
  std::vector<std::pair<int, int>> rep;
  for (int y = 0; y < ne; ++y)
    for (int x = 0; x < ne; ++x) {
      if (cls[static_cast<size_t>(y) * ne + x] >= 0) continue;
      int id = static_cast<int>(rep.size());
      rep.push_back({y, x});
      for (int ga = 0; ga < grp.arrow_count(); ++ga) {
        auto [yy, xx] = act_pair(ga, y, x);
        if (yy >= 0) cls[static_cast<size_t>(yy) * ne + xx] = id;
      }
      cls[static_cast<size_t>(y) * ne + x] = id;
    }
  const int ncls = static_cast<int>(rep.size());

  std::vector<std::string> arrows;
  std::vector<int> src(ncls), tgt(ncls), inv(ncls), unit(norb, -1);
  for (int c = 0; c < ncls; ++c) {
    auto [y, x] = rep[c];
    arrows.push_back("[" + action.points[y] + "," + action.points[x] + "]");
    src[c] = orbit[x];
    tgt[c] = orbit[y];
    inv[c] = cls[static_cast<size_t>(x) * ne + y];
  }
  for (int x = 0; x < ne; ++x) unit[orbit[x]] = cls[static_cast<size_t>(x) * ne + x];
  std::vector<std::array<int, 3>> comp;
  for (int l = 0; l < ncls; ++l)
    for (int r = 0; r < ncls; ++r) {
      if (src[l] != tgt[r]) continue;
      // translate r's representative so the middle points agree
      auto [y2, x2] = rep[l];
      auto [y1, x1] = rep[r];
      int result = -1;
      for (int ga = 0; ga < grp.arrow_count(); ++ga) {
        if (!action.defined(ga, y1)) continue;
        if (action.operate(ga, y1) == x2) {
          result = cls[static_cast<size_t>(y2) * ne + action.operate(ga, x1)];
          break;
        }
      }
      if (result < 0)
        throw std::logic_error("gauge_groupoid: fiber transitivity failed");
      comp.push_back({l, r, result});
    }
  Groupoid gauge = Groupoid::from_tables(objects, arrows, src, tgt, unit, inv,
                                         comp);
  auto check = validate(to_raw(gauge));
  if (!check.ok())
    throw std::logic_error("gauge groupoid is invalid\n" +
                           format_diagnostics(check.issues));
  GroupoidPtr gaugep = share(std::move(gauge));

  GroupoidPtr pairs = share(pair_groupoid(action.points));
  Functor quotient{pairs, gaugep, {}, {}};
  for (int y = 0; y < ne; ++y)
    for (int x = 0; x < ne; ++x)
      quotient.arrow_map.push_back(cls[static_cast<size_t>(y) * ne + x]);
  // pair_groupoid enumerates arrows as (to, from) in row-major order
  for (int x = 0; x < ne; ++x) quotient.object_map.push_back(orbit[x]);
  Diagnostics issues = check_functor(quotient);
  if (!issues.empty())
    throw std::logic_error("gauge quotient is not a functor\n" +
                           format_diagnostics(issues));
  return {gaugep, quotient};
}

}  // namespace grpd
