#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace grpd {

/// One violated axiom, with the witnessing elements spelled out.
struct Diagnostic {
  std::string rule;    // stable identifier, e.g. "associativity"
  std::string detail;  // witness description
};

using Diagnostics = std::vector<Diagnostic>;

std::string format_diagnostics(const Diagnostics& issues);

/// Unvalidated groupoid description. Everything is an explicit table keyed by
/// identifier strings; `compose` must cover exactly the composable pairs
/// (src(left) = tgt(right)).
struct RawGroupoid {
  std::vector<std::string> objects;
  std::vector<std::string> arrows;
  std::map<std::string, std::string> src;   // arrow -> object
  std::map<std::string, std::string> tgt;   // arrow -> object
  std::map<std::string, std::string> unit;  // object -> arrow
  std::map<std::string, std::string> inv;   // arrow -> arrow
  std::vector<std::array<std::string, 3>> compose;  // left, right, left.right
};

class Groupoid;
using GroupoidPtr = std::shared_ptr<const Groupoid>;

/// Finite groupoid with fully tabulated structure maps. Values are immutable
/// once built and safe to share across threads. Library constructors produce
/// tables that satisfy the axioms by construction; validate() is the gate for
/// raw input.
class Groupoid {
 public:
  Groupoid() = default;

  int object_count() const { return static_cast<int>(object_names_.size()); }
  int arrow_count() const { return static_cast<int>(arrow_names_.size()); }

  const std::string& object_name(int b) const { return object_names_[b]; }
  const std::string& arrow_name(int a) const { return arrow_names_[a]; }
  const std::vector<std::string>& object_names() const { return object_names_; }
  const std::vector<std::string>& arrow_names() const { return arrow_names_; }

  int src(int a) const { return src_[a]; }
  int tgt(int a) const { return tgt_[a]; }
  int unit(int b) const { return unit_[b]; }
  int inv(int a) const { return inv_[a]; }
  bool is_unit(int a) const { return unit_[src_[a]] == a; }

  bool composable(int g, int h) const { return src_[g] == tgt_[h]; }

  /// g.h for src(g) = tgt(h); -1 when the pair is not composable.
  int comp(int g, int h) const {
    return comp_[static_cast<size_t>(g) * arrow_names_.size() + h];
  }

  /// Division g.h^-1, defined when src(g) = src(h).
  int divide(int g, int h) const { return comp(g, inv_[h]); }

  int object_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;

  /// All arrows b -> c, in index order.
  std::vector<int> hom(int b, int c) const;

  /// Internal builder for tables that are already known to be coherent
  /// (bad tables still trip the structural asserts). `compose` lists
  /// composites for exactly the composable pairs.
  static Groupoid from_tables(std::vector<std::string> objects,
                              std::vector<std::string> arrows,
                              std::vector<int> src, std::vector<int> tgt,
                              std::vector<int> unit, std::vector<int> inv,
                              const std::vector<std::array<int, 3>>& compose);

 private:
  std::vector<std::string> object_names_;
  std::vector<std::string> arrow_names_;
  std::vector<int> src_, tgt_, inv_;  // arrow-indexed
  std::vector<int> unit_;             // object-indexed
  std::vector<int> comp_;             // arrow x arrow, -1 off the domain
  std::map<std::string, int> object_index_;
  std::map<std::string, int> arrow_index_;
};

GroupoidPtr share(Groupoid g);

/// Outcome of validating a RawGroupoid: either a groupoid or the complete
/// list of violated axioms.
struct ValidationResult {
  std::optional<Groupoid> groupoid;
  Diagnostics issues;
  bool ok() const { return groupoid.has_value(); }
};

ValidationResult validate(const RawGroupoid& raw);

RawGroupoid to_raw(const Groupoid& g);

// ---------------------------------------------------------------------------
// Group tables (used for one-object groupoids and isotropy extraction).

struct GroupTable {
  std::string name;
  std::vector<std::string> elements;
  std::vector<int> mult;  // elements x elements, flat
  int identity = 0;

  int times(int a, int b) const {
    return mult[static_cast<size_t>(a) * elements.size() + b];
  }
  int order() const { return static_cast<int>(elements.size()); }
};

/// Empty result means the table is a group; otherwise the failed law.
std::optional<std::string> check_group_table(const GroupTable& t);

GroupTable cyclic_table(int n);
GroupTable klein_table();
GroupTable symmetric3_table();
GroupTable dihedral4_table();
GroupTable quaternion_table();
GroupTable product_table(const GroupTable& a, const GroupTable& b);

/// Isomorphism a -> b as an element mapping, if one exists.
std::optional<std::vector<int>> group_isomorphism(const GroupTable& a,
                                                  const GroupTable& b);

// ---------------------------------------------------------------------------
// Standard constructors. Bad inputs (non-group table, non-equivalence
// relation, ...) raise std::invalid_argument.

Groupoid pair_groupoid(const std::vector<std::string>& objects);
Groupoid null_groupoid(const std::vector<std::string>& objects);
Groupoid group_groupoid(const GroupTable& table,
                        const std::string& object = "*");
Groupoid equivalence_groupoid(
    const std::vector<std::string>& objects,
    const std::vector<std::pair<std::string, std::string>>& relation);
Groupoid plurigroup_groupoid(const std::vector<GroupTable>& tables);

// Combinators.
Groupoid opposite(const Groupoid& g);
Groupoid product(const Groupoid& a, const Groupoid& b);
Groupoid disjoint_union(const Groupoid& a, const Groupoid& b);
/// Full subgroupoid on a subset of objects: keeps exactly the arrows with
/// both endpoints in the subset.
Groupoid full_restriction(const Groupoid& g,
                          const std::vector<std::string>& objects);
Groupoid full_restriction_by_index(const Groupoid& g,
                                   const std::vector<int>& objects);

/// Wide subgroupoid on the same objects, restricted to the given arrows.
/// The arrow set must contain all units and be closed under comp and inv.
Groupoid wide_subgroupoid(const Groupoid& g, const std::vector<int>& arrows);

// ---------------------------------------------------------------------------
// Anchor analysis and degeneracy classification.

struct AnchorAnalysis {
  std::vector<std::pair<int, int>> anchor;       // arrow -> (tgt, src)
  std::set<std::pair<int, int>> orbit_graph;     // image relation on objects
  std::vector<std::vector<int>> isotropy;        // object -> isotropy arrows
  std::vector<int> orbit_of;                     // object -> orbit id
  std::vector<std::vector<int>> orbits;          // orbit id -> objects
};

AnchorAnalysis analyze_anchor(const Groupoid& g);

struct GroupoidClasses {
  bool transitive = false;
  bool principal = false;
  bool banal = false;
  bool plurigroup = false;
  bool null = false;

  std::set<std::string> labels() const;
};

GroupoidClasses classify(const Groupoid& g);

/// Multiplication table of the isotropy group at an object.
GroupTable isotropy_table(const Groupoid& g, int object);

}  // namespace grpd
