#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/groupoid.hpp"

namespace grpd {

/// Total map between finite sets given by sizes; elements are 0..n-1.
struct FinMap {
  int domain = 0;
  int codomain = 0;
  std::vector<int> graph;  // domain-indexed values in the codomain

  int operator()(int x) const { return graph[x]; }
  bool injective() const;
  bool surjective() const;
  bool bijective() const { return injective() && surjective(); }
};

FinMap identity_map(int n);
FinMap compose(const FinMap& g, const FinMap& f);
FinMap product_map(const FinMap& f, const FinMap& g);

/// Fiber product of f: B -> A and u: C -> A with the two projections and
/// the counting certificate |P| = sum over a of |f^-1(a)| * |u^-1(a)|.
struct PullbackSquare {
  std::vector<std::pair<int, int>> elements;  // pairs (b, c) with f(b) = u(c)
  FinMap to_first;   // P -> B
  FinMap to_second;  // P -> C
  bool comparison_injective = true;  // canonical P -> B x C
};

PullbackSquare good_pullback(const FinMap& f, const FinMap& u);

/// Commuting square b: B' -> A', v: B' -> B, u: A' -> A, f: B -> A with
/// u.b = f.v; full when the comparison into the pullback of (u, f) is onto.
struct CommutingSquare {
  FinMap top;    // B' -> A'
  FinMap left;   // B' -> B
  FinMap right;  // A' -> A
  FinMap bottom; // B  -> A
};

bool square_commutes(const CommutingSquare& s);
bool full_square(const CommutingSquare& s);

/// For a cartesian square with all four sides surjective, checks the pushout
/// property: the quotient of B + A' by the square's relation is exactly A.
bool perfect_square_pushout(const CommutingSquare& s);

/// The coequalizer test used for the orbit square: q must identify exactly
/// the pairs related through (l, r): P -> B.
bool is_coequalizer(const FinMap& l, const FinMap& r, const FinMap& q);

/// Stability axioms of the (all injections, all surjections) structure on
/// finite sets, exercised over an exhaustive family of maps between sets of
/// size <= max_size. Every failure is reported; the expected count is zero.
struct AxiomReport {
  long checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

AxiomReport check_axioms(int max_size);

}  // namespace grpd
