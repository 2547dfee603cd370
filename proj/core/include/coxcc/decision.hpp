#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxcc/cartan.hpp"
#include "coxcc/coxeter.hpp"

namespace coxcc {

inline constexpr double kTolStrict = 1e-7;

struct DecideOptions {
  double tol_strict = kTolStrict;
};

struct Witness {
  // "IC", "Atilde", "ZD_pair", "ZD_cycle", "ZT", "affine", "route_disagreement"
  std::string condition;
  VertexSet subset;
  std::optional<std::pair<int, int>> pair;  // 0-based
  double value = 0.0;
  bool boundary = false;  // value sits within tol_strict of the critical one
  std::string note;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct RouteResult {
  bool zt = false;  // no connected standard subgroup of zero type
  bool zd = false;  // all inf-pair products > 4 and all ~A_k cycle products != 1
  bool agree = true;
  friend bool operator==(const RouteResult&, const RouteResult&) = default;
};

struct AffineCase {
  bool unipotent_free = false;
  MatrixType type = MatrixType::Zero;
  bool atilde = false;
  double det = 0.0;
  // Each listed equivalent condition, in order: cc, ncc, no unipotents,
  // not zero type, det != 0, ~A with negative type.
  std::vector<bool> conditions;
  bool consistent = true;
  friend bool operator==(const AffineCase&, const AffineCase&) = default;
};

struct CCVerdict {
  bool exists_cc_rep = false;
  bool ncc = false;
  bool cc = false;
  bool scc = false;
  bool anosov = false;
  bool hyperbolic = false;
  bool group_obstruction = false;
  std::optional<AffineCase> affine_case;
  std::vector<Witness> witnesses;
  RouteResult routes;
  double tol_strict = kTolStrict;
  friend bool operator==(const CCVerdict&, const CCVerdict&) = default;
};

// Full verdict for an irreducible infinite W and a compatible A. Throws
// ValidationError on incompatible A and PreconditionError on reducible or
// finite W. Affine W is handled by decide_affine.
CCVerdict decide(const CartanMatrix& a, const DecideOptions& opt = {});
CCVerdict decide_affine(const CartanMatrix& a, const DecideOptions& opt = {});

struct ExistsResult {
  bool exists = false;
  std::string reason;  // "", "IC" or "Atilde"
  std::optional<Witness> witness;
};
ExistsResult exists_verdict(const CoxeterMatrix& w);

// Induced cycles of the diagram with every edge labeled 3 (length >= 3),
// each listed once from its smallest vertex.
std::vector<std::vector<int>> atilde_cycles(const CoxeterMatrix& w);

// Whether some power c^k, 1 <= k <= max_power, of the Coxeter element is a
// nontrivial unipotent in the realization alpha = I, v = columns of A.
bool coxeter_element_has_unipotent_power(const Matrix& a, int max_power = 120);

}  // namespace coxcc
