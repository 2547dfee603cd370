#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "coxcc/cartan.hpp"
#include "coxcc/reflection.hpp"

namespace coxcc {

// Polyhedral cone given by inequalities {x : c(x) <= 0 for each row c} or as
// the nonnegative span of generator columns.
struct PolyCone {
  enum class Kind { ByInequalities, ByGenerators };
  Kind kind = Kind::ByInequalities;
  Matrix data;  // rows are covectors (inequalities) or columns are vectors (generators)

  static PolyCone fundamental(const ReflectionRep& rep);  // alpha_i(x) <= 0
  static PolyCone dual(const ReflectionRep& rep);         // span+ of v_j

  // Generator cones need linearly independent columns.
  bool contains(const Vector& x, double tol = 1e-9) const;
};

// Coordinates of x in the (independent) columns of `gens`; nullopt when x is
// not in their span.
std::optional<Vector> span_coordinates(const Matrix& gens, const Vector& x, double tol = 1e-9);

inline constexpr double kSigmaStrict = 1e-9;

class PrunedDomain {
 public:
  // Needs independent v_j.
  explicit PrunedDomain(const ReflectionRep& rep);
  bool in_delta(const Vector& x) const;
  bool in_sigma(const Vector& x) const;       // alpha_i(x) <= 0, t_j >= 0
  bool in_sigma_flat(const Vector& x) const;  // and t_j > 0
  // sum t_j v_j with t the Perron-Frobenius vector (negative type), else -that.
  const std::optional<Vector>& sample_point() const { return x0_; }

 private:
  ReflectionRep rep_;
  std::optional<Vector> x0_;
};

struct TilingElement {
  Word word;
  Matrix matrix;
};

inline constexpr int kMaxOrbitDepth = 12;
inline constexpr double kDedupTolerance = 1e-6;

struct OrbitOptions {
  double tol = kDedupTolerance;
  std::size_t max_elements = 2'000'000;
};

struct Tiling {
  std::vector<TilingElement> elements;  // (length, lex word) order, identity first
  int depth = 0;
  Matrix alpha;  // walls of the fundamental cone
  Matrix v;      // generators of the dual cone
  double tol = kDedupTolerance;
  std::vector<std::string> warnings;

  // Index of the element equal to m (within tol), or -1.
  int find(const Matrix& m) const;
  int count_of_length(int len) const;
  // Rebuilds the lookup buckets after `elements` is edited by hand.
  void reindex();

  std::unordered_multimap<std::int64_t, int> buckets;
};

Tiling orbit(const ReflectionRep& rep, int depth, const OrbitOptions& opt = {});

struct LengthDisagreement {
  Word gamma;
  int generator = 0;
  bool longer = false;   // BFS says l(gamma s_i) > l(gamma)
  bool in_cone = false;  // rho(gamma) v_i in span+ of v
};

struct LengthReport {
  bool skipped = false;
  std::string notice;
  int checked = 0;
  std::vector<LengthDisagreement> disagreements;
};

LengthReport length_property_check(const ReflectionRep& rep, int depth);

struct MembershipSample {
  bool in_delta = false;
  bool screen_pass = false;
  int refuted_by = -1;  // orbit index refuting membership, -1 when none
};

struct MembershipReport {
  std::vector<MembershipSample> samples;
  int violations = 0;  // in_delta but refuted by the screen
};

MembershipReport delta_membership_check(const ReflectionRep& rep,
                                        const std::vector<Vector>& samples, int depth);

struct SigmaBoundaryResult {
  bool touches_boundary = false;
  std::string reason;              // "", "IC" or "ZT"
  VertexSet support;               // S' carrying the Perron-Frobenius vector
  VertexSet stabilizer;            // infinite standard subgroup fixing x
  Vector coefficients;             // x = sum coefficients_j v_j (length N)
  Vector point;                    // x in V for the model rep
  Vector alpha_values;             // alpha_i(x)
};

// Requires irreducible W and a compatible negative-type A; the point is
// expressed in build_rep(A, rank A).
SigmaBoundaryResult sigma_boundary_test(const CartanMatrix& a, double tol = 1e-8);

// Hilbert distance in the convex polygon (vertices in order, either
// orientation) between interior points y and z.
double hilbert_distance(const std::vector<Eigen::Vector2d>& polygon, const Eigen::Vector2d& y,
                        const Eigen::Vector2d& z);

// Orbit indices whose tile has x strictly inside (every wall below -tol).
std::vector<int> tiles_containing(const Tiling& t, const Vector& x, double tol = 1e-9);

}  // namespace coxcc
