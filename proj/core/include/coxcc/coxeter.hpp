#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace coxcc {

// Label of a pair of generators with no relation. Ordered above every finite
// label, so `m >= 3` still means "edge in the diagram".
inline constexpr int kInfinity = std::numeric_limits<int>::max();

// Hard ceiling on the number of generators a CoxeterMatrix can carry.
inline constexpr int kMaxRank = 32;
// Ceiling for operations that scan all 2^N subsets.
inline constexpr int kMaxEnumerationRank = 20;

// A set of generator indices (0-based) packed into a bitmask.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint32_t bits) : bits_(bits) {}
  VertexSet(std::initializer_list<int> members) {
    for (int i : members) bits_ |= std::uint32_t{1} << i;
  }

  static constexpr VertexSet all(int n) {
    return VertexSet(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
  }
  static VertexSet from(std::span<const int> members) {
    VertexSet s;
    for (int i : members) s.bits_ |= std::uint32_t{1} << i;
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr int first() const { return std::countr_zero(bits_); }
  constexpr VertexSet with(int i) const { return VertexSet(bits_ | (std::uint32_t{1} << i)); }
  constexpr VertexSet without(int i) const { return VertexSet(bits_ & ~(std::uint32_t{1} << i)); }
  constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool disjoint(VertexSet o) const { return (bits_ & o.bits_) == 0; }

  std::vector<int> members() const;
  // "{s1,s3}" with 1-based generator names.
  std::string to_string() const;

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(VertexSet, VertexSet) = default;
  // Order by size first, then by bit pattern: the enumeration order used everywhere.
  friend constexpr std::strong_ordering operator<=>(VertexSet a, VertexSet b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint32_t bits_ = 0;
};

struct CoxeterEdge {
  int i = 0;  // 0-based
  int j = 0;
  int m = 2;
  friend bool operator==(const CoxeterEdge&, const CoxeterEdge&) = default;
};

// Symmetric matrix (m_ij) with m_ii = 1 and m_ij in {2, 3, ..., kInfinity}.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  // All pairs commute (m = 2).
  explicit CoxeterMatrix(int rank);
  // Unlisted pairs default to 2. Throws ValidationError on out-of-range
  // indices, labels below 2, diagonal entries, or conflicting duplicates.
  CoxeterMatrix(int rank, std::span<const CoxeterEdge> edges);
  CoxeterMatrix(int rank, std::initializer_list<CoxeterEdge> edges)
      : CoxeterMatrix(rank, std::span<const CoxeterEdge>(edges.begin(), edges.size())) {}

  int rank() const { return n_; }
  int operator()(int i, int j) const { return m_[static_cast<std::size_t>(i * n_ + j)]; }
  bool adjacent(int i, int j) const { return i != j && (*this)(i, j) >= 3; }

  VertexSet generators() const { return VertexSet::all(n_); }
  // Diagram edges (label >= 3), i < j, lexicographic.
  std::vector<CoxeterEdge> edges() const;
  VertexSet neighbors(int i) const;
  bool connected(VertexSet s) const;
  // Generators outside `s` commuting with every generator of `s`.
  VertexSet perp(VertexSet s) const;
  // Induced presentation on `s`, renumbered in increasing index order.
  CoxeterMatrix restrict_to(VertexSet s) const;

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<int> m_;
};

std::string label_to_string(int m);

// ---------------------------------------------------------------------------
// Diagram components and classification

struct DiagramComponent {
  std::vector<int> vertices;       // sorted, 0-based indices into the parent
  std::vector<CoxeterEdge> edges;  // parent indices, label >= 3
  VertexSet vertex_set() const { return VertexSet::from(vertices); }
};

// Connected components of the diagram restricted to `s` (default: all
// generators), ordered by smallest vertex.
std::vector<DiagramComponent> irreducible_components(const CoxeterMatrix& w);
std::vector<DiagramComponent> irreducible_components(const CoxeterMatrix& w, VertexSet s);
DiagramComponent component_of(const CoxeterMatrix& w, VertexSet connected_set);

enum class GroupKind { Spherical, Affine, Large };

enum class Family {
  A, B, D, I2, H3, H4, F4, E6, E7, E8,
  AffineA1, AffineA, AffineB, AffineC, AffineD, AffineB2C2, AffineG2, AffineF4,
  AffineE6, AffineE7, AffineE8,
  None,
};

struct GroupClass {
  GroupKind kind = GroupKind::Large;
  Family family = Family::None;
  // Node count for spherical families, node count minus one for affine ones.
  int rank = 0;
  // Dihedral label for I2(p).
  int p = 0;

  bool finite() const { return kind == GroupKind::Spherical; }
  std::string name() const;
  friend bool operator==(const GroupClass&, const GroupClass&) = default;
};

std::string to_string(GroupKind kind);

GroupClass classify_component(const DiagramComponent& c);
// `s` must induce a connected diagram.
GroupClass classify(const CoxeterMatrix& w, VertexSet s);
// Infinite iff some irreducible factor is affine or large.
bool is_infinite(const CoxeterMatrix& w, VertexSet s);
inline bool is_infinite(const CoxeterMatrix& w) { return is_infinite(w, w.generators()); }

// Diagram of a family from the spherical/affine tables. `rank` follows the
// GroupClass convention; `p` is only read for I2.
CoxeterMatrix make_diagram(Family family, int rank, int p = 0);

// ---------------------------------------------------------------------------
// Standard subgroups and group-level conditions

struct StandardSubgroup {
  VertexSet subset;
  CoxeterMatrix induced;
};

using SubsetFilter = std::function<bool(const CoxeterMatrix&, VertexSet)>;

// Calls `fn` on every nonempty subset of `universe` ordered by (size, bits).
// Stops early when `fn` returns false. Throws BudgetError past kMaxEnumerationRank.
void for_each_subset(int rank, VertexSet universe, const std::function<bool(VertexSet)>& fn);

std::vector<StandardSubgroup> enumerate_standard_subgroups(const CoxeterMatrix& w,
                                                           const SubsetFilter& filter);

namespace filters {
bool connected(const CoxeterMatrix& w, VertexSet s);
// Connected, affine, of family ~A_k with k >= 2.
bool atilde_rank_at_least_2(const CoxeterMatrix& w, VertexSet s);
}  // namespace filters

struct IcResult {
  bool holds = false;  // true when disjoint commuting infinite subsets exist
  std::optional<std::pair<VertexSet, VertexSet>> witness;
};
IcResult condition_ic(const CoxeterMatrix& w);

struct AtildeResult {
  bool holds = true;
  std::optional<VertexSet> violation;  // first connected affine non-~A subset
};
AtildeResult condition_atilde(const CoxeterMatrix& w);

// First connected affine subset with at least three generators, if any.
std::optional<VertexSet> first_affine_subset_rank3(const CoxeterMatrix& w);

bool is_word_hyperbolic(const CoxeterMatrix& w);

// Requires an irreducible infinite group; throws PreconditionError otherwise.
bool admits_cc_reflection_rep(const CoxeterMatrix& w);

struct Peripheral {
  VertexSet u;
  VertexSet u_perp;
};
// Requires irreducible, large, with (IC) failing and (~A) holding.
std::vector<Peripheral> peripheral_subgroups(const CoxeterMatrix& w);

}  // namespace coxcc
