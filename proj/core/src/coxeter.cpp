#include "coxcc/coxeter.hpp"

#include <algorithm>
#include <queue>

#include "coxcc/errors.hpp"

namespace coxcc {

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::string VertexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int i : members()) {
    if (!first) s += ",";
    s += "s" + std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

std::string label_to_string(int m) { return m == kInfinity ? "inf" : std::to_string(m); }

CoxeterMatrix::CoxeterMatrix(int rank) : n_(rank) {
  if (rank < 1 || rank > kMaxRank)
    throw ValidationError("rank must be in [1, " + std::to_string(kMaxRank) + "], got " +
                          std::to_string(rank));
  m_.assign(static_cast<std::size_t>(rank * rank), 2);
  for (int i = 0; i < rank; ++i) m_[static_cast<std::size_t>(i * rank + i)] = 1;
}

CoxeterMatrix::CoxeterMatrix(int rank, std::span<const CoxeterEdge> edges) : CoxeterMatrix(rank) {
  std::vector<bool> set(static_cast<std::size_t>(rank * rank), false);
  for (const auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= rank || e.j >= rank)
      throw ValidationError("generator index out of range in pair (" + std::to_string(e.i + 1) +
                            "," + std::to_string(e.j + 1) + ")");
    if (e.i == e.j) throw ValidationError("diagonal entry given for s" + std::to_string(e.i + 1));
    if (e.m < 2)
      throw ValidationError("label " + std::to_string(e.m) + " < 2 for pair (" +
                            std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) + ")");
    auto k = static_cast<std::size_t>(e.i * rank + e.j);
    auto kt = static_cast<std::size_t>(e.j * rank + e.i);
    if (set[k] && m_[k] != e.m)
      throw ValidationError("conflicting labels " + label_to_string(m_[k]) + " and " +
                            label_to_string(e.m) + " for pair (" + std::to_string(e.i + 1) + "," +
                            std::to_string(e.j + 1) + ")");
    m_[k] = m_[kt] = e.m;
    set[k] = set[kt] = true;
  }
}

std::vector<CoxeterEdge> CoxeterMatrix::edges() const {
  std::vector<CoxeterEdge> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if ((*this)(i, j) >= 3) out.push_back({i, j, (*this)(i, j)});
  return out;
}

VertexSet CoxeterMatrix::neighbors(int i) const {
  VertexSet s;
  for (int j = 0; j < n_; ++j)
    if (adjacent(i, j)) s = s.with(j);
  return s;
}

bool CoxeterMatrix::connected(VertexSet s) const {
  if (s.empty()) return false;
  VertexSet seen = VertexSet{}.with(s.first());
  VertexSet frontier = seen;
  while (!frontier.empty()) {
    VertexSet next;
    for (int i : frontier.members()) next = next | (neighbors(i) & s);
    frontier = next - seen;
    seen = seen | frontier;
  }
  return seen == s;
}

VertexSet CoxeterMatrix::perp(VertexSet s) const {
  VertexSet out;
  for (int j = 0; j < n_; ++j) {
    if (s.contains(j)) continue;
    bool commutes = true;
    for (int i : s.members())
      if ((*this)(i, j) != 2) { commutes = false; break; }
    if (commutes) out = out.with(j);
  }
  return out;
}

CoxeterMatrix CoxeterMatrix::restrict_to(VertexSet s) const {
  auto idx = s.members();
  if (idx.empty()) throw PreconditionError("cannot restrict to an empty subset");
  std::vector<CoxeterEdge> e;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (int m = (*this)(idx[a], idx[b]); m != 2)
        e.push_back({static_cast<int>(a), static_cast<int>(b), m});
  return CoxeterMatrix(static_cast<int>(idx.size()), e);
}

// ---------------------------------------------------------------------------

DiagramComponent component_of(const CoxeterMatrix& w, VertexSet s) {
  DiagramComponent c;
  c.vertices = s.members();
  for (const auto& e : w.edges())
    if (s.contains(e.i) && s.contains(e.j)) c.edges.push_back(e);
  return c;
}

std::vector<DiagramComponent> irreducible_components(const CoxeterMatrix& w, VertexSet s) {
  std::vector<DiagramComponent> out;
  VertexSet left = s & w.generators();
  while (!left.empty()) {
    VertexSet comp = VertexSet{}.with(left.first());
    VertexSet frontier = comp;
    while (!frontier.empty()) {
      VertexSet next;
      for (int i : frontier.members()) next = next | (w.neighbors(i) & left);
      frontier = next - comp;
      comp = comp | frontier;
    }
    out.push_back(component_of(w, comp));
    left = left - comp;
  }
  return out;
}

std::vector<DiagramComponent> irreducible_components(const CoxeterMatrix& w) {
  return irreducible_components(w, w.generators());
}

GroupClass classify(const CoxeterMatrix& w, VertexSet s) {
  if (!w.connected(s)) throw PreconditionError("subset " + s.to_string() + " is not connected");
  return classify_component(component_of(w, s));
}

bool is_infinite(const CoxeterMatrix& w, VertexSet s) {
  for (const auto& c : irreducible_components(w, s))
    if (!classify_component(c).finite()) return true;
  return false;
}

// ---------------------------------------------------------------------------

namespace {

std::uint32_t deposit(std::uint32_t compressed, const std::vector<int>& positions) {
  std::uint32_t out = 0;
  for (std::size_t k = 0; compressed != 0; ++k, compressed >>= 1)
    if (compressed & 1u) out |= std::uint32_t{1} << positions[k];
  return out;
}

}  // namespace

void for_each_subset(int rank, VertexSet universe, const std::function<bool(VertexSet)>& fn) {
  if (rank > kMaxEnumerationRank)
    throw BudgetError("exhaustive subset enumeration capped at N <= " +
                      std::to_string(kMaxEnumerationRank) + ", got N = " + std::to_string(rank));
  auto pos = universe.members();
  const int u = static_cast<int>(pos.size());
  for (int k = 1; k <= u; ++k) {
    // Gosper's hack walks k-subsets in increasing order; deposit() is monotone.
    std::uint64_t x = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << u;
    while (x < limit) {
      if (!fn(VertexSet(deposit(static_cast<std::uint32_t>(x), pos)))) return;
      std::uint64_t c = x & -x;
      std::uint64_t r = x + c;
      x = (((r ^ x) >> 2) / c) | r;
    }
  }
}

std::vector<StandardSubgroup> enumerate_standard_subgroups(const CoxeterMatrix& w,
                                                           const SubsetFilter& filter) {
  std::vector<StandardSubgroup> out;
  for_each_subset(w.rank(), w.generators(), [&](VertexSet s) {
    if (!filter || filter(w, s)) out.push_back({s, w.restrict_to(s)});
    return true;
  });
  return out;
}

namespace filters {

bool connected(const CoxeterMatrix& w, VertexSet s) { return w.connected(s); }

bool atilde_rank_at_least_2(const CoxeterMatrix& w, VertexSet s) {
  if (s.size() < 3 || !w.connected(s)) return false;
  return classify(w, s).family == Family::AffineA;
}

}  // namespace filters

IcResult condition_ic(const CoxeterMatrix& w) {
  IcResult res;
  for_each_subset(w.rank(), w.generators(), [&](VertexSet t) {
    if (!w.connected(t) || classify(w, t).finite()) return true;
    VertexSet p = w.perp(t);
    if (!is_infinite(w, p)) return true;
    // Smallest connected infinite piece of the perp as the second half.
    for_each_subset(w.rank(), p, [&](VertexSet q) {
      if (w.connected(q) && !classify(w, q).finite()) {
        res.holds = true;
        res.witness = std::make_pair(t, q);
        return false;
      }
      return true;
    });
    return !res.holds;
  });
  return res;
}

AtildeResult condition_atilde(const CoxeterMatrix& w) {
  AtildeResult res;
  for_each_subset(w.rank(), w.generators(), [&](VertexSet s) {
    if (s.size() < 3 || !w.connected(s)) return true;
    GroupClass g = classify(w, s);
    if (g.kind == GroupKind::Affine && g.family != Family::AffineA) {
      res.holds = false;
      res.violation = s;
      return false;
    }
    return true;
  });
  return res;
}

std::optional<VertexSet> first_affine_subset_rank3(const CoxeterMatrix& w) {
  std::optional<VertexSet> found;
  for_each_subset(w.rank(), w.generators(), [&](VertexSet s) {
    if (s.size() >= 3 && w.connected(s) && classify(w, s).kind == GroupKind::Affine) {
      found = s;
      return false;
    }
    return true;
  });
  return found;
}

bool is_word_hyperbolic(const CoxeterMatrix& w) {
  return !condition_ic(w).holds && !first_affine_subset_rank3(w).has_value();
}

namespace {

void require_irreducible_infinite(const CoxeterMatrix& w, const char* what) {
  if (!w.connected(w.generators()))
    throw PreconditionError(std::string(what) + ": Coxeter group is reducible");
  if (classify(w, w.generators()).finite())
    throw PreconditionError(std::string(what) + ": Coxeter group is finite");
}

}  // namespace

bool admits_cc_reflection_rep(const CoxeterMatrix& w) {
  require_irreducible_infinite(w, "admits_cc_reflection_rep");
  return !condition_ic(w).holds && condition_atilde(w).holds;
}

std::vector<Peripheral> peripheral_subgroups(const CoxeterMatrix& w) {
  require_irreducible_infinite(w, "peripheral_subgroups");
  if (classify(w, w.generators()).kind != GroupKind::Large)
    throw PreconditionError("peripheral_subgroups: Coxeter group is affine, not large");
  if (condition_ic(w).holds) throw PreconditionError("peripheral_subgroups: (IC) holds");
  if (!condition_atilde(w).holds)
    throw PreconditionError("peripheral_subgroups: an affine subdiagram is not of type ~A");
  std::vector<Peripheral> out;
  for_each_subset(w.rank(), w.generators(), [&](VertexSet u) {
    if (filters::atilde_rank_at_least_2(w, u)) {
      VertexSet p = w.perp(u);
      if (is_infinite(w, p))
        throw Error("peripheral_subgroups: infinite perp for " + u.to_string());
      out.push_back({u, p});
    }
    return true;
  });
  return out;
}

}  // namespace coxcc
