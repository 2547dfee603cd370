#include "coxcc/decision.hpp"

#include <cmath>
#include <functional>

#include "coxcc/errors.hpp"

namespace coxcc {

namespace {

void require_compatible(const CartanMatrix& a) {
  auto viol = validate(a, CompatLevel::Full);
  if (!viol.empty()) {
    std::string msg = "Cartan matrix is not compatible: " + viol.front().message();
    if (viol.size() > 1) msg += " (+" + std::to_string(viol.size() - 1) + " more)";
    throw ValidationError(msg);
  }
}

GroupClass require_irreducible_infinite(const CoxeterMatrix& w, const char* what) {
  if (!w.connected(w.generators()))
    throw PreconditionError(std::string(what) +
                            ": Coxeter group is reducible; decide each component separately");
  GroupClass g = classify(w, w.generators());
  if (g.finite()) throw PreconditionError(std::string(what) + ": Coxeter group is finite");
  return g;
}

Witness ic_witness(const IcResult& ic) {
  Witness w;
  w.condition = "IC";
  w.subset = ic.witness->first | ic.witness->second;
  w.note = "S' = " + ic.witness->first.to_string() + ", S'' = " + ic.witness->second.to_string();
  return w;
}

Witness atilde_witness(const CoxeterMatrix& w, const AtildeResult& at) {
  Witness wt;
  wt.condition = "Atilde";
  wt.subset = *at.violation;
  wt.note = "affine subdiagram of type " + classify(w, *at.violation).name();
  return wt;
}

}  // namespace

std::vector<std::vector<int>> atilde_cycles(const CoxeterMatrix& w) {
  const int n = w.rank();
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  VertexSet on_path;
  std::function<void(int, int)> extend = [&](int start, int cur) {
    for (int nxt = start + 1; nxt < n; ++nxt) {
      if (w(cur, nxt) != 3 || on_path.contains(nxt)) continue;
      // Induced: nxt may touch only cur (and start, when it closes the cycle).
      bool chord = false;
      for (int p : path)
        if (p != cur && p != start && w.adjacent(p, nxt)) { chord = true; break; }
      if (chord) continue;
      const bool closes = path.size() >= 2 && w.adjacent(start, nxt);
      if (closes) {
        if (w(start, nxt) == 3 && path[1] < nxt) {
          auto cyc = path;
          cyc.push_back(nxt);
          out.push_back(cyc);
        }
        continue;  // extending past a neighbor of start would create a chord
      }
      path.push_back(nxt);
      on_path = on_path.with(nxt);
      extend(start, nxt);
      path.pop_back();
      on_path = on_path.without(nxt);
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    on_path = VertexSet{}.with(s);
    extend(s, s);
  }
  return out;
}

bool coxeter_element_has_unipotent_power(const Matrix& a, int max_power) {
  const auto n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix c = id;
  for (Eigen::Index i = 0; i < n; ++i) {
    Matrix g = id;
    g.col(i) -= a.col(i);
    c = c * g;
  }
  Matrix p = id;
  for (int k = 1; k <= max_power; ++k) {
    p = p * c;
    const Matrix d = p - id;
    const double dn = d.cwiseAbs().maxCoeff();
    if (dn <= 1e-9) continue;
    const double nil = matrix_power(d / dn, static_cast<int>(n)).cwiseAbs().maxCoeff();
    if (nil <= 1e-8) return true;
  }
  return false;
}

ExistsResult exists_verdict(const CoxeterMatrix& w) {
  require_irreducible_infinite(w, "exists_verdict");
  ExistsResult r;
  IcResult ic = condition_ic(w);
  if (ic.holds) {
    r.reason = "IC";
    r.witness = ic_witness(ic);
    return r;
  }
  AtildeResult at = condition_atilde(w);
  if (!at.holds) {
    r.reason = "Atilde";
    r.witness = atilde_witness(w, at);
    return r;
  }
  r.exists = true;
  return r;
}

CCVerdict decide_affine(const CartanMatrix& a, const DecideOptions& opt) {
  require_compatible(a);
  const auto& w = a.coxeter();
  GroupClass g = require_irreducible_infinite(w, "decide_affine");
  if (g.kind != GroupKind::Affine) throw PreconditionError("decide_affine: Coxeter group is not affine");

  CCVerdict v;
  v.tol_strict = opt.tol_strict;
  AffineCase ac;
  const TypeReport tr = matrix_type(a);
  ac.type = tr.type;
  ac.det = a.entries().determinant();
  ac.atilde = g.family == Family::AffineA || g.family == Family::AffineA1;
  ac.unipotent_free = !coxeter_element_has_unipotent_power(a.entries());
  const bool det_nonzero = std::abs(ac.det) > opt.tol_strict;
  const bool cc = ac.atilde && tr.type == MatrixType::Negative && det_nonzero;
  ac.conditions = {cc, cc, ac.unipotent_free, tr.type != MatrixType::Zero, det_nonzero,
                   ac.atilde && tr.type == MatrixType::Negative};
  for (bool c : ac.conditions) ac.consistent = ac.consistent && (c == cc);

  v.exists_cc_rep = ac.atilde;
  v.group_obstruction = !ac.atilde;
  v.cc = v.ncc = cc;
  v.scc = v.anosov = false;
  v.hyperbolic = false;
  v.routes.zt = tr.type != MatrixType::Zero;
  v.routes.zd = det_nonzero;
  v.routes.agree = v.routes.zt == v.routes.zd;
  if (!cc) {
    Witness wt;
    wt.condition = ac.atilde ? "affine" : "Atilde";
    wt.subset = w.generators();
    wt.value = ac.det;
    wt.boundary = !det_nonzero;
    wt.note = ac.atilde ? "Cartan matrix of zero type (det " + std::to_string(ac.det) + ")"
                        : "affine group of type " + g.name() + " is not ~A";
    v.witnesses.push_back(wt);
  }
  if (!ac.consistent) {
    Witness wt;
    wt.condition = "route_disagreement";
    wt.subset = w.generators();
    wt.note = "affine equivalences disagree; tolerance fault";
    v.witnesses.push_back(wt);
  }
  v.affine_case = ac;
  return v;
}

CCVerdict decide(const CartanMatrix& a, const DecideOptions& opt) {
  require_compatible(a);
  const auto& w = a.coxeter();
  GroupClass g = require_irreducible_infinite(w, "decide");
  if (g.kind == GroupKind::Affine) return decide_affine(a, opt);

  CCVerdict v;
  v.tol_strict = opt.tol_strict;
  const double tol = opt.tol_strict;
  const IcResult ic = condition_ic(w);
  const AtildeResult at = condition_atilde(w);
  v.exists_cc_rep = !ic.holds && at.holds;
  v.hyperbolic = !ic.holds && !first_affine_subset_rank3(w).has_value();
  if (ic.holds) v.witnesses.push_back(ic_witness(ic));
  else if (!at.holds) v.witnesses.push_back(atilde_witness(w, at));

  // Route 1: explicit determinants of the ~A_1 pairs and ~A_k cycles.
  v.routes.zd = true;
  for (const auto& e : w.edges()) {
    if (e.m != kInfinity) continue;
    const double p = a(e.i, e.j) * a(e.j, e.i);
    if (p <= 4.0 + tol) {
      v.routes.zd = false;
      Witness wt;
      wt.condition = "ZD_pair";
      wt.subset = VertexSet{e.i, e.j};
      wt.pair = std::make_pair(e.i, e.j);
      wt.value = p;
      wt.boundary = std::abs(p - 4.0) <= tol;
      wt.note = "product A_ij A_ji not > 4";
      v.witnesses.push_back(wt);
    }
  }
  for (const auto& cyc : atilde_cycles(w)) {
    const double r = cycle_product(a.entries(), cyc);
    if (std::abs(r - 1.0) <= tol) {
      v.routes.zd = false;
      Witness wt;
      wt.condition = "ZD_cycle";
      wt.subset = VertexSet::from(cyc);
      wt.value = r;
      wt.boundary = true;
      wt.note = "cycle product equals 1";
      v.witnesses.push_back(wt);
    }
  }

  // Route 2: exhaustive type scan over connected standard subgroups.
  v.routes.zt = true;
  for_each_subset(w.rank(), w.generators(), [&](VertexSet s) {
    if (!w.connected(s)) return true;
    const TypeReport tr = matrix_type(submatrix(a, s));
    if (tr.type != MatrixType::Zero) return true;
    v.routes.zt = false;
    Witness wt;
    wt.condition = "ZT";
    wt.subset = s;
    wt.value = tr.lowest_eigenvalue;
    wt.note = "Cartan submatrix of zero type";
    v.witnesses.push_back(wt);
    return false;
  });

  v.routes.agree = v.routes.zt == v.routes.zd;
  if (!v.routes.agree) {
    Witness wt;
    wt.condition = "route_disagreement";
    wt.subset = w.generators();
    wt.note = "zero-type scan and determinant route disagree; tolerance fault";
    v.witnesses.push_back(wt);
  }

  v.group_obstruction = !v.exists_cc_rep;
  v.cc = v.ncc = v.exists_cc_rep && v.routes.zt && v.routes.zd;
  v.scc = v.anosov = v.cc && v.hyperbolic;
  return v;
}

}  // namespace coxcc
