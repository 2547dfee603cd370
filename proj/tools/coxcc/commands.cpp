#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "coxcc/corpus.hpp"
#include "coxcc/errors.hpp"
#include "coxcc/render.hpp"

namespace coxcc::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

json subset_json(VertexSet s) {
  json a = json::array();
  for (int i : s.members()) a.push_back(i + 1);
  return a;
}

RunReport base_report(const std::string& command, const Common& c) {
  RunReport r;
  r.command = command;
  r.version = version_string();
  r.tolerances = {{"tol_strict", c.tol_strict}, {"type_zero", kTypeTolerance}};
  r.inputs["seed"] = c.seed;
  if (!c.params.empty()) r.inputs["parameters"] = c.params;
  return r;
}

CartanMatrix load_cartan(const Common& c, const std::string& path, const std::optional<std::string>& cox) {
  CartanMatrix a = read_cartan_file(path, c.params);
  if (!cox) return a;
  CoxeterMatrix w = read_cox_file(*cox);
  if (w.rank() != a.rank())
    throw ValidationError("diagram has " + std::to_string(w.rank()) + " generators but the Cartan matrix is " +
                          std::to_string(a.rank()) + "x" + std::to_string(a.rank()));
  return CartanMatrix(w, a.entries());
}

std::string verdict_text(const CCVerdict& v) {
  std::ostringstream os;
  os << "exists_cc_rep: " << std::boolalpha << v.exists_cc_rep << "\n"
     << "cc: " << v.cc << "  ncc: " << v.ncc << "  scc: " << v.scc << "  anosov: " << v.anosov << "\n"
     << "hyperbolic: " << v.hyperbolic << "\n"
     << "routes: zero-type scan " << (v.routes.zt ? "clear" : "hit") << ", determinant route "
     << (v.routes.zd ? "clear" : "hit") << (v.routes.agree ? "" : "  (DISAGREE)") << "\n";
  if (v.affine_case)
    os << "affine case: det " << num(v.affine_case->det) << ", type " << to_string(v.affine_case->type)
       << ", unipotent-free " << v.affine_case->unipotent_free << "\n";
  for (const auto& w : v.witnesses) {
    os << "witness " << w.condition << " on " << w.subset.to_string();
    if (w.pair) os << " pair (" << w.pair->first + 1 << "," << w.pair->second + 1 << ")";
    if (w.value != 0.0) os << " value " << num(w.value);
    if (w.boundary) os << " [within tol_strict of the critical value]";
    if (!w.note.empty()) os << ": " << w.note;
    os << "\n";
  }
  return os.str();
}

}  // namespace

Result cmd_classify(const Common& c, const std::string& path) {
  Result res{base_report("classify", c), {}};
  res.report.inputs["file"] = path;
  const CoxeterMatrix w = read_cox_file(path);
  std::ostringstream os;
  os << std::boolalpha;
  json out;
  const auto comps = irreducible_components(w);
  out["rank"] = w.rank();
  out["reducible"] = comps.size() > 1;
  out["components"] = json::array();
  os << "generators: " << w.rank() << "\n"
     << "reducibility: " << (comps.size() > 1 ? "reducible" : "irreducible") << "\n";
  for (const auto& comp : comps) {
    const GroupClass g = classify_component(comp);
    out["components"].push_back({{"subset", subset_json(comp.vertex_set())},
                                 {"kind", to_string(g.kind)},
                                 {"family", g.name()}});
    os << "  component " << comp.vertex_set().to_string() << ": " << to_string(g.kind) << " " << g.name() << "\n";
  }
  const bool hyp = is_word_hyperbolic(w);
  out["hyperbolic"] = hyp;
  os << "hyperbolic: " << hyp << "\n";

  const IcResult ic = condition_ic(w);
  out["IC"] = {{"holds", ic.holds}};
  os << "(IC): " << ic.holds;
  if (ic.witness) {
    out["IC"]["witness"] = {subset_json(ic.witness->first), subset_json(ic.witness->second)};
    os << " with witness " << ic.witness->first.to_string() << " x " << ic.witness->second.to_string();
  }
  os << "\n";
  const AtildeResult at = condition_atilde(w);
  out["Atilde"] = {{"holds", at.holds}};
  os << "(~A): " << at.holds;
  if (at.violation) {
    out["Atilde"]["violation"] = subset_json(*at.violation);
    os << " violated by " << at.violation->to_string() << " (" << classify(w, *at.violation).name() << ")";
  }
  os << "\n";

  if (comps.size() == 1 && is_infinite(w)) {
    const ExistsResult ex = exists_verdict(w);
    out["exists"] = ex.exists;
    os << "exists: " << ex.exists << (ex.reason.empty() ? "" : " (fails " + ex.reason + ")") << "\n";
    const GroupClass g = classify(w, w.generators());
    if (ex.exists && g.kind == GroupKind::Large) {
      out["peripherals"] = json::array();
      os << "peripherals:";
      const auto per = peripheral_subgroups(w);
      if (per.empty()) os << " none";
      for (const auto& p : per) {
        out["peripherals"].push_back({{"U", subset_json(p.u)}, {"U_perp", subset_json(p.u_perp)},
                                      {"type", classify(w, p.u).name()}});
        os << " " << classify(w, p.u).name() << " on " << p.u.to_string();
      }
      os << "\n";
    }
  } else {
    out["exists"] = nullptr;
    os << "exists: n/a (" << (comps.size() > 1 ? "reducible" : "finite") << " group)\n";
    res.report.warnings.push_back("existence verdict needs an irreducible infinite group");
  }
  res.report.outputs = out;
  res.text = os.str();
  return res;
}

Result cmd_decide(const Common& c, const std::string& cartan, const std::optional<std::string>& cox) {
  Result res{base_report("decide", c), {}};
  res.report.inputs["cartan"] = cartan;
  if (cox) res.report.inputs["cox"] = *cox;
  const CartanMatrix a = load_cartan(c, cartan, cox);
  DecideOptions opt;
  opt.tol_strict = c.tol_strict;
  const CCVerdict v = decide(a, opt);
  res.report.outputs = to_json(v);
  if (!v.routes.agree) res.report.warnings.push_back("decision routes disagree; tolerance fault");
  res.text = verdict_text(v);
  return res;
}

Result cmd_build(const Common& c, const std::string& flavor, const std::optional<std::string>& cox,
                 std::optional<int> n, const std::vector<double>& lambda, const std::optional<std::string>& out) {
  Result res{base_report("build", c), {}};
  res.report.inputs["flavor"] = flavor;
  CartanMatrix a;
  std::optional<AtildeModel> model;
  const double av = c.params.count("a") ? c.params.at("a") : 2.0;
  if (flavor == "atilde") {
    const int size = n.value_or(3);
    a = affine_atilde_cartan(size, av);
    model = atilde_model(size, av);
  } else {
    if (!cox) throw ValidationError("--cox is required for flavor " + flavor);
    res.report.inputs["cox"] = *cox;
    const CoxeterMatrix w = read_cox_file(*cox);
    if (flavor == "tits") {
      a = tits_cartan(w);
    } else if (flavor == "generic") {
      a = generic_cc_cartan(w);
    } else if (flavor == "deformed") {
      LambdaMap lam;
      std::size_t k = 0;
      for (const auto& e : w.edges()) {
        if (e.m != kInfinity) continue;
        if (lambda.empty()) throw ValidationError("--lambda needs one value per inf pair");
        lam[{e.i, e.j}] = lambda.size() == 1 ? lambda[0] : (k < lambda.size() ? lambda[k] : NAN);
        if (!(lam[{e.i, e.j}] > 0)) throw ValidationError("--lambda: need a positive value for each inf pair");
        ++k;
      }
      if (lambda.size() > 1 && k != lambda.size())
        throw ValidationError("--lambda lists " + std::to_string(lambda.size()) + " values for " +
                              std::to_string(k) + " inf pairs");
      a = deformed_tits_cartan(w, lam);
    } else {
      throw ValidationError("unknown flavor '" + flavor + "' (tits, deformed, generic, atilde)");
    }
  }
  const int dim = n.value_or(numerical_rank(a.entries()).rank);
  res.report.inputs["n"] = dim;
  BuildInfo info;
  const ReflectionRep rep = model && dim == a.rank() ? model->rep : build_rep(a, dim, &info);
  const VerifyReport vr = verify_rep(rep, a);

  std::ostringstream os;
  os << std::boolalpha << "Cartan matrix (" << flavor << "):\n" << a.entries() << "\n"
     << "compatible: " << is_compatible(a) << "\n"
     << "rep on R^" << rep.dim() << ", rank A = " << numerical_rank(a.entries()).rank << "\n"
     << "verify: involutions " << vr.involutions_ok << " (" << num(vr.involution_error) << "), relations "
     << vr.relations_ok << " (" << num(vr.relation_error) << "), Cartan " << vr.cartan_ok << ", interior "
     << to_string(vr.interior) << "\n";
  json o{{"cartan", cartan_to_json(a)}, {"rep", rep_to_json(rep)}, {"verify", to_json(vr)}};
  if (model) {
    Matrix want = Matrix::Identity(a.rank(), a.rank());
    want(0, 0) = 1 / av;
    want(a.rank() - 1, a.rank() - 1) = av;
    const double err = (model->rep.element(model->zigzag_word) - want).cwiseAbs().maxCoeff();
    o["zigzag"] = {{"word", word_to_string(model->zigzag_word)}, {"error", err}, {"pass", err <= 1e-9}};
    os << "zigzag " << word_to_string(model->zigzag_word) << ": error " << num(err)
       << (err <= 1e-9 ? " (pass)" : " (FAIL)") << "\n";
    res.report.tolerances["zigzag"] = 1e-9;
  }
  if (out) {
    const fs::path base(*out);
    write_text_file(fs::path(base).concat(".cartan"), cartan_to_json(a).dump(2) + "\n");
    write_text_file(fs::path(base).concat(".rep.json"), rep_to_json(rep).dump(2) + "\n");
    o["written"] = {fs::path(base).concat(".cartan").string(), fs::path(base).concat(".rep.json").string()};
    os << "wrote " << base.string() << ".cartan and " << base.string() << ".rep.json\n";
  }
  res.report.tolerances["involution"] = kInvolutionTolerance;
  res.report.tolerances["relation"] = kRelationTolerance;
  if (!vr.ok()) res.report.errors.push_back("verify_rep failed");
  res.report.outputs = o;
  res.text = os.str();
  return res;
}

Result cmd_tile(const Common& c, const std::string& cartan, int depth, const std::string& out,
                const std::optional<std::string>& jsonl) {
  Result res{base_report("tile", c), {}};
  res.report.inputs["cartan"] = cartan;
  res.report.inputs["depth"] = depth;
  if (depth > kMaxRenderDepth)
    throw BudgetError("render depth capped at " + std::to_string(kMaxRenderDepth) + ", got " + std::to_string(depth));
  const CartanMatrix a = load_cartan(c, cartan, std::nullopt);
  const ReflectionRep rep = build_rep(a, numerical_rank(a.entries()).rank);
  if (rep.dim() != 3) throw PreconditionError("unsupported dimension: n = " + std::to_string(rep.dim()));
  const Tiling t = orbit(rep, depth);
  const RenderResult r = render_svg(t);
  write_text_file(out, r.svg);
  if (jsonl) write_text_file(*jsonl, tiling_to_jsonl(t));

  json o{{"svg", out}, {"tiles", r.tiles}, {"clipped", r.clipped}};
  std::optional<bool> inside;
  if (a.coxeter().connected(a.coxeter().generators()) && matrix_type(a).type == MatrixType::Negative)
    inside = !sigma_boundary_test(a).touches_boundary;
  o["sigma_in_interior"] = inside ? json(*inside) : json(nullptr);
  if (jsonl) o["jsonl"] = *jsonl;
  for (const auto& w : t.warnings) res.report.warnings.push_back(w);
  for (const auto& w : r.warnings) res.report.warnings.push_back(w);
  res.report.tolerances["dedup"] = t.tol;
  res.report.outputs = o;
  std::ostringstream os;
  os << "tiles: " << r.tiles << " (depth " << depth << ", " << r.clipped << " clipped)\n"
     << "Σ ⊂ interior: " << (inside ? (*inside ? "true" : "false") : "n/a") << "\n"
     << "wrote " << out << "\n";
  res.text = os.str();
  return res;
}

Result cmd_examples(const Common& c) {
  Result res{base_report("examples", c), {}};
  std::ostringstream os;
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool pass, const std::string& detail) {
    all = all && pass;
    checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    os << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
  };
  for (const auto& ic : corpus::identity_checks(c.seed))
    record(ic.name, ic.pass,
           std::to_string(ic.samples) + " samples, max error " + num(ic.max_error) + " (tol " + num(ic.tolerance) + ")");

  auto v = decide(corpus::ex92(1, 1));
  record("ex92 verdict at (1,1)", !v.cc, v.cc ? "cc=true" : "cc=false");
  const double y = corpus::ex92_curve_y(2.0);
  v = decide(corpus::ex92(2.0, y));
  record("ex92 verdict on the curve at x=2", v.cc && v.scc && v.anosov, "y=" + num(y) + ", scc=" + (v.scc ? "true" : "false"));
  v = decide(corpus::ex93(1, 1));
  record("ex93 verdict at x=1", !v.cc && !v.witnesses.empty(), "cc=false expected");
  v = decide(corpus::ex93(2, 1));
  record("ex93 verdict at x=2", v.cc, v.cc ? "cc=true" : "cc=false");
  v = decide(corpus::ex91(1, 1, 1, 1));
  record("ex91 existence", !v.exists_cc_rep && !v.witnesses.empty() && v.witnesses.front().condition == "IC",
         "exists_cc_rep=false via (IC)");
  const auto p = std::get<ProximalData>(n2_proximal(corpus::ex31()));
  record("ex31 proximal data", std::abs(p.lambda_plus * p.lambda_minus - 1) <= 1e-12,
         "lambda+ = " + num(p.lambda_plus) + ", lambda- = " + num(p.lambda_minus));
  const auto z = atilde_model(3, 2.0);
  Matrix want = Matrix::Identity(3, 3);
  want(0, 0) = 0.5;
  want(2, 2) = 2.0;
  const double ze = (z.rep.element(z.zigzag_word) - want).cwiseAbs().maxCoeff();
  record("atilde zigzag (N=3, a=2)", ze <= 1e-9, "error " + num(ze));

  res.report.outputs = {{"checks", checks}, {"all_pass", all}};
  res.report.tolerances["identity"] = 1e-8;
  if (!all) res.report.errors.push_back("identity check failed");
  res.text = os.str();
  return res;
}

}  // namespace coxcc::cli
