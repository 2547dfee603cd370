#include "coxcc/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "coxcc/corpus.hpp"
#include "coxcc/errors.hpp"

namespace coxcc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_int(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == tok.size();
}

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

CoxeterMatrix parse_cox(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  long long n = -1;
  std::vector<CoxeterEdge> edges;
  std::vector<int> lines;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (n < 0) {
      if (tok.size() != 1 || !parse_int(tok[0], n) || n < 1)
        throw ParseError("expected the number of generators N >= 1", line_no);
      if (n > kMaxRank) throw ParseError("N exceeds " + std::to_string(kMaxRank), line_no);
      continue;
    }
    if (tok.size() != 3) throw ParseError("expected 'i j m'", line_no);
    long long i = 0, j = 0, m = 0;
    if (!parse_int(tok[0], i) || !parse_int(tok[1], j)) throw ParseError("malformed index", line_no);
    if (i < 1 || i > n || j < 1 || j > n)
      throw ParseError("index out of range 1.." + std::to_string(n), line_no);
    if (i == j) throw ParseError("diagonal entry given; m_ii is always 1", line_no);
    if (tok[2] == "inf" || tok[2] == "INF" || tok[2] == "Inf") {
      m = kInfinity;
    } else if (!parse_int(tok[2], m)) {
      throw ParseError("malformed label '" + tok[2] + "'", line_no);
    } else if (m < 2) {
      throw ParseError("label m_ij must be >= 2", line_no);
    } else if (m >= kInfinity) {
      throw ParseError("label too large; use 'inf'", line_no);
    }
    const int a = static_cast<int>(std::min(i, j)) - 1, b = static_cast<int>(std::max(i, j)) - 1;
    bool dup = false;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (edges[k].i == a && edges[k].j == b) {
        if (edges[k].m != m)
          throw ParseError("conflicting symmetric entries for (" + std::to_string(i) + "," +
                               std::to_string(j) + ") (first given on line " + std::to_string(lines[k]) + ")",
                           line_no);
        dup = true;
      }
    }
    if (!dup) {
      edges.push_back({a, b, static_cast<int>(m)});
      lines.push_back(line_no);
    }
  }
  if (n < 0) throw ParseError("empty .cox input");
  return CoxeterMatrix(static_cast<int>(n), edges);
}

std::string format_cox(const CoxeterMatrix& w) {
  std::string s = std::to_string(w.rank()) + "\n";
  for (int i = 0; i < w.rank(); ++i)
    for (int j = i + 1; j < w.rank(); ++j)
      if (w(i, j) != 2) s += std::to_string(i + 1) + " " + std::to_string(j + 1) + " " + label_to_string(w(i, j)) + "\n";
  return s;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

CoxeterMatrix read_cox_file(const std::filesystem::path& path) {
  try {
    return parse_cox(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Matrix m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& r = j[static_cast<std::size_t>(i)];
    if (!r.is_array()) throw ParseError(std::string(what) + ": row " + std::to_string(i + 1) + " is not an array");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(r.size());
      m.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(r.size()) != cols) {
      throw ParseError(std::string(what) + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& x = r[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw ParseError(std::string(what) + ": non-numeric entry");
      m(i, c) = x.get<double>();
    }
  }
  if (rows == 0) m.resize(0, 0);
  return m;
}

json cartan_to_json(const CartanMatrix& a) {
  return json{{"n", a.rank()}, {"coxeter", format_cox(a.coxeter())}, {"entries", matrix_to_json(a.entries())}};
}

CartanMatrix cartan_from_json(const json& j, const std::filesystem::path& base_dir,
                              const std::map<std::string, double>& overrides) {
  if (!j.is_object()) throw ParseError("Cartan JSON must be an object");
  if (j.contains("template")) {
    std::map<std::string, double> params;
    if (j.contains("parameters")) {
      const json& p = j["parameters"];
      if (!p.is_object()) throw ParseError("'parameters' must be an object");
      for (const auto& [k, v] : p.items()) {
        if (!v.is_number()) throw ParseError("parameter '" + k + "' must be a number");
        params[k] = v.get<double>();
      }
    }
    for (const auto& [k, v] : overrides) params[k] = v;
    return corpus::instantiate(get_field<std::string>(j, "template"), params);
  }
  if (!overrides.empty()) throw ValidationError("parameter overrides need a template Cartan file");
  const int n = get_field<int>(j, "n");
  if (!j.contains("coxeter")) throw ParseError("missing field 'coxeter'");
  const json& c = j["coxeter"];
  CoxeterMatrix w;
  if (c.is_string()) {
    w = parse_cox(c.get<std::string>());
  } else if (c.is_object() && c.contains("file")) {
    w = read_cox_file(base_dir / get_field<std::string>(c, "file"));
  } else {
    throw ParseError("'coxeter' must be .cox text or {\"file\": path}");
  }
  if (!j.contains("entries")) throw ParseError("missing field 'entries'");
  Matrix a = matrix_from_json(j["entries"], "entries");
  if (w.rank() != n || a.rows() != n || a.cols() != n)
    throw ParseError("dimension mismatch: n = " + std::to_string(n) + ", coxeter N = " + std::to_string(w.rank()) +
                     ", entries " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  return CartanMatrix(std::move(w), std::move(a));
}

CartanMatrix read_cartan_file(const std::filesystem::path& path, const std::map<std::string, double>& overrides) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return cartan_from_json(j, path.parent_path(), overrides);
}

json rep_to_json(const ReflectionRep& rep) {
  json gens = json::array();
  for (const auto& g : rep.generators()) gens.push_back(matrix_to_json(g));
  // v is stored column-wise; serialize one row per vector v_j.
  return json{{"n", rep.dim()},
              {"alpha", matrix_to_json(rep.alpha())},
              {"v", matrix_to_json(rep.v().transpose())},
              {"generators", std::move(gens)}};
}

ReflectionRep rep_from_json(const json& j) {
  const int n = get_field<int>(j, "n");
  Matrix alpha = matrix_from_json(j.at("alpha"), "alpha");
  Matrix v = matrix_from_json(j.at("v"), "v").transpose();
  if (alpha.cols() != n || v.rows() != n || alpha.rows() != v.cols())
    throw ParseError("rep JSON: inconsistent shapes");
  if (!j.contains("generators")) return ReflectionRep(std::move(alpha), std::move(v));
  std::vector<Matrix> gens;
  for (const auto& g : j["generators"]) gens.push_back(matrix_from_json(g, "generators"));
  if (static_cast<Eigen::Index>(gens.size()) != alpha.rows()) throw ParseError("rep JSON: generator count");
  return ReflectionRep(std::move(alpha), std::move(v), std::move(gens));
}

json to_json(const Witness& w) {
  json j{{"condition", w.condition}, {"subset", json::array()}, {"value", w.value}, {"boundary", w.boundary}};
  for (int i : w.subset.members()) j["subset"].push_back(i + 1);
  if (w.pair) j["pair"] = {w.pair->first + 1, w.pair->second + 1};
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.condition = get_field<std::string>(j, "condition");
  for (int i : get_field<std::vector<int>>(j, "subset")) w.subset = w.subset.with(i - 1);
  if (j.contains("pair")) {
    auto p = get_field<std::vector<int>>(j, "pair");
    if (p.size() != 2) throw ParseError("witness pair must have two entries");
    w.pair = std::pair{p[0] - 1, p[1] - 1};
  }
  w.value = get_field<double>(j, "value");
  w.boundary = get_field<bool>(j, "boundary");
  if (j.contains("note")) w.note = get_field<std::string>(j, "note");
  return w;
}

json to_json(const CCVerdict& v) {
  json j{{"exists", v.exists_cc_rep}, {"ncc", v.ncc}, {"cc", v.cc}, {"scc", v.scc}, {"anosov", v.anosov},
         {"hyperbolic", v.hyperbolic}, {"group_obstruction", v.group_obstruction},
         {"witnesses", json::array()},
         {"routes", {{"zt", v.routes.zt}, {"zd", v.routes.zd}, {"agree", v.routes.agree}}},
         {"tol_strict", v.tol_strict}};
  for (const auto& w : v.witnesses) j["witnesses"].push_back(to_json(w));
  if (v.affine_case) {
    const auto& a = *v.affine_case;
    j["affine_case"] = {{"unipotent_free", a.unipotent_free}, {"type", to_string(a.type)},
                        {"atilde", a.atilde}, {"det", a.det}, {"conditions", a.conditions},
                        {"consistent", a.consistent}};
  }
  return j;
}

CCVerdict verdict_from_json(const json& j) {
  CCVerdict v;
  v.exists_cc_rep = get_field<bool>(j, "exists");
  v.ncc = get_field<bool>(j, "ncc");
  v.cc = get_field<bool>(j, "cc");
  v.scc = get_field<bool>(j, "scc");
  v.anosov = get_field<bool>(j, "anosov");
  if (j.contains("hyperbolic")) v.hyperbolic = get_field<bool>(j, "hyperbolic");
  if (j.contains("group_obstruction")) v.group_obstruction = get_field<bool>(j, "group_obstruction");
  for (const auto& w : get_field<json>(j, "witnesses")) v.witnesses.push_back(witness_from_json(w));
  const json r = get_field<json>(j, "routes");
  v.routes.zt = get_field<bool>(r, "zt");
  v.routes.zd = get_field<bool>(r, "zd");
  v.routes.agree = r.contains("agree") ? get_field<bool>(r, "agree") : v.routes.zt == v.routes.zd;
  if (j.contains("tol_strict")) v.tol_strict = get_field<double>(j, "tol_strict");
  if (j.contains("affine_case")) {
    const json& a = j["affine_case"];
    AffineCase c;
    c.unipotent_free = get_field<bool>(a, "unipotent_free");
    const auto t = get_field<std::string>(a, "type");
    if (t == "positive") c.type = MatrixType::Positive;
    else if (t == "zero") c.type = MatrixType::Zero;
    else if (t == "negative") c.type = MatrixType::Negative;
    else throw ParseError("unknown matrix type '" + t + "'");
    c.atilde = get_field<bool>(a, "atilde");
    c.det = get_field<double>(a, "det");
    c.conditions = get_field<std::vector<bool>>(a, "conditions");
    c.consistent = get_field<bool>(a, "consistent");
    v.affine_case = c;
  }
  return v;
}

json to_json(const VerifyReport& r) {
  json j{{"involution_error", r.involution_error}, {"relation_error", r.relation_error},
         {"cartan_error", r.cartan_error}, {"reflection_error", r.reflection_error},
         {"involutions_ok", r.involutions_ok}, {"relations_ok", r.relations_ok}, {"cartan_ok", r.cartan_ok},
         {"interior", to_string(r.interior)}, {"ok", r.ok()}, {"failures", json::array()},
         {"tolerances", {{"involution", kInvolutionTolerance}, {"relation", kRelationTolerance},
                         {"cartan", kCartanTolerance}}}};
  for (const auto& f : r.failures)
    j["failures"].push_back({{"i", f.i + 1}, {"j", f.j + 1}, {"m", label_to_string(f.m)}, {"error", f.error}});
  if (r.interior_point) j["interior_point"] = std::vector<double>(r.interior_point->begin(), r.interior_point->end());
  return j;
}

json to_json(const RunReport& r) {
  return json{{"command", r.command}, {"inputs", r.inputs}, {"outputs", r.outputs}, {"version", r.version},
              {"tolerances", r.tolerances}, {"wall_time", r.wall_time}, {"exit_code", r.exit_code},
              {"errors", r.errors}, {"warnings", r.warnings}};
}

RunReport run_report_from_json(const json& j) {
  RunReport r;
  r.command = get_field<std::string>(j, "command");
  r.inputs = get_field<json>(j, "inputs");
  r.outputs = get_field<json>(j, "outputs");
  r.version = get_field<std::string>(j, "version");
  r.tolerances = get_field<std::map<std::string, double>>(j, "tolerances");
  r.wall_time = get_field<double>(j, "wall_time");
  r.exit_code = get_field<int>(j, "exit_code");
  r.errors = get_field<std::vector<std::string>>(j, "errors");
  if (j.contains("warnings")) r.warnings = get_field<std::vector<std::string>>(j, "warnings");
  return r;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(w[k] + 1);
  }
  return s;
}

Word word_from_string(std::string_view s) {
  Word w;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) {
    long long k = 0;
    if (!parse_int(t, k) || k < 1 || k > kMaxRank) throw ParseError("bad letter '" + t + "' in word");
    w.push_back(static_cast<int>(k) - 1);
  }
  return w;
}

std::string tiling_to_jsonl(const Tiling& t) {
  std::string out;
  for (const auto& e : t.elements) {
    out += json{{"word", word_to_string(e.word)}, {"matrix", matrix_to_json(e.matrix)}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<TilingElement> tiling_from_jsonl(std::string_view text) {
  std::vector<TilingElement> out;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(e.what(), line_no);
    }
    out.push_back({word_from_string(get_field<std::string>(j, "word")), matrix_from_json(j.at("matrix"))});
  }
  return out;
}

const char* version_string() { return COXCC_VERSION; }

}  // namespace coxcc
