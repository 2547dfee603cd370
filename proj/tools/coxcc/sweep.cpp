#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "commands.hpp"
#include "coxcc/errors.hpp"

namespace coxcc::cli {

SweepSpec parse_sweep(const std::string& s) {
  SweepSpec spec;
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw ParseError("--sweep expects name=start:stop:step, got '" + s + "'");
  spec.name = s.substr(0, eq);
  double* slots[] = {&spec.start, &spec.stop, &spec.step};
  std::stringstream rest(s.substr(eq + 1));
  std::string part;
  int k = 0;
  while (std::getline(rest, part, ':')) {
    if (k == 3) throw ParseError("--sweep: too many fields in '" + s + "'");
    char* end = nullptr;
    *slots[k] = std::strtod(part.c_str(), &end);
    if (part.empty() || *end != '\0') throw ParseError("--sweep: bad number '" + part + "'");
    ++k;
  }
  if (k != 3) throw ParseError("--sweep expects name=start:stop:step, got '" + s + "'");
  if (!(spec.step > 0) || spec.stop < spec.start) throw ValidationError("--sweep needs step > 0 and stop >= start");
  return spec;
}

int thread_budget() {
  if (const char* env = std::getenv("COXCC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Result cmd_sweep(const Common& c, const std::string& cartan, const SweepSpec& spec, int threads) {
  std::vector<double> values;
  for (int k = 0;; ++k) {
    const double v = spec.start + k * spec.step;
    if (v > spec.stop + 1e-9 * spec.step) break;
    values.push_back(v);
    if (values.size() > 100000) throw BudgetError("--sweep: more than 100000 points");
  }
  // Fail early on a non-template file or an unknown parameter.
  {
    Common probe = c;
    probe.params[spec.name] = values.front();
    read_cartan_file(cartan, probe.params);
  }

  struct Row {
    bool ok = false;
    CCVerdict v;
    double det = 0;
    std::string error;
  };
  std::vector<Row> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < values.size();) {
      auto params = c.params;
      params[spec.name] = values[k];
      try {
        const CartanMatrix a = read_cartan_file(cartan, params);
        DecideOptions opt;
        opt.tol_strict = c.tol_strict;
        rows[k].v = decide(a, opt);
        rows[k].det = a.entries().determinant();
        rows[k].ok = true;
      } catch (const Error& e) {
        rows[k].error = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(values.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Result res;
  res.report.command = "decide --sweep";
  res.report.version = version_string();
  res.report.tolerances = {{"tol_strict", c.tol_strict}, {"type_zero", kTypeTolerance}};
  res.report.inputs = {{"cartan", cartan}, {"sweep", spec.name}, {"start", spec.start}, {"stop", spec.stop},
                       {"step", spec.step}, {"threads", n}};
  if (!c.params.empty()) res.report.inputs["parameters"] = c.params;
  std::ostringstream os;
  os << spec.name << ",det,exists,cc,scc,hyperbolic,routes_agree,error\n";
  json arr = json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", values[k]);
    const Row& r = rows[k];
    if (!r.ok) {
      os << buf << ",,,,,,,\"" << r.error << "\"\n";
      arr.push_back({{spec.name, values[k]}, {"error", r.error}});
      res.report.errors.push_back(std::string(buf) + ": " + r.error);
      continue;
    }
    char dbuf[64];
    std::snprintf(dbuf, sizeof dbuf, "%.10g", r.det);
    os << buf << "," << dbuf << "," << r.v.exists_cc_rep << "," << r.v.cc << "," << r.v.scc << ","
       << r.v.hyperbolic << "," << r.v.routes.agree << ",\n";
    arr.push_back({{spec.name, values[k]}, {"det", r.det}, {"verdict", to_json(r.v)}});
  }
  res.report.outputs = {{"points", arr}};
  res.text = os.str();
  return res;
}

}  // namespace coxcc::cli
