#include <chrono>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "coxcc/errors.hpp"

using namespace coxcc;
using namespace coxcc::cli;

namespace {

void add_params(CLI::App* sub, std::map<std::string, std::optional<double>>& slots,
                std::initializer_list<const char*> names) {
  for (const char* n : names) {
    slots[n];
    sub->add_option(std::string("--") + n, slots[n], std::string("template parameter ") + n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex cocompact reflection representations of Coxeter groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  Common common;
  std::map<std::string, std::optional<double>> slots;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "print the run report as JSON");
    sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
    sub->add_option("--tol-strict", common.tol_strict, "tolerance around critical values")->capture_default_str();
  };

  std::string path, out = "tiling.svg", flavor;
  std::optional<std::string> cox, build_out, jsonl, sweep;
  std::optional<int> n;
  std::vector<double> lambda;
  int depth = 8;

  auto* classify = app.add_subcommand("classify", "classify a Coxeter diagram (.cox)");
  classify->add_option("file", path, ".cox file")->required();
  add_common(classify);

  auto* decide_cmd = app.add_subcommand("decide", "decide convex cocompactness for a Cartan matrix");
  decide_cmd->add_option("file", path, ".cartan file")->required();
  decide_cmd->add_option("--cox", cox, "override the diagram with a .cox file");
  decide_cmd->add_option("--sweep", sweep, "parameter sweep name=start:stop:step (CSV output)");
  add_params(decide_cmd, slots, {"x", "y", "z", "u", "a", "n"});
  add_common(decide_cmd);

  auto* build = app.add_subcommand("build", "construct a Cartan matrix and its reflection representation");
  build->add_option("--flavor", flavor, "tits, deformed, generic or atilde")->required();
  build->add_option("--cox", cox, ".cox file (all flavors but atilde)");
  build->add_option("--n", n, "dimension of V (for atilde also the number of generators)");
  build->add_option("--a", slots["a"], "atilde parameter");
  build->add_option("--lambda", lambda, "deformation parameters, one per inf pair or one for all")->delimiter(',');
  build->add_option("--out", build_out, "write <out>.cartan and <out>.rep.json");
  add_common(build);

  auto* tile = app.add_subcommand("tile", "render the orbit tiling of a rank-3 representation as SVG");
  tile->add_option("file", path, ".cartan file")->required();
  tile->add_option("--depth", depth, "word length cap")->capture_default_str();
  tile->add_option("--out", out, "SVG path")->capture_default_str();
  tile->add_option("--jsonl", jsonl, "also dump the orbit as JSON lines");
  add_params(tile, slots, {"x", "y", "z", "u", "a", "n"});
  add_common(tile);

  auto* examples = app.add_subcommand("examples", "run the bundled example identities and verdicts");
  add_common(examples);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseFailed;
  }
  for (const auto& [k, v] : slots)
    if (v) common.params[k] = *v;

  const CLI::App* sub = app.get_subcommands().front();
  Result res;
  res.report.command = sub->get_name();
  res.report.version = version_string();
  int code = kOk;
  try {
    if (sub == classify) res = cmd_classify(common, path);
    else if (sub == decide_cmd && sweep) res = cmd_sweep(common, path, parse_sweep(*sweep), thread_budget());
    else if (sub == decide_cmd) res = cmd_decide(common, path, cox);
    else if (sub == build) res = cmd_build(common, flavor, cox, n, lambda, build_out);
    else if (sub == tile) res = cmd_tile(common, path, depth, out, jsonl);
    else res = cmd_examples(common);
    if (!res.report.errors.empty()) code = kCheckFailed;
  } catch (const ParseError& e) {
    res.report.errors.push_back(std::string("parse error: ") + e.what());
    code = kParseFailed;
  } catch (const Error& e) {
    res.report.errors.push_back(e.what());
    code = kInvalid;
  } catch (const std::exception& e) {
    res.report.errors.push_back(std::string("internal error: ") + e.what());
    code = kCheckFailed;
  }
  res.report.exit_code = code;
  res.report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (common.json) {
    std::cout << to_json(res.report).dump(2) << "\n";
  } else {
    std::cout << res.text;
    for (const auto& w : res.report.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& e : res.report.errors) std::cerr << "error: " << e << "\n";
  }
  return code;
}
