#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxcc/io.hpp"

namespace coxcc::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kParseFailed = 2, kInvalid = 3 };

struct Common {
  bool json = false;
  std::uint64_t seed = 20240601;
  double tol_strict = kTolStrict;
  std::map<std::string, double> params;  // --x/--y/--z/--u/--a/--n
};

// Each command fills `report` (outputs, warnings) and returns human-readable
// text. Exceptions propagate to main, which maps them to exit codes.
struct Result {
  RunReport report;
  std::string text;
};

Result cmd_classify(const Common& c, const std::string& path);
Result cmd_decide(const Common& c, const std::string& cartan, const std::optional<std::string>& cox);
Result cmd_build(const Common& c, const std::string& flavor, const std::optional<std::string>& cox,
                 std::optional<int> n, const std::vector<double>& lambda, const std::optional<std::string>& out);
Result cmd_tile(const Common& c, const std::string& cartan, int depth, const std::string& out,
                const std::optional<std::string>& jsonl);
Result cmd_examples(const Common& c);

struct SweepSpec {
  std::string name;
  double start = 0, stop = 0, step = 0;
};
SweepSpec parse_sweep(const std::string& s);  // "x=0.5:3:0.1"
Result cmd_sweep(const Common& c, const std::string& cartan, const SweepSpec& spec, int threads);
// COXCC_THREADS if set, else hardware concurrency (at least 1).
int thread_budget();

}  // namespace coxcc::cli
