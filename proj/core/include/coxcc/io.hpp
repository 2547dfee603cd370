#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxcc/cartan.hpp"
#include "coxcc/decision.hpp"
#include "coxcc/geometry.hpp"
#include "coxcc/reflection.hpp"

namespace coxcc {

using json = nlohmann::json;

// .cox text: first line N, then "i j m" lines (1-based, m >= 2 or "inf").
// '#' starts a comment. Unlisted pairs commute.
CoxeterMatrix parse_cox(std::string_view text);
std::string format_cox(const CoxeterMatrix& w);
CoxeterMatrix read_cox_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const char* what = "matrix");

// {"n", "coxeter": <.cox text>, "entries"}. Readers also accept
// "coxeter": {"file": path} (relative to base_dir) and the template form
// {"template": name, "parameters": {...}}; `overrides` replace template
// parameters.
json cartan_to_json(const CartanMatrix& a);
CartanMatrix cartan_from_json(const json& j, const std::filesystem::path& base_dir = {},
                              const std::map<std::string, double>& overrides = {});
CartanMatrix read_cartan_file(const std::filesystem::path& path,
                              const std::map<std::string, double>& overrides = {});

json rep_to_json(const ReflectionRep& rep);
ReflectionRep rep_from_json(const json& j);

json to_json(const Witness& w);
Witness witness_from_json(const json& j);
json to_json(const CCVerdict& v);
CCVerdict verdict_from_json(const json& j);

json to_json(const VerifyReport& r);

struct RunReport {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  std::string version;
  std::map<std::string, double> tolerances;
  double wall_time = 0.0;  // seconds
  int exit_code = 0;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

json to_json(const RunReport& r);
RunReport run_report_from_json(const json& j);

// One JSON object per line: {"word": "1 2 1", "matrix": [[...]]}; the
// identity has the empty word.
std::string tiling_to_jsonl(const Tiling& t);
std::vector<TilingElement> tiling_from_jsonl(std::string_view text);

std::string word_to_string(const Word& w);  // 1-based, space separated
Word word_from_string(std::string_view s);

const char* version_string();

}  // namespace coxcc
