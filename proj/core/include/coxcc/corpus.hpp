#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coxcc/cartan.hpp"

// The bundled example corpus: the worked examples, their determinant
// identities, and the parameterized Cartan templates used by the CLI.
namespace coxcc::corpus {

CoxeterMatrix ex91_coxeter();  // path of 5 generators, all labels inf
CoxeterMatrix ex92_coxeter();  // 4-cycle of 6s, inf to s5, 6 to s6
CoxeterMatrix ex93_coxeter();  // ~A2 triangle with s4 attached by 4 and 3
CoxeterMatrix fig5_coxeter();  // s1 -inf- s2 -inf- s3, s1 s3 commuting

CartanMatrix ex91(double x, double y, double z, double u);
CartanMatrix ex92(double x, double y);
CartanMatrix ex93(double x, double y);
CartanMatrix ex31();   // [[2,-3],[-2,2]] on ~A1
CartanMatrix fig5();   // symmetric, inf entries -2.5

double ex91_det(double x, double y, double z, double u);
double ex92_det(double x, double y);
double ex92_minor11(double y);
double ex93_det(double x, double y);
// y > 0 with ex92_det(x, y) = 0.
double ex92_curve_y(double x);

struct TemplateInfo {
  std::string name;
  std::map<std::string, double> defaults;
  std::string cox;  // .cox text of the diagram ("" when it depends on parameters)
};

const std::vector<TemplateInfo>& templates();
bool has_template(const std::string& name);
// Parameters not listed fall back to the template defaults; unknown names
// raise ValidationError.
CartanMatrix instantiate(const std::string& name, const std::map<std::string, double>& params);

struct IdentityCheck {
  std::string name;
  int samples = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Runs the determinant and minor identities of the bundled examples at
// seeded random parameter points.
std::vector<IdentityCheck> identity_checks(std::uint64_t seed, int samples = 20);

}  // namespace coxcc::corpus
