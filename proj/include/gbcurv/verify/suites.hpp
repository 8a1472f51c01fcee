#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gbcurv/verify/report.hpp"

namespace gbcurv::verify {

struct Options {
  int n_lo = 4;
  int n_hi = 6;
  int k_max = -1;  // -1 selects every admissible k
  int trials = 20;
  std::uint64_t seed = 1;
  int fd_order = 4;
  std::vector<double> fd_step;  // empty selects the per-axis default
  int resolution = 0;           // 0 selects per-row defaults
  int samples = 20;             // pointwise sample count
  int jobs = 1;
  std::map<std::string, double> tol;  // per-identity overrides
  bool corrupt_star = false;          // negative-control knob: flips the star sign

  double tol_for(const std::string& id, double fallback) const {
    auto it = tol.find(id);
    return it == tol.end() ? fallback : it->second;
  }
};

std::vector<Row> algebra_suite(const Options& opt);
std::vector<Row> curvature_identity_suite(const Options& opt);
std::vector<Row> newton_suite(const Options& opt);
std::vector<Row> conformal_pointwise_suite(const Options& opt);
std::vector<Row> conformal_integral_suite(const Options& opt);

// suite name in {algebra, curvature-identities, newton, conformal-pointwise,
// conformal-integral, all}
std::vector<Row> run_suite(const std::string& name, const Options& opt);

}  // namespace gbcurv::verify
