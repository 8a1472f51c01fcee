#include "gbcurv/verify/suites.hpp"

#include <iterator>

#include "gbcurv/common.hpp"

namespace gbcurv::verify {

std::vector<Row> run_suite(const std::string& name, const Options& opt) {
  if (name == "algebra") return algebra_suite(opt);
  if (name == "curvature-identities") return curvature_identity_suite(opt);
  if (name == "newton") return newton_suite(opt);
  if (name == "conformal-pointwise") return conformal_pointwise_suite(opt);
  if (name == "conformal-integral") return conformal_integral_suite(opt);
  if (name == "all") {
    std::vector<Row> rows = algebra_suite(opt);
    for (auto* suite : {&curvature_identity_suite, &newton_suite, &conformal_pointwise_suite,
                        &conformal_integral_suite}) {
      std::vector<Row> more = (*suite)(opt);
      rows.insert(rows.end(), std::make_move_iterator(more.begin()),
                  std::make_move_iterator(more.end()));
    }
    return rows;
  }
  throw ConfigError("unknown suite '" + name +
                    "'; expected algebra, curvature-identities, newton, conformal-pointwise, "
                    "conformal-integral or all");
}

}  // namespace gbcurv::verify
