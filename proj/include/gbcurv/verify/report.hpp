#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace gbcurv::verify {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

enum class Status { Pass, Fail, NotApplicable };

const char* to_string(Status s);

// One verified identity instance. `anchor` states the checked identity as a
// self-contained formula so a failing row names exactly what broke.
struct Row {
  std::string id;
  std::string anchor;
  nlohmann::json params;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::Pass;
};

Row make_row(std::string id, nlohmann::json params, double lhs, double rhs, double residual,
             double tolerance);
Row not_applicable_row(std::string id, nlohmann::json params, double lhs, double rhs,
                       double residual);

struct IdentityInfo {
  const char* id;
  const char* anchor;
  const char* suite;
};

std::span<const IdentityInfo> identity_catalog();
const char* anchor_for(const std::string& id);

// Deterministic report: rows in computation order, summary counts, max
// residual per identity. Timing is injected separately (and only on request)
// so default reports are byte-identical across runs and worker counts.
nlohmann::json make_report(const nlohmann::json& config_echo, const std::vector<Row>& rows);

int count_failures(const std::vector<Row>& rows);

}  // namespace gbcurv::verify
