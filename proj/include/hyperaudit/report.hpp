#pragma once

// Audit report rows and their JSON / text renderings.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hyperaudit {

/// One verified identity: pass iff max_residual < tol.
struct CheckRow {
  std::string name;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

CheckRow make_check(std::string name, double max_residual, double tol);

/// A classification outcome. Flags describe the model; unlike checks they
/// do not decide the exit status.
struct FlagRow {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tol = 0.0;
};

struct AuditReport {
  std::string command;
  std::string model;
  std::uint64_t seed = 0;
  int points = 0;
  double tol = 0.0;
  std::vector<CheckRow> checks;
  std::vector<FlagRow> flags;
  std::map<std::string, std::string> metadata;
  std::optional<std::string> timestamp;

  bool all_pass() const;
  const CheckRow* find_check(const std::string& name) const;
  const FlagRow* find_flag(const std::string& name) const;
};

/// Folds a per-point residual into the running supremum. NaN poisons the
/// row so a broken point can never pass.
void accumulate_max(double& acc, double value);

/// Single JSON document with fixed key order; numbers use 15 significant
/// digits and are never rounded to zero.
std::string to_json(const AuditReport& report);
std::string to_text(const AuditReport& report);

}  // namespace hyperaudit
