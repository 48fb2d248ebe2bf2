#pragma once

// The audit / classify / conformal commands behind the command-line tool.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "hyperaudit/manifold.hpp"
#include "hyperaudit/report.hpp"

namespace hyperaudit {

// Pinned tolerances of the identity suites run by `audit`.
constexpr double kQuaternionicTolerance = 1e-10;
constexpr double kCompatibilityTolerance = 1e-10;
constexpr double kMetricityTolerance = 1e-10;
constexpr double kRiemannSymmetryTolerance = 1e-10;
constexpr double kStructuralIdentityTolerance = 1e-9;
constexpr double kIntegrabilityTolerance = 1e-8;

struct CommandOptions {
  std::string command;  // audit | classify | conformal
  std::string model = "sphere";
  int points = 200;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string format = "json";
  bool timestamp = true;
  std::string gauge = "sphere-gauge";
};

/// Built-in id or manifest path.
ManifoldSpec resolve_model(const std::string& model);

AuditReport run_structure_audit(const ManifoldSpec& spec, std::uint64_t seed, int points);
AuditReport run_classify(const ManifoldSpec& spec, std::uint64_t seed, int points, double tol);
AuditReport run_conformal(const ManifoldSpec& spec, const std::string& gauge, std::uint64_t seed, int points,
                          double tol);

/// Full CLI: parses argv, runs the command, writes the report to `out` and
/// diagnostics to `err`. Returns 0 when every check passes, 1 when any
/// check fails and 2 on usage or load errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperaudit
