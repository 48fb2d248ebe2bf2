#include "hyperaudit/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace hyperaudit {

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string text_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

CheckRow make_check(std::string name, double max_residual, double tol) {
  return CheckRow{std::move(name), max_residual, tol, max_residual < tol};
}

void accumulate_max(double& acc, double value) {
  if (std::isnan(value) || std::isnan(acc)) {
    acc = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  acc = std::max(acc, value);
}

bool AuditReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckRow* AuditReport::find_check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const FlagRow* AuditReport::find_flag(const std::string& name) const {
  for (const auto& f : flags)
    if (f.name == name) return &f;
  return nullptr;
}

std::string to_json(const AuditReport& r) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"command\": " << quoted(r.command) << ",\n";
  out << "  \"model\": " << quoted(r.model) << ",\n";
  out << "  \"seed\": " << r.seed << ",\n";
  out << "  \"points\": " << r.points << ",\n";
  out << "  \"tol\": " << number(r.tol) << ",\n";
  out << "  \"pass\": " << (r.all_pass() ? "true" : "false") << ",\n";
  out << "  \"checks\": [";
  for (std::size_t k = 0; k < r.checks.size(); ++k) {
    const auto& c = r.checks[k];
    out << (k ? ",\n" : "\n") << "    {\"name\": " << quoted(c.name) << ", \"max_residual\": " << number(c.max_residual)
        << ", \"tol\": " << number(c.tol) << ", \"pass\": " << (c.pass ? "true" : "false") << "}";
  }
  out << (r.checks.empty() ? "],\n" : "\n  ],\n");
  out << "  \"flags\": [";
  for (std::size_t k = 0; k < r.flags.size(); ++k) {
    const auto& f = r.flags[k];
    out << (k ? ",\n" : "\n") << "    {\"name\": " << quoted(f.name) << ", \"pass\": " << (f.pass ? "true" : "false")
        << ", \"residual\": " << number(f.residual) << ", \"tol\": " << number(f.tol) << "}";
  }
  out << (r.flags.empty() ? "],\n" : "\n  ],\n");
  out << "  \"metadata\": {";
  std::size_t k = 0;
  for (const auto& [key, value] : r.metadata)
    out << (k++ ? ",\n" : "\n") << "    " << quoted(key) << ": " << quoted(value);
  out << (r.metadata.empty() ? "}" : "\n  }");
  if (r.timestamp) out << ",\n  \"timestamp\": " << quoted(*r.timestamp);
  out << "\n}\n";
  return out.str();
}

std::string to_text(const AuditReport& r) {
  std::ostringstream out;
  out << r.command << " report for model '" << r.model << "' (seed " << r.seed << ", " << r.points
      << " points, tol " << text_number(r.tol) << ")\n";
  std::size_t width = 10;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  for (const auto& f : r.flags) width = std::max(width, f.name.size());

  out << "\nchecks:\n";
  for (const auto& c : r.checks)
    out << "  " << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(static_cast<int>(width)) << c.name
        << "  max_residual " << std::setw(22) << text_number(c.max_residual) << " tol " << text_number(c.tol)
        << "\n";
  if (!r.flags.empty()) {
    out << "\nflags:\n";
    for (const auto& f : r.flags)
      out << "  " << (f.pass ? "pass " : "fail ") << std::left << std::setw(static_cast<int>(width)) << f.name
          << "  residual " << std::setw(22) << text_number(f.residual) << " tol " << text_number(f.tol) << "\n";
  }
  if (!r.metadata.empty()) {
    out << "\nmetadata:\n";
    for (const auto& [key, value] : r.metadata) out << "  " << key << ": " << value << "\n";
  }
  if (r.timestamp) out << "\ntimestamp: " << *r.timestamp << "\n";
  out << "\noverall: " << (r.all_pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace hyperaudit
