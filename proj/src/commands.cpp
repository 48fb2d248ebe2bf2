#include "hyperaudit/commands.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "hyperaudit/classification.hpp"
#include "hyperaudit/conformal.hpp"
#include "hyperaudit/curvature.hpp"
#include "hyperaudit/errors.hpp"
#include "hyperaudit/manifest.hpp"
#include "hyperaudit/structure.hpp"

namespace hyperaudit {

namespace {

void fold(std::map<std::string, double>& acc, const ResidualMap& rows) {
  for (const auto& [name, value] : rows) accumulate_max(acc[name], value);
}

void add_conventions(AuditReport& r, const ManifoldSpec& spec) {
  for (const auto& [k, v] : spec.metadata) r.metadata[k] = v;
  r.metadata["curvature convention"] = "R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y]Z, R(X,Y,Z,U) = g(R(X,Y)Z,U)";
  r.metadata["sectional slot order"] = "k(x,y) = R(x,y,y,x) / (g(x,x)g(y,y) - g(x,y)^2)";
  r.metadata["ricci trace"] = "rho(y,z) = g^il R(e_i,y,z,e_l), tau = g^jk rho_jk";
  r.metadata["star scalar curvature"] = "tau* = g^il g^jk R(e_i,e_j,e_k,J e_l)";
  r.metadata["lee form"] = "theta(z) = g^ij F(e_i,e_j,z)";
  r.metadata["aggregation"] = "supremum of relative residuals over points";
}

std::vector<Eigen::VectorXd> points_for(const ManifoldSpec& spec, std::uint64_t seed, int points) {
  if (points < 1) throw std::invalid_argument("--points must be positive");
  return sample_domain(spec, points, seed);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ManifoldSpec resolve_model(const std::string& model) {
  if (model == "flat4" || model == "flat8" || model == "sphere") return builtin_model(model);
  if (!std::filesystem::exists(model))
    throw Error("model '" + model + "' is neither a built-in (flat4, flat8, sphere) nor a file");
  return load_manifest(model);
}

AuditReport run_structure_audit(const ManifoldSpec& spec, std::uint64_t seed, int points) {
  const auto pts = points_for(spec, seed, points);
  std::map<std::string, double> quaternionic, compatibility, riemann, triple, symmetry;
  double metricity = 0.0;
  std::array<double, 3> nijenhuis{};
  for (const auto& x : pts) {
    const PointAnalysis a = analyze_point(spec, std::span<const double>(x.data(), x.size()));
    fold(quaternionic, quaternionic_residuals(a.point));
    fold(compatibility, compatibility_residuals(a.point).residuals);
    accumulate_max(metricity, metricity_residual(a.point, a.connection));
    fold(riemann, riemann_symmetry_residuals(a.curvature.R));
    fold(triple, structural_triple_residuals(a.structural, a.point));
    fold(symmetry, structural_symmetry_residuals(a.structural, a.point));
    for (std::size_t s = 0; s < 3; ++s) accumulate_max(nijenhuis[s], sup_norm(a.structural.N[s]));
  }

  AuditReport r;
  r.command = "audit";
  r.model = spec.name;
  r.seed = seed;
  r.points = points;
  r.tol = kStructuralIdentityTolerance;
  auto emit = [&r](const std::string& prefix, const std::map<std::string, double>& rows, double tol) {
    for (const auto& [name, value] : rows) r.checks.push_back(make_check(prefix + name, value, tol));
  };
  emit("quaternionic: ", quaternionic, kQuaternionicTolerance);
  emit("compatibility: ", compatibility, kCompatibilityTolerance);
  r.checks.push_back(make_check("metricity: nabla g = 0", metricity, kMetricityTolerance));
  emit("riemann: ", riemann, kRiemannSymmetryTolerance);
  emit("structural: ", triple, kStructuralIdentityTolerance);
  emit("structural: ", symmetry, kStructuralIdentityTolerance);
  for (std::size_t s = 0; s < 3; ++s)
    r.flags.push_back({"J" + std::to_string(s + 1) + " integrable", nijenhuis[s] < kIntegrabilityTolerance,
                       nijenhuis[s], kIntegrabilityTolerance});
  add_conventions(r, spec);
  return r;
}

AuditReport run_classify(const ManifoldSpec& spec, std::uint64_t seed, int points, double tol) {
  const auto pts = points_for(spec, seed, points);
  const ClassReport cr = classify_point_set(spec, pts, tol);
  AuditReport r;
  r.command = "classify";
  r.model = spec.name;
  r.seed = seed;
  r.points = points;
  r.tol = tol;
  r.checks = consistency_checks(cr);
  r.flags = cr.flags;
  add_conventions(r, spec);
  r.metadata["closedness test"] = "central differences of theta1 o J1, h = 1e-4, tolerance 1e-5";
  return r;
}

AuditReport run_conformal(const ManifoldSpec& spec, const std::string& gauge, std::uint64_t seed, int points,
                          double tol) {
  const FieldExpr u = gauge.rfind("expr:", 0) == 0 ? parse_scalar_field(gauge.substr(5), spec.dim())
                                                    : builtin_gauge(gauge, spec.dim());
  const auto pts = points_for(spec, seed, points);
  AuditReport r = invariance_audit(spec, u, pts, tol);
  const AuditReport k = kahler_gauge_audit(spec, u, pts, tol);
  r.checks.insert(r.checks.end(), k.checks.begin(), k.checks.end());
  r.flags = k.flags;
  for (const auto& [key, value] : k.metadata) r.metadata[key] = value;
  r.seed = seed;
  add_conventions(r, spec);
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical audit of almost hypercomplex pseudo-Hermitian manifolds", "hyperaudit"};
  app.require_subcommand(1);
  CommandOptions opt;

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--model", opt.model, "flat4 | flat8 | sphere | path to a JSON manifest")->required();
    sub->add_option("--points", opt.points, "number of sampled points")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "sampling seed");
    sub->add_option("--tol", opt.tol, "classification tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("!--no-timestamp", opt.timestamp, "omit the timestamp field");
  };
  CLI::App* audit = app.add_subcommand("audit", "structure and curvature identity suites");
  CLI::App* classify = app.add_subcommand("classify", "class flags W(J_a), W, W0, K(J_a), K, Einstein");
  CLI::App* conformal = app.add_subcommand("conformal", "conformal invariance and Kahler gauge audits");
  add_common(audit);
  add_common(classify);
  add_common(conformal);
  conformal->add_option("--gauge", opt.gauge, "sphere-gauge | expr:STRING");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  AuditReport report;
  try {
    const ManifoldSpec spec = resolve_model(opt.model);
    if (audit->parsed()) report = run_structure_audit(spec, opt.seed, opt.points);
    else if (classify->parsed()) report = run_classify(spec, opt.seed, opt.points, opt.tol);
    else report = run_conformal(spec, opt.gauge, opt.seed, opt.points, opt.tol);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (opt.timestamp) report.timestamp = utc_timestamp();
  out << (opt.format == "json" ? to_json(report) : to_text(report));
  return report.all_pass() ? 0 : 1;
}

}  // namespace hyperaudit
