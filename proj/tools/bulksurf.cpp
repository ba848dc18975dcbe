// Command-line front end: run, check-model, exponents, verify.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bulksurf/bulksurf.hpp"

namespace {

using namespace bulksurf;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kBlowup = 3,
  kPropertyFailure = 4,
  kUnderflow = 5,
};

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(0, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::filesystem::path(path).stem().string());
}

void print_report(std::ostream& os, const std::string& label, const CheckReport& r) {
  os << "CHECK " << label << ' ' << to_string(r.verdict) << " samples=" << r.samples
     << " worst=" << format_g17(r.worst_violation);
  if (!r.worst_rule.empty()) os << " rule=\"" << r.worst_rule << '"';
  os << '\n';
  if (r.witness) {
    os << "  witness c=(";
    for (std::size_t i = 0; i < r.witness->c.size(); ++i)
      os << (i ? ", " : "") << format_g17(r.witness->c[i]);
    os << ")";
    if (!r.witness->c_surf.empty()) {
      os << " c_surf=(";
      for (std::size_t i = 0; i < r.witness->c_surf.size(); ++i)
        os << (i ? ", " : "") << format_g17(r.witness->c_surf[i]);
      os << ")";
    }
    os << '\n';
  }
}

class SnapshotWriter {
 public:
  SnapshotWriter(const Scenario& s, const OutputSpec& out) : s_(s), out_(out) {
    if (enabled()) std::filesystem::create_directories(out_.snapshot_dir);
  }

  bool enabled() const { return !out_.snapshot_dir.empty() && out_.snapshot_every > 0.0; }

  void maybe_write(const State& st, bool force = false) {
    if (!enabled()) return;
    const double due = s_.initial.t + static_cast<double>(index_) * out_.snapshot_every;
    if (!force && st.t < due - 1e-12) return;
    for (std::size_t i = 0; i < s_.system.size(); ++i)
      for (Field f : {Field::Bulk, Field::Surface}) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%s_%04zu.txt", s_.system.names()[i].c_str(),
                      f == Field::Bulk ? "bulk" : "surface", index_);
        std::ofstream os(std::filesystem::path(out_.snapshot_dir) / name);
        write_snapshot(os, s_.grid, st, i, s_.system.names()[i], f);
      }
    ++index_;
    // skip snapshot times already passed by a long step
    while (s_.initial.t + static_cast<double>(index_) * out_.snapshot_every <= st.t) ++index_;
  }

 private:
  const Scenario& s_;
  const OutputSpec& out_;
  std::size_t index_ = 0;
};

int cmd_run(const std::string& path, const std::string& csv_override) {
  const Config cfg = load_config(path);
  const Scenario& s = cfg.scenario;
  OutputSpec out = cfg.output;
  if (!csv_override.empty()) out.csv = csv_override;

  SnapshotWriter snaps(s, out);
  snaps.maybe_write(s.initial, true);
  const auto result = run(s.problem(), s.initial, s.t_end, s.stepper,
                          snaps.enabled() ? StepObserver([&](const StepRecord& r) {
                            snaps.maybe_write(r.after);
                          })
                                          : StepObserver{});

  if (!out.csv.empty()) {
    std::ofstream os(out.csv);
    if (!os) throw config_error(0, "cannot write csv '" + out.csv + "'");
    write_csv(os, result.samples, s.system.names());
  } else {
    write_csv(std::cout, result.samples, s.system.names());
  }

  std::ostream& log = out.csv.empty() ? std::cerr : std::cout;
  log << "termination=" << to_string(result.reason) << " t=" << format_g17(result.final_state.t)
      << " accepted=" << result.accepted << " rejected=" << result.rejected << '\n';
  if (result.blowup) {
    log << "blowup trigger_time=" << format_g17(result.blowup->trigger_time) << " T_est=";
    if (result.blowup->t_est)
      log << format_g17(*result.blowup->t_est);
    else
      log << "none";
    log << '\n';
  }
  switch (result.reason) {
    case Termination::ReachedT: return kOk;
    case Termination::Blowup: return kBlowup;
    case Termination::DtUnderflow: return kUnderflow;
  }
  return kOk;
}

int cmd_check_model(const std::string& path, double radius, std::size_t samples) {
  const Config cfg = load_config(path);
  const Scenario& s = cfg.scenario;
  SamplingPlan plan;
  plan.count = samples;
  print_report(std::cout, "quasi_positivity.bulk", check_quasi_positivity(s.bulk, plan, radius));
  print_report(std::cout, "quasi_positivity.surface",
               check_quasi_positivity(s.surface, plan, radius));
  print_report(std::cout, "sorption_structure." + std::string(to_string(s.model.variant())),
               check_sorption_structure(s.model, radius, plan));
  for (auto [label, net] : {std::pair{"bulk", &s.bulk}, std::pair{"surface", &s.surface}}) {
    const auto gb = growth_exponent(*net);
    std::cout << "GROWTH " << label << " gamma=" << gb.gamma << " M=" << format_g17(gb.M) << '\n';
  }
  if (s.tri_bulk)
    print_report(std::cout, "triangular.bulk", check_triangular(s.bulk, *s.tri_bulk, radius, plan));
  if (s.tri_surface)
    print_report(std::cout, "triangular.surface",
                 check_triangular(s.surface, *s.tri_surface, radius, plan));
  return kOk;
}

struct ExponentArgs {
  int d = 3;
  std::string p = "2";
  int k_omega = 1;
  int k_sigma = 1;
  std::string gamma_omega, gamma_sigma, mu_omega, mu_sigma;
  bool kv = false;
};

int cmd_exponents(const ExponentArgs& a) {
  ExponentQuery q;
  q.d = a.d;
  q.p = parse_rational(a.p);
  q.k_omega = a.k_omega;
  q.k_sigma = a.k_sigma;
  auto opt = [](const std::string& s) -> std::optional<Rational> {
    if (s.empty()) return std::nullopt;
    return parse_rational(s);
  };
  q.gamma_omega = opt(a.gamma_omega);
  q.gamma_sigma = opt(a.gamma_sigma);
  q.mu_omega = opt(a.mu_omega);
  q.mu_sigma = opt(a.mu_sigma);
  q.validate();

  std::vector<AdmissibilityReport> reports{sorption_trace_admissible(q),
                                           assumption_sorption_admissible(q), lwp_admissible(q)};
  if (q.gamma_omega || q.gamma_sigma) reports.push_back(reaction_growth_admissible(q));
  if (q.mu_omega || q.mu_sigma) reports.push_back(lpq_estimate_admissible(q));
  for (const auto& r : reports) std::cout << (a.kv ? render_kv(r) : render_text(r));
  return kOk;
}

int cmd_verify(const std::string& only) {
  bool failed = false;
  for (const auto& pc : property_suite()) {
    if (!only.empty() && pc.id.rfind(only, 0) != 0) continue;
    const auto r = pc.check();
    std::cout << "PROP " << r.id << ' ' << to_string(r.verdict)
              << " measured=" << format_g17(r.measured) << " tol=" << format_g17(r.tol) << '\n'
              << "  runtime=" << std::fixed << std::setprecision(3) << r.runtime
              << std::defaultfloat << " fingerprint=" << r.fingerprint << ' ' << r.note << '\n'
              << std::flush;
    failed = failed || r.verdict == PropertyVerdict::Fail;
  }
  return failed ? kPropertyFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bulk-surface reaction-advection-diffusion-sorption simulator and model checker"};
  app.require_subcommand(1);

  std::string config_path, csv_override;
  auto* run_cmd = app.add_subcommand("run", "integrate a configuration and write CSV/snapshots");
  run_cmd->add_option("config", config_path, "configuration file")->required();
  run_cmd->add_option("--csv", csv_override, "CSV path (overrides [output] csv)");

  double radius = 10.0;
  std::size_t samples = 4096;
  auto* check_cmd = app.add_subcommand("check-model", "sample-based structural checks");
  check_cmd->add_option("config", config_path, "configuration file")->required();
  check_cmd->add_option("--radius", radius, "sampling box [0, R]")->check(CLI::PositiveNumber);
  check_cmd->add_option("--samples", samples, "low-discrepancy sample count");

  ExponentArgs ea;
  auto* exp_cmd = app.add_subcommand("exponents", "admissibility of integrability exponents");
  exp_cmd->add_option("--d", ea.d, "spatial dimension")->required();
  exp_cmd->add_option("--p", ea.p, "integrability exponent (decimal or a/b)")->required();
  exp_cmd->add_option("--komega", ea.k_omega, "bulk sorption degree K")->required();
  exp_cmd->add_option("--ksigma", ea.k_sigma, "surface sorption degree K")->required();
  exp_cmd->add_option("--gamma-omega", ea.gamma_omega, "bulk reaction growth exponent");
  exp_cmd->add_option("--gamma-sigma", ea.gamma_sigma, "surface reaction growth exponent");
  exp_cmd->add_option("--mu-omega", ea.mu_omega, "bulk triangular-structure exponent");
  exp_cmd->add_option("--mu-sigma", ea.mu_sigma, "surface triangular-structure exponent");
  exp_cmd->add_flag("--kv", ea.kv, "machine-readable key=value output");

  std::string only;
  auto* verify_cmd = app.add_subcommand("verify", "run the property suite");
  verify_cmd->add_option("--only", only, "run properties whose id starts with this prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(config_path, csv_override);
    if (*check_cmd) return cmd_check_model(config_path, radius, samples);
    if (*exp_cmd) return cmd_exponents(ea);
    if (*verify_cmd) return cmd_verify(only);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
