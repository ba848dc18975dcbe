// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "bulksurf/bulksurf.hpp"

namespace {

using namespace bulksurf;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Runs a family of property checks; fails if any report fails.
Outcome all_pass(const std::vector<Scenario>& family,
                 const std::function<PropertyReport(const Scenario&)>& check, double* worst_out,
                 std::string* worst_id) {
  Outcome o{true, {}};
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : family) {
    const auto rep = check(s);
    if (rep.verdict != PropertyVerdict::Pass) {
      o.pass = false;
      o.detail += " failed=" + rep.id + "(" + g(rep.measured) + ")";
    }
    if (rep.measured > worst) {
      worst = rep.measured;
      *worst_id = rep.id;
    }
  }
  *worst_out = worst;
  return o;
}

Outcome criterion_blowup() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = check_henry_blowup();
  const double elapsed = seconds_since(t0);
  Outcome o{rep.verdict == PropertyVerdict::Pass && elapsed < 10.0, rep.note};
  o.detail += " runtime=" + g(elapsed) + "s";
  return o;
}

Outcome criterion_positivity() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string id;
  auto o = all_pass(positivity_scenarios(), [](const Scenario& s) { return check_positivity(s); },
                    &worst, &id);
  const double elapsed = seconds_since(t0);
  o.pass = o.pass && elapsed < 120.0;
  o.detail = "scenarios=" + std::to_string(positivity_scenarios().size()) +
             " worst_negativity=" + g(worst) + " at " + id + " runtime=" + g(elapsed) + "s" + o.detail;
  return o;
}

Outcome criterion_mass() {
  double worst = 0.0;
  std::string id;
  auto o = all_pass(mass_balance_scenarios(),
                    [](const Scenario& s) { return check_mass_balance(s); }, &worst, &id);
  o.detail = "scenarios=" + std::to_string(mass_balance_scenarios().size()) +
             " worst_rel_drift=" + g(worst) + " at " + id + o.detail;
  return o;
}

Outcome criterion_heat() {
  const auto rep = check_heat_convergence();
  return {rep.verdict == PropertyVerdict::Pass, "order_32_64=" + g(rep.measured) + " " + rep.note};
}

Outcome criterion_langmuir() {
  Outcome o{true, {}};
  for (const auto& s : langmuir_cap_scenarios()) {
    const auto rep = check_langmuir_cap(s);
    o.pass = o.pass && rep.verdict == PropertyVerdict::Pass;
    o.detail += rep.id + "[" + rep.note.substr(rep.note.find("theta0")) + "] ";
  }
  return o;
}

Outcome criterion_comparison() {
  Outcome o{true, {}};
  for (const auto& s : comparison_scenarios()) {
    const auto rep = check_comparison(s);
    o.pass = o.pass && rep.verdict == PropertyVerdict::Pass;
    o.detail += rep.id + " max(c-z)=" + g(rep.measured) + " ";
  }
  return o;
}

Outcome criterion_exponents() {
  Outcome o{true, {}};
  auto q = [](int d, const char* p) {
    ExponentQuery e;
    e.d = d;
    e.p = parse_rational(p);
    return e;
  };
  const bool trace = sorption_trace_admissible(q(3, "2.5")).admissible;
  const bool lwp = lwp_admissible(q(3, "2.5")).admissible;
  const bool assumption = assumption_sorption_admissible(q(2, "1.0")).admissible;
  o.pass = trace && lwp && assumption;
  o.detail = "d3_p2.5_trace=" + std::to_string(trace) + " d3_p2.5_lwp=" + std::to_string(lwp) +
             " d2_p1_assumption=" + std::to_string(assumption);

  boost::random::mt19937 rng(2718);
  boost::random::uniform_int_distribution<int> dd(1, 6), kk(1, 5);
  std::size_t violations = 0;
  for (int tuple = 0; tuple < 20; ++tuple) {
    ExponentQuery e;
    e.d = dd(rng);
    e.k_omega = kk(rng);
    e.k_sigma = kk(rng);
    bool seen[3] = {false, false, false};
    for (int k = 0; k < 1000; ++k) {
      e.p = 1 + Rational(k * 2 * (e.d + 1), 999);
      const bool now[3] = {sorption_trace_admissible(e).admissible,
                           assumption_sorption_admissible(e).admissible,
                           lwp_admissible(e).admissible};
      for (int j = 0; j < 3; ++j) {
        if (seen[j] && !now[j]) ++violations;
        seen[j] = seen[j] || now[j];
      }
    }
  }
  o.pass = o.pass && violations == 0;
  o.detail += " upward_closure_violations=" + std::to_string(violations) + " (20 tuples x 1000 p)";
  return o;
}

Outcome criterion_determinism() {
  Outcome o{true, {}};
  std::size_t n = 0;
  for (const auto& s : builtin_scenarios()) {
    const auto pb = s.problem();
    const auto a = csv_string(run(pb, s.initial, s.t_end, s.stepper).samples, s.system.names());
    const auto b = csv_string(run(pb, s.initial, s.t_end, s.stepper).samples, s.system.names());
    ++n;
    if (a != b) {
      o.pass = false;
      o.detail += " differs=" + s.id;
    }
  }
  o.detail = "scenarios=" + std::to_string(n) + o.detail;
  return o;
}

Outcome criterion_structure() {
  Outcome o{true, {}};
  SamplingPlan plan;
  plan.count = 4096;
  for (auto v : {SorptionVariant::Henry, SorptionVariant::Langmuir, SorptionVariant::Volmer,
                 SorptionVariant::VanDerWaals}) {
    const auto model = matrix_sorption(v);
    const auto rep = check_sorption_structure(model, 10.0, plan);
    o.pass = o.pass && rep.verdict == Verdict::Pass && rep.samples == 4096;
    o.detail += std::string(to_string(v)) + "=" + std::string(to_string(rep.verdict)) + " ";
  }
  const auto henry = matrix_sorption(SorptionVariant::Henry);
  SorptionFunction negated = [&](std::span<const double> c, std::span<const double> cs) {
    auto s = eval_sorption(henry, c, cs);
    for (auto& x : s) x = -x;
    return s;
  };
  const auto k = bounds_of(henry);
  const auto rep = check_sorption_structure(negated, k, 10.0, plan);
  bool reproduced = false;
  if (rep.witness) {
    const auto again = sorption_structure_violation(negated, k, rep.witness->c, rep.witness->c_surf, 10.0);
    reproduced = again.amount == rep.worst_violation && again.amount > kCheckTolerance;
  }
  o.pass = o.pass && rep.verdict == Verdict::Fail && reproduced;
  o.detail += "negated_henry=" + std::string(to_string(rep.verdict)) +
              " witness_reproduces=" + std::to_string(reproduced) + " rule=\"" + rep.worst_rule + "\"";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"henry_blowup", criterion_blowup},
      {"positivity_matrix", criterion_positivity},
      {"mass_balance_matrix", criterion_mass},
      {"heat_convergence", criterion_heat},
      {"langmuir_occupancy_cap", criterion_langmuir},
      {"comparison_ordering", criterion_comparison},
      {"exponent_calculator", criterion_exponents},
      {"determinism", criterion_determinism},
      {"structure_checkers", criterion_structure},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << "criterion " << index << ' ' << name << ": " << (o.pass ? "PASS" : "FAIL") << "  "
              << o.detail << '\n'
              << std::flush;
  }
  std::cout << (failures ? "acceptance: FAIL (" + std::to_string(failures) + " criteria)"
                         : std::string("acceptance: PASS (9/9)"))
            << '\n';
  return failures ? 1 : 0;
}
