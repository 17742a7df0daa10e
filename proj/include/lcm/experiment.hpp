#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcm/adversaries.hpp"
#include "lcm/adversary_builtin.hpp"
#include "lcm/algorithms.hpp"
#include "lcm/problems.hpp"
#include "lcm/scheduler.hpp"
#include "lcm/sim.hpp"
#include "lcm/sim_verify.hpp"
#include "lcm/trace_io.hpp"

namespace lcm {

inline AlgorithmBinding make_algorithm(const std::string& name, SimOptions sim_opts = {}) {
  if (name.rfind("sim:", 0) == 0)
    return make_sim_binding(make_algorithm(name.substr(4)), sim_opts);
  if (name == "half-move") return half_move();
  if (name == "half-move-fcom") return half_move_fcom();
  if (name == "half-move-fsta") return half_move_fsta();
  if (name == "tf-rules") return tf_rules();
  if (name == "tf-rules-fsta") return tf_rules_fsta();
  if (name == "gcncl-quarter") return gcncl_quarter();
  if (name == "gcncl-naive-fcom") return gcncl_naive_fcom();
  if (name == "color-cycler") return color_cycler();
  throw UnknownKind("unknown algorithm: " + name);
}

inline std::vector<std::string> algorithm_names() {
  return {"half-move", "half-move-fcom", "half-move-fsta",  "tf-rules",
          "tf-rules-fsta", "gcncl-quarter", "gcncl-naive-fcom", "color-cycler",
          "sim:<algorithm>"};
}

inline std::unique_ptr<AdversaryStrategy> make_adversary(const std::string& name,
                                                         std::uint64_t seed, SchedulerClass cls,
                                                         bool chirality,
                                                         const AlgorithmBinding& target) {
  for (const char* kind : {"fsynch", "round-robin", "random", "max-delay"})
    if (name == kind) return builtin_adversary(name, seed, cls, chirality);
  return scripted_adversary(name, seed, target);
}

// Scenario file: robot count implied by positions; model and lights are
// resolved against the algorithm binding.
inline Scenario load_scenario(const json& j, const AlgorithmBinding& binding) {
  Scenario s;
  s.model = j.contains("model") ? model_from_string(j.at("model").get<std::string>())
                                : binding.model;
  if (s.model != binding.model)
    throw ConfigError("scenario model disagrees with the algorithm's model");
  for (const auto& p : j.at("positions"))
    s.positions.push_back({p[0].get<double>(), p[1].get<double>()});
  s.chirality = j.value("chirality", true);
  if (j.contains("initial_lights"))
    for (const auto& l : j.at("initial_lights")) s.initial_lights.push_back(light_from_json(l));
  return s;
}

inline Scenario load_scenario_file(const std::string& path, const AlgorithmBinding& binding) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("scenario parse error: " + std::string(e.what()));
  }
  return load_scenario(j, binding);
}

struct ExperimentSpec {
  Scenario scenario;
  std::string algo;
  SchedulerClass scheduler = SchedulerClass::SSYNCH;
  std::string adversary = "random";
  std::uint64_t seed = 0;
  Time horizon = 1000;
  std::string monitor = "none";
  double eps = 1e-9;
  double tol = kGeomTol;
};

struct ExperimentResult {
  Trace trace;
  MonitorVerdict verdict;
  std::string adversary_status;
};

inline MonitorVerdict run_monitor(const std::string& name, const Trace& tr, double eps, double tol) {
  if (name == "mlcv") return monitor_mlcv(tr, eps);
  if (name == "tf") return monitor_tf(tr, tol);
  if (name == "gcncl") return monitor_gcncl(tr);
  if (name == "rdv") return monitor_rdv(tr, eps);
  if (name == "none") return MonitorVerdict::undetermined("no monitor requested");
  throw UnknownKind("unknown monitor: " + name);
}

inline ExperimentResult run_experiment(const ExperimentSpec& spec, EngineOptions eopts = {},
                                       SimOptions sopts = {}, EngineObserver* obs = nullptr) {
  AlgorithmBinding binding = make_algorithm(spec.algo, sopts);
  auto adv = make_adversary(spec.adversary, spec.seed, spec.scheduler, spec.scenario.chirality,
                            binding);
  Trace tr = run_execution(spec.scenario, binding, spec.scheduler, *adv, spec.horizon, spec.seed,
                           eopts, obs);
  ExperimentResult res;
  res.verdict = run_monitor(spec.monitor, tr, spec.eps, spec.tol);
  res.trace = std::move(tr);
  res.adversary_status = adv->status();
  return res;
}

inline json verdict_to_json(const MonitorVerdict& v) {
  json j = {{"status", to_string(v.status)}, {"witness", v.witness}};
  if (v.status == VerdictStatus::Violated) {
    j["time"] = v.time;
    j["clause"] = v.clause;
  }
  return j;
}

inline int verdict_exit_code(const MonitorVerdict& v) {
  switch (v.status) {
    case VerdictStatus::Satisfied: return 0;
    case VerdictStatus::Violated: return 2;
    case VerdictStatus::Undetermined: return 3;
  }
  return 1;
}

}  // namespace lcm
