#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lcm/sim.hpp"
#include "lcm/trace.hpp"

namespace lcm {

// One execution of the embedded algorithm inside a wrapped run.
struct EmbeddedInstance {
  int robot = -1;
  Time look = 0, comp = 0;
  std::optional<Time> move_begin, move_end;
  int batch = 0;       // phase-1 pass index
  int mega_cycle = 0;  // segment between all-F boundaries

  Time window_end(Time horizon) const { return move_end ? *move_end : horizon; }
};

struct EmbeddedReport {
  std::vector<EmbeddedInstance> instances;
  std::vector<Time> mega_boundaries;       // rising edges of "every state flag is F"
  std::vector<std::string> cm_violations;  // Look inside another instance's (Comp, MoveEnd]
  std::vector<std::string> replay_divergences;
  Trace embedded;  // the projected execution of the payload

  bool cm_valid() const { return cm_violations.empty() && replay_divergences.empty(); }
};

namespace detail {

// Exposed-global payload snapshot for replaying the embedded Compute.
inline Snapshot payload_snapshot_from_config(const Configuration& cfg, int observer,
                                             const LightDecl& payload_decl) {
  const Point origin = cfg.robots[observer].pos;
  Snapshot out;
  std::map<std::pair<double, double>, SeenLocation> by_pos;
  for (std::size_t i = 0; i < cfg.robots.size(); ++i) {
    if (static_cast<int>(i) == observer) continue;
    const Point p = cfg.robots[i].pos;
    LightTuple pay;
    for (const auto& [n, v] : cfg.robots[i].light.vals)
      if (payload_decl.colors_of(n)) pay.vals.emplace_back(n, v);
    pay.normalize();
    auto& loc = by_pos[{p.x, p.y}];
    loc.pos = p - origin;
    loc.lights.push_back(std::move(pay));
  }
  for (auto& [key, loc] : by_pos) {
    std::sort(loc.lights.begin(), loc.lights.end());
    loc.lights.erase(std::unique(loc.lights.begin(), loc.lights.end()), loc.lights.end());
    if (Point{key.first, key.second} == origin) out.colocated = std::move(loc);
    else out.others.push_back(std::move(loc));
  }
  return out;
}

// Exposed payload content as seen by one robot, for same-snapshot comparisons.
inline std::vector<std::pair<std::pair<double, double>, std::string>> payload_view_key(
    const Configuration& cfg, int observer, const LightDecl& payload_decl) {
  std::vector<std::pair<std::pair<double, double>, std::string>> key;
  for (std::size_t i = 0; i < cfg.robots.size(); ++i) {
    if (static_cast<int>(i) == observer) continue;
    LightTuple pay;
    for (const auto& [n, v] : cfg.robots[i].light.vals)
      if (payload_decl.colors_of(n)) pay.vals.emplace_back(n, v);
    pay.normalize();
    key.push_back({{cfg.robots[i].pos.x, cfg.robots[i].pos.y}, pay.str()});
  }
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace detail

// Replays a wrapped trace, projecting every embedded execution and checking
// that the projection satisfies the Compute-Move-atomic condition: no
// instance's Look falls strictly inside another instance's (Comp, MoveEnd]
// window. Also re-derives every protocol Compute and flags divergences.
inline EmbeddedReport extract_embedded_execution(const Trace& tr, const AlgorithmBinding& payload,
                                                 SimOptions opts = {}) {
  if (!tr.chirality) throw MalformedSimTrace("wrapped runs require chirality");
  EmbeddedReport rep;

  // mega-cycle boundaries: rising edges of all-states-F over committed configs
  auto all_f = [&](const Configuration& c) {
    for (const auto& r : c.robots)
      if (parse_sim_light(r.light).state != SimState::F) return false;
    return true;
  };
  for (std::size_t t = 1; t < tr.configs.size(); ++t)
    if (all_f(tr.configs[t]) && !all_f(tr.configs[t - 1]))
      rep.mega_boundaries.push_back(static_cast<Time>(t));

  std::vector<LightTuple> cur(tr.n);
  for (int i = 0; i < tr.n; ++i) cur[i] = tr.initial.robots[i].light;
  std::vector<Time> cur_look(tr.n, -1);
  std::vector<int> open_instance(tr.n, -1);
  std::vector<Time> separators;  // commits entering phase 2 or m

  for (const auto& ev : tr.events) {
    switch (ev.kind) {
      case EventKind::Look:
        cur_look[ev.robot] = ev.t;
        break;
      case EventKind::Compute: {
        if (cur_look[ev.robot] < 1) throw MalformedSimTrace("Compute without Look");
        const Time tl = cur_look[ev.robot];
        const Configuration& exposed = tr.configs[tl - 1];
        SimView view = sim_view_from_config(exposed, ev.robot);
        SimDecision dec = sim_decide(view, opts);

        ComputeResult expect;
        if (dec.run_embedded) {
          Snapshot psnap = detail::payload_snapshot_from_config(exposed, ev.robot, payload.lights);
          ComputeResult inner = payload.compute(psnap);
          expect.light_updates = inner.light_updates;
        }
        append_sim_updates(expect.light_updates, dec);
        LightTuple want = cur[ev.robot];
        want.merge(expect.light_updates);
        if (!ev.light || !(*ev.light == want)) {
          std::ostringstream os;
          os << "robot " << ev.robot << " committed " << (ev.light ? ev.light->str() : "(none)")
             << " at t=" << ev.t << " but the protocol prescribes " << want.str();
          rep.replay_divergences.push_back(os.str());
        }
        const SimPhase before = parse_sim_light(cur[ev.robot]).phase;
        const SimPhase after = ev.light ? parse_sim_light(*ev.light).phase : before;
        if (after != before && (after == SimPhase::P2 || after == SimPhase::Pm))
          separators.push_back(ev.t);
        cur[ev.robot] = ev.light ? *ev.light : want;

        if (dec.run_embedded) {
          EmbeddedInstance inst;
          inst.robot = ev.robot;
          inst.look = tl;
          inst.comp = ev.t;
          rep.instances.push_back(inst);
          open_instance[ev.robot] = static_cast<int>(rep.instances.size()) - 1;
        }
        break;
      }
      case EventKind::MoveBegin:
        if (open_instance[ev.robot] >= 0 && !rep.instances[open_instance[ev.robot]].move_begin)
          rep.instances[open_instance[ev.robot]].move_begin = ev.t;
        break;
      case EventKind::MoveEnd:
        if (open_instance[ev.robot] >= 0) {
          rep.instances[open_instance[ev.robot]].move_end = ev.t;
          open_instance[ev.robot] = -1;
        }
        break;
    }
  }

  // batch and mega-cycle indices
  std::sort(separators.begin(), separators.end());
  for (auto& inst : rep.instances) {
    inst.batch = static_cast<int>(
        std::lower_bound(separators.begin(), separators.end(), inst.comp) - separators.begin());
    inst.mega_cycle = static_cast<int>(
        std::lower_bound(rep.mega_boundaries.begin(), rep.mega_boundaries.end(), inst.comp) -
        rep.mega_boundaries.begin());
  }

  // the Compute-Move-atomic condition on the projection
  const Time horizon = tr.last_time();
  for (std::size_t i = 0; i < rep.instances.size(); ++i) {
    for (std::size_t j = 0; j < rep.instances.size(); ++j) {
      if (i == j) continue;
      const auto& wi = rep.instances[i];
      const auto& wj = rep.instances[j];
      if (wj.look > wi.comp && wj.look <= wi.window_end(horizon)) {
        std::ostringstream os;
        os << "instance of robot " << wj.robot << " looked at t=" << wj.look
           << " inside robot " << wi.robot << "'s window (" << wi.comp << ","
           << wi.window_end(horizon) << "]";
        rep.cm_violations.push_back(os.str());
      }
    }
  }

  // projected embedded trace
  rep.embedded.n = tr.n;
  rep.embedded.model = ModelClass::FCOM;
  rep.embedded.scheduler = SchedulerClass::ASYNCH;
  rep.embedded.chirality = tr.chirality;
  rep.embedded.seed = tr.seed;
  rep.embedded.algo = payload.name;
  for (int i = 0; i < tr.n; ++i) {
    LightTuple pay;
    for (const auto& [n, v] : tr.initial.robots[i].light.vals)
      if (payload.lights.colors_of(n)) pay.vals.emplace_back(n, v);
    pay.normalize();
    rep.embedded.initial.robots.push_back({tr.initial.robots[i].pos, pay, false, {}});
  }
  struct Pending { Time t; int stage; CycleEvent ev; };
  std::vector<Pending> evs;
  auto payload_of = [&](const LightTuple& full) {
    LightTuple pay;
    for (const auto& [n, v] : full.vals)
      if (payload.lights.colors_of(n)) pay.vals.emplace_back(n, v);
    pay.normalize();
    return pay;
  };
  for (const auto& inst : rep.instances) {
    for (const auto& ev : tr.events) {
      if (ev.robot != inst.robot) continue;
      const bool in_cycle = (ev.kind == EventKind::Look && ev.t == inst.look) ||
                            (ev.kind == EventKind::Compute && ev.t == inst.comp) ||
                            (ev.kind == EventKind::MoveBegin && inst.move_begin && ev.t == *inst.move_begin) ||
                            (ev.kind == EventKind::MoveEnd && inst.move_end && ev.t == *inst.move_end);
      if (!in_cycle) continue;
      CycleEvent pe = ev;
      pe.snap.reset();
      if (pe.light) pe.light = payload_of(*pe.light);
      evs.push_back({ev.t, stage_of(ev.kind), pe});
    }
  }
  std::sort(evs.begin(), evs.end(), [](const Pending& a, const Pending& b) {
    return a.t < b.t || (a.t == b.t && (a.stage < b.stage ||
                                        (a.stage == b.stage && a.ev.robot < b.ev.robot)));
  });
  for (const auto& p : evs) rep.embedded.events.push_back(p.ev);
  rep.embedded.rebuild_configs();
  return rep;
}

// ---------------------------------------------------------------------------
// Mega-cycle fairness.

struct MegaCycleEntry {
  Time boundary = 0;
  std::vector<int> counts;  // embedded executions per robot in this mega-cycle
};

struct MegaCycleReport {
  std::vector<MegaCycleEntry> completed;
  std::vector<int> tail_counts;  // executions after the last boundary
  std::vector<std::string> violations;

  bool fair() const { return violations.empty(); }
};

inline MegaCycleReport mega_cycle_report(const EmbeddedReport& rep, int n) {
  MegaCycleReport out;
  for (std::size_t k = 0; k < rep.mega_boundaries.size(); ++k)
    out.completed.push_back({rep.mega_boundaries[k], std::vector<int>(n, 0)});
  out.tail_counts.assign(n, 0);
  for (const auto& inst : rep.instances) {
    if (inst.mega_cycle < static_cast<int>(out.completed.size()))
      out.completed[inst.mega_cycle].counts[inst.robot]++;
    else
      out.tail_counts[inst.robot]++;
  }
  for (std::size_t k = 0; k < out.completed.size(); ++k)
    for (int r = 0; r < n; ++r)
      if (out.completed[k].counts[r] < 1) {
        std::ostringstream os;
        os << "mega-cycle " << k << " completed without robot " << r << " executing";
        out.violations.push_back(os.str());
      }
  // per phase-1 pass, at most one robot may execute more than once
  std::map<std::pair<int, int>, std::map<int, int>> per_batch;  // (mega,batch) -> robot -> count
  for (const auto& inst : rep.instances) per_batch[{inst.mega_cycle, inst.batch}][inst.robot]++;
  for (const auto& [key, counts] : per_batch) {
    int repeaters = 0;
    for (const auto& [r, c] : counts)
      if (c > 1) repeaters++;
    if (repeaters > 1) {
      std::ostringstream os;
      os << "phase-1 pass " << key.second << " in mega-cycle " << key.first << " has "
         << repeaters << " robots executing more than once";
      out.violations.push_back(os.str());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Same-snapshot refinement under Look-Compute-atomic driving schedules:
// distinct robots of one phase-1 pass consumed same-time snapshots; a single
// robot may re-execute, but only on an unchanged exposed payload view.

inline std::vector<std::string> lc_refinement_check(const Trace& tr, const EmbeddedReport& rep,
                                                    const AlgorithmBinding& payload) {
  std::vector<std::string> violations;
  std::map<int, std::vector<const EmbeddedInstance*>> batches;
  for (const auto& inst : rep.instances) batches[inst.batch].push_back(&inst);
  for (const auto& [batch, insts] : batches) {
    std::map<int, const EmbeddedInstance*> first;
    std::set<Time> first_looks;
    for (const auto* inst : insts) {
      auto it = first.find(inst->robot);
      if (it == first.end()) {
        first[inst->robot] = inst;
        first_looks.insert(inst->look);
      } else {
        const auto a = detail::payload_view_key(tr.configs[it->second->look - 1], inst->robot,
                                                payload.lights);
        const auto b = detail::payload_view_key(tr.configs[inst->look - 1], inst->robot,
                                                payload.lights);
        if (a != b) {
          std::ostringstream os;
          os << "robot " << inst->robot << " re-executed in pass " << batch
             << " on a changed payload view (t=" << inst->look << ")";
          violations.push_back(os.str());
        }
      }
    }
    if (first_looks.size() > 1) {
      std::ostringstream os;
      os << "phase-1 pass " << batch << " mixes snapshot times:";
      for (Time t : first_looks) os << " " << t;
      violations.push_back(os.str());
    }
  }
  return violations;
}

}  // namespace lcm
