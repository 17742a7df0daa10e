#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcm/algorithm.hpp"
#include "lcm/geometry.hpp"
#include "lcm/model.hpp"
#include "lcm/rng.hpp"
#include "lcm/trace.hpp"

namespace lcm {

enum class CycleStage { Idle, Looked, Computed, Moving };

struct FrameChoice {
  double rotation = 0.0;
  double unit = 1.0;
  int handedness = +1;
};

struct LookOp {
  int robot = 0;
  FrameChoice frame;
};

// Everything the adversary fires at one relevant time. Application order:
// exposure advances, then Looks (reading the pre-state), Computes, MoveBegins,
// MoveEnds.
struct StepProposal {
  std::vector<LookOp> looks;
  std::vector<int> computes;
  std::vector<int> move_begins;
  std::vector<int> move_ends;
  std::map<int, double> transit_progress;  // exposed fraction of the committed segment

  bool empty() const {
    return looks.empty() && computes.empty() && move_begins.empty() && move_ends.empty() &&
           transit_progress.empty();
  }

  // convenience: a full Look-Compute-Move cycle at one time
  void full_cycle(int robot, FrameChoice f = {}) {
    looks.push_back({robot, f});
    computes.push_back(robot);
    move_begins.push_back(robot);
    move_ends.push_back(robot);
  }
};

struct RobotStatus {
  Point pos{};             // committed position (the origin while moving)
  LightTuple light;        // committed light
  CycleStage stage = CycleStage::Idle;
  Point dest{};            // valid from Compute on
  double progress = 0.0;   // exposed transit fraction
};

struct EngineView {
  Time now = 0;
  const std::vector<RobotStatus>* robots = nullptr;
  int n = 0;

  const RobotStatus& robot(int i) const { return (*robots)[i]; }
  bool any_pending() const {
    for (const auto& r : *robots)
      if (r.stage != CycleStage::Idle) return true;
    return false;
  }
  double distance(int i, int j) const { return dist((*robots)[i].pos, (*robots)[j].pos); }
};

class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;
  virtual void begin(const EngineView&) {}
  virtual StepProposal next(const EngineView&) = 0;
  // diagnostic outcome for scripted strategies ("ok", "target-resisted", ...)
  virtual std::string status() const { return "ok"; }
};

struct Scenario {
  ModelClass model = ModelClass::OBLOT;
  std::vector<Point> positions;
  bool chirality = true;
  std::vector<LightTuple> initial_lights;  // optional override, resolved against the binding

  int n() const { return static_cast<int>(positions.size()); }
};

struct EngineOptions {
  // Mutation hook: apply each batch per-robot sequentially instead of staging
  // Looks before commits, so same-time commits become visible to same-time
  // Looks. Exists to prove the verifiers are not vacuous.
  bool disable_spec1_delay = false;
};

// Test/verification hook: observes every snapshot the engine hands a robot.
struct EngineObserver {
  virtual ~EngineObserver() = default;
  virtual void on_look(int /*robot*/, Time /*t*/, const Snapshot&,
                       const std::vector<ExposedRobot>& /*exposed view used*/) {}
};

class Engine {
 public:
  Engine(const Scenario& scenario, const AlgorithmBinding& binding, SchedulerClass cls,
         EngineOptions opts = {})
      : scenario_(scenario), binding_(binding), cls_(cls), opts_(opts) {
    if (scenario.positions.empty()) throw ConfigError("empty scenario");
    if (binding.arity > 0 && binding.arity != scenario.n())
      throw ConfigError("algorithm '" + binding.name + "' needs n=" + std::to_string(binding.arity));
    for (auto p : scenario.positions)
      if (!finite(p)) throw ConfigError("non-finite initial position");
    LightTuple init = LightTuple::initial(binding.lights);
    for (int i = 0; i < scenario.n(); ++i) {
      RobotStatus rs;
      rs.pos = scenario.positions[i];
      rs.light = init;
      if (!scenario.initial_lights.empty()) {
        if (scenario.initial_lights.size() != scenario.positions.size())
          throw ConfigError("initial_lights size mismatch");
        LightTuple t = init;
        t.merge(scenario.initial_lights[i].vals);
        t.check_against(binding.lights);
        rs.light = t;
      }
      robots_.push_back(std::move(rs));
    }
    trace_.n = scenario.n();
    trace_.model = binding.model;
    trace_.scheduler = cls_;
    trace_.chirality = scenario.chirality;
    trace_.algo = binding.name;
    for (const auto& r : robots_) trace_.initial.robots.push_back({r.pos, r.light, false, {}});
    trace_.configs.push_back(trace_.initial);
  }

  void set_observer(EngineObserver* obs) { observer_ = obs; }
  void set_seed(std::uint64_t seed) { trace_.seed = seed; }

  EngineView view() {
    EngineView v;
    v.now = now_;
    v.robots = &robots_;
    v.n = scenario_.n();
    return v;
  }

  // Fires one proposal at the next relevant time. Returns false when the
  // proposal is empty (no-op).
  bool step(const StepProposal& prop) {
    if (prop.empty()) return false;
    validate(prop);
    const Time t = ++now_;

    for (const auto& [r, f] : prop.transit_progress) robots_[r].progress = f;

    if (!opts_.disable_spec1_delay) {
      // stage 1: all Looks read the pre-state
      std::vector<ExposedRobot> exposed = exposed_view();
      for (const auto& op : prop.looks) fire_look(op, t, exposed);
      for (int r : prop.computes) fire_compute(r, t);
      for (int r : prop.move_begins) fire_move_begin(r, t);
      for (int r : prop.move_ends) fire_move_end(r, t);
    } else {
      // mutated ordering: per-robot sequential application
      std::vector<int> order;
      for (const auto& op : prop.looks) order.push_back(op.robot);
      for (int r : prop.computes)
        if (std::find(order.begin(), order.end(), r) == order.end()) order.push_back(r);
      for (int r : prop.move_begins)
        if (std::find(order.begin(), order.end(), r) == order.end()) order.push_back(r);
      for (int r : prop.move_ends)
        if (std::find(order.begin(), order.end(), r) == order.end()) order.push_back(r);
      for (int r : order) {
        for (const auto& op : prop.looks)
          if (op.robot == r) {
            std::vector<ExposedRobot> exposed = exposed_view();
            fire_look(op, t, exposed);
          }
        for (int c : prop.computes)
          if (c == r) fire_compute(r, t);
        for (int m : prop.move_begins)
          if (m == r) fire_move_begin(r, t);
        for (int m : prop.move_ends)
          if (m == r) fire_move_end(r, t);
      }
    }

    Configuration cfg;
    for (const auto& r : robots_)
      cfg.robots.push_back({r.pos, r.light, r.stage == CycleStage::Moving, r.dest});
    while (static_cast<Time>(trace_.configs.size()) <= t) trace_.configs.push_back(cfg);
    trace_.configs[t] = cfg;
    return true;
  }

  // Drives the adversary until the horizon (in relevant times) or until it
  // stops proposing steps.
  Trace run(AdversaryStrategy& adv, Time horizon) {
    adv.begin(view());
    while (now_ < horizon) {
      StepProposal prop = adv.next(view());
      if (prop.empty()) {
        if (view().any_pending()) throw DeadlockError();
        break;
      }
      step(prop);
    }
    return trace_;
  }

  const Trace& trace() const { return trace_; }
  Time now() const { return now_; }

 private:
  std::vector<ExposedRobot> exposed_view() const {
    std::vector<ExposedRobot> out;
    out.reserve(robots_.size());
    for (const auto& r : robots_) {
      Point p = r.pos;
      if (r.stage == CycleStage::Moving && r.progress > 0.0)
        p = r.pos + r.progress * (r.dest - r.pos);
      out.push_back({p, r.light});
    }
    return out;
  }

  void fire_look(const LookOp& op, Time t, const std::vector<ExposedRobot>& exposed) {
    auto& r = robots_[op.robot];
    LocalFrame frame{r.pos, op.frame.rotation, op.frame.unit, op.frame.handedness};
    Snapshot snap = build_snapshot(exposed, op.robot, frame, binding_.model);
    if (observer_) observer_->on_look(op.robot, t, snap, exposed);
    pending_snap_[op.robot] = snap;
    pending_frame_[op.robot] = frame;
    r.stage = CycleStage::Looked;
    CycleEvent ev;
    ev.t = t;
    ev.robot = op.robot;
    ev.kind = EventKind::Look;
    ev.pos = r.pos;
    ev.snap = snapshot_hash(snap);
    trace_.append_event(ev);
  }

  void fire_compute(int robot, Time t) {
    auto& r = robots_[robot];
    ComputeResult res = binding_.compute(pending_snap_.at(robot));
    if (!finite(res.dest)) throw Error("algorithm computed a non-finite destination");
    r.dest = to_global(pending_frame_.at(robot), res.dest);
    LightTuple nl = r.light;
    nl.merge(res.light_updates);
    nl.check_against(binding_.lights);
    r.light = nl;
    r.stage = CycleStage::Computed;
    CycleEvent ev;
    ev.t = t;
    ev.robot = robot;
    ev.kind = EventKind::Compute;
    ev.pos = r.pos;
    ev.light = r.light;
    ev.dest = r.dest;
    trace_.append_event(ev);
  }

  void fire_move_begin(int robot, Time t) {
    auto& r = robots_[robot];
    r.stage = CycleStage::Moving;
    r.progress = 0.0;
    CycleEvent ev;
    ev.t = t;
    ev.robot = robot;
    ev.kind = EventKind::MoveBegin;
    ev.pos = r.pos;
    ev.dest = r.dest;
    trace_.append_event(ev);
  }

  void fire_move_end(int robot, Time t) {
    auto& r = robots_[robot];
    CycleEvent ev;
    ev.t = t;
    ev.robot = robot;
    ev.kind = EventKind::MoveEnd;
    ev.dest = r.dest;
    r.pos = r.dest;  // rigid movement
    r.progress = 0.0;
    r.stage = CycleStage::Idle;
    ev.pos = r.pos;
    trace_.append_event(ev);
  }

  void reject(const std::string& why) const {
    throw AdversaryConstraintViolation(std::string(to_string(cls_)) + ": " + why);
  }

  void validate(const StepProposal& prop) const {
    // per-robot op-order prerequisites, accounting for same-batch progression
    std::map<int, CycleStage> st;
    for (std::size_t i = 0; i < robots_.size(); ++i) st[static_cast<int>(i)] = robots_[i].stage;
    auto need = [&](int r, CycleStage want, const char* op) {
      if (r < 0 || r >= static_cast<int>(robots_.size())) reject("unknown robot in proposal");
      if (st[r] != want) reject(std::string(op) + " out of cycle order for robot " + std::to_string(r));
    };
    for (const auto& [r, f] : prop.transit_progress) {
      if (r < 0 || r >= static_cast<int>(robots_.size())) reject("unknown robot in proposal");
      if (robots_[r].stage != CycleStage::Moving) reject("transit exposure for a robot not moving");
      if (!(f >= robots_[r].progress) || !(f < 1.0)) reject("transit exposure must be monotone in [cur,1)");
    }
    for (const auto& op : prop.looks) {
      need(op.robot, CycleStage::Idle, "Look");
      if (!(op.frame.unit > 0.0)) reject("frame unit must be positive");
      if (scenario_.chirality && op.frame.handedness != +1) reject("chirality requires handedness +1");
      if (op.frame.handedness != +1 && op.frame.handedness != -1) reject("handedness must be +/-1");
      st[op.robot] = CycleStage::Looked;
    }
    for (int r : prop.computes) {
      need(r, CycleStage::Looked, "Compute");
      st[r] = CycleStage::Computed;
    }
    for (int r : prop.move_begins) {
      need(r, CycleStage::Computed, "MoveBegin");
      st[r] = CycleStage::Moving;
    }
    for (int r : prop.move_ends) {
      need(r, CycleStage::Moving, "MoveEnd");
      st[r] = CycleStage::Idle;
    }

    auto contains = [](const std::vector<int>& v, int r) {
      return std::find(v.begin(), v.end(), r) != v.end();
    };
    auto look_for = [&](int r) {
      for (const auto& op : prop.looks)
        if (op.robot == r) return true;
      return false;
    };

    switch (cls_) {
      case SchedulerClass::FSYNCH:
      case SchedulerClass::SSYNCH:
      case SchedulerClass::ROUNDROBIN: {
        // full atomic cycles only
        for (const auto& op : prop.looks)
          if (!contains(prop.computes, op.robot) || !contains(prop.move_begins, op.robot) ||
              !contains(prop.move_ends, op.robot))
            reject("round must fuse the whole cycle");
        for (int r : prop.computes)
          if (!look_for(r)) reject("Compute without same-time Look");
        if (cls_ == SchedulerClass::FSYNCH && prop.looks.size() != robots_.size())
          reject("FSYNCH round must activate every robot");
        if (cls_ == SchedulerClass::ROUNDROBIN) {
          if (prop.looks.size() != 1) reject("ROUNDROBIN round activates exactly one robot");
          if (rr_expected_ >= 0 && prop.looks[0].robot != rr_expected_)
            reject("ROUNDROBIN order violated");
          rr_expected_ = (prop.looks[0].robot + 1) % static_cast<int>(robots_.size());
        }
        break;
      }
      case SchedulerClass::LC_ATOMIC:
        for (const auto& op : prop.looks)
          if (!contains(prop.computes, op.robot)) reject("Look must fuse with its Compute");
        for (int r : prop.computes)
          if (!look_for(r)) reject("Compute must fuse with its Look");
        break;
      case SchedulerClass::CM_ATOMIC:
        for (int r : prop.computes)
          if (!contains(prop.move_begins, r) || !contains(prop.move_ends, r))
            reject("Compute must fuse with its Move");
        for (int r : prop.move_begins)
          if (!contains(prop.computes, r)) reject("MoveBegin must fuse with its Compute");
        for (int r : prop.move_ends)
          if (!contains(prop.move_begins, r)) reject("MoveEnd must fuse with its MoveBegin");
        break;
      case SchedulerClass::M_ATOMIC:
        for (int r : prop.move_begins)
          if (!contains(prop.move_ends, r)) reject("Move must be instantaneous");
        for (int r : prop.move_ends)
          if (!contains(prop.move_begins, r)) reject("Move must be instantaneous");
        break;
      case SchedulerClass::ASYNCH:
        break;
    }
  }

  Scenario scenario_;
  AlgorithmBinding binding_;
  SchedulerClass cls_;
  EngineOptions opts_;
  std::vector<RobotStatus> robots_;
  std::map<int, Snapshot> pending_snap_;
  std::map<int, LocalFrame> pending_frame_;
  Trace trace_;
  Time now_ = 0;
  EngineObserver* observer_ = nullptr;
  mutable int rr_expected_ = -1;
};

// One-call convenience used by the CLI and tests.
inline Trace run_execution(const Scenario& scenario, const AlgorithmBinding& binding,
                           SchedulerClass cls, AdversaryStrategy& adv, Time horizon,
                           std::uint64_t seed, EngineOptions opts = {},
                           EngineObserver* obs = nullptr) {
  Engine engine(scenario, binding, cls, opts);
  engine.set_observer(obs);
  engine.set_seed(seed);
  return engine.run(adv, horizon);
}

}  // namespace lcm
