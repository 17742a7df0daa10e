#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcm/geometry.hpp"
#include "lcm/lights.hpp"
#include "lcm/model.hpp"

namespace lcm {

using Time = std::int64_t;  // index into the ordered set of relevant times; 0 is the initial state

enum class EventKind { Look, Compute, MoveBegin, MoveEnd };

inline const char* kind_code(EventKind k) {
  switch (k) {
    case EventKind::Look: return "L";
    case EventKind::Compute: return "C";
    case EventKind::MoveBegin: return "MB";
    case EventKind::MoveEnd: return "ME";
  }
  return "?";
}

inline EventKind kind_from_code(const std::string& s) {
  if (s == "L") return EventKind::Look;
  if (s == "C") return EventKind::Compute;
  if (s == "MB") return EventKind::MoveBegin;
  if (s == "ME") return EventKind::MoveEnd;
  throw ConfigError("unknown event kind: " + s);
}

// stage ordering inside one relevant time: Looks read the pre-state, then
// Computes commit, then Moves
inline int stage_of(EventKind k) { return static_cast<int>(k); }

struct CycleEvent {
  Time t = 0;
  int robot = 0;
  EventKind kind = EventKind::Look;
  Point pos{};                          // committed position at the event
  std::optional<LightTuple> light;      // Compute: the full committed tuple
  std::optional<Point> dest;            // Compute/MoveBegin/MoveEnd: global destination
  std::optional<std::uint64_t> snap;    // Look: snapshot digest

  friend bool operator==(const CycleEvent& a, const CycleEvent& b) {
    return a.t == b.t && a.robot == b.robot && a.kind == b.kind && a.pos == b.pos &&
           a.light == b.light && a.dest == b.dest && a.snap == b.snap;
  }
};

// Committed state after one relevant time.
struct Configuration {
  struct RobotSlot {
    Point pos{};
    LightTuple light;
    bool in_transit = false;     // MoveBegin fired, MoveEnd pending
    Point transit_dest{};        // valid while in_transit

    friend bool operator==(const RobotSlot& a, const RobotSlot& b) {
      return a.pos == b.pos && a.light == b.light && a.in_transit == b.in_transit &&
             (!a.in_transit || a.transit_dest == b.transit_dest);
    }
  };
  std::vector<RobotSlot> robots;

  std::size_t size() const { return robots.size(); }
  friend bool operator==(const Configuration& a, const Configuration& b) { return a.robots == b.robots; }
};

enum class SchedulerClass { FSYNCH, SSYNCH, ROUNDROBIN, LC_ATOMIC, CM_ATOMIC, M_ATOMIC, ASYNCH };

inline const char* to_string(SchedulerClass c) {
  switch (c) {
    case SchedulerClass::FSYNCH: return "FSYNCH";
    case SchedulerClass::SSYNCH: return "SSYNCH";
    case SchedulerClass::ROUNDROBIN: return "ROUNDROBIN";
    case SchedulerClass::LC_ATOMIC: return "LC_ATOMIC";
    case SchedulerClass::CM_ATOMIC: return "CM_ATOMIC";
    case SchedulerClass::M_ATOMIC: return "M_ATOMIC";
    case SchedulerClass::ASYNCH: return "ASYNCH";
  }
  return "?";
}

inline SchedulerClass scheduler_from_string(const std::string& s) {
  for (auto c : {SchedulerClass::FSYNCH, SchedulerClass::SSYNCH, SchedulerClass::ROUNDROBIN,
                 SchedulerClass::LC_ATOMIC, SchedulerClass::CM_ATOMIC, SchedulerClass::M_ATOMIC,
                 SchedulerClass::ASYNCH})
    if (s == to_string(c)) return c;
  throw ConfigError("unknown scheduler class: " + s);
}

struct Trace {
  int version = 1;
  int n = 0;
  ModelClass model = ModelClass::OBLOT;
  SchedulerClass scheduler = SchedulerClass::SSYNCH;
  bool chirality = true;
  bool rigid = true;
  std::uint64_t seed = 0;
  std::string algo;

  Configuration initial;
  std::vector<CycleEvent> events;
  std::vector<Configuration> configs;  // configs[t] = state after relevant time t; configs[0] = initial

  Time last_time() const { return events.empty() ? 0 : events.back().t; }

  // Per-robot cycle-order bookkeeping for append validation.
  void append_event(const CycleEvent& ev) {
    if (!events.empty()) {
      const CycleEvent& prev = events.back();
      if (ev.t < prev.t ||
          (ev.t == prev.t && (stage_of(ev.kind) < stage_of(prev.kind) ||
                              (stage_of(ev.kind) == stage_of(prev.kind) && ev.robot < prev.robot))))
        throw OutOfOrderEvent("event at t=" + std::to_string(ev.t) + " out of order");
    }
    if (ev.t < 1) throw OutOfOrderEvent("relevant times start at 1");
    EventKind expect = next_kind_.count(ev.robot) ? next_kind_[ev.robot] : EventKind::Look;
    if (ev.kind != expect)
      throw PhaseOrderViolation("robot " + std::to_string(ev.robot) + " expected " +
                                kind_code(expect) + " got " + kind_code(ev.kind));
    next_kind_[ev.robot] = static_cast<EventKind>((stage_of(ev.kind) + 1) % 4);
    events.push_back(ev);
  }

  // Rebuild configs from initial + events.
  void rebuild_configs() {
    configs.clear();
    Configuration c = initial;
    configs.push_back(c);
    for (const auto& ev : events) {
      while (static_cast<Time>(configs.size()) <= ev.t) configs.push_back(c);
      apply(c, ev);
      configs[ev.t] = c;
    }
  }

  static void apply(Configuration& c, const CycleEvent& ev) {
    auto& r = c.robots.at(ev.robot);
    switch (ev.kind) {
      case EventKind::Look: break;
      case EventKind::Compute:
        if (ev.light) r.light = *ev.light;
        break;
      case EventKind::MoveBegin:
        r.in_transit = true;
        r.transit_dest = ev.dest.value_or(r.pos);
        break;
      case EventKind::MoveEnd:
        r.pos = ev.dest.value_or(r.transit_dest);
        r.in_transit = false;
        break;
    }
  }

  friend bool operator==(const Trace& a, const Trace& b) {
    return a.version == b.version && a.n == b.n && a.model == b.model &&
           a.scheduler == b.scheduler && a.chirality == b.chirality && a.rigid == b.rigid &&
           a.seed == b.seed && a.algo == b.algo && a.initial == b.initial && a.events == b.events;
  }

 private:
  std::map<int, EventKind> next_kind_;
};

// Sliding-window fairness surrogate: every window of W consecutive Look events
// must contain a Look of every robot.
struct FairnessGap {
  std::size_t window_start;  // index into the Look-event subsequence
  Time start_time;
  std::vector<int> missing;
};

inline std::vector<FairnessGap> fairness_windows(const Trace& trace, std::size_t window) {
  std::vector<const CycleEvent*> looks;
  for (const auto& ev : trace.events)
    if (ev.kind == EventKind::Look) looks.push_back(&ev);
  std::vector<FairnessGap> gaps;
  if (looks.size() < window) return gaps;
  for (std::size_t i = 0; i + window <= looks.size(); ++i) {
    std::vector<bool> seen(trace.n, false);
    for (std::size_t j = i; j < i + window; ++j) seen[looks[j]->robot] = true;
    FairnessGap gap{i, looks[i]->t, {}};
    for (int r = 0; r < trace.n; ++r)
      if (!seen[r]) gap.missing.push_back(r);
    if (!gap.missing.empty()) gaps.push_back(std::move(gap));
  }
  return gaps;
}

}  // namespace lcm
