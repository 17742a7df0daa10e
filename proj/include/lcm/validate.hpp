#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lcm/trace.hpp"

namespace lcm {

struct ScheduleViolation {
  Time t = 0;
  int robot = -1;
  std::string what;
};

namespace detail {

struct CycleSpan {
  int robot = -1;
  std::optional<Time> look, comp, mbegin, mend;
  bool complete() const { return look && comp && mbegin && mend; }
};

inline std::vector<CycleSpan> extract_cycles(const Trace& tr) {
  std::vector<CycleSpan> cycles;
  std::vector<int> open(tr.n, -1);  // index into cycles
  for (const auto& ev : tr.events) {
    if (ev.kind == EventKind::Look) {
      cycles.push_back({});
      cycles.back().robot = ev.robot;
      cycles.back().look = ev.t;
      open[ev.robot] = static_cast<int>(cycles.size()) - 1;
    } else if (open[ev.robot] >= 0) {
      auto& c = cycles[open[ev.robot]];
      if (ev.kind == EventKind::Compute) c.comp = ev.t;
      if (ev.kind == EventKind::MoveBegin) c.mbegin = ev.t;
      if (ev.kind == EventKind::MoveEnd) c.mend = ev.t;
    }
  }
  return cycles;
}

}  // namespace detail

// Checks whether the trace's event pattern is admissible under the class.
// Empty result means admissible.
inline std::vector<ScheduleViolation> validate_schedule(const Trace& tr, SchedulerClass cls) {
  std::vector<ScheduleViolation> out;
  auto flag = [&out](Time t, int robot, std::string what) {
    out.push_back({t, robot, std::move(what)});
  };

  const auto cycles = detail::extract_cycles(tr);

  struct LookRef { Time t; int robot; };
  std::vector<LookRef> looks;
  for (const auto& ev : tr.events)
    if (ev.kind == EventKind::Look) looks.push_back({ev.t, ev.robot});

  auto other_look_inside = [&](int robot, Time lo, Time hi, const char* what) {
    // strictly inside the open interval (lo, hi]
    for (const auto& l : looks)
      if (l.robot != robot && l.t > lo && l.t <= hi) flag(l.t, l.robot, what);
  };

  switch (cls) {
    case SchedulerClass::ASYNCH:
      break;

    case SchedulerClass::M_ATOMIC:
      for (const auto& c : cycles) {
        if (c.mbegin && c.mend && *c.mbegin != *c.mend)
          flag(*c.mbegin, c.robot, "Move not instantaneous");
        if (c.mbegin && !c.mend)
          flag(*c.mbegin, c.robot, "dangling MoveBegin");
        if (c.mbegin && c.mend && *c.mend > *c.mbegin)
          other_look_inside(c.robot, *c.mbegin, *c.mend, "Look during another robot's Move");
      }
      break;

    case SchedulerClass::CM_ATOMIC:
      for (const auto& c : cycles) {
        if (c.comp && c.mend && (*c.comp != *c.mend || (c.mbegin && *c.mbegin != *c.comp)))
          flag(*c.comp, c.robot, "Compute and Move not fused");
        if (c.comp && !c.mend)
          flag(*c.comp, c.robot, "dangling Compute");
        if (c.comp && c.mend && *c.mend > *c.comp)
          other_look_inside(c.robot, *c.comp, *c.mend, "Look during another robot's Compute-Move");
      }
      break;

    case SchedulerClass::LC_ATOMIC:
      for (const auto& c : cycles) {
        if (c.look && c.comp && *c.look != *c.comp)
          flag(*c.look, c.robot, "Look and Compute not fused");
        if (c.look && c.comp && *c.comp > *c.look)
          other_look_inside(c.robot, *c.look, *c.comp, "Look during another robot's Look-Compute");
      }
      break;

    case SchedulerClass::FSYNCH:
    case SchedulerClass::SSYNCH:
    case SchedulerClass::ROUNDROBIN: {
      for (const auto& c : cycles) {
        const bool fused = c.look && (!c.comp || *c.comp == *c.look) &&
                           (!c.mbegin || *c.mbegin == *c.look) && (!c.mend || *c.mend == *c.look);
        const bool whole = c.complete();
        if (!fused || !whole)
          flag(c.look ? *c.look : 0, c.robot, "cycle not a single atomic round");
      }
      // activation sets per round
      std::vector<std::pair<Time, std::vector<int>>> rounds;
      for (const auto& c : cycles) {
        if (!c.look) continue;
        if (rounds.empty() || rounds.back().first != *c.look) rounds.push_back({*c.look, {}});
        rounds.back().second.push_back(c.robot);
      }
      if (cls == SchedulerClass::FSYNCH) {
        for (const auto& [t, rs] : rounds)
          if (static_cast<int>(rs.size()) != tr.n) flag(t, -1, "round does not activate every robot");
      }
      if (cls == SchedulerClass::ROUNDROBIN) {
        int expect = -1;
        for (const auto& [t, rs] : rounds) {
          if (rs.size() != 1) {
            flag(t, -1, "round activates more than one robot");
            continue;
          }
          if (expect >= 0 && rs[0] != expect) flag(t, rs[0], "round-robin order violated");
          expect = (rs[0] + 1) % tr.n;
        }
      }
      break;
    }
  }
  return out;
}

// Enclosing classes per the schedule-set ordering.
inline std::vector<SchedulerClass> enclosing_classes(SchedulerClass cls) {
  using S = SchedulerClass;
  switch (cls) {
    case S::FSYNCH: return {S::SSYNCH, S::LC_ATOMIC, S::CM_ATOMIC, S::M_ATOMIC, S::ASYNCH};
    case S::ROUNDROBIN: return {S::SSYNCH, S::LC_ATOMIC, S::CM_ATOMIC, S::M_ATOMIC, S::ASYNCH};
    case S::SSYNCH: return {S::LC_ATOMIC, S::CM_ATOMIC, S::M_ATOMIC, S::ASYNCH};
    case S::LC_ATOMIC: return {S::ASYNCH};
    case S::CM_ATOMIC: return {S::M_ATOMIC, S::ASYNCH};
    case S::M_ATOMIC: return {S::ASYNCH};
    case S::ASYNCH: return {};
  }
  return {};
}

}  // namespace lcm
