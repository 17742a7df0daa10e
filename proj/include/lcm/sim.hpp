#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcm/algorithm.hpp"
#include "lcm/geometry.hpp"
#include "lcm/trace.hpp"

namespace lcm {

// ---------------------------------------------------------------------------
// Wrapping-protocol flags, kept in four externally visible sub-lights:
//   payload color(s) of the embedded algorithm,
//   phase in {1,2,3,m}, state in {W,M,F}, suc = set of states at suc(x).

enum class SimPhase { P1, P2, P3, Pm };
enum class SimState { W, M, F };

using StateSet = unsigned;  // bit 0: W, bit 1: M, bit 2: F
inline constexpr StateSet kSetW = 1, kSetM = 2, kSetF = 4;

inline StateSet state_bit(SimState s) { return 1u << static_cast<unsigned>(s); }

inline std::string phase_color(SimPhase p) {
  switch (p) {
    case SimPhase::P1: return "1";
    case SimPhase::P2: return "2";
    case SimPhase::P3: return "3";
    case SimPhase::Pm: return "m";
  }
  return "?";
}

inline SimPhase phase_from_color(const std::string& c) {
  if (c == "1") return SimPhase::P1;
  if (c == "2") return SimPhase::P2;
  if (c == "3") return SimPhase::P3;
  if (c == "m") return SimPhase::Pm;
  throw MalformedSimTrace("bad phase color: " + c);
}

inline std::string state_color(SimState s) {
  switch (s) {
    case SimState::W: return "W";
    case SimState::M: return "M";
    case SimState::F: return "F";
  }
  return "?";
}

inline SimState state_from_color(const std::string& c) {
  if (c == "W") return SimState::W;
  if (c == "M") return SimState::M;
  if (c == "F") return SimState::F;
  throw MalformedSimTrace("bad state color: " + c);
}

inline std::string set_color(StateSet s) {
  std::string out;
  if (s & kSetW) out += "W";
  if (s & kSetM) out += "M";
  if (s & kSetF) out += "F";
  return out;
}

inline StateSet set_from_color(const std::string& c) {
  StateSet s = 0;
  for (char ch : c) {
    if (ch == 'W') s |= kSetW;
    else if (ch == 'M') s |= kSetM;
    else if (ch == 'F') s |= kSetF;
    else throw MalformedSimTrace(std::string("bad suc-set color: ") + c);
  }
  return s;
}

struct SimLight {
  SimPhase phase = SimPhase::P1;
  SimState state = SimState::W;
  StateSet suc = kSetW;
  LightTuple payload;  // the embedded algorithm's sub-lights
};

inline SimLight parse_sim_light(const LightTuple& t) {
  SimLight l;
  bool saw_phase = false, saw_state = false, saw_suc = false;
  for (const auto& [n, v] : t.vals) {
    if (n == "phase") { l.phase = phase_from_color(v); saw_phase = true; }
    else if (n == "state") { l.state = state_from_color(v); saw_state = true; }
    else if (n == "suc") { l.suc = set_from_color(v); saw_suc = true; }
    else l.payload.vals.emplace_back(n, v);
  }
  if (!saw_phase || !saw_state || !saw_suc) throw MalformedSimTrace("light lacks protocol flags");
  if (l.suc == 0) throw MalformedSimTrace("empty suc set");
  l.payload.normalize();
  return l;
}

// ---------------------------------------------------------------------------
// The view a protocol step works on, assembled either from a robot's local
// snapshot or (frame-independently) from an exposed global configuration.

struct SimView {
  std::vector<SimLight> others;  // flags of all visible robots
  StateSet state_here = 0;       // states of the other robots at the observer's location
  StateSet pred_suc = 0;         // union of suc sets advertised at pred(x)
  StateSet states_at_suc = 0;    // union of state flags at suc(x)
  std::size_t location_count = 0;
};

// own.state <- pred(x).suc.state - x.state.here
inline StateSet own_state(const SimView& v) { return v.pred_suc & ~v.state_here; }

struct SimPredicates {
  bool all_phases_1, all_phases_2, all_phases_3, all_phases_m;
  bool mixed_12, mixed_23, mixed_13, mixed_1m;
  bool exists_other_state_M;  // some visible robot has state M
  bool exist_M;               // ... or advertises M in its suc set
  bool exists_other_F;
  bool all_F;  // every visible state is F and own state resolves to {F}
  bool all_W;
};

inline SimPredicates sim_predicates(const SimView& v) {
  auto all_phase = [&](SimPhase p) {
    for (const auto& o : v.others)
      if (o.phase != p) return false;
    return true;
  };
  auto mixed = [&](SimPhase p, SimPhase q) {
    bool in = true;
    for (const auto& o : v.others)
      if (o.phase != p && o.phase != q) in = false;
    return in && !all_phase(p) && !all_phase(q);
  };
  auto all_state = [&](SimState s) {
    for (const auto& o : v.others)
      if (o.state != s) return false;
    return own_state(v) == state_bit(s);
  };
  SimPredicates pr{};
  pr.all_phases_1 = all_phase(SimPhase::P1);
  pr.all_phases_2 = all_phase(SimPhase::P2);
  pr.all_phases_3 = all_phase(SimPhase::P3);
  pr.all_phases_m = all_phase(SimPhase::Pm);
  pr.mixed_12 = mixed(SimPhase::P1, SimPhase::P2);
  pr.mixed_23 = mixed(SimPhase::P2, SimPhase::P3);
  pr.mixed_13 = mixed(SimPhase::P1, SimPhase::P3);
  pr.mixed_1m = mixed(SimPhase::P1, SimPhase::Pm);
  pr.exists_other_state_M = false;
  pr.exist_M = false;
  pr.exists_other_F = false;
  for (const auto& o : v.others) {
    if (o.state == SimState::M) pr.exists_other_state_M = true;
    if (o.state == SimState::M || (o.suc & kSetM)) pr.exist_M = true;
    if (o.state == SimState::F) pr.exists_other_F = true;
  }
  pr.all_F = all_state(SimState::F);
  pr.all_W = all_state(SimState::W);
  return pr;
}

struct SimOptions {
  // Mutation hook: ignore visible M flags (both the Phase-1 mover guard and
  // the Phase-3 Is-exist-M test). Exists to prove the verifiers discriminate.
  bool drop_m_guard = false;
};

struct SimDecision {
  std::optional<SimPhase> phase;
  std::optional<SimState> state;
  std::optional<StateSet> suc;
  bool run_embedded = false;
};

// One Compute of the wrapping protocol; assignments not made here persist.
inline SimDecision sim_decide(const SimView& v, const SimOptions& opts = {}) {
  const SimPredicates pr = sim_predicates(v);
  const StateSet own = own_state(v);
  SimDecision d;
  if (pr.all_phases_1) {
    d.suc = v.states_at_suc;
    d.phase = SimPhase::P1;
    if (pr.all_F) {
      d.phase = SimPhase::Pm;
    } else if (pr.exists_other_state_M && !opts.drop_m_guard) {
      d.phase = SimPhase::P2;
    } else if (own == kSetW) {
      d.run_embedded = true;
      d.state = SimState::M;
    }
  } else if (pr.all_phases_2) {
    d.phase = SimPhase::P3;
    d.suc = v.states_at_suc;
  } else if (pr.all_phases_3) {
    d.suc = v.states_at_suc;
    d.phase = SimPhase::P3;
    if (pr.exist_M && !opts.drop_m_guard) {
      if (own == kSetM) d.state = SimState::F;
    } else {
      d.phase = SimPhase::P1;
    }
  } else if (pr.mixed_12) {
    d.phase = SimPhase::P2;
  } else if (pr.mixed_23) {
    d.phase = SimPhase::P3;
    d.suc = v.states_at_suc;
  } else if (pr.mixed_13) {
    d.phase = SimPhase::P1;
    d.suc = v.states_at_suc;
  } else if (pr.all_phases_m) {
    d.state = SimState::W;
    d.suc = kSetW;
    d.phase = pr.exists_other_F ? SimPhase::Pm : SimPhase::P1;
  } else if (pr.mixed_1m && pr.all_F) {
    d.phase = SimPhase::Pm;
  } else if (pr.mixed_1m && pr.all_W) {
    d.phase = SimPhase::P1;
  }
  return d;
}

// ---------------------------------------------------------------------------
// View assembly.

namespace detail {

struct SimSite {
  Point pos;
  std::vector<SimLight> lights;
};

// Common core: sites are the occupied locations (the observer's own location
// included, its own light excluded from every set).
inline SimView assemble_sim_view(const std::vector<SimSite>& sites, Point own_location) {
  SimView v;
  std::vector<Point> locations;
  for (const auto& s : sites) locations.push_back(s.pos);
  bool own_present = false;
  for (auto p : locations)
    if (p == own_location) own_present = true;
  if (!own_present) locations.push_back(own_location);
  Ring ring = circular_order(locations, +1);  // chirality: consistent orientation
  v.location_count = ring.size();
  const std::size_t self = ring.locate(own_location);
  const Point pred_loc = ring.locations[ring.pred(self)];
  const Point suc_loc = ring.locations[ring.suc(self)];
  for (const auto& s : sites) {
    for (const auto& l : s.lights) {
      v.others.push_back(l);
      if (s.pos == own_location) v.state_here |= state_bit(l.state);
      if (s.pos == pred_loc) v.pred_suc |= l.suc;
      if (s.pos == suc_loc) v.states_at_suc |= state_bit(l.state);
    }
  }
  return v;
}

}  // namespace detail

// From a robot's own (FCOM-filtered) snapshot; positions are observer-local.
inline SimView sim_view_from_snapshot(const Snapshot& snap) {
  std::vector<detail::SimSite> sites;
  for (const auto& loc : snap.others) {
    detail::SimSite s{loc.pos, {}};
    for (const auto& l : loc.lights) s.lights.push_back(parse_sim_light(l));
    sites.push_back(std::move(s));
  }
  if (snap.colocated) {
    detail::SimSite s{Point{0, 0}, {}};
    for (const auto& l : snap.colocated->lights) s.lights.push_back(parse_sim_light(l));
    sites.push_back(std::move(s));
  }
  return detail::assemble_sim_view(sites, Point{0, 0});
}

// From an exposed global configuration, for trace replay.
inline SimView sim_view_from_config(const Configuration& cfg, int observer) {
  std::map<std::pair<double, double>, detail::SimSite> by_pos;
  for (std::size_t i = 0; i < cfg.robots.size(); ++i) {
    if (static_cast<int>(i) == observer) continue;
    const Point p = cfg.robots[i].pos;
    auto& site = by_pos[{p.x, p.y}];
    site.pos = p;
    site.lights.push_back(parse_sim_light(cfg.robots[i].light));
  }
  std::vector<detail::SimSite> sites;
  for (auto& [_, s] : by_pos) sites.push_back(std::move(s));
  return detail::assemble_sim_view(sites, cfg.robots[observer].pos);
}

// ---------------------------------------------------------------------------
// The wrapping algorithm binding.

inline LightDecl sim_light_decl(const LightDecl& payload) {
  LightDecl d = payload;
  d.subs.emplace_back("phase", std::vector<std::string>{"1", "2", "3", "m"});
  d.subs.emplace_back("state", std::vector<std::string>{"W", "M", "F"});
  d.subs.emplace_back("suc", std::vector<std::string>{"W", "M", "F", "WM", "WF", "MF", "WMF"});
  return d;
}

// Strips protocol flags so the embedded algorithm sees a plain FCOM snapshot.
inline Snapshot project_payload_snapshot(const Snapshot& snap, const LightDecl& payload_decl) {
  auto project = [&](const SeenLocation& loc) {
    SeenLocation out;
    out.pos = loc.pos;
    for (const auto& l : loc.lights) {
      LightTuple p;
      for (const auto& [n, v] : l.vals)
        if (payload_decl.colors_of(n)) p.vals.emplace_back(n, v);
      p.normalize();
      out.lights.push_back(std::move(p));
    }
    std::sort(out.lights.begin(), out.lights.end());
    out.lights.erase(std::unique(out.lights.begin(), out.lights.end()), out.lights.end());
    return out;
  };
  Snapshot out;
  for (const auto& loc : snap.others) out.others.push_back(project(loc));
  if (snap.colocated) out.colocated = project(*snap.colocated);
  return out;
}

inline void append_sim_updates(std::vector<std::pair<std::string, std::string>>& updates,
                               const SimDecision& d) {
  if (d.phase) updates.emplace_back("phase", phase_color(*d.phase));
  if (d.state) updates.emplace_back("state", state_color(*d.state));
  if (d.suc) updates.emplace_back("suc", set_color(*d.suc));
}

// SIM(payload): runs any finite-communication algorithm under full asynchrony
// while the embedded executions obey the Compute-Move-atomic condition.
inline AlgorithmBinding make_sim_binding(const AlgorithmBinding& payload, SimOptions opts = {}) {
  if (payload.model != ModelClass::FCOM)
    throw ConfigError("sim wrapper embeds finite-communication algorithms only");
  AlgorithmBinding b;
  b.name = "sim:" + payload.name;
  b.model = ModelClass::FCOM;
  b.lights = sim_light_decl(payload.lights);
  b.arity = payload.arity;
  b.compute = [payload, opts](const Snapshot& snap) -> ComputeResult {
    SimView view = sim_view_from_snapshot(snap);
    if (view.location_count < 2) throw DegenerateRing("m >= 2 required");
    SimDecision dec = sim_decide(view, opts);
    ComputeResult res;
    if (dec.run_embedded) {
      ComputeResult inner = payload.compute(project_payload_snapshot(snap, payload.lights));
      res.dest = inner.dest;
      res.light_updates = inner.light_updates;
    }
    append_sim_updates(res.light_updates, dec);
    return res;
  };
  return b;
}

}  // namespace lcm
