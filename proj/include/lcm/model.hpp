#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "lcm/geometry.hpp"
#include "lcm/lights.hpp"

namespace lcm {

enum class ModelClass { OBLOT, FSTA, FCOM, LUMI };

inline const char* to_string(ModelClass m) {
  switch (m) {
    case ModelClass::OBLOT: return "OBLOT";
    case ModelClass::FSTA: return "FSTA";
    case ModelClass::FCOM: return "FCOM";
    case ModelClass::LUMI: return "LUMI";
  }
  return "?";
}

inline ModelClass model_from_string(const std::string& s) {
  if (s == "OBLOT") return ModelClass::OBLOT;
  if (s == "FSTA") return ModelClass::FSTA;
  if (s == "FCOM") return ModelClass::FCOM;
  if (s == "LUMI") return ModelClass::LUMI;
  throw ConfigError("unknown model: " + s);
}

inline bool sees_own_light(ModelClass m) { return m == ModelClass::FSTA || m == ModelClass::LUMI; }
inline bool sees_other_lights(ModelClass m) { return m == ModelClass::FCOM || m == ModelClass::LUMI; }

// One occupied location as seen by an observer. Robots sharing a location
// collapse into a single entry carrying the set of visible light tuples
// (no multiplicities); the set is empty when the model hides others' lights.
struct SeenLocation {
  Point pos;                       // observer-local coordinates
  std::vector<LightTuple> lights;  // sorted, deduplicated

  friend bool operator==(const SeenLocation& a, const SeenLocation& b) {
    return a.pos == b.pos && a.lights == b.lights;
  }
};

struct Snapshot {
  std::vector<SeenLocation> others;       // occupied locations other than the observer's
  std::optional<SeenLocation> colocated;  // other robots at the observer's own location
  std::optional<LightTuple> own_light;    // present in FSTA and LUMI only

  // all observed locations other than the observer's own point
  std::size_t other_location_count() const { return others.size(); }
};

// Exposed view of one robot, input to snapshot construction.
struct ExposedRobot {
  Point pos;
  LightTuple light;
};

inline Snapshot build_snapshot(const std::vector<ExposedRobot>& exposed, std::size_t observer,
                               const LocalFrame& frame, ModelClass model) {
  Snapshot snap;
  const Point origin = exposed[observer].pos;
  const bool others_visible = sees_other_lights(model);

  // group exact-coincident locations
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < exposed.size(); ++i)
    if (i != observer) idx.push_back(i);

  std::vector<bool> used(exposed.size(), false);
  for (std::size_t i : idx) {
    if (used[i]) continue;
    SeenLocation loc;
    const Point gp = exposed[i].pos;
    for (std::size_t j : idx) {
      if (exposed[j].pos == gp) {
        used[j] = true;
        if (others_visible) loc.lights.push_back(exposed[j].light);
      }
    }
    std::sort(loc.lights.begin(), loc.lights.end());
    loc.lights.erase(std::unique(loc.lights.begin(), loc.lights.end()), loc.lights.end());
    if (gp == origin) {
      loc.pos = Point{0, 0};
      snap.colocated = std::move(loc);
    } else {
      loc.pos = to_local(frame, gp);
      snap.others.push_back(std::move(loc));
    }
  }
  std::sort(snap.others.begin(), snap.others.end(), [](const SeenLocation& a, const SeenLocation& b) {
    return a.pos.x < b.pos.x || (a.pos.x == b.pos.x && a.pos.y < b.pos.y);
  });

  if (sees_own_light(model)) snap.own_light = exposed[observer].light;
  return snap;
}

// FNV-1a over a canonical rendering; Look events carry this digest.
inline std::uint64_t snapshot_hash(const Snapshot& s) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&h](const std::string& str) {
    for (unsigned char c : str) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  auto feed_pt = [&](Point p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", p.x, p.y);
    feed(buf);
  };
  for (const auto& loc : s.others) {
    feed_pt(loc.pos);
    for (const auto& l : loc.lights) feed(l.str());
    feed(";");
  }
  if (s.colocated) {
    feed("@");
    for (const auto& l : s.colocated->lights) feed(l.str());
  }
  if (s.own_light) feed("own:" + s.own_light->str());
  return h;
}

}  // namespace lcm
