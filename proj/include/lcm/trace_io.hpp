#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lcm/trace.hpp"

namespace lcm {

using json = nlohmann::json;

inline json light_to_json(const LightTuple& l) {
  json j = json::object();
  for (const auto& [n, v] : l.vals) j[n] = v;
  return j;
}

inline LightTuple light_from_json(const json& j) {
  LightTuple l;
  for (auto it = j.begin(); it != j.end(); ++it) l.vals.emplace_back(it.key(), it.value().get<std::string>());
  l.normalize();
  return l;
}

// Line-delimited trace: a JSON header, then one JSON object per event.
inline void serialize(const Trace& t, std::ostream& os) {
  json header = {
      {"version", t.version},
      {"n", t.n},
      {"model", to_string(t.model)},
      {"scheduler", to_string(t.scheduler)},
      {"chirality", t.chirality},
      {"rigid", t.rigid},
      {"seed", t.seed},
      {"algo", t.algo},
  };
  json init = json::array();
  for (const auto& r : t.initial.robots)
    init.push_back({{"pos", {r.pos.x, r.pos.y}}, {"light", light_to_json(r.light)}});
  header["init"] = init;
  os << header.dump() << "\n";
  for (const auto& ev : t.events) {
    json j = {{"t", ev.t}, {"r", ev.robot}, {"k", kind_code(ev.kind)}, {"pos", {ev.pos.x, ev.pos.y}}};
    if (ev.light) j["light"] = light_to_json(*ev.light);
    if (ev.dest) j["dest"] = {ev.dest->x, ev.dest->y};
    if (ev.snap) {
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(*ev.snap));
      j["snap"] = buf;
    }
    os << j.dump() << "\n";
  }
}

inline std::string serialize(const Trace& t) {
  std::ostringstream os;
  serialize(t, os);
  return os.str();
}

inline Trace deserialize(std::istream& is) {
  Trace t;
  std::string line;
  int lineno = 0;
  if (!std::getline(is, line)) throw MalformedRecord(1, "missing header");
  ++lineno;
  json header;
  try {
    header = json::parse(line);
    t.version = header.at("version").get<int>();
    t.n = header.at("n").get<int>();
    t.model = model_from_string(header.at("model").get<std::string>());
    t.scheduler = scheduler_from_string(header.at("scheduler").get<std::string>());
    t.chirality = header.at("chirality").get<bool>();
    t.rigid = header.at("rigid").get<bool>();
    t.seed = header.at("seed").get<std::uint64_t>();
    t.algo = header.value("algo", "");
    for (const auto& r : header.at("init")) {
      Configuration::RobotSlot slot;
      slot.pos = {r.at("pos")[0].get<double>(), r.at("pos")[1].get<double>()};
      slot.light = light_from_json(r.at("light"));
      t.initial.robots.push_back(std::move(slot));
    }
  } catch (const json::exception& e) {
    throw MalformedRecord(lineno, e.what());
  } catch (const ConfigError& e) {
    throw MalformedRecord(lineno, e.what());
  }
  if (static_cast<int>(t.initial.robots.size()) != t.n)
    throw MalformedRecord(lineno, "init size disagrees with n");

  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    CycleEvent ev;
    try {
      json j = json::parse(line);
      ev.t = j.at("t").get<Time>();
      ev.robot = j.at("r").get<int>();
      ev.kind = kind_from_code(j.at("k").get<std::string>());
      ev.pos = {j.at("pos")[0].get<double>(), j.at("pos")[1].get<double>()};
      if (j.contains("light")) ev.light = light_from_json(j["light"]);
      if (j.contains("dest")) ev.dest = Point{j["dest"][0].get<double>(), j["dest"][1].get<double>()};
      if (j.contains("snap")) ev.snap = std::stoull(j["snap"].get<std::string>(), nullptr, 16);
      if (ev.robot < 0 || ev.robot >= t.n) throw ConfigError("robot id out of range");
    } catch (const json::exception& e) {
      throw MalformedRecord(lineno, e.what());
    } catch (const ConfigError& e) {
      throw MalformedRecord(lineno, e.what());
    }
    try {
      t.append_event(ev);
    } catch (const Error& e) {
      throw MalformedRecord(lineno, e.what());
    }
  }
  t.rebuild_configs();
  return t;
}

inline Trace deserialize(const std::string& s) {
  std::istringstream is(s);
  return deserialize(is);
}

}  // namespace lcm
