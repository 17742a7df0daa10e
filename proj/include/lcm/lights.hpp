#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "lcm/errors.hpp"

namespace lcm {

// Named sub-lights, each drawing from a declared finite color set.
struct LightDecl {
  std::vector<std::pair<std::string, std::vector<std::string>>> subs;

  bool empty() const { return subs.empty(); }

  const std::vector<std::string>* colors_of(const std::string& name) const {
    for (const auto& [n, cs] : subs)
      if (n == name) return &cs;
    return nullptr;
  }

  std::size_t state_space() const {
    std::size_t n = 1;
    for (const auto& [_, cs] : subs) n *= cs.size();
    return n;
  }
};

// Current color per sub-light, kept sorted by name.
struct LightTuple {
  std::vector<std::pair<std::string, std::string>> vals;

  static LightTuple initial(const LightDecl& decl) {
    LightTuple t;
    for (const auto& [name, colors] : decl.subs) t.vals.emplace_back(name, colors.front());
    t.normalize();
    return t;
  }

  void normalize() { std::sort(vals.begin(), vals.end()); }

  const std::string& get(const std::string& name) const {
    for (const auto& [n, v] : vals)
      if (n == name) return v;
    throw Error("unknown sub-light: " + name);
  }

  void set(const std::string& name, const std::string& color) {
    for (auto& [n, v] : vals)
      if (n == name) { v = color; return; }
    vals.emplace_back(name, color);
    normalize();
  }

  bool has(const std::string& name) const {
    for (const auto& [n, _] : vals)
      if (n == name) return true;
    return false;
  }

  // Assignments made by one Compute; unassigned sub-lights persist.
  void merge(const std::vector<std::pair<std::string, std::string>>& updates) {
    for (const auto& [n, v] : updates) set(n, v);
  }

  void check_against(const LightDecl& decl) const {
    for (const auto& [n, v] : vals) {
      const auto* cs = decl.colors_of(n);
      if (!cs) throw ConfigError("undeclared sub-light: " + n);
      if (std::find(cs->begin(), cs->end(), v) == cs->end())
        throw ConfigError("color '" + v + "' not in set of sub-light '" + n + "'");
    }
  }

  friend bool operator==(const LightTuple& a, const LightTuple& b) { return a.vals == b.vals; }
  friend bool operator!=(const LightTuple& a, const LightTuple& b) { return !(a == b); }
  friend bool operator<(const LightTuple& a, const LightTuple& b) { return a.vals < b.vals; }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) s += ",";
      s += vals[i].first + "=" + vals[i].second;
    }
    return s + "}";
  }
};

}  // namespace lcm
