#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lcm/model.hpp"

namespace lcm {

struct ComputeResult {
  Point dest{0, 0};  // observer-local destination
  std::vector<std::pair<std::string, std::string>> light_updates;
};

// A robot algorithm: pure function from a model-filtered snapshot to a local
// destination plus sub-light assignments (unassigned sub-lights persist).
struct AlgorithmBinding {
  std::string name;
  ModelClass model = ModelClass::OBLOT;
  LightDecl lights;
  int arity = 0;  // required robot count; 0 = any
  std::function<ComputeResult(const Snapshot&)> compute;
};

}  // namespace lcm
