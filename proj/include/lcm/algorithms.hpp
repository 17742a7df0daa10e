#pragma once

#include <array>
#include <string>

#include "lcm/algorithm.hpp"
#include "lcm/problems.hpp"

namespace lcm {

// Move to the midpoint of the segment to the single other visible robot.
inline ComputeResult half_move_compute(const Snapshot& s) {
  if (s.colocated && s.others.empty()) return {Point{0, 0}, {}};  // co-located: null move
  if (s.other_location_count() != 1)
    throw ArityError("half-move expects exactly one other robot");
  return {0.5 * s.others[0].pos, {}};
}

inline AlgorithmBinding half_move() {
  return {"half-move", ModelClass::OBLOT, {}, 2, half_move_compute};
}

// Same geometry lifted into the light-bearing models (the light is inert).
inline AlgorithmBinding half_move_fcom() {
  return {"half-move-fcom", ModelClass::FCOM, LightDecl{{{"main", {"c0"}}}}, 2, half_move_compute};
}
inline AlgorithmBinding half_move_fsta() {
  return {"half-move-fsta", ModelClass::FSTA, LightDecl{{{"main", {"c0"}}}}, 2, half_move_compute};
}

// Trapezoid formation rules. The robot inserts itself at the local origin,
// relabels the observed quadrilateral, and moves only when it is the
// designated mover; the destination levels it with the other off vertex on
// its own perpendicular.
inline ComputeResult tf_rules_compute(const Snapshot& s) {
  if (s.other_location_count() != 3) throw ArityError("tf-rules expects three other robots");
  std::array<Point, 4> pts{Point{0, 0}, s.others[0].pos, s.others[1].pos, s.others[2].pos};
  const QuadrilateralAnalysis qa = analyze_quadrilateral(pts);  // InvalidShape propagates
  if (qa.trapezoid) return {Point{0, 0}, {}};

  const bool mover_a = qa.mover_is_A();
  const int mover_idx = qa.label[mover_a ? 0 : 1];
  if (mover_idx != 0) return {Point{0, 0}, {}};  // self is not the mover

  const Point self{0, 0};
  const Point foot = mover_a ? qa.footA : qa.footB;
  const double own_h = mover_a ? qa.heightA : qa.heightB;
  const double target_h = mover_a ? qa.heightB : qa.heightA;
  const Point dest = foot + (target_h / own_h) * (self - foot);
  return {dest, {}};
}

inline AlgorithmBinding tf_rules() {
  return {"tf-rules", ModelClass::OBLOT, {}, 4, tf_rules_compute};
}
inline AlgorithmBinding tf_rules_fsta() {
  return {"tf-rules-fsta", ModelClass::FSTA, LightDecl{{{"main", {"c0"}}}}, 4, tf_rules_compute};
}

// Quarter-move with a one-shot own light: on color A move d/4 toward the
// other robot and switch to B; on color B stay.
inline AlgorithmBinding gcncl_quarter() {
  AlgorithmBinding b;
  b.name = "gcncl-quarter";
  b.model = ModelClass::FSTA;
  b.lights = LightDecl{{{"main", {"A", "B"}}}};
  b.arity = 2;
  b.compute = [](const Snapshot& s) -> ComputeResult {
    if (s.other_location_count() != 1) throw ArityError("gcncl-quarter expects one other robot");
    if (!s.own_light) throw Error("gcncl-quarter needs its own light");
    if (s.own_light->get("main") == "A")
      return {0.25 * s.others[0].pos, {{"main", "B"}}};
    return {Point{0, 0}, {}};
  };
  return b;
}

// Broken finite-communication variant of the quarter move: motion is driven
// by the opponent's color, which the mover itself can never reset.
inline AlgorithmBinding gcncl_naive_fcom() {
  AlgorithmBinding b;
  b.name = "gcncl-naive-fcom";
  b.model = ModelClass::FCOM;
  b.lights = LightDecl{{{"main", {"A", "B"}}}};
  b.arity = 2;
  b.compute = [](const Snapshot& s) -> ComputeResult {
    if (s.other_location_count() != 1) throw ArityError("gcncl-naive-fcom expects one other robot");
    const auto& lights = s.others[0].lights;
    const bool opponent_a =
        !lights.empty() && lights.front().get("main") == "A";
    if (opponent_a) return {0.25 * s.others[0].pos, {{"main", "B"}}};
    return {Point{0, 0}, {{"main", "B"}}};
  };
  return b;
}

// Stationary finite-communication test payload: cycles the emitted color from
// the minimum color seen among the others. Keeps every location fixed, so a
// wrapping protocol's ring never degenerates.
inline AlgorithmBinding color_cycler() {
  AlgorithmBinding b;
  b.name = "color-cycler";
  b.model = ModelClass::FCOM;
  b.lights = LightDecl{{{"main", {"c0", "c1", "c2"}}}};
  b.arity = 0;
  b.compute = [](const Snapshot& s) -> ComputeResult {
    int min_color = 3;
    auto scan = [&](const SeenLocation& loc) {
      for (const auto& l : loc.lights)
        if (l.has("main")) min_color = std::min(min_color, l.get("main")[1] - '0');
    };
    for (const auto& loc : s.others) scan(loc);
    if (s.colocated) scan(*s.colocated);
    if (min_color == 3) min_color = 0;
    const std::string next = "c" + std::to_string((min_color + 1) % 3);
    return {Point{0, 0}, {{"main", next}}};
  };
  return b;
}

}  // namespace lcm
