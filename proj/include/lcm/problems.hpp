#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lcm/geometry.hpp"
#include "lcm/trace.hpp"
#include "lcm/validate.hpp"

namespace lcm {

enum class VerdictStatus { Satisfied, Violated, Undetermined };

inline const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Satisfied: return "Satisfied";
    case VerdictStatus::Violated: return "Violated";
    case VerdictStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

// Three-valued outcome of a temporal geometric predicate over a finite trace.
// Violations are final: every safety clause here is prefix-closed.
struct MonitorVerdict {
  VerdictStatus status = VerdictStatus::Undetermined;
  Time time = 0;         // set when Violated
  std::string clause;    // set when Violated
  std::string witness;

  static MonitorVerdict violated(Time t, std::string clause, std::string witness) {
    return {VerdictStatus::Violated, t, std::move(clause), std::move(witness)};
  }
  static MonitorVerdict satisfied(std::string witness) {
    return {VerdictStatus::Satisfied, 0, "", std::move(witness)};
  }
  static MonitorVerdict undetermined(std::string witness) {
    return {VerdictStatus::Undetermined, 0, "", std::move(witness)};
  }
};

// A robot is halt-stable when its last two completed cycles were null moves
// and nothing non-null is pending.
inline bool halt_stable(const Trace& tr, int robot) {
  int trailing_null = 0;
  bool pending_nonnull = false;
  std::optional<Point> cycle_origin;
  std::optional<Point> cycle_dest;
  for (const auto& ev : tr.events) {
    if (ev.robot != robot) continue;
    switch (ev.kind) {
      case EventKind::Look:
        cycle_origin = ev.pos;
        cycle_dest.reset();
        pending_nonnull = false;
        break;
      case EventKind::Compute:
        cycle_dest = ev.dest;
        pending_nonnull = cycle_dest && cycle_origin && !(*cycle_dest == *cycle_origin);
        break;
      case EventKind::MoveBegin:
        break;
      case EventKind::MoveEnd: {
        const bool null_move = cycle_origin && cycle_dest && *cycle_dest == *cycle_origin;
        trailing_null = null_move ? trailing_null + 1 : 0;
        pending_nonnull = false;
        break;
      }
    }
  }
  return trailing_null >= 2 && !pending_nonnull;
}

// ---------------------------------------------------------------------------
// MLCv / CLCv: two robots converge on their initial segment, never crossing
// and never increasing their distance.

inline MonitorVerdict monitor_mlcv(const Trace& tr, double eps, bool require_terminal = false) {
  if (tr.n != 2) throw WrongArity("MLCv monitor needs n=2");
  const Point r0 = tr.initial.robots[0].pos, q0 = tr.initial.robots[1].pos;
  const double d0 = dist(r0, q0);
  const double tol = 1e-12 * d0;

  double prev = d0;
  for (std::size_t t = 0; t < tr.configs.size(); ++t) {
    const Point p0 = tr.configs[t].robots[0].pos, p1 = tr.configs[t].robots[1].pos;
    std::ostringstream w;
    if (dist_to_segment(p0, r0, q0) > tol || dist_to_segment(p1, r0, q0) > tol) {
      w << "robot left segment r(0)q(0) at t=" << t;
      return MonitorVerdict::violated(static_cast<Time>(t), "off-segment", w.str());
    }
    if (dist(r0, p0) > dist(r0, p1) + tol || dist(q0, p1) > dist(q0, p0) + tol) {
      w << "crossing: dis(r(0),r)=" << dist(r0, p0) << " dis(r(0),q)=" << dist(r0, p1)
        << " dis(q(0),q)=" << dist(q0, p1) << " dis(q(0),r)=" << dist(q0, p0) << " at t=" << t;
      return MonitorVerdict::violated(static_cast<Time>(t), "crossing", w.str());
    }
    const double d = dist(p0, p1);
    if (d > prev + tol) {
      w << "distance increased " << prev << " -> " << d << " at t=" << t;
      return MonitorVerdict::violated(static_cast<Time>(t), "monotone", w.str());
    }
    prev = std::min(prev, d);
  }

  const auto& last = tr.configs.back();
  const double final_d = dist(last.robots[0].pos, last.robots[1].pos);
  if (final_d <= eps && (!require_terminal || (halt_stable(tr, 0) && halt_stable(tr, 1)))) {
    std::ostringstream w;
    w << "final distance " << final_d << " <= eps " << eps;
    return MonitorVerdict::satisfied(w.str());
  }
  std::ostringstream w;
  w << "no clause violated; final distance " << final_d << " > eps " << eps;
  return MonitorVerdict::undetermined(w.str());
}

// ---------------------------------------------------------------------------
// GCNCL: get closer monotonically on the line, stop in [d0/2, d0).

inline MonitorVerdict monitor_gcncl(const Trace& tr) {
  if (tr.n != 2) throw WrongArity("GCNCL monitor needs n=2");
  const Point a0 = tr.initial.robots[0].pos, b0 = tr.initial.robots[1].pos;
  const double d0 = dist(a0, b0);
  const double tol = 1e-12 * d0;

  double prev = d0;
  for (std::size_t t = 0; t < tr.configs.size(); ++t) {
    const Point pa = tr.configs[t].robots[0].pos, pb = tr.configs[t].robots[1].pos;
    std::ostringstream w;
    if (dist_to_segment(pa, a0, b0) > tol || dist_to_segment(pb, a0, b0) > tol) {
      w << "robot left segment a(0)b(0) at t=" << t;
      return MonitorVerdict::violated(static_cast<Time>(t), "off-segment", w.str());
    }
    const double d = dist(pa, pb);
    if (d > prev + tol) {
      w << "distance increased " << prev << " -> " << d << " at t=" << t;
      return MonitorVerdict::violated(static_cast<Time>(t), "monotone", w.str());
    }
    if (d < d0 / 2 - tol) {
      w << "distance " << d << " fell below d0/2=" << d0 / 2 << " at t=" << t;
      return MonitorVerdict::violated(static_cast<Time>(t), "below-half", w.str());
    }
    prev = std::min(prev, d);
  }

  const auto& last = tr.configs.back();
  const double final_d = dist(last.robots[0].pos, last.robots[1].pos);
  if (final_d < d0 && halt_stable(tr, 0) && halt_stable(tr, 1)) {
    std::ostringstream w;
    w << "halted with distance " << final_d << " in [" << d0 / 2 << "," << d0 << ")";
    return MonitorVerdict::satisfied(w.str());
  }
  return MonitorVerdict::undetermined("robots not halted in [d0/2, d0) by the horizon");
}

// ---------------------------------------------------------------------------
// Rendezvous: both robots halt at one point; no safety clauses.

inline MonitorVerdict monitor_rdv(const Trace& tr, double eps) {
  if (tr.n != 2) throw WrongArity("RDV monitor needs n=2");
  const auto& last = tr.configs.back();
  const double final_d = dist(last.robots[0].pos, last.robots[1].pos);
  if (final_d <= eps && halt_stable(tr, 0) && halt_stable(tr, 1))
    return MonitorVerdict::satisfied("robots halted at one point");
  return MonitorVerdict::undetermined("robots not yet gathered and halted");
}

// ---------------------------------------------------------------------------
// Trapezoid formation.

// Labels a convex quadrilateral: CD is the unique longest side, A is the off
// vertex farther from line CD, B the nearer one, with A adjacent to D and B
// adjacent to C on the hull. alpha is the acute angle between line AB and
// line CD; the trapezoid flag reports AB parallel to CD.
struct QuadrilateralAnalysis {
  std::array<int, 4> label{};  // input indices of A, B, C, D
  double alpha = 0.0;
  Point footA{}, footB{};      // feet of the perpendiculars on line CD
  bool trapezoid = false;
  double longest = 0.0;
  double heightA = 0.0, heightB = 0.0;

  Point pointA, pointB, pointC, pointD;

  // alpha >= pi/4, decided exactly on the squared quantities
  bool mover_is_A() const {
    const double dh = heightA - heightB;
    const Point ab = pointB - pointA;
    return 2.0 * dh * dh >= dot(ab, ab);
  }
};

inline QuadrilateralAnalysis analyze_quadrilateral(const std::array<Point, 4>& pts,
                                                   double tol = kGeomTol) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pts[i] == pts[j]) throw InvalidShape("degenerate: coincident points");

  // hull order around the centroid
  Point c{0, 0};
  for (auto p : pts) c = c + p;
  c = 0.25 * c;
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return std::atan2(pts[i].y - c.y, pts[i].x - c.x) < std::atan2(pts[j].y - c.y, pts[j].x - c.x);
  });
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) scale = std::max(scale, dist(pts[order[i]], pts[order[(i + 1) % 4]]));
  for (int i = 0; i < 4; ++i) {
    const Point u = pts[order[(i + 1) % 4]] - pts[order[i]];
    const Point v = pts[order[(i + 2) % 4]] - pts[order[(i + 1) % 4]];
    if (cross(u, v) <= tol * scale * scale) throw InvalidShape("not-convex");
  }

  // unique longest side
  std::array<double, 4> side{};
  for (int i = 0; i < 4; ++i) side[i] = dist(pts[order[i]], pts[order[(i + 1) % 4]]);
  int k = 0;
  for (int i = 1; i < 4; ++i)
    if (side[i] > side[k]) k = i;
  for (int i = 0; i < 4; ++i)
    if (i != k && side[k] - side[i] <= tol * side[k]) throw InvalidShape("no-unique-longest-side");

  QuadrilateralAnalysis qa;
  qa.longest = side[k];
  // hull cycle: base endpoints order[k], order[k+1]; off vertices order[k+2], order[k+3]
  const int e0 = order[k], e1 = order[(k + 1) % 4];
  const int o0 = order[(k + 2) % 4], o1 = order[(k + 3) % 4];  // o0 adjacent to e1, o1 adjacent to e0
  const double h0 = dist_to_line(pts[o0], pts[e0], pts[e1]);
  const double h1 = dist_to_line(pts[o1], pts[e0], pts[e1]);

  int ia, ib;
  if (h0 >= h1) { ia = o0; ib = o1; } else { ia = o1; ib = o0; }
  // D is the base endpoint hull-adjacent to A, C the one adjacent to B
  const int id = (ia == o0) ? e1 : e0;
  const int ic = (ia == o0) ? e0 : e1;
  qa.label = {ia, ib, ic, id};
  qa.pointA = pts[ia];
  qa.pointB = pts[ib];
  qa.pointC = pts[ic];
  qa.pointD = pts[id];
  qa.heightA = dist_to_line(qa.pointA, qa.pointC, qa.pointD);
  qa.heightB = dist_to_line(qa.pointB, qa.pointC, qa.pointD);
  qa.footA = project_on_line(qa.pointA, qa.pointC, qa.pointD);
  qa.footB = project_on_line(qa.pointB, qa.pointC, qa.pointD);

  const Point ab = qa.pointB - qa.pointA;
  const Point cd = qa.pointD - qa.pointC;
  qa.trapezoid = std::abs(cross(ab, cd)) <= tol * norm(ab) * norm(cd);
  const double s = std::min(1.0, std::abs(qa.heightA - qa.heightB) / norm(ab));
  qa.alpha = std::asin(s);
  return qa;
}

inline MonitorVerdict monitor_tf(const Trace& tr, double tol = kGeomTol) {
  if (tr.n != 4) throw WrongArity("TF monitor needs n=4");
  std::array<Point, 4> init;
  for (int i = 0; i < 4; ++i) init[i] = tr.initial.robots[i].pos;
  const QuadrilateralAnalysis qa = analyze_quadrilateral(init, tol);  // InvalidShape propagates

  if (qa.trapezoid) {
    for (const auto& ev : tr.events)
      if (ev.kind == EventKind::MoveBegin && ev.dest && !(*ev.dest == ev.pos)) {
        std::ostringstream w;
        w << "initial configuration is a trapezoid but robot " << ev.robot << " moved at t=" << ev.t;
        return MonitorVerdict::violated(ev.t, "TF1", w.str());
      }
    return MonitorVerdict::satisfied("initial trapezoid stayed unchanged");
  }

  const bool mover_a = qa.mover_is_A();
  const std::string clause = mover_a ? "TF2.1" : "TF2.2";
  const int mover = qa.label[mover_a ? 0 : 1];
  const Point mover0 = init[mover];

  for (const auto& ev : tr.events) {
    if (ev.kind != EventKind::MoveBegin || !ev.dest || *ev.dest == ev.pos) continue;
    if (ev.robot != mover) {
      std::ostringstream w;
      w << "robot " << ev.robot << " must stay (designated mover is robot " << mover
        << ") but moved at t=" << ev.t;
      return MonitorVerdict::violated(ev.t, clause, w.str());
    }
    // the mover must stay on its perpendicular line Y(.)
    if (dist_to_line(*ev.dest, mover0, project_on_line(mover0, qa.pointC, qa.pointD)) >
        tol * qa.longest) {
      std::ostringstream w;
      w << "mover left its perpendicular at t=" << ev.t;
      return MonitorVerdict::violated(ev.t, clause + "-perpendicular", w.str());
    }
  }

  const auto& last = tr.configs.back();
  const Point fa = last.robots[qa.label[0]].pos, fb = last.robots[qa.label[1]].pos;
  const Point ab = fb - fa, cd = qa.pointD - qa.pointC;
  const bool parallel = std::abs(cross(ab, cd)) <= tol * norm(ab) * norm(cd);
  if (parallel && halt_stable(tr, mover)) {
    std::ostringstream w;
    w << "mover halted with ab parallel to CD (" << clause << ")";
    return MonitorVerdict::satisfied(w.str());
  }
  return MonitorVerdict::undetermined("mover has not halted in a trapezoid yet");
}

}  // namespace lcm
