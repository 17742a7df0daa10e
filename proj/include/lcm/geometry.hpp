#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lcm/errors.hpp"

namespace lcm {

inline constexpr double kGeomTol = 1e-9;  // relative tolerance for geometric predicates

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend Point operator*(Point p, double s) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Point a, Point b) { return !(a == b); }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist(Point a, Point b) { return norm(a - b); }

inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline bool near(Point a, Point b, double tol) { return dist(a, b) <= tol; }

// Distance from p to the segment [a,b].
inline double dist_to_segment(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return dist(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return dist(p, a + t * ab);
}

// Foot of the perpendicular from p onto the line through a and b.
inline Point project_on_line(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = dot(p - a, ab) / len2;
  return a + t * ab;
}

inline double dist_to_line(Point p, Point a, Point b) {
  return std::abs(cross(b - a, p - a)) / dist(a, b);
}

// Observer-local coordinate chart: the observer sits at `origin`, its axes are
// rotated by `rotation`, distances are measured in units of `unit`, and
// handedness -1 mirrors the y axis (only allowed when chirality is off).
struct LocalFrame {
  Point origin{};
  double rotation = 0.0;
  double unit = 1.0;
  int handedness = +1;  // +1 or -1

  bool valid() const {
    return unit > 0.0 && std::isfinite(unit) && std::isfinite(rotation) &&
           finite(origin) && (handedness == 1 || handedness == -1);
  }
};

inline Point to_local(const LocalFrame& f, Point p) {
  const Point d = p - f.origin;
  const double c = std::cos(f.rotation), s = std::sin(f.rotation);
  Point r{c * d.x + s * d.y, -s * d.x + c * d.y};
  if (f.handedness < 0) r.y = -r.y;
  return {r.x / f.unit, r.y / f.unit};
}

inline Point to_global(const LocalFrame& f, Point p) {
  Point r{p.x * f.unit, p.y * f.unit};
  if (f.handedness < 0) r.y = -r.y;
  const double c = std::cos(f.rotation), s = std::sin(f.rotation);
  return Point{c * r.x - s * r.y, s * r.x + c * r.y} + f.origin;
}

// Cyclic arrangement of distinct locations; suc/pred are index steps mod m.
struct Ring {
  std::vector<Point> locations;

  std::size_t size() const { return locations.size(); }
  std::size_t suc(std::size_t i) const { return (i + 1) % locations.size(); }
  std::size_t pred(std::size_t i) const { return (i + locations.size() - 1) % locations.size(); }

  // Index of a location equal to p (exact match first, then nearest within tol).
  std::size_t locate(Point p, double tol = 0.0) const {
    for (std::size_t i = 0; i < locations.size(); ++i)
      if (locations[i] == p) return i;
    if (tol > 0.0) {
      std::size_t best = locations.size();
      double bd = tol;
      for (std::size_t i = 0; i < locations.size(); ++i) {
        const double d = dist(locations[i], p);
        if (d <= bd) { bd = d; best = i; }
      }
      if (best < locations.size()) return best;
    }
    throw Error("location not on ring");
  }
};

// Orders locations by angle around their centroid, counterclockwise under
// handedness +1; equal angles break by increasing distance from the centroid.
// A location coinciding with the centroid (at most one, since the points are
// distinct) is inserted immediately after the minimal-angle location.
inline Ring circular_order(std::vector<Point> locations, int handedness = +1) {
  // dedupe exact coincidences
  std::sort(locations.begin(), locations.end(),
            [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  locations.erase(std::unique(locations.begin(), locations.end()), locations.end());
  if (locations.size() < 2) throw DegenerateRing();

  Point c{0, 0};
  for (Point p : locations) c = c + p;
  c = (1.0 / static_cast<double>(locations.size())) * c;

  std::vector<Point> at_centroid, rest;
  for (Point p : locations) (p == c ? at_centroid : rest).push_back(p);

  struct Keyed { double angle, radius; Point p; };
  std::vector<Keyed> keyed;
  keyed.reserve(rest.size());
  for (Point p : rest) {
    const Point d = p - c;
    double a = std::atan2(handedness < 0 ? -d.y : d.y, d.x);
    if (a < 0) a += 2.0 * std::acos(-1.0);
    keyed.push_back({a, norm(d), p});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return a.angle < b.angle || (a.angle == b.angle && a.radius < b.radius);
  });

  Ring ring;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    ring.locations.push_back(keyed[i].p);
    if (i == 0 && !at_centroid.empty()) ring.locations.push_back(at_centroid.front());
  }
  return ring;
}

}  // namespace lcm
