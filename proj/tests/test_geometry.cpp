#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lcm/geometry.hpp"
#include "lcm/rng.hpp"

using namespace lcm;

namespace {

LocalFrame random_frame(Rng& rng, bool allow_reflection) {
  LocalFrame f;
  f.origin = {rng.uniform(-10, 10), rng.uniform(-10, 10)};
  f.rotation = rng.uniform(0, 2 * std::acos(-1.0));
  f.unit = std::exp2(rng.uniform(-4, 4));
  f.handedness = (allow_reflection && rng.chance(0.5)) ? -1 : +1;
  return f;
}

// cyclic sequences equal up to rotation
bool same_cycle(const std::vector<Point>& a, const std::vector<Point>& b, double tol) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  for (std::size_t off = 0; off < n; ++off) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = near(a[i], b[(i + off) % n], tol);
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("to_local maps the observer to the origin and scales by the unit") {
  LocalFrame identity{};
  CHECK(to_local(identity, Point{3, 4}) == Point{3, 4});

  LocalFrame scaled{{1, 0}, 0.0, 2.0, +1};
  Point p = to_local(scaled, {3, 0});
  CHECK(p.x == Catch::Approx(1.0).margin(1e-15));
  CHECK(p.y == Catch::Approx(0.0).margin(1e-15));

  LocalFrame half_turn{{0, 0}, std::acos(-1.0), 1.0, +1};
  Point q = to_local(half_turn, {1, 0});
  CHECK(q.x == Catch::Approx(-1.0).margin(1e-12));
  CHECK(q.y == Catch::Approx(0.0).margin(1e-12));

  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    LocalFrame f = random_frame(rng, true);
    Point o = to_local(f, f.origin);
    CHECK(o.x == 0.0);
    CHECK(o.y == 0.0);
  }
}

TEST_CASE("to_global inverts to_local within 1e-12") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    LocalFrame f = random_frame(rng, true);
    Point p{rng.uniform(-20, 20), rng.uniform(-20, 20)};
    Point back = to_global(f, to_local(f, p));
    CHECK(near(back, p, 1e-12));
  }
  LocalFrame scaled{{1, 0}, 0.0, 2.0, +1};
  Point g = to_global(scaled, {1, 0});
  CHECK(near(g, Point{3, 0}, 1e-15));
  CHECK(to_global(LocalFrame{}, Point{0, 0}) == Point{0, 0});
}

TEST_CASE("circular_order sorts by angle around the centroid") {
  Ring ring = circular_order({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  REQUIRE(ring.size() == 4);
  CHECK(same_cycle(ring.locations, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, 1e-12));

  Ring two = circular_order({{0, 0}, {1, 0}});
  REQUIRE(two.size() == 2);
  CHECK(two.pred(0) == 1);
  CHECK(two.suc(1) == 0);

  CHECK_THROWS_AS(circular_order({{2, 2}}), DegenerateRing);
  CHECK_THROWS_AS(circular_order({{2, 2}, {2, 2}}), DegenerateRing);
}

TEST_CASE("circular_order is invariant under similarity transforms") {
  Rng rng(23);
  const double pi = std::acos(-1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 2 + static_cast<int>(rng.below(7));
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < m) {
      Point p{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      bool fresh = true;
      for (Point q : pts)
        if (dist(p, q) < 1e-3) fresh = false;
      if (fresh) pts.push_back(p);
    }
    // keep clear of the centroid-coincidence corner case
    Point c{0, 0};
    for (Point p : pts) c = c + p;
    c = (1.0 / m) * c;
    bool degenerate = false;
    for (Point p : pts)
      if (dist(p, c) < 1e-6) degenerate = true;
    if (degenerate) continue;

    const double ang = rng.uniform(0, 2 * pi);
    const double scale = std::exp2(rng.uniform(-3, 3));
    const Point shift{rng.uniform(-9, 9), rng.uniform(-9, 9)};
    auto xf = [&](Point p) {
      Point r{std::cos(ang) * p.x - std::sin(ang) * p.y, std::sin(ang) * p.x + std::cos(ang) * p.y};
      return scale * r + shift;
    };
    std::vector<Point> moved;
    for (Point p : pts) moved.push_back(xf(p));

    Ring a = circular_order(pts);
    Ring b = circular_order(moved);
    std::vector<Point> a_mapped;
    for (Point p : a.locations) a_mapped.push_back(xf(p));
    CHECK(same_cycle(a_mapped, b.locations, 1e-6 * scale));
  }
}

TEST_CASE("ring orientation is counterclockwise for convex-position sets") {
  Rng rng(31);
  const double pi = std::acos(-1.0);
  for (int trial = 0; trial < 200; ++trial) {
    // points on a circle are in convex position
    const int m = 3 + static_cast<int>(rng.below(5));
    std::vector<double> angles;
    for (int i = 0; i < m; ++i) angles.push_back(rng.uniform(0, 2 * pi));
    std::sort(angles.begin(), angles.end());
    bool distinct = true;
    for (int i = 1; i < m; ++i)
      if (angles[i] - angles[i - 1] < 1e-3) distinct = false;
    if (!distinct) continue;
    std::vector<Point> pts;
    const double r = std::exp2(rng.uniform(-2, 2));
    for (double a : angles) pts.push_back({r * std::cos(a), r * std::sin(a)});

    Ring ring = circular_order(pts);
    double area2 = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i)
      area2 += cross(ring.locations[i], ring.locations[ring.suc(i)]);
    CHECK(area2 > 0.0);
  }
}

TEST_CASE("rotating the inputs by 37 degrees keeps the cyclic sequence") {
  const double ang = 37.0 * std::acos(-1.0) / 180.0;
  std::vector<Point> pts{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0.5, 0.5}};
  auto rot = [&](Point p) {
    return Point{std::cos(ang) * p.x - std::sin(ang) * p.y,
                 std::sin(ang) * p.x + std::cos(ang) * p.y};
  };
  std::vector<Point> moved;
  for (Point p : pts) moved.push_back(rot(p));
  Ring a = circular_order(pts);
  Ring b = circular_order(moved);
  std::vector<Point> a_mapped;
  for (Point p : a.locations) a_mapped.push_back(rot(p));
  CHECK(same_cycle(a_mapped, b.locations, 1e-12));
}
