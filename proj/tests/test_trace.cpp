#include <catch2/catch_amalgamated.hpp>

#include "lcm/adversary_builtin.hpp"
#include "lcm/algorithms.hpp"
#include "lcm/scheduler.hpp"
#include "lcm/trace_io.hpp"

using namespace lcm;

namespace {

Trace tiny_trace() {
  Trace t;
  t.n = 2;
  t.model = ModelClass::OBLOT;
  t.scheduler = SchedulerClass::ASYNCH;
  t.initial.robots = {{{0, 0}, {}, false, {}}, {{1, 0}, {}, false, {}}};
  return t;
}

}  // namespace

TEST_CASE("append_event enforces per-robot cycle order") {
  Trace t = tiny_trace();
  CHECK_NOTHROW(t.append_event({1, 0, EventKind::Look, {0, 0}, {}, {}, {}}));
  CHECK(t.events.size() == 1);
  CHECK_NOTHROW(t.append_event({2, 0, EventKind::Compute, {0, 0}, LightTuple{}, Point{0, 0}, {}}));

  Trace u = tiny_trace();
  u.append_event({1, 0, EventKind::Look, {0, 0}, {}, {}, {}});
  CHECK_THROWS_AS(u.append_event({2, 0, EventKind::MoveEnd, {0, 0}, {}, Point{0, 0}, {}}),
                  PhaseOrderViolation);

  Trace v = tiny_trace();
  v.append_event({5, 0, EventKind::Look, {0, 0}, {}, {}, {}});
  CHECK_THROWS_AS(v.append_event({4, 1, EventKind::Look, {1, 0}, {}, {}, {}}), OutOfOrderEvent);
}

TEST_CASE("serialize emits a header line plus one record per event") {
  Trace t = tiny_trace();
  std::string s = serialize(t);
  CHECK(std::count(s.begin(), s.end(), '\n') == 1);  // header only

  t.append_event({1, 0, EventKind::Look, {0, 0}, {}, {}, 0xdeadbeefull});
  t.append_event({2, 0, EventKind::Compute, {0, 0}, LightTuple{}, Point{0.5, 0}, {}});
  t.append_event({3, 0, EventKind::MoveBegin, {0, 0}, {}, Point{0.5, 0}, {}});
  t.rebuild_configs();
  s = serialize(t);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);

  Trace back = deserialize(s);
  CHECK(back == t);
  CHECK(back.configs.size() == t.configs.size());
  CHECK(back.configs.back().robots[0].in_transit);
}

TEST_CASE("corrupt lines report their line number") {
  Trace t = tiny_trace();
  t.append_event({1, 1, EventKind::Look, {1, 0}, {}, {}, {}});
  std::string s = serialize(t);
  s += "{not json\n";
  try {
    deserialize(s);
    FAIL("expected MalformedRecord");
  } catch (const MalformedRecord& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("round-trip serialization is the identity on engine traces") {
  Rng rng(99);
  const std::array<SchedulerClass, 7> classes{
      SchedulerClass::FSYNCH,    SchedulerClass::SSYNCH,   SchedulerClass::ROUNDROBIN,
      SchedulerClass::LC_ATOMIC, SchedulerClass::CM_ATOMIC, SchedulerClass::M_ATOMIC,
      SchedulerClass::ASYNCH};
  for (int i = 0; i < 60; ++i) {
    const SchedulerClass cls = classes[i % classes.size()];
    Scenario sc;
    sc.model = ModelClass::FCOM;
    sc.positions = {{0, 0}, {1, 0}, {rng.uniform(-2, 2), rng.uniform(1, 2)}};
    AlgorithmBinding algo = color_cycler();
    auto adv = builtin_adversary("random", 1000 + i, cls, true);
    Trace tr = run_execution(sc, algo, cls, *adv, 40, 1000 + i);
    Trace back = deserialize(serialize(tr));
    CHECK(back == tr);
    CHECK(serialize(back) == serialize(tr));
  }
}

TEST_CASE("fairness windows flag starved robots") {
  // strict alternation of two robots is fair at window 2
  Trace t = tiny_trace();
  Time now = 0;
  for (int round = 0; round < 6; ++round) {
    const int r = round % 2;
    ++now;
    t.append_event({now, r, EventKind::Look, {}, {}, {}, {}});
    t.append_event({now, r, EventKind::Compute, {}, LightTuple{}, Point{}, {}});
    t.append_event({now, r, EventKind::MoveBegin, {}, {}, Point{}, {}});
    t.append_event({now, r, EventKind::MoveEnd, {}, {}, Point{}, {}});
  }
  t.rebuild_configs();
  CHECK(fairness_windows(t, 2).empty());

  // robot 1 never looks: every window of 10 is flagged
  Trace u = tiny_trace();
  now = 0;
  for (int round = 0; round < 15; ++round) {
    ++now;
    u.append_event({now, 0, EventKind::Look, {}, {}, {}, {}});
    u.append_event({now, 0, EventKind::Compute, {}, LightTuple{}, Point{}, {}});
    u.append_event({now, 0, EventKind::MoveBegin, {}, {}, Point{}, {}});
    u.append_event({now, 0, EventKind::MoveEnd, {}, {}, Point{}, {}});
  }
  u.rebuild_configs();
  auto gaps = fairness_windows(u, 10);
  CHECK(gaps.size() == 15 - 10 + 1);
  for (const auto& g : gaps) CHECK(g.missing == std::vector<int>{1});
}

TEST_CASE("all-robots rounds are fair at window n") {
  Scenario sc;
  sc.model = ModelClass::OBLOT;
  sc.positions = {{0, 0}, {1, 0}};
  AlgorithmBinding algo = half_move();
  auto adv = builtin_adversary("fsynch", 5, SchedulerClass::SSYNCH, true);
  Trace tr = run_execution(sc, algo, SchedulerClass::SSYNCH, *adv, 20, 5);
  CHECK(fairness_windows(tr, 2).empty());
}
