#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcm/algorithm.hpp"
#include "lcm/problems.hpp"
#include "lcm/rng.hpp"
#include "lcm/scheduler.hpp"

namespace lcm {

// Frame that shows `other` on the local positive X axis at distance 1.
inline FrameChoice unit_distance_frame(Point self, Point other) {
  FrameChoice f;
  f.rotation = std::atan2(other.y - self.y, other.x - self.x);
  f.unit = dist(self, other);
  f.handedness = +1;
  return f;
}

// Dry-run probes; the proofs quantify over the algorithm's response function,
// which the adversary may query directly.
inline double probe_fcom_move(const AlgorithmBinding& b, const LightTuple& opponent) {
  Snapshot s;
  s.others.push_back({Point{1, 0}, {opponent}});
  return norm(b.compute(s).dest);
}

inline ComputeResult probe_fsta(const AlgorithmBinding& b, const LightTuple& own) {
  Snapshot s;
  s.others.push_back({Point{1, 0}, {}});
  s.own_light = own;
  return b.compute(s);
}

class ScriptedAdversary : public AdversaryStrategy {
 public:
  std::string status() const override { return status_; }

 protected:
  void finish(const std::string& s) {
    status_ = s;
    done_ = true;
  }
  bool done_ = false;
  std::string status_ = "ok";
};

// ---------------------------------------------------------------------------
// Move-atomic schedule against line convergence for oblivious robots: both
// look together, one cycle is stalled after its Compute while the other robot
// is pumped until the gap is smaller than the stalled move, then released.
class MlcvOblotMAdversary : public ScriptedAdversary {
 public:
  explicit MlcvOblotMAdversary(std::uint64_t seed, int pump_cap = 100)
      : rng_(seed), pump_cap_(pump_cap) {}

  void begin(const EngineView& v) override {
    if (v.n != 2) throw ConfigError("mlcv-oblot-m needs n=2");
    // fixed disorientation, shared unit, the opponent on the positive X axis
    frame0_ = unit_distance_frame(v.robot(0).pos, v.robot(1).pos);
    frame1_ = unit_distance_frame(v.robot(1).pos, v.robot(0).pos);
    frame0_.unit = frame1_.unit = 1.0;
  }

  StepProposal next(const EngineView& v) override {
    StepProposal p;
    if (done_) return p;
    switch (stage_) {
      case 0:  // simultaneous Looks; robot 0 completes instantly, robot 1 stalls computed
        p.looks.push_back({0, frame0_});
        p.looks.push_back({1, frame1_});
        p.computes = {0, 1};
        p.move_begins = {0};
        p.move_ends = {0};
        stage_ = 1;
        return p;
      case 1: {
        const double pending = dist(v.robot(1).dest, v.robot(1).pos);
        if (pending <= 0.0) {  // the algorithm refuses to move: convergence fails on its own
          p.move_begins = {1};
          p.move_ends = {1};
          finish("not-applicable");
          return p;
        }
        if (v.distance(0, 1) < pending) {
          p.move_begins = {1};
          p.move_ends = {1};
          finish("ok");
          return p;
        }
        if (++pumps_ > pump_cap_) {
          p.move_begins = {1};
          p.move_ends = {1};
          finish("not-applicable");
          return p;
        }
        p.full_cycle(0, frame0_);
        return p;
      }
    }
    return p;
  }

 private:
  Rng rng_;
  int pump_cap_;
  int stage_ = 0;
  int pumps_ = 0;
  FrameChoice frame0_, frame1_;
};

// ---------------------------------------------------------------------------
// Move-atomic schedule against line convergence for finite-communication
// robots: every Look is scaled to unit distance, the response fraction F is
// probed per color, one robot is stalled between its Look and its Compute
// (so its color cannot change underneath the other) while the other is pumped
// floor(log_{1-F}(F))+1 times; then the stalled cycle fires.
class MlcvFcomMAdversary : public ScriptedAdversary {
 public:
  MlcvFcomMAdversary(std::uint64_t seed, AlgorithmBinding target, int warmup_cap = 64)
      : rng_(seed), target_(std::move(target)), warmup_cap_(warmup_cap) {}

  void begin(const EngineView& v) override {
    if (v.n != 2) throw ConfigError("mlcv-fcom-m needs n=2");
  }

  StepProposal next(const EngineView& v) override {
    StepProposal p;
    if (done_) return p;
    switch (stage_) {
      case 0: {
        const double f = probe_fcom_move(target_, v.robot(1).light);  // color robot 0 sees
        if (f == 0.0) {
          if (++warmups_ > warmup_cap_) {
            finish("f-zero");
            return p;
          }
          both_round(p, v);
          return p;
        }
        if (f > 0.5) {  // simultaneous activation makes them pass each other
          both_round(p, v);
          finish("ok");
          return p;
        }
        pumps_left_ = static_cast<int>(std::floor(std::log(f) / std::log1p(-f))) + 1;
        p.looks.push_back({0, unit_distance_frame(v.robot(0).pos, v.robot(1).pos)});
        stage_ = 1;
        return p;
      }
      case 1:
        if (pumps_left_-- > 0) {
          p.full_cycle(1, unit_distance_frame(v.robot(1).pos, v.robot(0).pos));
          return p;
        }
        p.computes = {0};
        p.move_begins = {0};
        p.move_ends = {0};
        finish("ok");
        return p;
    }
    return p;
  }

 private:
  void both_round(StepProposal& p, const EngineView& v) {
    p.looks.push_back({0, unit_distance_frame(v.robot(0).pos, v.robot(1).pos)});
    p.looks.push_back({1, unit_distance_frame(v.robot(1).pos, v.robot(0).pos)});
    p.computes = {0, 1};
    p.move_begins = {0, 1};
    p.move_ends = {0, 1};
  }

  Rng rng_;
  AlgorithmBinding target_;
  int warmup_cap_;
  int stage_ = 0;
  int warmups_ = 0;
  int pumps_left_ = 0;
};

// ---------------------------------------------------------------------------
// Move-atomic schedule against line convergence for finite-state robots:
// walks the fixed color-transition sequence at unit observed distance until
// it becomes periodic, then stalls one robot and pumps the other under the
// stalled move's length.
class MlcvFstaMAdversary : public ScriptedAdversary {
 public:
  MlcvFstaMAdversary(std::uint64_t seed, AlgorithmBinding target, int color_bound = 16)
      : rng_(seed), target_(std::move(target)), color_bound_(color_bound) {}

  void begin(const EngineView& v) override {
    if (v.n != 2) throw ConfigError("mlcv-fsta-m needs n=2");
  }

  StepProposal next(const EngineView& v) override {
    StepProposal p;
    if (done_) return p;
    switch (stage_) {
      case 0: {  // walk the transition sequence until a color repeats
        const LightTuple c = v.robot(0).light;  // both robots stay in lockstep
        const double f = norm(probe_fsta(target_, c).dest);
        if (f > 0.5) {
          both_round(p, v);
          finish("ok");
          return p;
        }
        for (const auto& seen : seen_)
          if (seen == c) {
            if (!periodic_f_positive(c)) {
              finish("all-zero-f");
              return p;
            }
            stage_ = 1;
            return next(v);
          }
        seen_.push_back(c);
        half_ = 0;
        stage_ = 2;
        return next(v);
      }
      case 2:  // sequential pair of activations (never lets them meet)
        if (half_ == 0) {
          p.full_cycle(0, unit_distance_frame(v.robot(0).pos, v.robot(1).pos));
          half_ = 1;
        } else {
          p.full_cycle(1, unit_distance_frame(v.robot(1).pos, v.robot(0).pos));
          stage_ = 0;
        }
        return p;
      case 1: {  // advance to a moving color, then stall robot 0
        const double f = norm(probe_fsta(target_, v.robot(0).light).dest);
        if (f == 0.0) {
          half_ = 0;
          stage_ = 3;
          return next(v);
        }
        p.looks.push_back({0, unit_distance_frame(v.robot(0).pos, v.robot(1).pos)});
        p.computes = {0};
        stage_ = 4;
        return p;
      }
      case 3:  // one sequential pair, then back to the moving-color hunt
        if (half_ == 0) {
          p.full_cycle(0, unit_distance_frame(v.robot(0).pos, v.robot(1).pos));
          half_ = 1;
        } else {
          p.full_cycle(1, unit_distance_frame(v.robot(1).pos, v.robot(0).pos));
          stage_ = 1;
        }
        return p;
      case 4: {  // pump robot 1 under the stalled move, then release
        const double pending = dist(v.robot(0).dest, v.robot(0).pos);
        if (v.distance(0, 1) < pending) {
          p.move_begins = {0};
          p.move_ends = {0};
          finish("ok");
          return p;
        }
        if (++pumps_ > 10 * color_bound_ * color_bound_) {
          p.move_begins = {0};
          p.move_ends = {0};
          finish("target-resisted");
          return p;
        }
        p.full_cycle(1, unit_distance_frame(v.robot(1).pos, v.robot(0).pos));
        return p;
      }
    }
    return p;
  }

 private:
  void both_round(StepProposal& p, const EngineView& v) {
    p.looks.push_back({0, unit_distance_frame(v.robot(0).pos, v.robot(1).pos)});
    p.looks.push_back({1, unit_distance_frame(v.robot(1).pos, v.robot(0).pos)});
    p.computes = {0, 1};
    p.move_begins = {0, 1};
    p.move_ends = {0, 1};
  }

  bool periodic_f_positive(LightTuple c) {
    for (int i = 0; i < color_bound_ * color_bound_; ++i) {
      ComputeResult r = probe_fsta(target_, c);
      if (norm(r.dest) > 0.0) return true;
      LightTuple n = c;
      n.merge(r.light_updates);
      if (n == c) return false;  // fixed point with no motion
      c = n;
    }
    return false;
  }

  Rng rng_;
  AlgorithmBinding target_;
  int color_bound_;
  int stage_ = 0;
  int half_ = 0;
  int pumps_ = 0;
  std::vector<LightTuple> seen_;
};

// ---------------------------------------------------------------------------
// Fully asynchronous schedule against trapezoid formation: the designated
// mover starts its move; the other off vertex looks mid-move at the halfway
// exposure, sees a configuration that designates *it* as mover, and moves.
class TfAsyncAdversary : public ScriptedAdversary {
 public:
  explicit TfAsyncAdversary(std::uint64_t seed) : rng_(seed) {}

  void begin(const EngineView& v) override {
    if (v.n != 4) throw ConfigError("tf-async needs n=4");
    std::array<Point, 4> pts;
    for (int i = 0; i < 4; ++i) pts[i] = v.robot(i).pos;
    const QuadrilateralAnalysis qa = analyze_quadrilateral(pts);
    if (qa.trapezoid) throw ConfigError("tf-async needs a non-trapezoid instance");
    mover_ = qa.label[qa.mover_is_A() ? 0 : 1];
    victim_ = qa.label[qa.mover_is_A() ? 1 : 0];
  }

  StepProposal next(const EngineView& v) override {
    StepProposal p;
    if (done_) return p;
    switch (stage_) {
      case 0: p.looks.push_back({mover_, {}}); stage_ = 1; return p;
      case 1:
        p.computes = {mover_};
        stage_ = 2;
        return p;
      case 2:
        if (v.robot(mover_).dest == v.robot(mover_).pos) {
          p.move_begins = {mover_};
          p.move_ends = {mover_};
          finish("target-resisted");  // the mover refused; liveness fails on its own
          return p;
        }
        p.move_begins = {mover_};
        stage_ = 3;
        return p;
      case 3:  // halfway exposure of the committed segment, then the victim looks
        p.transit_progress[mover_] = 0.5;
        p.looks.push_back({victim_, {}});
        stage_ = 4;
        return p;
      case 4:
        p.computes = {victim_};
        stage_ = 5;
        return p;
      case 5:
        p.move_begins = {victim_};
        p.move_ends = {victim_};
        if (v.robot(victim_).dest == v.robot(victim_).pos) status_ = "target-resisted";
        stage_ = 6;
        return p;
      case 6:
        p.move_ends = {mover_};
        done_ = true;
        return p;
    }
    return p;
  }

 private:
  Rng rng_;
  int stage_ = 0;
  int mover_ = 0, victim_ = 0;
};

// ---------------------------------------------------------------------------
// Look-Compute-atomic schedule against trapezoid formation for finite-state
// robots: the mover's move is slowed down while the other off vertex is
// activated repeatedly on the mid-move configuration; bounded internal state
// cannot tell the observed configurations from initial ones.
class TfFstaLcAdversary : public ScriptedAdversary {
 public:
  TfFstaLcAdversary(std::uint64_t seed, int state_bound = 16)
      : rng_(seed), state_bound_(state_bound) {}

  void begin(const EngineView& v) override {
    if (v.n != 4) throw ConfigError("tf-fsta-lc needs n=4");
    std::array<Point, 4> pts;
    for (int i = 0; i < 4; ++i) pts[i] = v.robot(i).pos;
    const QuadrilateralAnalysis qa = analyze_quadrilateral(pts);
    if (qa.trapezoid) throw ConfigError("tf-fsta-lc needs a non-trapezoid instance");
    mover_ = qa.label[qa.mover_is_A() ? 0 : 1];
    victim_ = qa.label[qa.mover_is_A() ? 1 : 0];
  }

  StepProposal next(const EngineView& v) override {
    StepProposal p;
    if (done_) return p;
    switch (stage_) {
      case 0:  // fused Look+Compute of the mover
        p.looks.push_back({mover_, {}});
        p.computes = {mover_};
        stage_ = 1;
        return p;
      case 1:
        if (v.robot(mover_).dest == v.robot(mover_).pos) {
          p.move_begins = {mover_};
          p.move_ends = {mover_};
          finish("target-resisted");
          return p;
        }
        p.move_begins = {mover_};
        stage_ = 2;
        return p;
      case 2: {  // pump the victim on the mid-move configuration
        if (pumps_ >= state_bound_) {
          p.move_ends = {mover_};
          finish("target-resisted: victim colors " + colors_);
          return p;
        }
        ++pumps_;
        p.transit_progress[mover_] = 0.5;
        p.looks.push_back({victim_, {}});
        p.computes = {victim_};
        colors_ += (colors_.empty() ? "" : ",") + v.robot(victim_).light.str();
        stage_ = 3;
        return p;
      }
      case 3:
        p.move_begins = {victim_};
        p.move_ends = {victim_};
        if (!(v.robot(victim_).dest == v.robot(victim_).pos)) {
          stage_ = 4;  // non-null move fired: the violation is committed
        } else {
          stage_ = 2;
        }
        return p;
      case 4:
        p.move_ends = {mover_};
        finish("ok");
        return p;
    }
    return p;
  }

 private:
  Rng rng_;
  int state_bound_;
  int stage_ = 0;
  int pumps_ = 0;
  int mover_ = 0, victim_ = 0;
  std::string colors_;
};

// ---------------------------------------------------------------------------
// Semi-synchronous schedule against "get closer but not too close" for
// finite-communication robots: both robots are activated until the opponent
// color turns attractive, then only one robot is activated; the frozen
// attractive color drags it below half the initial distance.
class GcnclFcomSAdversary : public ScriptedAdversary {
 public:
  GcnclFcomSAdversary(std::uint64_t seed, AlgorithmBinding target, int warmup_cap = 64,
                      int pump_cap = 64)
      : rng_(seed), target_(std::move(target)), warmup_cap_(warmup_cap), pump_cap_(pump_cap) {}

  void begin(const EngineView& v) override {
    if (v.n != 2) throw ConfigError("gcncl-fcom-s needs n=2");
    d0_ = v.distance(0, 1);
  }

  StepProposal next(const EngineView& v) override {
    StepProposal p;
    if (done_) return p;
    switch (stage_) {
      case 0: {  // probe the color robot 0 sees on its opponent
        const double f = probe_fcom_move(target_, v.robot(1).light);
        if (f > 0.0) {
          stage_ = 1;
          return next(v);
        }
        if (++warmups_ > warmup_cap_) {
          finish("never-attractive");
          return p;
        }
        p.looks.push_back({0, unit_distance_frame(v.robot(0).pos, v.robot(1).pos)});
        p.looks.push_back({1, unit_distance_frame(v.robot(1).pos, v.robot(0).pos)});
        p.computes = {0, 1};
        p.move_begins = {0, 1};
        p.move_ends = {0, 1};
        return p;
      }
      case 1:  // pump robot 0 alone; the opponent color stays attractive
        if (v.distance(0, 1) < d0_ / 2 || v.distance(0, 1) > d0_) {
          stage_ = 2;
          return next(v);
        }
        if (++pumps_ > pump_cap_) {
          finish("target-resisted");
          return p;
        }
        p.full_cycle(0, unit_distance_frame(v.robot(0).pos, v.robot(1).pos));
        return p;
      case 2:  // fairness bookkeeping: the other robot gets a round too
        p.full_cycle(1, unit_distance_frame(v.robot(1).pos, v.robot(0).pos));
        finish("ok");
        return p;
    }
    return p;
  }

 private:
  Rng rng_;
  AlgorithmBinding target_;
  int warmup_cap_, pump_cap_;
  int stage_ = 0;
  int warmups_ = 0, pumps_ = 0;
  double d0_ = 0.0;
};

// ---------------------------------------------------------------------------

inline std::unique_ptr<AdversaryStrategy> scripted_adversary(const std::string& name,
                                                             std::uint64_t seed,
                                                             const AlgorithmBinding& target) {
  if (name == "mlcv-oblot-m") return std::make_unique<MlcvOblotMAdversary>(seed);
  if (name == "mlcv-fcom-m") return std::make_unique<MlcvFcomMAdversary>(seed, target);
  if (name == "mlcv-fsta-m") return std::make_unique<MlcvFstaMAdversary>(seed, target);
  if (name == "tf-async") return std::make_unique<TfAsyncAdversary>(seed);
  if (name == "tf-fsta-lc") return std::make_unique<TfFstaLcAdversary>(seed);
  if (name == "gcncl-fcom-s") return std::make_unique<GcnclFcomSAdversary>(seed, target);
  throw UnknownKind("unknown scripted adversary: " + name);
}

inline SchedulerClass scripted_adversary_class(const std::string& name) {
  if (name == "mlcv-oblot-m" || name == "mlcv-fcom-m" || name == "mlcv-fsta-m")
    return SchedulerClass::M_ATOMIC;
  if (name == "tf-async") return SchedulerClass::ASYNCH;
  if (name == "tf-fsta-lc") return SchedulerClass::LC_ATOMIC;
  if (name == "gcncl-fcom-s") return SchedulerClass::SSYNCH;
  throw UnknownKind("unknown scripted adversary: " + name);
}

}  // namespace lcm
