#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lcm/rng.hpp"
#include "lcm/scheduler.hpp"

namespace lcm {

// Frame choices for generic strategies: rotation uniform, unit log-uniform in
// [2^-4, 2^4], reflection only when chirality is off.
inline FrameChoice random_frame(Rng& rng, bool chirality) {
  FrameChoice f;
  f.rotation = rng.uniform(0.0, 2.0 * std::acos(-1.0));
  f.unit = std::exp2(rng.uniform(-4.0, 4.0));
  f.handedness = (!chirality && rng.chance(0.5)) ? -1 : +1;
  return f;
}

class FsynchAdversary : public AdversaryStrategy {
 public:
  explicit FsynchAdversary(std::uint64_t seed, bool chirality = true, bool vary_frames = false)
      : rng_(seed), chirality_(chirality), vary_(vary_frames) {}
  StepProposal next(const EngineView& v) override {
    StepProposal p;
    for (int r = 0; r < v.n; ++r) p.full_cycle(r, vary_ ? random_frame(rng_, chirality_) : FrameChoice{});
    return p;
  }

 private:
  Rng rng_;
  bool chirality_;
  bool vary_;
};

class RoundRobinAdversary : public AdversaryStrategy {
 public:
  explicit RoundRobinAdversary(std::uint64_t seed, bool chirality = true, bool vary_frames = false)
      : rng_(seed), chirality_(chirality), vary_(vary_frames) {}
  StepProposal next(const EngineView& v) override {
    StepProposal p;
    p.full_cycle(next_ % v.n, vary_ ? random_frame(rng_, chirality_) : FrameChoice{});
    next_ = (next_ + 1) % v.n;
    return p;
  }

 private:
  Rng rng_;
  bool chirality_;
  bool vary_;
  int next_ = 0;
};

// Random nonempty activation set per round; robots idle too long are forced in.
class SsynchRandomAdversary : public AdversaryStrategy {
 public:
  explicit SsynchRandomAdversary(std::uint64_t seed, bool chirality = true, bool vary_frames = true,
                                 int force_after = 0)
      : rng_(seed), chirality_(chirality), vary_(vary_frames), force_after_(force_after) {}
  void begin(const EngineView& v) override { idle_.assign(v.n, 0); }
  StepProposal next(const EngineView& v) override {
    const int force = force_after_ > 0 ? force_after_ : 2 * v.n;
    StepProposal p;
    std::vector<int> chosen;
    for (int r = 0; r < v.n; ++r)
      if (idle_[r] >= force || rng_.chance(0.5)) chosen.push_back(r);
    if (chosen.empty()) chosen.push_back(static_cast<int>(rng_.below(v.n)));
    for (int r = 0; r < v.n; ++r) idle_[r]++;
    for (int r : chosen) {
      idle_[r] = 0;
      p.full_cycle(r, vary_ ? random_frame(rng_, chirality_) : FrameChoice{});
    }
    return p;
  }

 private:
  Rng rng_;
  bool chirality_;
  bool vary_;
  int force_after_;
  std::vector<int> idle_;
};

// Fine-grained random interleaving for the asynchronous family. Each step
// fires one enabled operation (occasionally a simultaneous batch), with a
// starvation guard that completes the oldest pending cycle.
class AsynchRandomAdversary : public AdversaryStrategy {
 public:
  AsynchRandomAdversary(std::uint64_t seed, SchedulerClass cls, bool chirality = true,
                        bool vary_frames = true, double batch_prob = 0.15)
      : rng_(seed), cls_(cls), chirality_(chirality), vary_(vary_frames), batch_prob_(batch_prob) {}

  void begin(const EngineView& v) override { age_.assign(v.n, 0); }

  StepProposal next(const EngineView& v) override {
    StepProposal p;
    // collect enabled ops
    std::vector<int> idle, looked, computed, moving;
    for (int r = 0; r < v.n; ++r) {
      switch (v.robot(r).stage) {
        case CycleStage::Idle: idle.push_back(r); break;
        case CycleStage::Looked: looked.push_back(r); break;
        case CycleStage::Computed: computed.push_back(r); break;
        case CycleStage::Moving: moving.push_back(r); break;
      }
      age_[r]++;
    }

    // sometimes expose transit progress of a mover (observable under LC/ASYNCH)
    if (!moving.empty() && rng_.chance(0.25)) {
      int m = moving[rng_.below(moving.size())];
      double cur = v.robot(m).progress;
      p.transit_progress[m] = cur + (0.999 - cur) * rng_.uniform();
    }

    int forced = -1;
    for (int r = 0; r < v.n; ++r)
      if (v.robot(r).stage != CycleStage::Idle && age_[r] > 6 * v.n) forced = r;

    auto add_op = [&](int r) {
      age_[r] = 0;
      switch (v.robot(r).stage) {
        case CycleStage::Idle:
          add_cycle_start(p, r);
          break;
        case CycleStage::Looked:
          if (cls_ == SchedulerClass::CM_ATOMIC) {
            p.computes.push_back(r);
            p.move_begins.push_back(r);
            p.move_ends.push_back(r);
          } else {
            p.computes.push_back(r);
          }
          break;
        case CycleStage::Computed:
          if (cls_ == SchedulerClass::M_ATOMIC) {
            p.move_begins.push_back(r);
            p.move_ends.push_back(r);
          } else {
            p.move_begins.push_back(r);
          }
          break;
        case CycleStage::Moving:
          p.move_ends.push_back(r);
          break;
      }
    };

    if (forced >= 0) {
      add_op(forced);
      return p;
    }

    if (rng_.chance(batch_prob_)) {
      // simultaneous batch: several robots fire at one relevant time
      bool any = false;
      for (int r = 0; r < v.n; ++r)
        if (rng_.chance(0.5)) {
          add_op(r);
          any = true;
        }
      if (any) return p;
    }
    int r = static_cast<int>(rng_.below(v.n));
    add_op(r);
    return p;
  }

 private:
  void add_cycle_start(StepProposal& p, int r) {
    FrameChoice f = vary_ ? random_frame(rng_, chirality_) : FrameChoice{};
    p.looks.push_back({r, f});
    if (cls_ == SchedulerClass::LC_ATOMIC) p.computes.push_back(r);
  }

  Rng rng_;
  SchedulerClass cls_;
  bool chirality_;
  bool vary_;
  double batch_prob_;
  std::vector<int> age_;
};

// Stretches robot 0's Move across k full cycles of the other robots.
class MaxDelayAdversary : public AdversaryStrategy {
 public:
  explicit MaxDelayAdversary(std::uint64_t seed, int k = 3, bool chirality = true)
      : rng_(seed), k_(k), chirality_(chirality) {}
  StepProposal next(const EngineView& v) override {
    StepProposal p;
    switch (stage_) {
      case 0: p.looks.push_back({0, random_frame(rng_, chirality_)}); stage_ = 1; break;
      case 1: p.computes.push_back(0); stage_ = 2; break;
      case 2: p.move_begins.push_back(0); stage_ = 3; count_ = 0; break;
      case 3: {
        int other = 1 + (count_ % std::max(1, v.n - 1));
        p.full_cycle(other % v.n, random_frame(rng_, chirality_));
        if (++count_ >= k_ * std::max(1, v.n - 1)) stage_ = 4;
        break;
      }
      case 4: p.move_ends.push_back(0); stage_ = 0; break;
    }
    return p;
  }

 private:
  Rng rng_;
  int k_;
  bool chirality_;
  int stage_ = 0;
  int count_ = 0;
};

inline std::unique_ptr<AdversaryStrategy> builtin_adversary(const std::string& kind,
                                                            std::uint64_t seed, SchedulerClass cls,
                                                            bool chirality, int max_delay_k = 3) {
  if (kind == "fsynch") return std::make_unique<FsynchAdversary>(seed, chirality);
  if (kind == "round-robin") return std::make_unique<RoundRobinAdversary>(seed, chirality);
  if (kind == "max-delay") return std::make_unique<MaxDelayAdversary>(seed, max_delay_k, chirality);
  if (kind == "random") {
    switch (cls) {
      case SchedulerClass::FSYNCH: return std::make_unique<FsynchAdversary>(seed, chirality, true);
      case SchedulerClass::ROUNDROBIN: return std::make_unique<RoundRobinAdversary>(seed, chirality, true);
      case SchedulerClass::SSYNCH: return std::make_unique<SsynchRandomAdversary>(seed, chirality);
      default: return std::make_unique<AsynchRandomAdversary>(seed, cls, chirality);
    }
  }
  throw UnknownKind("unknown adversary kind: " + kind);
}

}  // namespace lcm
