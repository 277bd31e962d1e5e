#pragma once

#include <memory>
#include <string>

#include "idrl/env.hpp"
#include "idrl/rng.hpp"

namespace idrl {

// Per-episode policy object. begin_episode() clears any memory and reseeds
// stochastic agents so that (episode, seed) fully determines the trace.
class Agent {
public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual void begin_episode(std::uint64_t episode_seed) = 0;
  virtual double act(const Observation& obs, const RawStateView& raw) = 0;
};

// Sells the first wind-forecast volume at t = 0 and holds.
class BlFirst final : public Agent {
public:
  std::string name() const override { return "bl_first"; }
  void begin_episode(std::uint64_t) override { held_ = 0.0; started_ = false; }
  double act(const Observation&, const RawStateView& raw) override;

private:
  double held_ = 0.0;
  bool started_ = false;
};

// Follows the wind forecast exactly, trading every change.
class BlWindForecast final : public Agent {
public:
  std::string name() const override { return "bl_wf"; }
  void begin_episode(std::uint64_t) override {}
  double act(const Observation&, const RawStateView& raw) override {
    return raw.wind;
  }
};

// Trades a fixed 0.1 MWh slice whenever price sits on the same side of the
// 5-min forecast for two sequential steps: above for both (price expected to
// fall) sells, below for both buys.
class BlPriceForecast final : public Agent {
public:
  explicit BlPriceForecast(double trade_size = 0.1) : trade_size_(trade_size) {}
  std::string name() const override { return "bl_pf"; }
  void begin_episode(std::uint64_t) override {}
  double act(const Observation&, const RawStateView& raw) override;

private:
  double trade_size_;
};

// With probability trade_prob draws a fresh volume from
// Normal(current wind forecast, sigma_train) clamped to [0,1]; holds otherwise.
class BlRandom final : public Agent {
public:
  explicit BlRandom(double sigma_train, double trade_prob = 0.25)
      : sigma_(sigma_train), trade_prob_(trade_prob), rng_(0) {}
  std::string name() const override { return "bl_random"; }
  void begin_episode(std::uint64_t episode_seed) override {
    rng_ = Rng(episode_seed);
  }
  double act(const Observation&, const RawStateView& raw) override;

private:
  double sigma_;
  double trade_prob_;
  Rng rng_;
};

// nullptr for unknown names. "agent" (the learned policy) is constructed by
// the ppo module, not here.
std::unique_ptr<Agent> make_baseline(const std::string& name,
                                     const TrainStats& stats);

struct EpisodeOutcome {
  double profit = 0.0;
  int voluntary_steps = 0;  // |delta_v| > 1e-9, forced correction excluded
  std::vector<TradeRecord> log;
};

EpisodeOutcome run_episode(const ProductData& product, Agent& agent,
                           const TrainStats& stats, const EnvOptions& opts,
                           EnvMode mode, std::uint64_t episode_seed);

}  // namespace idrl
