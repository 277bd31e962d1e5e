#include "idrl/agents.hpp"

#include <algorithm>
#include <cmath>

#include "idrl/errors.hpp"

namespace idrl {

double BlFirst::act(const Observation&, const RawStateView& raw) {
  if (!started_) {
    held_ = raw.wind;
    started_ = true;
  }
  return held_;
}

double BlPriceForecast::act(const Observation&, const RawStateView& raw) {
  if (raw.d > 0.0 && raw.prev_d > 0.0)
    return std::min(raw.volume + trade_size_, 1.0);
  if (raw.d < 0.0 && raw.prev_d < 0.0)
    return std::max(raw.volume - trade_size_, 0.0);
  return raw.volume;
}

double BlRandom::act(const Observation&, const RawStateView& raw) {
  if (!rng_.bernoulli(trade_prob_)) return raw.volume;
  return std::clamp(rng_.normal(raw.wind, sigma_), 0.0, 1.0);
}

std::unique_ptr<Agent> make_baseline(const std::string& name,
                                     const TrainStats& stats) {
  if (name == "bl_first") return std::make_unique<BlFirst>();
  if (name == "bl_wf") return std::make_unique<BlWindForecast>();
  if (name == "bl_pf") return std::make_unique<BlPriceForecast>();
  if (name == "bl_random") return std::make_unique<BlRandom>(stats.wind_std);
  return nullptr;
}

EpisodeOutcome run_episode(const ProductData& product, Agent& agent,
                           const TrainStats& stats, const EnvOptions& opts,
                           EnvMode mode, std::uint64_t episode_seed) {
  TradingEnv env(opts, stats);
  Observation obs = env.reset(product, mode);
  agent.begin_episode(episode_seed);

  EpisodeOutcome out;
  for (int t = 0; t < kEpisodeSteps; ++t) {
    const double action = agent.act(obs, env.raw_view());
    const StepResult res = env.step(action);
    obs = res.observation;
    if (!res.info.forced_correction && std::fabs(res.info.delta_v) > 1e-9)
      ++out.voluntary_steps;
  }
  out.profit = env.episode_profit();
  out.log = env.trade_log();
  return out;
}

}  // namespace idrl
