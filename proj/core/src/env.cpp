#include "idrl/env.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "idrl/errors.hpp"

namespace idrl {

std::array<double, kObservationSize> Observation::to_array() const {
  return {price,   prev_price, day_ahead, forecast5, d,        prev_d,
          portfolio_price, marker, wind, volume, vol_diff, tte};
}

TradingEnv::TradingEnv(EnvOptions opts, TrainStats stats)
    : opts_(opts), stats_(stats) {
  log_.reserve(kEpisodeSteps);
}

Observation TradingEnv::reset(const ProductData& product, EnvMode mode) {
  const auto n = static_cast<std::size_t>(kEpisodeSteps);
  if (product.series.prices.size() != n || product.forecasts.wind.size() != n ||
      product.forecasts.price_5min.size() != n) {
    throw IncompleteProduct("reset: product " + format_utc(product.series.product_id) +
                            " lacks a full series or forecast track");
  }
  for (int i = 0; i < kEpisodeSteps; ++i) {
    if (!std::isfinite(product.series.prices[i]) ||
        !std::isfinite(product.forecasts.wind[i]) ||
        !std::isfinite(product.forecasts.price_5min[i]))
      throw IncompleteProduct("reset: non-finite value in product data");
  }
  product_ = product;
  mode_ = mode;
  has_product_ = true;
  t_ = 0;
  done_ = false;
  volume_ = 0.0;
  portfolio_price_ = 0.0;
  cash_ = 0.0;
  fees_paid_ = 0.0;
  log_.clear();
  return observe();
}

double TradingEnv::z(double price_like) const {
  return (price_like - stats_.price_mean) /
         (stats_.price_std > 0.0 ? stats_.price_std : 1.0);
}

RawStateView TradingEnv::raw_view() const {
  if (!has_product_) throw IncompleteProduct("raw_view: reset() first");
  const int t = std::min(t_, kTerminalStep);
  const int prev = std::max(t - 1, 0);
  RawStateView v;
  v.t = t;
  v.price = product_.series.prices[t];
  v.prev_price = product_.series.prices[prev];
  v.day_ahead = product_.series.day_ahead_price;
  v.forecast5 = product_.forecasts.price_5min[t];
  v.prev_forecast5 = product_.forecasts.price_5min[prev];
  v.d = v.price - v.forecast5;
  v.prev_d = v.prev_price - v.prev_forecast5;
  v.portfolio_price = portfolio_price_;
  v.wind = product_.forecasts.wind[t];
  v.volume = volume_;
  return v;
}

Observation TradingEnv::observe() const {
  const RawStateView v = raw_view();
  Observation o;
  o.price = z(v.price);
  o.prev_price = z(v.prev_price);
  o.day_ahead = z(v.day_ahead);
  o.forecast5 = z(v.forecast5);
  o.d = z(v.d);
  o.prev_d = z(v.prev_d);
  o.portfolio_price = z(v.portfolio_price);
  o.marker = (v.d > 0.0 && v.prev_d > 0.0) ? 1.0
             : (v.d < 0.0 && v.prev_d < 0.0) ? -1.0
                                             : 0.0;
  o.wind = v.wind;
  o.volume = v.volume;
  o.vol_diff = v.wind - v.volume;
  o.tte = 1.0 - static_cast<double>(std::min(t_, kTerminalStep)) /
                    static_cast<double>(kTerminalStep);
  return o;
}

StepResult TradingEnv::step(double action) {
  if (!has_product_) throw IncompleteProduct("step: reset() first");
  if (done_) throw EpisodeDone("step after terminal step of " +
                               format_utc(product_.series.product_id));
  if (!std::isfinite(action))
    throw AgentViolation("step: non-finite action");

  StepInfo info;
  double a = action;
  if (a < 0.0 || a > 1.0) {
    if (!opts_.clamp_actions)
      throw AgentViolation("step: action " + std::to_string(action) +
                           " outside [0,1]");
    a = std::clamp(a, 0.0, 1.0);
    info.clamped = true;
  }

  const bool terminal = t_ == kTerminalStep;
  const double eta_T = product_.forecasts.wind[kTerminalStep];
  if (terminal && mode_ == EnvMode::kEvaluation) {
    // Ground rule: trading ends on the last value of the wind forecast.
    a = eta_T;
    info.forced_correction = true;
  }

  const double price = product_.series.prices[t_];
  const double delta_v = a - volume_;
  const double fee_paid = opts_.fee * std::fabs(delta_v);
  const double reward_trade = price * delta_v - fee_paid;

  cash_ += reward_trade;
  fees_paid_ += fee_paid;

  // Portfolio price is the VWAP of the net sold position: selling averages
  // the new price in, buying back leaves it unchanged, empty position is 0.
  if (delta_v > 0.0)
    portfolio_price_ =
        (portfolio_price_ * volume_ + price * delta_v) / (volume_ + delta_v);
  volume_ = a;
  if (volume_ == 0.0) portfolio_price_ = 0.0;

  double reward_volume = 0.0;
  if (terminal && mode_ == EnvMode::kTraining) {
    const double dev = eta_T - a;
    reward_volume = -opts_.volume_penalty_coef * dev * dev;
  }

  const double reward = reward_trade + reward_volume;

  info.raw_price = price;
  info.delta_v = delta_v;
  info.fee_paid = fee_paid;
  info.reward_trade = reward_trade;
  info.reward_volume = reward_volume;

  log_.push_back({t_, price, a, delta_v, fee_paid, reward});

  done_ = terminal;
  if (!terminal) ++t_;

  StepResult res;
  res.observation = observe();
  res.reward = reward;
  res.done = done_;
  res.info = info;
  return res;
}

double TradingEnv::episode_profit() const {
  if (!done_) throw IncompleteEpisode("episode_profit: episode not finished");
  return idrl::episode_profit(log_);
}

double episode_profit(const std::vector<TradeRecord>& log) {
  if (log.size() != static_cast<std::size_t>(kEpisodeSteps))
    throw IncompleteEpisode("episode_profit: expected " +
                            std::to_string(kEpisodeSteps) + " records, got " +
                            std::to_string(log.size()));
  double profit = 0.0;
  for (const TradeRecord& r : log)
    profit += r.price * r.delta_v - r.fee;
  return profit;
}

void write_trade_log_csv(std::ostream& out, const std::vector<TradeRecord>& log) {
  out << "t,price,action,delta_v,fee,reward\n";
  out.precision(17);
  for (const TradeRecord& r : log)
    out << r.t << ',' << r.price << ',' << r.action << ',' << r.delta_v << ','
        << r.fee << ',' << r.reward << "\n";
}

}  // namespace idrl
