#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "idrl/synthetic.hpp"

namespace idrl {

constexpr int kObservationSize = 12;
constexpr int kTerminalStep = kEpisodeSteps - 1;  // T = 210

enum class EnvMode { kTraining, kEvaluation };

struct EnvOptions {
  double fee = 0.2;                  // EUR/MWh transaction cost
  double volume_penalty_coef = 0.1;  // terminal quadratic penalty (training mode)
  bool clamp_actions = true;         // false: out-of-range actions raise AgentViolation
};

// Normalized 12-feature state vector. Price-denominated entries are z-scored
// with the training-set price mean/std; bounded entries pass through.
struct Observation {
  double price;            // p_t
  double prev_price;       // p_{t-1}
  double day_ahead;        // constant per product
  double forecast5;        // 5-min price forecast
  double d;                // p_t - forecast
  double prev_d;
  double portfolio_price;  // VWAP of the net sold position
  double marker;           // -1/0/1 from the raw d signs
  double wind;             // eta_t in [0,1]
  double volume;           // a_{t-1} in [0,1]
  double vol_diff;         // eta_t - a_{t-1}
  double tte;              // 1 - t/T

  std::array<double, kObservationSize> to_array() const;
};

// Raw (unnormalized) state view for rule-based agents.
struct RawStateView {
  int t = 0;
  double price = 0, prev_price = 0, day_ahead = 0;
  double forecast5 = 0, prev_forecast5 = 0;
  double d = 0, prev_d = 0;
  double portfolio_price = 0;
  double wind = 0;
  double volume = 0;  // a_{t-1}
};

struct StepInfo {
  double raw_price = 0;
  double delta_v = 0;
  double fee_paid = 0;
  double reward_trade = 0;
  double reward_volume = 0;
  bool clamped = false;
  bool forced_correction = false;
};

struct StepResult {
  Observation observation;
  double reward = 0;
  bool done = false;
  StepInfo info;
};

// One row per step call, including zero-volume holds.
struct TradeRecord {
  int t = 0;
  double price = 0;
  double action = 0;
  double delta_v = 0;
  double fee = 0;
  double reward = 0;
};

// Single-product trading episode over the 211-minute grid. One instance is
// single-threaded; run one instance per worker for parallel rollouts.
class TradingEnv {
public:
  TradingEnv(EnvOptions opts, TrainStats stats);

  // Copies the product and rewinds to t = 0 with zero volume and cash.
  Observation reset(const ProductData& product, EnvMode mode);

  StepResult step(double action);

  Observation observe() const;
  RawStateView raw_view() const;

  bool done() const { return done_; }
  int current_step() const { return t_; }
  double volume() const { return volume_; }
  double cash() const { return cash_; }
  double fees_paid() const { return fees_paid_; }
  double portfolio_price() const { return portfolio_price_; }
  EnvMode mode() const { return mode_; }

  const std::vector<TradeRecord>& trade_log() const { return log_; }

  // Net profit of the completed episode including the terminal correction.
  double episode_profit() const;

private:
  double z(double price_like) const;

  EnvOptions opts_;
  TrainStats stats_;
  ProductData product_;
  EnvMode mode_ = EnvMode::kTraining;
  bool has_product_ = false;

  int t_ = 0;
  bool done_ = false;
  double volume_ = 0.0;  // a_{t-1}
  double portfolio_price_ = 0.0;
  double cash_ = 0.0;
  double fees_paid_ = 0.0;
  std::vector<TradeRecord> log_;
};

// Profit from a full per-step trade log (kEpisodeSteps rows).
double episode_profit(const std::vector<TradeRecord>& log);

// Rows "t,price,action,delta_v,fee,reward".
void write_trade_log_csv(std::ostream& out, const std::vector<TradeRecord>& log);

}  // namespace idrl
