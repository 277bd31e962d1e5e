#pragma once

#include <cstdint>
#include <vector>

#include "idrl/market_data.hpp"
#include "idrl/rng.hpp"

namespace idrl {

constexpr int kPriceForecastStride = 5;   // minutes between price-forecast updates
constexpr int kWindForecastStride = 15;   // minutes between wind-forecast updates

enum class PathModel { kOrnsteinUhlenbeck, kSawtooth };

// 2018-05-01T00:00:00Z; synthetic deliveries are consecutive hours from here.
constexpr UnixTime kDefaultFirstDelivery = 1525132800;

struct SyntheticConfig {
  int n_products = 64;
  double base_price = 50.0;      // EUR/MWh, OU mean / sawtooth midline
  double mean_reversion = 0.05;  // per minute
  double volatility = 1.0;       // EUR/MWh per sqrt(minute)
  double jump_prob = 0.01;       // per minute
  double jump_scale = 8.0;       // EUR/MWh
  double forecast_noise_std = 0.5;  // EUR/MWh on the 5-min price forecast
  double wind_start = 0.5;       // MWh in [0,1]
  double wind_step_std = 0.02;   // MWh per 15-min block
  std::uint64_t seed = 1;

  PathModel path_model = PathModel::kOrnsteinUhlenbeck;
  double saw_amplitude = 10.0;  // EUR/MWh
  int saw_period = 70;          // minutes; keep divisible by 10 so extrema sit on the 5-min grid
  bool saw_random_phase = true; // random per-product phase on the 5-min grid

  UnixTime first_delivery = kDefaultFirstDelivery;
  double test_fraction = 0.1;
};

// Piecewise-constant forecast tracks aligned with the episode minute grid.
struct ForecastTrack {
  std::vector<double> wind;        // kEpisodeSteps, [0,1], 15-min blocks
  std::vector<double> price_5min;  // kEpisodeSteps, EUR/MWh, 5-min blocks
};

struct ProductData {
  ProductSeries series;
  ForecastTrack forecasts;
};

inline bool has_forecasts(const ProductData& p) {
  return p.forecasts.wind.size() == static_cast<std::size_t>(kEpisodeSteps) &&
         p.forecasts.price_5min.size() == static_cast<std::size_t>(kEpisodeSteps);
}

ProductSeries generate_price_path(const SyntheticConfig& cfg, Rng& rng,
                                  UnixTime product_id);

// True mean of the next five minute prices used by the oracle forecast;
// at the final step the current price stands in for the empty window.
double forward_five_minute_mean(const std::vector<double>& prices, int minute);

// price_5min: forward 5-min mean plus Gaussian noise, refreshed on the 5-min
// grid; wind: clamped random walk on the 15-min grid starting at wind_start.
ForecastTrack generate_forecasts(const ProductSeries& path,
                                 const SyntheticConfig& cfg, Rng& rng);

// n_products consecutive hourly deliveries, one derived RNG stream each.
std::vector<ProductData> generate_products(const SyntheticConfig& cfg);

}  // namespace idrl
