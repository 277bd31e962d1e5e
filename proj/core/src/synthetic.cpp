#include "idrl/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "idrl/errors.hpp"

namespace idrl {
namespace {

double sawtooth_value(const SyntheticConfig& cfg, int minute, int phase) {
  const int period = std::max(2, cfg.saw_period);
  const int x = (minute + phase) % period;
  const double half = period / 2.0;
  // Triangle wave peaking at x = 0 and bottoming at x = period/2.
  if (x <= half)
    return cfg.base_price + cfg.saw_amplitude * (1.0 - 2.0 * x / half);
  return cfg.base_price + cfg.saw_amplitude * (2.0 * (x - half) / half - 1.0);
}

}  // namespace

ProductSeries generate_price_path(const SyntheticConfig& cfg, Rng& rng,
                                  UnixTime product_id) {
  ProductSeries out;
  out.product_id = product_id;
  out.prices.assign(kEpisodeSteps, 0.0);
  out.filled_mask.assign(kEpisodeSteps, false);
  out.day_ahead_price = cfg.base_price;

  if (cfg.path_model == PathModel::kSawtooth) {
    int phase = 0;
    if (cfg.saw_random_phase) {
      const int slots = std::max(1, cfg.saw_period / kPriceForecastStride);
      phase = kPriceForecastStride *
              static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(slots)));
    }
    for (int m = 0; m < kEpisodeSteps; ++m)
      out.prices[m] = sawtooth_value(cfg, m, phase);
    return out;
  }

  // Discrete Ornstein-Uhlenbeck with optional jump mixture, started at the
  // long-run mean.
  double p = cfg.base_price;
  out.prices[0] = p;
  for (int m = 1; m < kEpisodeSteps; ++m) {
    p += cfg.mean_reversion * (cfg.base_price - p) + cfg.volatility * rng.normal();
    if (cfg.jump_prob > 0.0 && rng.bernoulli(cfg.jump_prob))
      p += cfg.jump_scale * rng.normal();
    out.prices[m] = p;
  }
  return out;
}

double forward_five_minute_mean(const std::vector<double>& prices, int minute) {
  const int last = static_cast<int>(prices.size()) - 1;
  const int from = minute + 1;
  const int to = std::min(minute + kPriceForecastStride, last);
  if (from > last) return prices[last];
  double sum = 0.0;
  for (int i = from; i <= to; ++i) sum += prices[i];
  return sum / static_cast<double>(to - from + 1);
}

ForecastTrack generate_forecasts(const ProductSeries& path,
                                 const SyntheticConfig& cfg, Rng& rng) {
  if (path.prices.size() != static_cast<std::size_t>(kEpisodeSteps))
    throw IncompleteProduct("generate_forecasts: price path incomplete");

  ForecastTrack track;
  track.wind.assign(kEpisodeSteps, 0.0);
  track.price_5min.assign(kEpisodeSteps, 0.0);

  double forecast = 0.0;
  for (int m = 0; m < kEpisodeSteps; ++m) {
    if (m % kPriceForecastStride == 0) {
      forecast = forward_five_minute_mean(path.prices, m);
      if (cfg.forecast_noise_std > 0.0)
        forecast += cfg.forecast_noise_std * rng.normal();
    }
    track.price_5min[m] = forecast;
  }

  double wind = std::clamp(cfg.wind_start, 0.0, 1.0);
  for (int m = 0; m < kEpisodeSteps; ++m) {
    if (m > 0 && m % kWindForecastStride == 0) {
      if (cfg.wind_step_std > 0.0)
        wind = std::clamp(wind + cfg.wind_step_std * rng.normal(), 0.0, 1.0);
    }
    track.wind[m] = wind;
  }
  return track;
}

std::vector<ProductData> generate_products(const SyntheticConfig& cfg) {
  std::vector<ProductData> out;
  out.reserve(static_cast<std::size_t>(std::max(0, cfg.n_products)));
  for (int k = 0; k < cfg.n_products; ++k) {
    Rng rng(Rng::mix(cfg.seed, static_cast<std::uint64_t>(k)));
    ProductData p;
    p.series = generate_price_path(cfg, rng, cfg.first_delivery + k * kSecondsPerHour);
    p.forecasts = generate_forecasts(p.series, cfg, rng);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace idrl
