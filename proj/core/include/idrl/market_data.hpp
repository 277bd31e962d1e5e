#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "idrl/time.hpp"

namespace idrl {

// Episode grid: one volume-weighted average price per minute, from 4 h prior
// to delivery through 30 min prior to delivery, both endpoint minutes
// included (211 grid points).
constexpr int kEpisodeSteps = 211;
constexpr std::int64_t kWindowStartOffset = -4 * kSecondsPerHour;
constexpr std::int64_t kWindowEndOffset = -30 * kSecondsPerMinute;

struct Tick {
  UnixTime timestamp = 0;   // execution time, strictly before delivery
  UnixTime product_id = 0;  // delivery start of the hourly product
  double price = 0.0;       // EUR/MWh
  double volume = 0.0;      // MWh, > 0
};

struct ProductSeries {
  UnixTime product_id = 0;
  std::vector<double> prices;       // kEpisodeSteps minute VWAPs
  std::vector<bool> filled_mask;    // minute had no trade, value carried forward
  double day_ahead_price = 0.0;     // constant within the product

  UnixTime window_start() const { return product_id + kWindowStartOffset; }
  double min_price() const;
  double max_price() const;
};

// Normalization constants derived from the training split only.
struct TrainStats {
  double price_mean = 0.0;
  double price_std = 1.0;
  double wind_std = 0.0;  // std of training wind-forecast values
};

struct DataSplit {
  std::vector<ProductSeries> train;  // outlier-filtered
  std::vector<ProductSeries> test;   // unfiltered
  TrainStats train_stats;
  int n_outliers_removed = 0;
};

// Buckets ticks into left-closed right-open minute bars, computes per-bar
// VWAPs and forward-fills empty minutes. The last VWAP before the window
// seeds the first minute when it has no trade of its own.
// Throws EmptyInput / NoSeedPrice.
ProductSeries aggregate_vwap(std::vector<Tick> ticks, UnixTime product_id);

struct FilterResult {
  std::vector<ProductSeries> kept;
  int n_removed = 0;
};

// Keeps only products whose entire minute series lies within [lower, upper].
FilterResult filter_outlier_products(const std::vector<ProductSeries>& products,
                                     double upper, double lower);

TrainStats compute_price_stats(const std::vector<ProductSeries>& train);

// Chronological split; the outlier filter is applied to the training side
// only and train_stats are computed from the filtered training data.
DataSplit split_train_test(std::vector<ProductSeries> products,
                           double test_fraction, double outlier_upper,
                           double outlier_lower);
DataSplit split_train_test(std::vector<ProductSeries> products,
                           UnixTime test_after, double outlier_upper,
                           double outlier_lower);

// --- tick file ingestion --------------------------------------------------
// CSV with header "timestamp,product,price,volume"; ISO-8601 UTC timestamps.
std::vector<Tick> read_ticks_csv(std::istream& in);
std::vector<Tick> read_ticks_csv_file(const std::string& path);

// CSV with header "product,price".
std::map<UnixTime, double> read_day_ahead_csv(std::istream& in);
std::map<UnixTime, double> read_day_ahead_csv_file(const std::string& path);

}  // namespace idrl
