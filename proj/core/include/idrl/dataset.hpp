#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "idrl/synthetic.hpp"

namespace idrl {

struct Dataset {
  std::vector<ProductData> train;
  std::vector<ProductData> test;
  TrainStats stats;
  int n_outliers_removed = 0;
};

// One product per file. Leading "# key value" metadata lines, then CSV rows
// "t,price,filled[,wind,price5]"; the forecast columns are optional so that
// ingested exchange data (which has none) shares the format with synthetic
// output.
void write_product_file(const std::filesystem::path& path,
                        const ProductSeries& series,
                        const ForecastTrack* forecasts);
ProductData read_product_file(const std::filesystem::path& path);

std::string product_file_name(UnixTime product_id);

void write_train_stats(const std::filesystem::path& path, const TrainStats& stats,
                       int n_train, int n_test, int n_outliers_removed);
TrainStats read_train_stats(const std::filesystem::path& path);

// Writes products, split.csv ("role,product") and train_stats.txt into dir.
void write_dataset(const std::filesystem::path& dir, const Dataset& data);

// Loads a dataset directory. Products without stored forecast tracks get
// synthetic ones derived from (forecast_cfg, forecast_seed); wind_std is
// recomputed from the training tracks actually in use.
Dataset load_dataset(const std::filesystem::path& dir,
                     const SyntheticConfig& forecast_cfg,
                     std::uint64_t forecast_seed);

}  // namespace idrl
