#include "idrl/dataset.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "idrl/errors.hpp"

namespace idrl {
namespace fs = std::filesystem;

std::string product_file_name(UnixTime product_id) {
  return "p_" + format_utc_compact(product_id) + ".csv";
}

void write_product_file(const fs::path& path, const ProductSeries& series,
                        const ForecastTrack* forecasts) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  out << "# idrl product series v1\n";
  out << "# product " << format_utc(series.product_id) << "\n";
  out << "# day_ahead " << series.day_ahead_price << "\n";
  if (forecasts) {
    out << "t,price,filled,wind,price5\n";
    for (int i = 0; i < kEpisodeSteps; ++i) {
      out << i << ',' << series.prices[i] << ',' << (series.filled_mask[i] ? 1 : 0)
          << ',' << forecasts->wind[i] << ',' << forecasts->price_5min[i] << "\n";
    }
  } else {
    out << "t,price,filled\n";
    for (int i = 0; i < kEpisodeSteps; ++i) {
      out << i << ',' << series.prices[i] << ','
          << (series.filled_mask[i] ? 1 : 0) << "\n";
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

ProductData read_product_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  ProductData data;
  data.series.prices.assign(kEpisodeSteps, 0.0);
  data.series.filled_mask.assign(kEpisodeSteps, false);

  std::string line;
  bool have_product = false, have_header = false, with_forecasts = false;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string key;
      meta >> key;
      if (key == "product") {
        std::string value;
        meta >> value;
        data.series.product_id = parse_utc(value);
        have_product = true;
      } else if (key == "day_ahead") {
        meta >> data.series.day_ahead_price;
      }
      continue;
    }
    if (!have_header) {
      have_header = true;
      with_forecasts = line.find("wind") != std::string::npos;
      if (with_forecasts) {
        data.forecasts.wind.assign(kEpisodeSteps, 0.0);
        data.forecasts.price_5min.assign(kEpisodeSteps, 0.0);
      }
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != (with_forecasts ? 5u : 3u))
      throw ParseError(path.string() + ": bad row '" + line + "'");
    const int t = std::stoi(f[0]);
    if (t < 0 || t >= kEpisodeSteps || t != rows)
      throw ParseError(path.string() + ": unexpected step index " + f[0]);
    data.series.prices[t] = std::stod(f[1]);
    data.series.filled_mask[t] = f[2] == "1";
    if (with_forecasts) {
      data.forecasts.wind[t] = std::stod(f[3]);
      data.forecasts.price_5min[t] = std::stod(f[4]);
    }
    ++rows;
  }
  if (!have_product) throw ParseError(path.string() + ": missing product header");
  if (rows != kEpisodeSteps)
    throw IncompleteProduct(path.string() + ": " + std::to_string(rows) +
                            " rows, expected " + std::to_string(kEpisodeSteps));
  return data;
}

void write_train_stats(const fs::path& path, const TrainStats& stats,
                       int n_train, int n_test, int n_outliers_removed) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  out << "price_mean " << stats.price_mean << "\n";
  out << "price_std " << stats.price_std << "\n";
  out << "wind_std " << stats.wind_std << "\n";
  out << "n_train " << n_train << "\n";
  out << "n_test " << n_test << "\n";
  out << "n_outliers_removed " << n_outliers_removed << "\n";
}

TrainStats read_train_stats(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  TrainStats stats;
  std::string key;
  double value;
  while (in >> key >> value) {
    if (key == "price_mean") stats.price_mean = value;
    else if (key == "price_std") stats.price_std = value;
    else if (key == "wind_std") stats.wind_std = value;
  }
  return stats;
}

void write_dataset(const fs::path& dir, const Dataset& data) {
  fs::create_directories(dir);
  std::ofstream manifest(dir / "split.csv");
  if (!manifest) throw IoError("cannot write split manifest in " + dir.string());
  manifest << "role,product\n";
  auto dump = [&](const std::vector<ProductData>& products, const char* role) {
    for (const ProductData& p : products) {
      const ForecastTrack* track = has_forecasts(p) ? &p.forecasts : nullptr;
      write_product_file(dir / product_file_name(p.series.product_id), p.series,
                         track);
      manifest << role << ',' << format_utc(p.series.product_id) << "\n";
    }
  };
  dump(data.train, "train");
  dump(data.test, "test");
  write_train_stats(dir / "train_stats.txt", data.stats,
                    static_cast<int>(data.train.size()),
                    static_cast<int>(data.test.size()), data.n_outliers_removed);
}

namespace {

double wind_std_of(const std::vector<ProductData>& train) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : train) {
    for (double w : p.forecasts.wind) sum += w;
    n += p.forecasts.wind.size();
  }
  if (n == 0) return 0.0;
  const double mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (const auto& p : train) {
    for (double w : p.forecasts.wind) sq += (w - mean) * (w - mean);
  }
  return std::sqrt(sq / static_cast<double>(n));
}

}  // namespace

Dataset load_dataset(const fs::path& dir, const SyntheticConfig& forecast_cfg,
                     std::uint64_t forecast_seed) {
  std::ifstream manifest(dir / "split.csv");
  if (!manifest) throw IoError("no split.csv in " + dir.string());

  Dataset data;
  std::string line;
  bool header_seen = false;
  while (std::getline(manifest, line)) {
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("role", 0) == 0) continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 2) throw ParseError("split.csv: bad row '" + line + "'");
    const UnixTime id = parse_utc(f[1]);
    ProductData p = read_product_file(dir / product_file_name(id));
    if (!has_forecasts(p)) {
      Rng rng(Rng::mix(forecast_seed, static_cast<std::uint64_t>(id)));
      p.forecasts = generate_forecasts(p.series, forecast_cfg, rng);
    }
    if (f[0] == "train")
      data.train.push_back(std::move(p));
    else if (f[0] == "test")
      data.test.push_back(std::move(p));
    else
      throw ParseError("split.csv: unknown role '" + f[0] + "'");
  }
  if (data.train.empty() && data.test.empty())
    throw InsufficientData("empty dataset in " + dir.string());

  data.stats = read_train_stats(dir / "train_stats.txt");
  data.stats.wind_std = wind_std_of(data.train);
  return data;
}

}  // namespace idrl
