#include "idrl/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "idrl/errors.hpp"

namespace idrl {

double ProductSeries::min_price() const {
  return *std::min_element(prices.begin(), prices.end());
}

double ProductSeries::max_price() const {
  return *std::max_element(prices.begin(), prices.end());
}

ProductSeries aggregate_vwap(std::vector<Tick> ticks, UnixTime product_id) {
  if (ticks.empty()) throw EmptyInput("aggregate_vwap: no ticks");

  // Deterministic order for duplicate timestamps.
  std::stable_sort(ticks.begin(), ticks.end(),
                   [](const Tick& a, const Tick& b) {
                     return a.timestamp < b.timestamp;
                   });

  const UnixTime window_start = product_id + kWindowStartOffset;
  const UnixTime window_end = product_id + kWindowEndOffset;

  ProductSeries out;
  out.product_id = product_id;
  out.prices.assign(kEpisodeSteps, 0.0);
  out.filled_mask.assign(kEpisodeSteps, false);

  // Per-minute accumulators over the window plus the seeding VWAP from the
  // most recent traded minute before the window.
  std::vector<double> pv(kEpisodeSteps, 0.0), vol(kEpisodeSteps, 0.0);
  double seed_pv = 0.0, seed_vol = 0.0;
  UnixTime seed_minute = 0;
  bool have_seed = false;

  for (const Tick& t : ticks) {
    if (t.volume <= 0.0 || !std::isfinite(t.price) || !std::isfinite(t.volume))
      throw ParseError("aggregate_vwap: invalid tick (volume must be > 0)");
    if (t.timestamp >= product_id)
      throw ParseError("aggregate_vwap: tick at or after delivery start");
    const UnixTime minute = t.timestamp - (t.timestamp % kSecondsPerMinute);
    if (minute < window_start) {
      if (!have_seed || minute > seed_minute) {
        seed_pv = 0.0;
        seed_vol = 0.0;
        seed_minute = minute;
        have_seed = true;
      }
      if (minute == seed_minute) {
        seed_pv += t.price * t.volume;
        seed_vol += t.volume;
      }
      continue;
    }
    if (minute > window_end) continue;  // inside the last 30 min, out of scope
    const int idx = static_cast<int>((minute - window_start) / kSecondsPerMinute);
    pv[idx] += t.price * t.volume;
    vol[idx] += t.volume;
  }

  double last = 0.0;
  bool have_last = false;
  if (have_seed) {
    last = seed_pv / seed_vol;
    have_last = true;
  }
  for (int i = 0; i < kEpisodeSteps; ++i) {
    if (vol[i] > 0.0) {
      last = pv[i] / vol[i];
      have_last = true;
      out.prices[i] = last;
    } else {
      if (!have_last)
        throw NoSeedPrice("aggregate_vwap: no trade at or before window start for " +
                          format_utc(product_id));
      out.prices[i] = last;
      out.filled_mask[i] = true;
    }
  }
  return out;
}

FilterResult filter_outlier_products(const std::vector<ProductSeries>& products,
                                     double upper, double lower) {
  FilterResult res;
  res.kept.reserve(products.size());
  for (const ProductSeries& p : products) {
    if (p.max_price() > upper || p.min_price() < lower) {
      ++res.n_removed;
    } else {
      res.kept.push_back(p);
    }
  }
  return res;
}

TrainStats compute_price_stats(const std::vector<ProductSeries>& train) {
  TrainStats stats;
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : train) {
    for (double x : p.prices) sum += x;
    n += p.prices.size();
  }
  if (n == 0) throw EmptyInput("compute_price_stats: no prices");
  stats.price_mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (const auto& p : train) {
    for (double x : p.prices) {
      const double d = x - stats.price_mean;
      sq += d * d;
    }
  }
  stats.price_std = std::sqrt(sq / static_cast<double>(n));
  if (stats.price_std <= 0.0) stats.price_std = 1.0;
  return stats;
}

namespace {

DataSplit finish_split(std::vector<ProductSeries> train,
                       std::vector<ProductSeries> test, double outlier_upper,
                       double outlier_lower) {
  if (train.empty() || test.empty())
    throw InsufficientData("split_train_test: empty train or test side");
  DataSplit split;
  FilterResult filtered =
      filter_outlier_products(train, outlier_upper, outlier_lower);
  split.train = std::move(filtered.kept);
  split.n_outliers_removed = filtered.n_removed;
  split.test = std::move(test);
  if (split.train.empty())
    throw InsufficientData("split_train_test: outlier filter removed all training products");
  split.train_stats = compute_price_stats(split.train);
  return split;
}

void sort_by_delivery(std::vector<ProductSeries>& products) {
  std::stable_sort(products.begin(), products.end(),
                   [](const ProductSeries& a, const ProductSeries& b) {
                     return a.product_id < b.product_id;
                   });
}

}  // namespace

DataSplit split_train_test(std::vector<ProductSeries> products,
                           double test_fraction, double outlier_upper,
                           double outlier_lower) {
  if (products.empty()) throw InsufficientData("split_train_test: no products");
  if (test_fraction <= 0.0 || test_fraction >= 1.0)
    throw InsufficientData("split_train_test: test_fraction outside (0,1)");
  sort_by_delivery(products);
  const std::size_t n_test = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::floor(test_fraction * static_cast<double>(products.size()))));
  if (n_test >= products.size())
    throw InsufficientData("split_train_test: nothing left for training");
  std::vector<ProductSeries> train(products.begin(),
                                   products.end() - static_cast<long>(n_test));
  std::vector<ProductSeries> test(products.end() - static_cast<long>(n_test),
                                  products.end());
  return finish_split(std::move(train), std::move(test), outlier_upper,
                      outlier_lower);
}

DataSplit split_train_test(std::vector<ProductSeries> products,
                           UnixTime test_after, double outlier_upper,
                           double outlier_lower) {
  if (products.empty()) throw InsufficientData("split_train_test: no products");
  sort_by_delivery(products);
  std::vector<ProductSeries> train, test;
  for (auto& p : products) {
    if (p.product_id >= test_after)
      test.push_back(std::move(p));
    else
      train.push_back(std::move(p));
  }
  return finish_split(std::move(train), std::move(test), outlier_upper,
                      outlier_lower);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
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

double parse_double(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

}  // namespace

std::vector<Tick> read_ticks_csv(std::istream& in) {
  std::vector<Tick> ticks;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("timestamp", 0) == 0) continue;  // header row
    }
    const auto f = split_csv_line(line);
    if (f.size() != 4)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected timestamp,product,price,volume");
    Tick t;
    t.timestamp = parse_utc(f[0]);
    t.product_id = parse_utc(f[1]);
    t.price = parse_double(f[2], line_no);
    t.volume = parse_double(f[3], line_no);
    ticks.push_back(t);
  }
  return ticks;
}

std::vector<Tick> read_ticks_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ticks file " + path);
  return read_ticks_csv(in);
}

std::map<UnixTime, double> read_day_ahead_csv(std::istream& in) {
  std::map<UnixTime, double> out;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("product", 0) == 0) continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 2)
      throw ParseError("line " + std::to_string(line_no) + ": expected product,price");
    out[parse_utc(f[0])] = parse_double(f[1], line_no);
  }
  return out;
}

std::map<UnixTime, double> read_day_ahead_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open day-ahead file " + path);
  return read_day_ahead_csv(in);
}

}  // namespace idrl
