#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idrl/rng.hpp"

namespace idrl::nn {

// Dense row-major matrix in f64; the only tensor shape the stack needs.
struct Tensor {
  int rows = 0, cols = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
  std::size_t size() const { return v.size(); }
  void fill(double x) { std::fill(v.begin(), v.end(), x); }
};

struct ForwardResult {
  Tensor mean;     // N x 1 policy mean
  Tensor value;    // N x 1 state value
  double log_std;  // state-independent policy log stddev
};

// Activation record for backward(); owned by the caller so a shared const
// net can serve many threads.
struct ForwardCache {
  Tensor input;
  std::vector<Tensor> hidden;  // post-tanh activations per trunk layer
  bool valid = false;
};

// Parameter gradients, aligned with ActorCriticNet::parameters().
using Gradients = std::vector<Tensor>;

constexpr double kLogStdMin = -20.0;
constexpr double kLogStdMax = 2.0;

// Actor-critic MLP: a tanh trunk shared by a linear policy-mean head and a
// linear value head, plus a free log-std parameter for the 1-D Gaussian
// policy. All arithmetic is double precision.
class ActorCriticNet {
public:
  // layer_sizes = {input, hidden...}; e.g. {12, 64, 64, 32}.
  ActorCriticNet(std::vector<int> layer_sizes, std::uint64_t init_seed,
                 double init_log_std = 0.0);

  int input_size() const { return sizes_.front(); }
  const std::vector<int>& layer_sizes() const { return sizes_; }

  // obs: N x input. Throws NonFiniteInput / ShapeMismatch.
  ForwardResult forward(const Tensor& obs, ForwardCache* cache = nullptr) const;

  // dmean/dvalue: N x 1 loss gradients w.r.t. the heads; dlog_std scalar.
  // Throws NoForwardPass if the cache was not produced by forward().
  Gradients backward(const ForwardCache& cache, const Tensor& dmean,
                     const Tensor& dvalue, double dlog_std) const;

  std::vector<Tensor*> parameters();
  std::vector<const Tensor*> parameters() const;
  Gradients zero_gradients() const;
  std::size_t parameter_count() const;

  double log_std() const { return log_std_.v[0]; }
  void set_log_std(double v);
  void clamp_log_std();

  std::string to_json() const;
  static ActorCriticNet from_json(const std::string& text);

private:
  std::vector<int> sizes_;
  std::vector<Tensor> weights_;  // trunk, out x in
  std::vector<Tensor> biases_;   // 1 x out
  Tensor policy_w_, policy_b_;   // 1 x hidden, 1 x 1
  Tensor value_w_, value_b_;
  Tensor log_std_;               // 1 x 1, kept within [kLogStdMin, kLogStdMax]
};

// Adam with bias correction; state is sized lazily on the first step.
class Adam {
public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8);

  void step(const std::vector<Tensor*>& params, const Gradients& grads);

  double learning_rate() const { return lr_; }
  void set_learning_rate(double lr) { lr_ = lr; }
  std::int64_t steps_done() const { return t_; }
  void reset();

  std::string to_json() const;
  static Adam from_json(const std::string& text);

private:
  double lr_, b1_, b2_, eps_;
  std::int64_t t_ = 0;
  std::vector<Tensor> m_, v_;
};

}  // namespace idrl::nn
