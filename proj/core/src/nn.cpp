#include "idrl/nn.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "idrl/errors.hpp"

namespace idrl::nn {
namespace {

using nlohmann::json;

// y (N x out) = x (N x in) * w^T (in x out) + b. Per-row accumulation order
// is independent of the batch size, so batched and per-row forwards agree
// bitwise.
void linear(const Tensor& x, const Tensor& w, const Tensor& b, Tensor& y) {
  y = Tensor(x.rows, w.rows);
  for (int r = 0; r < x.rows; ++r) {
    const double* xr = &x.v[static_cast<std::size_t>(r) * x.cols];
    for (int o = 0; o < w.rows; ++o) {
      const double* wo = &w.v[static_cast<std::size_t>(o) * w.cols];
      double acc = b.v[o];
      for (int i = 0; i < x.cols; ++i) acc += xr[i] * wo[i];
      y.at(r, o) = acc;
    }
  }
}

void tanh_inplace(Tensor& x) {
  for (double& v : x.v) v = std::tanh(v);
}

// Semi-orthogonal init: Gram-Schmidt over the shorter dimension of a
// Gaussian draw, scaled by gain.
Tensor orthogonal_init(int rows, int cols, double gain, Rng& rng) {
  const bool by_rows = rows <= cols;
  const int nvec = by_rows ? rows : cols;
  const int dim = by_rows ? cols : rows;

  std::vector<std::vector<double>> vecs(nvec, std::vector<double>(dim));
  for (auto& v : vecs)
    for (double& x : v) x = rng.normal();

  for (int i = 0; i < nvec; ++i) {
    for (int j = 0; j < i; ++j) {
      double dot = 0.0;
      for (int k = 0; k < dim; ++k) dot += vecs[i][k] * vecs[j][k];
      for (int k = 0; k < dim; ++k) vecs[i][k] -= dot * vecs[j][k];
    }
    double norm = 0.0;
    for (double x : vecs[i]) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-12) norm = 1.0;  // vanishing chance with Gaussian draws
    for (double& x : vecs[i]) x /= norm;
  }

  Tensor w(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      w.at(r, c) = gain * (by_rows ? vecs[r][c] : vecs[c][r]);
  return w;
}

json tensor_to_json(const Tensor& t) {
  return json{{"rows", t.rows}, {"cols", t.cols}, {"data", t.v}};
}

Tensor tensor_from_json(const json& j) {
  Tensor t(j.at("rows").get<int>(), j.at("cols").get<int>());
  t.v = j.at("data").get<std::vector<double>>();
  if (t.v.size() != static_cast<std::size_t>(t.rows) * t.cols)
    throw ParseError("tensor data length mismatch");
  return t;
}

}  // namespace

ActorCriticNet::ActorCriticNet(std::vector<int> layer_sizes,
                               std::uint64_t init_seed, double init_log_std)
    : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw ShapeMismatch("need at least input + one hidden layer");
  for (int s : sizes_)
    if (s <= 0) throw ShapeMismatch("layer sizes must be positive");

  Rng rng(init_seed);
  const double trunk_gain = std::sqrt(2.0);
  for (std::size_t l = 1; l < sizes_.size(); ++l) {
    weights_.push_back(orthogonal_init(sizes_[l], sizes_[l - 1], trunk_gain, rng));
    biases_.push_back(Tensor(1, sizes_[l]));
  }
  const int hidden = sizes_.back();
  policy_w_ = orthogonal_init(1, hidden, 0.01, rng);
  policy_b_ = Tensor(1, 1);
  value_w_ = orthogonal_init(1, hidden, 1.0, rng);
  value_b_ = Tensor(1, 1);
  log_std_ = Tensor(1, 1);
  log_std_.v[0] = std::clamp(init_log_std, kLogStdMin, kLogStdMax);
}

ForwardResult ActorCriticNet::forward(const Tensor& obs,
                                      ForwardCache* cache) const {
  if (obs.cols != sizes_.front())
    throw ShapeMismatch("forward: obs has " + std::to_string(obs.cols) +
                        " columns, net expects " + std::to_string(sizes_.front()));
  for (double x : obs.v)
    if (!std::isfinite(x)) throw NonFiniteInput("forward: non-finite observation");

  if (cache) {
    cache->input = obs;
    cache->hidden.clear();
    cache->valid = true;
  }

  Tensor h = obs, z;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    linear(h, weights_[l], biases_[l], z);
    tanh_inplace(z);
    h = z;
    if (cache) cache->hidden.push_back(h);
  }

  ForwardResult out;
  linear(h, policy_w_, policy_b_, out.mean);
  linear(h, value_w_, value_b_, out.value);
  out.log_std = log_std_.v[0];
  return out;
}

Gradients ActorCriticNet::backward(const ForwardCache& cache,
                                   const Tensor& dmean, const Tensor& dvalue,
                                   double dlog_std) const {
  if (!cache.valid) throw NoForwardPass("backward: cache not filled by forward()");
  if (cache.hidden.size() != weights_.size())
    throw NoForwardPass("backward: cache depth mismatch");
  const int n = cache.input.rows;
  if (dmean.rows != n || dmean.cols != 1 || dvalue.rows != n || dvalue.cols != 1)
    throw ShapeMismatch("backward: head gradients must be N x 1");

  Gradients grads = zero_gradients();
  const std::size_t L = weights_.size();
  // grads layout: [W_0, b_0, ..., W_{L-1}, b_{L-1}, pw, pb, vw, vb, log_std]
  Tensor& g_pw = grads[2 * L + 0];
  Tensor& g_pb = grads[2 * L + 1];
  Tensor& g_vw = grads[2 * L + 2];
  Tensor& g_vb = grads[2 * L + 3];
  Tensor& g_ls = grads[2 * L + 4];

  const Tensor& h_last = cache.hidden.back();
  const int hidden = h_last.cols;

  // Head gradients and the gradient flowing back into the trunk.
  Tensor dh(n, hidden);
  for (int r = 0; r < n; ++r) {
    const double dm = dmean.at(r, 0);
    const double dv = dvalue.at(r, 0);
    g_pb.v[0] += dm;
    g_vb.v[0] += dv;
    for (int c = 0; c < hidden; ++c) {
      const double h = h_last.at(r, c);
      g_pw.v[c] += dm * h;
      g_vw.v[c] += dv * h;
      dh.at(r, c) = dm * policy_w_.v[c] + dv * value_w_.v[c];
    }
  }
  g_ls.v[0] = dlog_std;

  // Trunk, back to front. dz = dh * (1 - h^2).
  for (int l = static_cast<int>(L) - 1; l >= 0; --l) {
    const Tensor& h = cache.hidden[static_cast<std::size_t>(l)];
    const Tensor& h_prev =
        l == 0 ? cache.input : cache.hidden[static_cast<std::size_t>(l) - 1];
    Tensor dz(n, h.cols);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < h.cols; ++c) {
        const double a = h.at(r, c);
        dz.at(r, c) = dh.at(r, c) * (1.0 - a * a);
      }

    Tensor& g_w = grads[2 * static_cast<std::size_t>(l)];
    Tensor& g_b = grads[2 * static_cast<std::size_t>(l) + 1];
    for (int r = 0; r < n; ++r)
      for (int o = 0; o < h.cols; ++o) {
        const double d = dz.at(r, o);
        g_b.v[o] += d;
        for (int i = 0; i < h_prev.cols; ++i)
          g_w.at(o, i) += d * h_prev.at(r, i);
      }

    if (l > 0) {
      const Tensor& w = weights_[static_cast<std::size_t>(l)];
      Tensor dprev(n, h_prev.cols);
      for (int r = 0; r < n; ++r)
        for (int i = 0; i < h_prev.cols; ++i) {
          double acc = 0.0;
          for (int o = 0; o < h.cols; ++o) acc += dz.at(r, o) * w.at(o, i);
          dprev.at(r, i) = acc;
        }
      dh = dprev;
    }
  }
  return grads;
}

std::vector<Tensor*> ActorCriticNet::parameters() {
  std::vector<Tensor*> out;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    out.push_back(&weights_[l]);
    out.push_back(&biases_[l]);
  }
  out.push_back(&policy_w_);
  out.push_back(&policy_b_);
  out.push_back(&value_w_);
  out.push_back(&value_b_);
  out.push_back(&log_std_);
  return out;
}

std::vector<const Tensor*> ActorCriticNet::parameters() const {
  auto* self = const_cast<ActorCriticNet*>(this);
  std::vector<Tensor*> mut = self->parameters();
  return {mut.begin(), mut.end()};
}

Gradients ActorCriticNet::zero_gradients() const {
  Gradients g;
  for (const Tensor* p : parameters()) g.push_back(Tensor(p->rows, p->cols));
  return g;
}

std::size_t ActorCriticNet::parameter_count() const {
  std::size_t n = 0;
  for (const Tensor* p : parameters()) n += p->size();
  return n;
}

void ActorCriticNet::set_log_std(double v) {
  log_std_.v[0] = std::clamp(v, kLogStdMin, kLogStdMax);
}

void ActorCriticNet::clamp_log_std() {
  log_std_.v[0] = std::clamp(log_std_.v[0], kLogStdMin, kLogStdMax);
}

std::string ActorCriticNet::to_json() const {
  json j;
  j["layer_sizes"] = sizes_;
  json tensors = json::array();
  for (const Tensor* p : parameters()) tensors.push_back(tensor_to_json(*p));
  j["tensors"] = tensors;
  return j.dump();
}

ActorCriticNet ActorCriticNet::from_json(const std::string& text) {
  json j = json::parse(text);
  ActorCriticNet net(j.at("layer_sizes").get<std::vector<int>>(), 0);
  const json& tensors = j.at("tensors");
  auto params = net.parameters();
  if (tensors.size() != params.size())
    throw ParseError("checkpoint tensor count mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor t = tensor_from_json(tensors[i]);
    if (t.rows != params[i]->rows || t.cols != params[i]->cols)
      throw ParseError("checkpoint tensor shape mismatch");
    *params[i] = std::move(t);
  }
  net.clamp_log_std();
  return net;
}

Adam::Adam(double lr, double beta1, double beta2, double eps)
    : lr_(lr), b1_(beta1), b2_(beta2), eps_(eps) {}

void Adam::step(const std::vector<Tensor*>& params, const Gradients& grads) {
  if (params.size() != grads.size())
    throw ShapeMismatch("adam: parameter/gradient count mismatch");
  if (m_.empty()) {
    for (const Tensor* p : params) {
      m_.push_back(Tensor(p->rows, p->cols));
      v_.push_back(Tensor(p->rows, p->cols));
    }
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    const Tensor& g = grads[i];
    if (g.rows != p.rows || g.cols != p.cols)
      throw ShapeMismatch("adam: gradient shape mismatch at tensor " +
                          std::to_string(i));
    Tensor& m = m_[i];
    Tensor& v = v_[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      m.v[k] = b1_ * m.v[k] + (1.0 - b1_) * g.v[k];
      v.v[k] = b2_ * v.v[k] + (1.0 - b2_) * g.v[k] * g.v[k];
      const double mhat = m.v[k] / bc1;
      const double vhat = v.v[k] / bc2;
      p.v[k] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
    }
  }
}

void Adam::reset() {
  t_ = 0;
  m_.clear();
  v_.clear();
}

std::string Adam::to_json() const {
  json j;
  j["lr"] = lr_;
  j["beta1"] = b1_;
  j["beta2"] = b2_;
  j["eps"] = eps_;
  j["t"] = t_;
  json ms = json::array(), vs = json::array();
  for (const Tensor& t : m_) ms.push_back(tensor_to_json(t));
  for (const Tensor& t : v_) vs.push_back(tensor_to_json(t));
  j["m"] = ms;
  j["v"] = vs;
  return j.dump();
}

Adam Adam::from_json(const std::string& text) {
  json j = json::parse(text);
  Adam opt(j.at("lr").get<double>(), j.at("beta1").get<double>(),
           j.at("beta2").get<double>(), j.at("eps").get<double>());
  opt.t_ = j.at("t").get<std::int64_t>();
  for (const json& t : j.at("m")) opt.m_.push_back(tensor_from_json(t));
  for (const json& t : j.at("v")) opt.v_.push_back(tensor_from_json(t));
  return opt;
}

}  // namespace idrl::nn
