#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "idrl/agents.hpp"
#include "idrl/nn.hpp"

namespace idrl {

// PPO hyperparameters; defaults are the tuned values the training setup
// ships with. minibatch_size must divide train_batch, and train_batch must
// be a whole number of episodes.
struct HyperParams {
  double clip = 0.432;
  double entropy_coef = 0.001433;
  double gamma = 0.0;
  double kl_coef = 0.5;
  double learning_rate = 1e-4;
  int sgd_epochs = 7;
  int minibatch_size = 422;
  int train_batch = 2532;
  double vf_clip = 10.0;
  double vf_loss_coef = 0.984103;
  double gae_lambda = 1.0;

  int n_actors() const { return train_batch / kEpisodeSteps; }
  void validate() const;

  std::map<std::string, double> to_map() const;
  void apply(const std::map<std::string, double>& values);
};

// Flat rollout storage; actor a owns rows [a*211, (a+1)*211).
struct RolloutBatch {
  nn::Tensor obs;                     // N x 12
  std::vector<double> action;         // unclamped policy samples
  std::vector<double> behavior_logp;  // recorded before any update
  std::vector<double> behavior_mean;
  double behavior_log_std = 0.0;
  std::vector<double> reward;
  std::vector<double> value;
  std::vector<std::uint8_t> done;
  std::vector<double> advantage;      // normalized per batch
  std::vector<double> advantage_raw;  // pre-normalization GAE
  std::vector<double> ret;            // value targets

  int size() const { return static_cast<int>(reward.size()); }
};

struct UpdateStats {
  double policy_loss = 0;
  double vf_loss = 0;
  double kl = 0;
  double entropy = 0;
  double clip_fraction = 0;
  // max |tau - 1| over the very first minibatch, before any optimizer step;
  // nonzero here means behavior log-probs were recomputed from updated
  // parameters somewhere.
  double first_minibatch_max_ratio_dev = 0;
  int minibatches = 0;
};

struct IterationStats {
  int iteration = 0;
  double mean_validation_profit = 0;
  UpdateStats update;
  double seconds = 0;
};

// --- Gaussian policy pieces ------------------------------------------------
double gaussian_log_prob(double x, double mean, double log_std);
double gaussian_entropy(double log_std);                       // 0.5*log(2*pi*e) + log_std
double gaussian_kl(double mean_old, double log_std_old,
                   double mean_new, double log_std_new);       // KL(old || new)
// min(ratio * adv, clip(ratio, 1-eps, 1+eps) * adv)
double clipped_surrogate_term(double ratio, double advantage, double eps);

// --- rollout / advantage / update -------------------------------------------
// Runs train_batch/211 actors, each one full episode on a product drawn
// uniformly from `products`. Deterministic for a fixed seed regardless of
// the executing thread count.
RolloutBatch collect_rollouts(const nn::ActorCriticNet& policy,
                              std::span<const ProductData> products,
                              const TrainStats& stats, const EnvOptions& env_opts,
                              const HyperParams& hp, std::uint64_t seed,
                              int threads);

// Generalized advantage estimation over episode segments, then batch-wide
// normalization into `advantage` (raw values kept in `advantage_raw`).
void compute_advantages(RolloutBatch& batch, double gamma, double lambda);

// Total PPO loss on the indexed minibatch:
//   -L_clip + vf_loss_coef * L_vf + kl_coef * KL(old||new) - entropy_coef * H
// with L_vf the squared value error clamped at vf_clip.
double ppo_loss(const nn::ActorCriticNet& net, const RolloutBatch& batch,
                std::span<const int> idx, const HyperParams& hp);

// Same loss plus analytic parameter gradients.
double ppo_loss_grad(const nn::ActorCriticNet& net, const RolloutBatch& batch,
                     std::span<const int> idx, const HyperParams& hp,
                     nn::Gradients* grads, UpdateStats* stats = nullptr);

// sgd_epochs passes of shuffled minibatches, one Adam step each.
// Throws NonFiniteLoss identifying the offending minibatch.
UpdateStats ppo_update(RolloutBatch& batch, nn::ActorCriticNet& net,
                       nn::Adam& opt, const HyperParams& hp, Rng& rng);

// --- trainer -----------------------------------------------------------------
struct TrainerOptions {
  HyperParams hp;
  EnvOptions env;
  std::vector<int> hidden = {64, 64, 32};
  double init_log_std = 0.0;
  int rollout_threads = 0;  // 0: one thread per actor up to hardware limit
  std::uint64_t seed = 1;
};

class PpoTrainer {
public:
  PpoTrainer(std::vector<ProductData> train_products,
             std::vector<ProductData> validation_products, TrainStats stats,
             TrainerOptions opts);

  IterationStats run_iteration();
  double validation_profit();  // eval-mode mean profit, deterministic policy

  int iterations_done() const { return iteration_; }
  const nn::ActorCriticNet& net() const { return net_; }
  const nn::Adam& optimizer() const { return opt_; }
  const TrainerOptions& options() const { return opts_; }

  HyperParams hyperparams() const { return opts_.hp; }
  void set_hyperparams(const HyperParams& hp);

  std::string snapshot() const;       // net + optimizer + iteration count
  void restore(const std::string& blob);

private:
  std::vector<ProductData> train_;
  std::vector<ProductData> validation_;
  TrainStats stats_;
  TrainerOptions opts_;
  nn::ActorCriticNet net_;
  nn::Adam opt_;
  int iteration_ = 0;
};

// Iterates collect -> advantages -> update, logging one CSV row per
// iteration ("iter,mean_profit,policy_loss,vf_loss,kl,entropy,clip_frac")
// and writing periodic checkpoints when out_dir is non-empty.
std::vector<IterationStats> train(PpoTrainer& trainer, int iterations,
                                  std::ostream* curve_csv,
                                  const std::string& out_dir,
                                  int checkpoint_every);

// --- checkpoints ----------------------------------------------------------
struct Checkpoint {
  nn::ActorCriticNet net;
  std::string adam_json;  // empty when absent
  HyperParams hp;
  int iteration = 0;
};

void save_checkpoint(const std::string& path, const nn::ActorCriticNet& net,
                     const nn::Adam* opt, const HyperParams* hp, int iteration);
Checkpoint load_checkpoint(const std::string& path);

// Deterministic policy (Gaussian mean, clamped to [0,1]) behind the Agent API.
class PolicyAgent final : public Agent {
public:
  explicit PolicyAgent(const nn::ActorCriticNet* net, std::string name = "agent")
      : net_(net), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  void begin_episode(std::uint64_t) override {}
  double act(const Observation& obs, const RawStateView& raw) override;

private:
  const nn::ActorCriticNet* net_;
  std::string name_;
};

}  // namespace idrl
