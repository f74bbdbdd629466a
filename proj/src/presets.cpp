#include "combandit/presets.hpp"

namespace combandit {

namespace {

constexpr std::uint64_t kPresetSeed = 20240611;
constexpr std::uint64_t kComboLimitForUcb = 5000;

AlgorithmSpec dart_spec() {
  AlgorithmSpec s;
  s.kind = AlgorithmKind::Dart;
  s.epoch_constant = kPresetEpochConstant;
  return s;
}

AlgorithmSpec plain(AlgorithmKind kind) {
  AlgorithmSpec s;
  s.kind = kind;
  return s;
}

ExperimentConfig bernoulli_uniform(std::string name, int n, int k, std::int64_t t, JointReward reward,
                                   int replications, bool with_epsilon_greedy) {
  ExperimentConfig c;
  c.name = std::move(name);
  c.num_arms = n;
  c.subset_size = k;
  c.horizon = t;
  c.replications = replications;
  c.master_seed = kPresetSeed;
  c.environment.kind = EnvironmentKind::IndependentBernoulli;
  c.environment.reward = reward;
  c.environment.uniform_means = true;
  c.algorithms.push_back(dart_spec());
  // Enumerating UCB is only practical for small action sets.
  if (binomial(n, k, kComboLimitForUcb) <= kComboLimitForUcb) {
    c.algorithms.push_back(plain(AlgorithmKind::CombUcb));
    if (with_epsilon_greedy) c.algorithms.push_back(plain(AlgorithmKind::EpsilonGreedy));
  }
  c.algorithms.push_back(plain(AlgorithmKind::Oracle));
  return c;
}

ExperimentConfig gaussian(std::string name, int n, int k, std::int64_t t) {
  ExperimentConfig c;
  c.name = std::move(name);
  c.num_arms = n;
  c.subset_size = k;
  c.horizon = t;
  c.replications = 25;
  c.master_seed = kPresetSeed;
  c.environment.kind = EnvironmentKind::CorrelatedGaussian;
  c.environment.reward = JointReward::Sum;
  c.environment.sigma = 1.0;
  c.algorithms = {dart_spec(), plain(AlgorithmKind::Oracle)};
  return c;
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  for (int k : {2, 4, 8}) {
    const std::string kk = "K" + std::to_string(k);
    out.push_back({"mean reward, N=45, T=1e6, " + kk,
                   bernoulli_uniform("fig1-mean-" + kk, 45, k, 1'000'000, JointReward::Mean, 25, false)});
    out.push_back({"mean reward, desk scale N=20, T=1e5, " + kk,
                   bernoulli_uniform("fig1-mean-" + kk + "-desk", 20, k, 100'000, JointReward::Mean, 25, true)});
  }
  for (int k : {2, 4, 8}) {
    const std::string kk = "K" + std::to_string(k);
    out.push_back({"quadratic reward, N=45, T=1e6, " + kk,
                   bernoulli_uniform("fig2-quad-" + kk, 45, k, 1'000'000, JointReward::Quadratic, 25, false)});
    out.push_back({"quadratic reward, desk scale N=20, T=1e5, " + kk,
                   bernoulli_uniform("fig2-quad-" + kk + "-desk", 20, k, 100'000, JointReward::Quadratic, 25, true)});
  }
  out.push_back({"mean reward, N=15, K=2, T=5e4 (UCB comparison)",
                 bernoulli_uniform("appG-lin", 15, 2, 50'000, JointReward::Mean, 25, true)});
  for (int k : {2, 4}) {
    const std::string kk = "K" + std::to_string(k);
    out.push_back({"max reward, N=15, T=5e4, 20 runs, " + kk,
                   bernoulli_uniform("appH-max-" + kk, 15, k, 50'000, JointReward::Max, 20, true)});
  }
  out.push_back({"correlated Gaussian arms, sum reward, epsilon at the lower-bound value, N=45, K=8, T=1e6",
                 gaussian("lowerbound-gauss", 45, 8, 1'000'000)});
  out.push_back({"correlated Gaussian arms, desk scale N=20, K=4, T=1e5", gaussian("lowerbound-gauss-desk", 20, 4, 100'000)});
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

std::optional<ExperimentConfig> find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.config.name == name) return p.config;
  }
  return std::nullopt;
}

}  // namespace combandit
