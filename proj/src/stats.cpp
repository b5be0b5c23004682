#include "randsync/stats.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "randsync/fastsync.hpp"
#include "randsync/funcgraph.hpp"
#include "randsync/oracle.hpp"

namespace randsync {

namespace {

constexpr double kZ95 = 1.959963984540054;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double binomial(std::uint64_t n, std::uint64_t k) {
  double r = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (const double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double max_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
}

}  // namespace

Estimate wilson_estimate(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("estimate needs at least one trial");
  if (successes > trials) throw std::invalid_argument("more successes than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));

  Estimate e;
  e.successes = successes;
  e.trials = trials;
  e.point = p;
  e.ci_low = std::clamp(center - half, 0.0, p);
  e.ci_high = std::clamp(center + half, p, 1.0);
  return e;
}

double p_bound(std::uint64_t n, std::uint64_t l) {
  if (n == 0 || l > n) throw std::out_of_range("p_bound needs 0 <= l <= n, n >= 1");
  double r = 1.0;
  for (std::uint64_t i = 1; i < l; ++i) r *= 1.0 - static_cast<double>(i) / static_cast<double>(n);
  return r;
}

double p_bound_exp(std::uint64_t n, std::uint64_t l) {
  if (n == 0 || l > n) throw std::out_of_range("p_bound needs 0 <= l <= n, n >= 1");
  const double ld = static_cast<double>(l);
  return std::exp(-ld * (ld - 1.0) / (2.0 * static_cast<double>(n)));
}

double cyclic_tail_bound(std::uint64_t n, std::uint64_t l) {
  double term = p_bound(n, l);
  double sum = 0.0;
  for (std::uint64_t j = l; j <= n; ++j) {
    sum += term;
    term *= 1.0 - static_cast<double>(j) / static_cast<double>(n);
  }
  return sum;
}

SymSumCheck sym_sum_check(std::span<const double> values, std::size_t l) {
  const std::size_t n = values.size();
  if (n == 0 || n > 12) throw std::out_of_range("sym_sum_check supports 1..12 values");
  if (l > n) throw std::out_of_range("tuple size exceeds value count");
  double s = 0.0;
  for (const double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("values must be nonnegative");
    s += v;
  }

  SymSumCheck r;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != l) continue;
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) prod *= values[i];
    r.lhs += prod;
  }
  r.rhs = binomial(n, l) * std::pow(s / static_cast<double>(n), static_cast<double>(l));
  r.holds = r.lhs <= r.rhs + 1e-12 * r.rhs;
  return r;
}

unsigned default_threads() {
  if (const char* env = std::getenv("RANDSYNC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

const Estimate& ExperimentRecord::estimate(const std::string& name) const {
  for (const auto& [k, v] : estimates)
    if (k == name) return v;
  throw std::out_of_range("no estimate named " + name);
}

double ExperimentRecord::stat(const std::string& name) const {
  for (const auto& [k, v] : stats)
    if (k == name) return v;
  throw std::out_of_range("no statistic named " + name);
}

ExperimentRecord lemma2_experiment(std::uint64_t n, double epsilon, std::uint64_t trials,
                                   std::uint64_t seed, MappingModel model, unsigned threads) {
  if (n == 0 || trials == 0) throw std::invalid_argument("lemma2_experiment needs n, trials >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const Stopwatch clock;
  const double threshold = std::pow(static_cast<double>(n), 0.5 + epsilon);

  std::vector<double> weights;
  if (model == MappingModel::kLinearWeights) {
    const double total = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
    weights.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) weights[i] = static_cast<double>(i + 1) / total;
  }

  struct Outcome {
    std::size_t cyclic;
    std::uint32_t height;
  };
  const auto outcomes = run_trials(trials, seed, threads, [&](std::uint64_t, Rng& rng) {
    const auto f = model == MappingModel::kUniform ? uniform_mapping(n, rng) : p_mapping(weights, rng);
    const auto d = decompose(f);
    return Outcome{d.cyclic_count(), d.max_height()};
  });

  ExperimentRecord rec;
  rec.experiment = model == MappingModel::kUniform ? "lemma2_uniform" : "lemma2_linear";
  rec.n = n;
  rec.epsilon = epsilon;
  rec.trials = trials;
  rec.seed = seed;

  std::uint64_t either = 0, cyc_hits = 0, height_hits = 0;
  std::vector<double> cycs, heights;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const auto& o = outcomes[i];
    const bool c = static_cast<double>(o.cyclic) > threshold;
    const bool h = static_cast<double>(o.height) > threshold;
    cyc_hits += c;
    height_hits += h;
    either += c || h;
    cycs.push_back(static_cast<double>(o.cyclic));
    heights.push_back(static_cast<double>(o.height));
    TrialRow row;
    row.index = i;
    row.outcome = c || h;
    rec.rows.push_back(row);
  }
  rec.estimates = {{"exceeds", wilson_estimate(either, trials)},
                   {"cyclic_exceeds", wilson_estimate(cyc_hits, trials)},
                   {"height_exceeds", wilson_estimate(height_hits, trials)}};
  rec.stats = {{"threshold", threshold},
               {"bound", std::exp(-std::pow(static_cast<double>(n), epsilon))},
               {"mean_cyclic", mean(cycs)},
               {"max_cyclic", max_of(cycs)},
               {"mean_height", mean(heights)},
               {"max_height", max_of(heights)}};
  rec.wall_seconds = clock.seconds();
  return rec;
}

ExperimentRecord set_extension_experiment(std::uint64_t n, double epsilon, std::uint64_t trials,
                                          std::uint64_t seed, StageSet which, unsigned threads) {
  if (trials == 0) throw std::invalid_argument("set_extension_experiment needs trials >= 1");
  const Stopwatch clock;
  const Thresholds t = thresholds(n, epsilon);

  const auto reports = run_trials(trials, seed, threads, [&](std::uint64_t, Rng& rng) {
    return analyze_stages(uniform_dfa(n, 2, rng), t);
  });

  ExperimentRecord rec;
  const char* names[] = {"sets_E", "sets_F", "sets_G"};
  rec.experiment = names[static_cast<int>(which)];
  rec.n = n;
  rec.epsilon = epsilon;
  rec.trials = trials;
  rec.seed = seed;

  std::uint64_t misses = 0;
  std::vector<double> cyc_a, cyc_f, cyc_g;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const auto& r = reports[i];
    const bool member = which == StageSet::kE ? r.e.holds
                        : which == StageSet::kF ? r.f.holds
                                                : r.g.holds;
    misses += !member;
    cyc_a.push_back(static_cast<double>(r.cyc_a));
    if (r.cyc_f) cyc_f.push_back(static_cast<double>(*r.cyc_f));
    if (r.cyc_g) cyc_g.push_back(static_cast<double>(*r.cyc_g));
    TrialRow row;
    row.index = i;
    row.outcome = !member;
    row.e_flag = r.e.holds;
    row.f_flag = r.f.holds;
    row.g_flag = r.g.holds;
    rec.rows.push_back(row);
  }
  const double nd = static_cast<double>(n);
  const double bound = which == StageSet::kE ? std::exp(-std::pow(nd, epsilon))
                                             : 2.0 * std::pow(nd, -0.25 + 3.0 * epsilon);
  rec.estimates = {{"not_extending", wilson_estimate(misses, trials)}};
  rec.stats = {{"bound", bound},
               {"alpha", static_cast<double>(t.alpha)},
               {"beta", static_cast<double>(t.beta)},
               {"gamma", static_cast<double>(t.gamma)},
               {"mean_cyc_a", mean(cyc_a)},
               {"mean_cyc_f", mean(cyc_f)},
               {"mean_cyc_g", mean(cyc_g)}};
  rec.wall_seconds = clock.seconds();
  return rec;
}

ExperimentRecord success_profile(std::uint64_t n, double epsilon, std::uint64_t trials,
                                 std::uint64_t seed, unsigned threads, const DfaSampler& sampler) {
  if (trials == 0) throw std::invalid_argument("success_profile needs trials >= 1");
  const Stopwatch clock;

  struct Outcome {
    bool success;
    std::uint64_t length;
    std::size_t image_after_w;
    bool e, f, g;
    std::optional<bool> synchronizing;
  };
  const auto outcomes = run_trials(trials, seed, threads, [&](std::uint64_t, Rng& rng) {
    const Dfa d = sampler ? sampler(n, rng) : uniform_dfa(n, 2, rng);
    const auto res = synchronize(d, epsilon);
    Outcome o{res.success(), res.success() ? res.certificate->length : 0,
              res.report.image_after_w, res.report.e.holds, res.report.f.holds,
              res.report.g.holds, std::nullopt};
    if (n <= kMaxExactStates) o.synchronizing = is_synchronizing(d);
    return o;
  });

  ExperimentRecord rec;
  rec.experiment = "success";
  rec.n = n;
  rec.epsilon = epsilon;
  rec.trials = trials;
  rec.seed = seed;

  std::uint64_t successes = 0, checked = 0, not_sync = 0, unconfirmed = 0;
  std::vector<std::uint64_t> lengths;
  std::vector<double> images;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const auto& o = outcomes[i];
    if (o.success) {
      ++successes;
      lengths.push_back(o.length);
    }
    if (o.synchronizing && o.success) unconfirmed += !*o.synchronizing;
    if (o.synchronizing && !o.success) {
      ++checked;
      not_sync += !*o.synchronizing;
    }
    images.push_back(static_cast<double>(o.image_after_w));
    TrialRow row;
    row.index = i;
    row.outcome = o.success;
    if (o.success) row.word_length = o.length;
    row.image_after_w = o.image_after_w;
    row.e_flag = o.e;
    row.f_flag = o.f;
    row.g_flag = o.g;
    rec.rows.push_back(row);
  }
  std::sort(lengths.begin(), lengths.end());
  const auto at = [&](std::size_t i) { return lengths.empty() ? 0.0 : static_cast<double>(lengths[i]); };

  rec.estimates = {{"success", wilson_estimate(successes, trials)}};
  rec.stats = {{"min_length", at(0)},
               {"median_length", lengths.empty() ? 0.0 : at((lengths.size() - 1) / 2)},
               {"max_length", lengths.empty() ? 0.0 : at(lengths.size() - 1)},
               {"length_bound", std::pow(static_cast<double>(n), 1.0 + 13.0 * epsilon)},
               {"mean_image_after_w", mean(images)},
               {"max_image_after_w", max_of(images)},
               {"failures_checked", static_cast<double>(checked)},
               {"failures_not_synchronizing", static_cast<double>(not_sync)},
               {"successes_unconfirmed", static_cast<double>(unconfirmed)}};
  rec.wall_seconds = clock.seconds();
  return rec;
}

}  // namespace randsync
