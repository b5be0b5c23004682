#ifndef RANDSYNC_STATS_HPP
#define RANDSYNC_STATS_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "randsync/automaton.hpp"
#include "randsync/random.hpp"

namespace randsync {

/// Binomial proportion with a 95% Wilson score interval.
struct Estimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

Estimate wilson_estimate(std::uint64_t successes, std::uint64_t trials);

/// P(n, l) = n! / ((n-l)! n^l) = prod_{i=1}^{l-1} (1 - i/n): an upper bound on
/// the probability that a uniform random mapping has a cyclic part of
/// size l. Throws std::out_of_range unless 0 <= l <= n and n >= 1.
double p_bound(std::uint64_t n, std::uint64_t l);
/// exp(-l(l-1) / 2n), which dominates p_bound(n, l).
double p_bound_exp(std::uint64_t n, std::uint64_t l);
/// sum_{j=l}^{n} P(n, j): bounds the probability of at least l cyclic points.
double cyclic_tail_bound(std::uint64_t n, std::uint64_t l);

struct SymSumCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Compares the elementary symmetric sum of degree l of `values` (brute
/// force over all increasing l-tuples) with C(n, l) (s/n)^l, where s is the
/// sum and n the count of values. Holds when lhs <= rhs (1 + 1e-12).
/// Throws std::out_of_range unless 1 <= size <= 12 and l <= size.
SymSumCheck sym_sum_check(std::span<const double> values, std::size_t l);

/// Thread count from RANDSYNC_THREADS, else the hardware concurrency.
unsigned default_threads();

/// Runs fn(index, rng) for every index in [0, trials), each with its own
/// substream of `master_seed`. Results are ordered by index, so the output
/// does not depend on `threads`.
template <class Fn>
auto run_trials(std::uint64_t trials, std::uint64_t master_seed, unsigned threads, Fn fn)
    -> std::vector<std::invoke_result_t<Fn&, std::uint64_t, Rng&>> {
  using Result = std::invoke_result_t<Fn&, std::uint64_t, Rng&>;
  std::vector<std::optional<Result>> slots(trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= trials) return;
      try {
        Rng rng = Rng::substream(master_seed, i);
        slots[i].emplace(fn(i, rng));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(trials);
      }
    }
  };

  threads = std::max(1u, threads);
  if (threads == 1 || trials < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<Result> out;
  out.reserve(trials);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Fraction of trials whose sample satisfies the predicate.
template <class Sampler, class Predicate>
Estimate estimate_event(Sampler sampler, Predicate predicate, std::uint64_t trials,
                        std::uint64_t master_seed, unsigned threads = 1) {
  const auto hits = run_trials(trials, master_seed, threads, [&](std::uint64_t, Rng& rng) {
    return static_cast<bool>(predicate(sampler(rng)));
  });
  std::uint64_t successes = 0;
  for (const bool h : hits) successes += h;
  return wilson_estimate(successes, trials);
}

/// One row of per-trial output (CSV).
struct TrialRow {
  std::uint64_t index = 0;
  bool outcome = false;
  std::optional<std::uint64_t> word_length;
  std::optional<std::uint64_t> image_after_w;
  std::optional<bool> e_flag;
  std::optional<bool> f_flag;
  std::optional<bool> g_flag;
};

struct ExperimentRecord {
  std::string experiment;
  std::uint64_t n = 0;
  double epsilon = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  /// Named estimates; the first is the experiment's headline event.
  std::vector<std::pair<std::string, Estimate>> estimates;
  /// Named auxiliary values (means, maxima, analytic bounds), in a fixed order.
  std::vector<std::pair<std::string, double>> stats;
  std::vector<TrialRow> rows;
  double wall_seconds = 0.0;

  const Estimate& estimate(const std::string& name) const;
  double stat(const std::string& name) const;
};

enum class MappingModel { kUniform, kLinearWeights };

/// Samples mappings on [0, n) (uniform, or p-mappings with weights
/// proportional to 1..n) and counts how often there are more than
/// n^{1/2+eps} cyclic points or the height exceeds n^{1/2+eps}. Records the
/// analytic bound exp(-n^eps) alongside.
ExperimentRecord lemma2_experiment(std::uint64_t n, double epsilon, std::uint64_t trials,
                                   std::uint64_t seed, MappingModel model,
                                   unsigned threads = 1);

enum class StageSet { kE, kF, kG };

/// Samples uniform two-letter automata and counts those that do not extend
/// a member of the chosen family. Records exp(-n^eps) for E and
/// 2 n^{-1/4+3eps} for F and G.
ExperimentRecord set_extension_experiment(std::uint64_t n, double epsilon, std::uint64_t trials,
                                          std::uint64_t seed, StageSet which,
                                          unsigned threads = 1);

using DfaSampler = std::function<Dfa(std::size_t n, Rng& rng)>;

/// Runs synchronize on sampled automata (uniform two-letter by default) and
/// records the success rate, certificate lengths and the n^{1+13 eps}
/// bound. For n <= 24 every trial is also checked with is_synchronizing:
/// failures are split into true negatives and missed automata, and any
/// success on a non-synchronizing automaton is counted (it must be zero).
ExperimentRecord success_profile(std::uint64_t n, double epsilon, std::uint64_t trials,
                                 std::uint64_t seed, unsigned threads = 1,
                                 const DfaSampler& sampler = {});

}  // namespace randsync

#endif  // RANDSYNC_STATS_HPP
