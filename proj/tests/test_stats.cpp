#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "naive.hpp"
#include "randsync/funcgraph.hpp"
#include "randsync/random.hpp"
#include "randsync/stats.hpp"

using namespace randsync;

namespace {

// Elementary symmetric sum by the e_k recurrence, independent of the
// library's subset enumeration.
double elementary(const std::vector<double>& v, std::size_t l) {
  std::vector<double> e(l + 1, 0.0);
  e[0] = 1.0;
  for (const double x : v)
    for (std::size_t k = l; k >= 1; --k) e[k] += e[k - 1] * x;
  return e[l];
}

double choose(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("wilson interval") {
  const auto e = wilson_estimate(50, 100);
  CHECK(e.point == 0.5);
  CHECK(e.ci_low == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(e.ci_high == doctest::Approx(0.5962).epsilon(1e-3));
  const auto all = wilson_estimate(10, 10);
  CHECK(all.point == 1.0);
  CHECK(all.ci_high == 1.0);
  const auto none = wilson_estimate(0, 10);
  CHECK(none.ci_low == 0.0);
  CHECK_THROWS_AS(wilson_estimate(0, 0), std::invalid_argument);
  for (std::uint64_t t = 1; t < 60; ++t)
    for (std::uint64_t s = 0; s <= t; ++s) {
      const auto w = wilson_estimate(s, t);
      REQUIRE(0.0 <= w.ci_low);
      REQUIRE(w.ci_low <= w.point);
      REQUIRE(w.point <= w.ci_high);
      REQUIRE(w.ci_high <= 1.0);
    }
}

TEST_CASE("p_bound values") {
  CHECK(p_bound(7, 1) == 1.0);
  CHECK(p_bound(7, 0) == 1.0);
  CHECK(p_bound(2, 2) == doctest::Approx(0.5));
  CHECK(p_bound(3, 3) == doctest::Approx(2.0 / 9));
  CHECK_THROWS_AS(p_bound(3, 4), std::out_of_range);
  CHECK_THROWS_AS(p_bound(0, 0), std::out_of_range);
  // n! / ((n-l)! n^l) by direct evaluation.
  for (std::uint64_t n = 1; n <= 15; ++n)
    for (std::uint64_t l = 1; l <= n; ++l) {
      double direct = 1;
      for (std::uint64_t i = n - l + 1; i <= n; ++i) direct *= double(i) / n;
      CHECK(p_bound(n, l) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("p_bound is dominated by its exponential form") {
  naive::Gen g(61);
  for (int iter = 0; iter < 5000; ++iter) {
    const std::uint64_t n = 1 + g.below(10000);
    const std::uint64_t l = 1 + g.below(n);
    const double bound = p_bound_exp(n, l);
    // Both sides underflow far in the tail; the product may keep a subnormal.
    if (bound == 0.0) {
      REQUIRE(p_bound(n, l) < 1e-300);
    } else {
      REQUIRE(p_bound(n, l) <= bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("cyclic_tail_bound sums p_bound") {
  double s = 0;
  for (std::uint64_t j = 5; j <= 20; ++j) s += p_bound(20, j);
  CHECK(cyclic_tail_bound(20, 5) == doctest::Approx(s));
  CHECK(cyclic_tail_bound(20, 1) >= 1.0);
}

TEST_CASE("sym_sum_check examples") {
  const std::vector<double> v{0.2, 0.8};
  auto r = sym_sum_check(v, 1);
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(r.rhs == doctest::Approx(1.0));
  CHECK(r.holds);
  r = sym_sum_check(v, 2);
  CHECK(r.lhs == doctest::Approx(0.16));
  CHECK(r.rhs == doctest::Approx(0.25));
  CHECK(r.holds);

  const std::vector<double> flat(6, 0.3);
  for (std::size_t l = 0; l <= 6; ++l) {
    const auto f = sym_sum_check(flat, l);
    CHECK(std::abs(f.lhs - f.rhs) <= 1e-12 * f.rhs);
  }
  const std::vector<double> too_many(13, 0.1);
  CHECK_THROWS_AS(sym_sum_check(too_many, 2), std::out_of_range);
  CHECK_THROWS_AS(sym_sum_check(v, 3), std::out_of_range);
}

TEST_CASE("sym_sum_check matches the recurrence on random inputs") {
  naive::Gen g(62);
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  for (int iter = 0; iter < 2000; ++iter) {
    const std::size_t n = 1 + g.below(8);
    std::vector<double> v(n);
    for (auto& x : v) x = unif(g.eng);
    const double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (std::size_t l = 0; l <= n; ++l) {
      const auto r = sym_sum_check(v, l);
      REQUIRE(r.lhs == doctest::Approx(elementary(v, l)).epsilon(1e-12));
      REQUIRE(r.rhs == doctest::Approx(choose(n, l) * std::pow(s / n, double(l))).epsilon(1e-12));
      REQUIRE(r.holds);
    }
  }
}

TEST_CASE("run_trials is independent of thread count") {
  const auto body = [](std::uint64_t i, Rng& rng) { return rng.next() ^ i; };
  const auto one = run_trials(257, 9, 1, body);
  CHECK(one == run_trials(257, 9, 4, body));
  CHECK(one == run_trials(257, 9, 13, body));
  CHECK(one[3] == (Rng::substream(9, 3).next() ^ 3));
  CHECK_THROWS_AS(run_trials(10, 1, 3,
                             [](std::uint64_t i, Rng&) -> int {
                               if (i == 7) throw std::runtime_error("boom");
                               return 0;
                             }),
                  std::runtime_error);
}

TEST_CASE("estimate_event") {
  const auto sampler = [](Rng& rng) { return rng.unit(); };
  const auto all = estimate_event(sampler, [](double) { return true; }, 50, 1);
  CHECK(all.point == 1.0);
  CHECK(all.ci_high == 1.0);
  const auto half = estimate_event(sampler, [](double x) { return x < 0.5; }, 4000, 2, 3);
  CHECK(std::abs(half.point - 0.5) < 3 * std::sqrt(0.25 / 4000));
  CHECK(half.successes == estimate_event(sampler, [](double x) { return x < 0.5; }, 4000, 2, 1).successes);
}

TEST_CASE("lemma2_experiment") {
  const auto tiny = lemma2_experiment(1, 0.1, 20, 3, MappingModel::kUniform);
  CHECK(tiny.estimate("exceeds").successes == 0);

  const auto a = lemma2_experiment(200, 0.1, 300, 4, MappingModel::kUniform, 1);
  const auto b = lemma2_experiment(200, 0.1, 300, 4, MappingModel::kUniform, 4);
  CHECK(a.estimate("exceeds").successes == b.estimate("exceeds").successes);
  CHECK(a.stats == b.stats);
  CHECK(a.stat("bound") == doctest::Approx(std::exp(-std::pow(200.0, 0.1))));
  CHECK(a.experiment == "lemma2_uniform");
  CHECK(lemma2_experiment(50, 0.1, 5, 1, MappingModel::kLinearWeights).experiment == "lemma2_linear");
}

TEST_CASE("cyclic count tail stays under the analytic sum") {
  // P(#cyclic >= 64) for n = 256 against sum_{l >= 64} P(256, l).
  const std::uint64_t n = 256, l = 64, trials = 10000;
  const auto hits = run_trials(trials, 8, default_threads(), [&](std::uint64_t, Rng& rng) {
    return decompose(uniform_mapping(n, rng)).cyclic_count() >= l;
  });
  double freq = 0;
  for (const bool h : hits) freq += h;
  freq /= trials;
  const double bound = cyclic_tail_bound(n, l);
  const double sigma = std::sqrt(std::max(bound, 1.0 / trials) * (1 - std::min(bound, 1.0)) / trials);
  CHECK(freq <= bound + 3 * sigma);
}

TEST_CASE("set_extension_experiment") {
  const auto r = set_extension_experiment(512, 0.1, 40, 5, StageSet::kF, 2);
  CHECK(r.experiment == "sets_F");
  CHECK(r.stat("bound") == doctest::Approx(2 * std::pow(512.0, -0.25 + 0.3)));
  const auto again = set_extension_experiment(512, 0.1, 40, 5, StageSet::kF, 1);
  CHECK(r.estimate("not_extending").successes == again.estimate("not_extending").successes);
  // Rows carry consistent nested flags.
  for (const auto& row : r.rows) {
    if (*row.g_flag) CHECK(*row.f_flag);
    if (*row.f_flag) CHECK(*row.e_flag);
    CHECK(row.outcome == !*row.f_flag);
  }
  CHECK_THROWS_AS(set_extension_experiment(512, 0.2, 10, 1, StageSet::kE), std::invalid_argument);
}

TEST_CASE("success_profile") {
  const DfaSampler perms = [](std::size_t n, Rng& rng) {
    std::vector<State> a(n), b(n);
    for (State i = 0; i < n; ++i) a[i] = b[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(a[i], a[rng.below(i + 1)]);
      std::swap(b[i], b[rng.below(i + 1)]);
    }
    return naive::from_columns({a, b});
  };
  const auto p = success_profile(4, 0.05, 30, 1, 1, perms);
  CHECK(p.estimate("success").successes == 0);
  CHECK(p.stat("failures_checked") == 30);
  CHECK(p.stat("failures_not_synchronizing") == 30);

  const auto small = success_profile(20, 0.1, 200, 2, 2);
  CHECK(small.stat("successes_unconfirmed") == 0);
  CHECK(small.stat("failures_checked") == 200 - small.estimate("success").successes);

  const auto a = success_profile(300, 0.05, 30, 3, 1);
  const auto b = success_profile(300, 0.05, 30, 3, 5);
  CHECK(a.stats == b.stats);
  CHECK(a.rows.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(a.rows[i].outcome == b.rows[i].outcome);
    CHECK(a.rows[i].word_length == b.rows[i].word_length);
  }
  CHECK(a.stat("min_length") <= a.stat("median_length"));
  CHECK(a.stat("median_length") <= a.stat("max_length"));
}

}  // TEST_SUITE
