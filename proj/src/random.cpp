#include "randsync/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randsync {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::substream(std::uint64_t master_seed, std::uint64_t index) {
  return Rng(mix64(mix64(master_seed) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= limit) return x % bound;
  }
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Dfa uniform_dfa(std::size_t n, std::size_t k, Rng& rng) {
  if (n == 0 || k == 0) throw std::invalid_argument("uniform_dfa needs n >= 1 and k >= 1");
  std::vector<State> table(n * k);
  for (auto& t : table) t = static_cast<State>(rng.below(n));
  return Dfa(n, k, std::move(table));
}

StateMapping uniform_mapping(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("uniform_mapping needs n >= 1");
  std::vector<State> t(n);
  for (auto& x : t) x = static_cast<State>(rng.below(n));
  return make_unchecked_mapping(std::move(t));
}

StateMapping p_mapping(std::span<const double> weights, Rng& rng) {
  const std::size_t n = weights.size();
  if (n == 0) throw std::invalid_argument("weight vector is empty");
  std::vector<double> cumulative(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
      throw std::invalid_argument("weights must be finite and nonnegative");
    sum += weights[i];
    cumulative[i] = sum;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to 1");

  std::vector<State> t(n);
  for (auto& x : t) {
    const double u = rng.unit() * sum;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    auto i = static_cast<std::size_t>(it - cumulative.begin());
    if (i == n) i = n - 1;
    // Zero-weight entries share their cumulative value with a predecessor
    // and are never selected by upper_bound, except through the clamp.
    while (weights[i] == 0.0 && i > 0) --i;
    x = static_cast<State>(i);
  }
  return make_unchecked_mapping(std::move(t));
}

Dfa complete_partial(const PartialDfa& p, Rng& rng) {
  const std::size_t n = p.states();
  std::vector<State> table;
  table.reserve(p.table().size());
  for (const auto& e : p.table()) table.push_back(e ? *e : static_cast<State>(rng.below(n)));
  return Dfa(n, p.letters(), std::move(table));
}

Dfa cerny(std::size_t n) {
  if (n < 2) throw std::invalid_argument("cerny automaton needs n >= 2");
  std::vector<State> table(n * 2);
  for (std::size_t q = 0; q < n; ++q) {
    table[q * 2 + kLetterA] = static_cast<State>((q + 1) % n);
    table[q * 2 + kLetterB] = static_cast<State>(q == 0 ? 1 : q);
  }
  return Dfa(n, 2, std::move(table));
}

}  // namespace randsync
