#ifndef RANDSYNC_RANDOM_HPP
#define RANDSYNC_RANDOM_HPP

#include <cstdint>
#include <random>
#include <span>

#include "randsync/automaton.hpp"
#include "randsync/mapping.hpp"

namespace randsync {

/// Seeded 64-bit generator (MT19937-64, period 2^19937 - 1). The output
/// sequence is fully determined by the seed; bounded draws use rejection,
/// so they do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for trial `index` of an experiment seeded with
  /// `master_seed`.
  static Rng substream(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound), bound >= 1, without modulo bias.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 1) with 53 random bits.
  double unit();

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Every one of the n*k transitions iid uniform on [0, n), drawn in
/// row-major order (state, then letter).
Dfa uniform_dfa(std::size_t n, std::size_t k, Rng& rng);

StateMapping uniform_mapping(std::size_t n, Rng& rng);

/// Each target drawn iid from `weights` (nonnegative, summing to 1 within
/// 1e-9). Throws std::invalid_argument otherwise.
StateMapping p_mapping(std::span<const double> weights, Rng& rng);

/// Fills the undefined transitions iid uniformly, in row-major order.
Dfa complete_partial(const PartialDfa& p, Rng& rng);

/// The Cerny automaton: a is the cyclic shift i -> i+1 mod n, b sends 0 to 1
/// and fixes everything else. Its shortest reset word has length (n-1)^2.
/// Throws std::invalid_argument for n < 2.
Dfa cerny(std::size_t n);

}  // namespace randsync

#endif  // RANDSYNC_RANDOM_HPP
