#ifndef RANDSYNC_MAPPING_HPP
#define RANDSYNC_MAPPING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace randsync {

/// States are 0-based indices into [0, n).
using State = std::uint32_t;
/// Letter 0 is 'a', letter 1 is 'b'.
using Letter = std::uint32_t;

/// A total function on [0, n), stored as its target table.
class StateMapping {
 public:
  StateMapping() = default;
  /// Throws std::invalid_argument if any target is outside [0, size).
  explicit StateMapping(std::vector<State> targets);

  static StateMapping identity(std::size_t n);
  static StateMapping constant(std::size_t n, State value);

  std::size_t size() const noexcept { return targets_.size(); }
  State operator[](State x) const noexcept { return targets_[x]; }
  std::span<const State> targets() const noexcept { return targets_; }

  bool is_constant() const noexcept;

  friend bool operator==(const StateMapping&, const StateMapping&) = default;

 private:
  struct Unchecked {};
  StateMapping(std::vector<State> targets, Unchecked) noexcept
      : targets_(std::move(targets)) {}

  friend StateMapping compose(const StateMapping&, const StateMapping&);
  friend StateMapping mapping_power(const StateMapping&, std::uint64_t);
  friend StateMapping make_unchecked_mapping(std::vector<State>);

  std::vector<State> targets_;
};

/// Builds a mapping without range validation. For callers that have
/// already established every target is in range.
StateMapping make_unchecked_mapping(std::vector<State> targets);

/// Left-to-right composition: result[x] = g[f[x]] ("apply f, then g").
StateMapping compose(const StateMapping& f, const StateMapping& g);

/// The t-th iterate of f in O(n) time regardless of t.
StateMapping mapping_power(const StateMapping& f, std::uint64_t t);

/// Sorted distinct targets.
std::vector<State> image(const StateMapping& f);

/// Sorted distinct images of the states in `states` under f.
std::vector<State> image_of(const StateMapping& f, std::span<const State> states);

}  // namespace randsync

#endif  // RANDSYNC_MAPPING_HPP
