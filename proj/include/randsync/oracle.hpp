#ifndef RANDSYNC_ORACLE_HPP
#define RANDSYNC_ORACLE_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "randsync/automaton.hpp"
#include "randsync/word.hpp"

namespace randsync {

/// Thrown when an exact search would exceed its size limit.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kMaxExactStates = 24;

struct ResetWord {
  std::vector<Letter> letters;
  CompressedWord word;
  std::uint64_t length = 0;
};

/// Breadth-first search of the power automaton from the full state set.
/// Returns the lexicographically least (a < b < ...) among the shortest
/// reset words, or nothing if d is not synchronizing.
/// Throws CapacityError for n > 24.
std::optional<ResetWord> shortest_reset_word(const Dfa& d);

/// Shortest merging words for every unordered pair of states, from one
/// backward BFS over the pair automaton starting at the diagonal.
/// O(n^2 k) time, O(n^2) memory.
class PairMergeTable {
 public:
  static constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

  explicit PairMergeTable(const Dfa& d);

  /// Length of a shortest word merging p and q (0 when p == q), or
  /// kUnreachable.
  std::uint32_t distance(State p, State q) const noexcept;
  /// A shortest merging word for p and q; empty if p == q or unmergeable.
  std::vector<Letter> word(State p, State q) const;
  bool all_mergeable() const noexcept { return all_mergeable_; }

 private:
  static std::size_t index(State p, State q) noexcept {
    if (p > q) std::swap(p, q);
    return static_cast<std::size_t>(q) * (q - 1) / 2 + p;
  }

  Dfa dfa_;
  std::vector<std::uint32_t> dist_;
  std::vector<Letter> first_letter_;
  bool all_mergeable_ = true;
};

/// True iff every pair of states can be merged (equivalently, d has a
/// reset word). O(n^2 k).
bool is_synchronizing(const Dfa& d);

/// Greedy baseline: while more than one state remains, apply a shortest
/// word merging the closest remaining pair. Returns nothing if some pair
/// cannot be merged.
std::optional<ResetWord> greedy_reset_word(const Dfa& d);

}  // namespace randsync

#endif  // RANDSYNC_ORACLE_HPP
