#ifndef RANDSYNC_AUTOMATON_HPP
#define RANDSYNC_AUTOMATON_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "randsync/mapping.hpp"

namespace randsync {

inline constexpr Letter kLetterA = 0;
inline constexpr Letter kLetterB = 1;

/// Complete deterministic automaton on states [0, n) and letters [0, k).
/// No initial or final states. The table is row-major: entry (q, c) is at
/// q * k + c.
class Dfa {
 public:
  /// Throws std::invalid_argument on n == 0, k == 0, a wrong table size, or
  /// an out-of-range target.
  Dfa(std::size_t n, std::size_t k, std::vector<State> table);

  std::size_t states() const noexcept { return n_; }
  std::size_t letters() const noexcept { return k_; }
  State next(State q, Letter c) const noexcept { return table_[q * k_ + c]; }
  std::span<const State> table() const noexcept { return table_; }

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<State> table_;
};

/// Automaton whose transitions may be undefined.
class PartialDfa {
 public:
  PartialDfa(std::size_t n, std::size_t k);
  PartialDfa(std::size_t n, std::size_t k, std::vector<std::optional<State>> table);
  explicit PartialDfa(const Dfa& d);

  std::size_t states() const noexcept { return n_; }
  std::size_t letters() const noexcept { return k_; }
  std::optional<State> next(State q, Letter c) const noexcept { return table_[q * k_ + c]; }
  void set(State q, Letter c, std::optional<State> target);
  std::span<const std::optional<State>> table() const noexcept { return table_; }

  bool is_complete() const noexcept;
  /// Throws std::invalid_argument unless every transition is defined.
  Dfa to_dfa() const;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<std::optional<State>> table_;
};

/// The action of one letter. Throws std::invalid_argument if letter >= k.
StateMapping letter_action(const Dfa& d, Letter letter);

/// The action of one letter in a partial automaton; throws
/// std::invalid_argument if the letter is out of range or any of its
/// transitions is undefined.
StateMapping letter_action(const PartialDfa& d, Letter letter);

}  // namespace randsync

#endif  // RANDSYNC_AUTOMATON_HPP
