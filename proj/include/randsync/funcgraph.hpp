#ifndef RANDSYNC_FUNCGRAPH_HPP
#define RANDSYNC_FUNCGRAPH_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "randsync/mapping.hpp"

namespace randsync {

// Structure of the functional graph x -> f(x): every component is a
// single cycle with in-trees hanging off its points.

inline constexpr std::uint32_t kNoCycle = std::numeric_limits<std::uint32_t>::max();

struct StateRecord {
  bool is_cyclic = false;
  std::uint32_t height = 0;
  /// kNoCycle for non-cyclic states.
  std::uint32_t cycle_id = kNoCycle;
  /// Only meaningful for cyclic states: f moves position i to i + 1 (mod length).
  std::uint32_t cycle_position = 0;
  std::uint32_t cycle_length = 0;
};

class CycleDecomposition {
 public:
  CycleDecomposition() = default;
  CycleDecomposition(std::vector<StateRecord> records,
                     std::vector<std::vector<State>> cycles);

  std::size_t size() const noexcept { return records_.size(); }
  const StateRecord& operator[](State x) const noexcept { return records_[x]; }
  std::span<const StateRecord> records() const noexcept { return records_; }

  /// Members of each cycle, indexed by cycle_id and ordered by cycle_position.
  const std::vector<std::vector<State>>& cycles() const noexcept { return cycles_; }

  std::size_t cyclic_count() const noexcept { return cyclic_count_; }
  std::uint32_t max_height() const noexcept { return max_height_; }

 private:
  std::vector<StateRecord> records_;
  std::vector<std::vector<State>> cycles_;
  std::size_t cyclic_count_ = 0;
  std::uint32_t max_height_ = 0;
};

/// Exact decomposition in O(n) time and space. Iterative, so deep trees
/// (n around 1e7) do not grow the call stack.
CycleDecomposition decompose(const StateMapping& f);

std::vector<State> cyclic_points(const StateMapping& f);
std::uint32_t height(const StateMapping& f);

/// A mapping restricted to a subset of states closed under it.
///
/// `domain` is strictly increasing and every target is a member of it.
/// The compact form renames domain[i] to i so that the ordinary mapping
/// machinery applies.
class SubMapping {
 public:
  std::span<const State> domain() const noexcept { return domain_; }
  std::span<const State> targets() const noexcept { return targets_; }
  std::size_t size() const noexcept { return domain_.size(); }

  /// Target of domain state x; x must be a member of the domain.
  State operator()(State x) const;

  /// Position of x in the domain, or kNoCycle if absent.
  std::uint32_t index_of(State x) const noexcept;

  const StateMapping& compact() const noexcept { return compact_; }

 private:
  friend SubMapping sub_restrict(const StateMapping&, std::span<const State>);

  std::vector<State> domain_;
  std::vector<State> targets_;
  StateMapping compact_;
};

/// Restricts f to `domain`. Throws std::invalid_argument if the domain is
/// not strictly increasing or out of range, and std::domain_error if some
/// domain state is sent outside the domain.
SubMapping sub_restrict(const StateMapping& f, std::span<const State> domain);

/// Decomposition of the compact form (indices are positions in the domain).
CycleDecomposition decompose(const SubMapping& f);
/// Cyclic points, reported as original state indices.
std::vector<State> cyclic_points(const SubMapping& f);
std::uint32_t height(const SubMapping& f);

}  // namespace randsync

#endif  // RANDSYNC_FUNCGRAPH_HPP
