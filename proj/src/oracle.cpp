#include "randsync/oracle.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <utility>

namespace randsync {

namespace {

std::uint32_t subset_image(const Dfa& d, std::uint32_t subset, Letter c) {
  std::uint32_t out = 0;
  while (subset) {
    const auto q = static_cast<State>(std::countr_zero(subset));
    subset &= subset - 1;
    out |= 1u << d.next(q, c);
  }
  return out;
}

// Preimage lists of one letter in compressed-row form.
struct Preimages {
  std::vector<std::uint32_t> start;
  std::vector<State> sources;

  Preimages(const Dfa& d, Letter c) : start(d.states() + 1, 0), sources(d.states()) {
    const std::size_t n = d.states();
    for (State q = 0; q < n; ++q) ++start[d.next(q, c) + 1];
    for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (State q = 0; q < n; ++q) sources[fill[d.next(q, c)]++] = q;
  }

  std::span<const State> of(State r) const {
    return std::span<const State>(sources).subspan(start[r], start[r + 1] - start[r]);
  }
};

}  // namespace

std::optional<ResetWord> shortest_reset_word(const Dfa& d) {
  const std::size_t n = d.states();
  if (n > kMaxExactStates)
    throw CapacityError("exact search supports at most 24 states, got " + std::to_string(n));

  const std::uint32_t full = (1u << n) - 1;
  if (std::popcount(full) == 1) return ResetWord{{}, CompressedWord(), 0};

  struct Parent {
    std::uint32_t subset;
    Letter letter;
  };
  std::unordered_map<std::uint32_t, Parent> parent;
  std::vector<std::uint32_t> queue{full};
  parent.emplace(full, Parent{full, 0});

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t s = queue[head];
    for (Letter c = 0; c < d.letters(); ++c) {
      const std::uint32_t t = subset_image(d, s, c);
      if (!parent.emplace(t, Parent{s, c}).second) continue;
      if (std::popcount(t) == 1) {
        std::vector<Letter> letters;
        for (std::uint32_t x = t; x != full; x = parent.at(x).subset)
          letters.push_back(parent.at(x).letter);
        std::reverse(letters.begin(), letters.end());
        auto word = CompressedWord::from_letters(letters);
        const auto length = letters.size();
        return ResetWord{std::move(letters), std::move(word), length};
      }
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

PairMergeTable::PairMergeTable(const Dfa& d) : dfa_(d) {
  const std::size_t n = d.states();
  const std::size_t pairs = n * (n - 1) / 2;
  dist_.assign(pairs, kUnreachable);
  first_letter_.assign(pairs, 0);

  std::vector<Preimages> pre;
  pre.reserve(d.letters());
  for (Letter c = 0; c < d.letters(); ++c) pre.emplace_back(d, c);

  std::vector<std::pair<State, State>> queue;
  queue.reserve(pairs);

  // Level 1: pairs merged by a single letter (predecessors of the diagonal).
  for (Letter c = 0; c < d.letters(); ++c) {
    for (State r = 0; r < n; ++r) {
      const auto src = pre[c].of(r);
      for (std::size_t i = 0; i < src.size(); ++i) {
        for (std::size_t j = i + 1; j < src.size(); ++j) {
          const auto idx = index(src[i], src[j]);
          if (dist_[idx] != kUnreachable) continue;
          dist_[idx] = 1;
          first_letter_[idx] = c;
          queue.emplace_back(src[i], src[j]);
        }
      }
    }
  }

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [p, q] = queue[head];
    const std::uint32_t next = dist_[index(p, q)] + 1;
    for (Letter c = 0; c < d.letters(); ++c) {
      for (const State p2 : pre[c].of(p)) {
        for (const State q2 : pre[c].of(q)) {
          if (p2 == q2) continue;
          const auto idx = index(p2, q2);
          if (dist_[idx] != kUnreachable) continue;
          dist_[idx] = next;
          first_letter_[idx] = c;
          queue.emplace_back(p2, q2);
        }
      }
    }
  }
  all_mergeable_ = queue.size() == pairs;
}

std::uint32_t PairMergeTable::distance(State p, State q) const noexcept {
  if (p == q) return 0;
  return dist_[index(p, q)];
}

std::vector<Letter> PairMergeTable::word(State p, State q) const {
  std::vector<Letter> out;
  if (distance(p, q) == kUnreachable) return out;
  while (p != q) {
    const Letter c = first_letter_[index(p, q)];
    out.push_back(c);
    p = dfa_.next(p, c);
    q = dfa_.next(q, c);
  }
  return out;
}

bool is_synchronizing(const Dfa& d) { return PairMergeTable(d).all_mergeable(); }

std::optional<ResetWord> greedy_reset_word(const Dfa& d) {
  const PairMergeTable table(d);
  if (!table.all_mergeable()) return std::nullopt;

  std::vector<State> current(d.states());
  for (State q = 0; q < current.size(); ++q) current[q] = q;
  std::vector<Letter> letters;

  while (current.size() > 1) {
    State best_p = current[0], best_q = current[1];
    std::uint32_t best = table.distance(best_p, best_q);
    for (std::size_t i = 0; i < current.size() && best > 1; ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        const auto dist = table.distance(current[i], current[j]);
        if (dist < best) {
          best = dist;
          best_p = current[i];
          best_q = current[j];
          if (best == 1) break;
        }
      }
    }
    const auto merge = table.word(best_p, best_q);
    for (auto& x : current)
      for (const Letter c : merge) x = d.next(x, c);
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
    letters.insert(letters.end(), merge.begin(), merge.end());
  }

  auto word = CompressedWord::from_letters(letters);
  const auto length = letters.size();
  return ResetWord{std::move(letters), std::move(word), length};
}

}  // namespace randsync
