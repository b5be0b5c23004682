#include "randsync/automaton.hpp"

#include <algorithm>
#include <stdexcept>

namespace randsync {

Dfa::Dfa(std::size_t n, std::size_t k, std::vector<State> table)
    : n_(n), k_(k), table_(std::move(table)) {
  if (n == 0 || k == 0) throw std::invalid_argument("automaton needs n >= 1 and k >= 1");
  if (table_.size() != n * k) throw std::invalid_argument("transition table has wrong size");
  for (const State t : table_)
    if (t >= n) throw std::invalid_argument("transition target out of range");
}

PartialDfa::PartialDfa(std::size_t n, std::size_t k)
    : PartialDfa(n, k, std::vector<std::optional<State>>(n * k)) {}

PartialDfa::PartialDfa(std::size_t n, std::size_t k, std::vector<std::optional<State>> table)
    : n_(n), k_(k), table_(std::move(table)) {
  if (n == 0 || k == 0) throw std::invalid_argument("automaton needs n >= 1 and k >= 1");
  if (table_.size() != n * k) throw std::invalid_argument("transition table has wrong size");
  for (const auto& t : table_)
    if (t && *t >= n) throw std::invalid_argument("transition target out of range");
}

PartialDfa::PartialDfa(const Dfa& d) : n_(d.states()), k_(d.letters()) {
  table_.assign(d.table().begin(), d.table().end());
}

void PartialDfa::set(State q, Letter c, std::optional<State> target) {
  if (q >= n_ || c >= k_) throw std::invalid_argument("transition source out of range");
  if (target && *target >= n_) throw std::invalid_argument("transition target out of range");
  table_[q * k_ + c] = target;
}

bool PartialDfa::is_complete() const noexcept {
  return std::all_of(table_.begin(), table_.end(), [](const auto& t) { return t.has_value(); });
}

Dfa PartialDfa::to_dfa() const {
  std::vector<State> t;
  t.reserve(table_.size());
  for (const auto& e : table_) {
    if (!e) throw std::invalid_argument("automaton is not complete");
    t.push_back(*e);
  }
  return Dfa(n_, k_, std::move(t));
}

StateMapping letter_action(const Dfa& d, Letter letter) {
  if (letter >= d.letters()) throw std::invalid_argument("letter out of range");
  std::vector<State> t(d.states());
  for (State q = 0; q < t.size(); ++q) t[q] = d.next(q, letter);
  return make_unchecked_mapping(std::move(t));
}

StateMapping letter_action(const PartialDfa& d, Letter letter) {
  if (letter >= d.letters()) throw std::invalid_argument("letter out of range");
  std::vector<State> t(d.states());
  for (State q = 0; q < t.size(); ++q) {
    const auto e = d.next(q, letter);
    if (!e) throw std::invalid_argument("undefined transition for letter");
    t[q] = *e;
  }
  return make_unchecked_mapping(std::move(t));
}

}  // namespace randsync
