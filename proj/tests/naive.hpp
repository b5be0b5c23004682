// Slow reference implementations used as test oracles. Nothing here calls
// into the library beyond its plain data types.
#ifndef RANDSYNC_TESTS_NAIVE_HPP
#define RANDSYNC_TESTS_NAIVE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "randsync/automaton.hpp"
#include "randsync/mapping.hpp"

namespace naive {

using randsync::Dfa;
using randsync::Letter;
using randsync::State;
using Map = std::vector<State>;

inline Map targets(const randsync::StateMapping& f) { return {f.targets().begin(), f.targets().end()}; }

inline Map identity(std::size_t n) {
  Map m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<State>(i);
  return m;
}

// Apply f, then g.
inline Map compose(const Map& f, const Map& g) {
  Map r(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) r[x] = g[f[x]];
  return r;
}

inline Map power(const Map& f, std::uint64_t t) {
  Map r = identity(f.size());
  for (std::uint64_t i = 0; i < t; ++i) r = compose(r, f);
  return r;
}

// Image of every state under the letters, one letter at a time.
inline Map run(const Dfa& d, const std::vector<Letter>& word) {
  Map r = identity(d.states());
  for (auto& q : r)
    for (const Letter c : word) q = d.next(q, c);
  return r;
}

inline bool is_constant(const Map& m) {
  for (const State x : m)
    if (x != m[0]) return false;
  return true;
}

// x is cyclic iff some f^i(x) = x with 1 <= i <= n.
inline bool cyclic(const Map& f, State x) {
  State y = x;
  for (std::size_t i = 0; i < f.size(); ++i) {
    y = f[y];
    if (y == x) return true;
  }
  return false;
}

inline std::uint32_t height_of(const Map& f, State x) {
  std::uint32_t h = 0;
  while (!cyclic(f, x)) {
    x = f[x];
    ++h;
  }
  return h;
}

inline std::vector<State> cyclic_points(const Map& f) {
  std::vector<State> out;
  for (State x = 0; x < f.size(); ++x)
    if (cyclic(f, x)) out.push_back(x);
  return out;
}

inline std::uint32_t height(const Map& f) {
  std::uint32_t h = 0;
  for (State x = 0; x < f.size(); ++x) h = std::max(h, height_of(f, x));
  return h;
}

inline std::string spell(const std::vector<Letter>& w) {
  std::string s;
  for (const Letter c : w) s.push_back(static_cast<char>('a' + c));
  return s;
}

// Test-side randomness, deliberately separate from the library's Rng.
struct Gen {
  std::mt19937_64 eng;
  explicit Gen(std::uint64_t seed) : eng(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng); }

  Map mapping(std::size_t n) {
    Map m(n);
    for (auto& x : m) x = static_cast<State>(below(n));
    return m;
  }

  Dfa dfa(std::size_t n, std::size_t k) {
    std::vector<State> table(n * k);
    for (auto& x : table) x = static_cast<State>(below(n));
    return Dfa(n, k, std::move(table));
  }

  std::vector<Letter> word(std::size_t len, std::size_t k) {
    std::vector<Letter> w(len);
    for (auto& c : w) c = static_cast<Letter>(below(k));
    return w;
  }
};

// Automaton given by its letter columns.
inline Dfa from_columns(const std::vector<Map>& columns) {
  const std::size_t n = columns.at(0).size();
  const std::size_t k = columns.size();
  std::vector<State> table(n * k);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t c = 0; c < k; ++c) table[q * k + c] = columns[c][q];
  return Dfa(n, k, std::move(table));
}

}  // namespace naive

#endif  // RANDSYNC_TESTS_NAIVE_HPP
