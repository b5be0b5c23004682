#include <doctest.h>

#include "naive.hpp"
#include "randsync/evaluate.hpp"
#include "randsync/oracle.hpp"
#include "randsync/random.hpp"

using namespace randsync;

namespace {

// Shortest reset length by enumerating all words up to max_len, or -1.
int brute_shortest(const Dfa& d, int max_len) {
  for (int len = 0; len <= max_len; ++len) {
    std::vector<Letter> w(len, 0);
    for (;;) {
      if (naive::is_constant(naive::run(d, w))) return len;
      int i = len - 1;
      while (i >= 0 && w[i] + 1 == d.letters()) w[i--] = 0;
      if (i < 0) break;
      ++w[i];
    }
  }
  return -1;
}

Dfa dfa_from_code(std::size_t n, std::size_t k, std::size_t code) {
  std::vector<State> table(n * k);
  for (auto& x : table) {
    x = static_cast<State>(code % n);
    code /= n;
  }
  return Dfa(n, k, std::move(table));
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("shortest_reset_word examples") {
  const Dfa c = naive::from_columns({{0, 0, 0}, {0, 1, 2}});
  const auto w = shortest_reset_word(c);
  REQUIRE(w);
  CHECK(w->length == 1);
  CHECK(naive::spell(w->letters) == "a");

  const Dfa perm = naive::from_columns({{1, 2, 0}, {1, 0, 2}});
  CHECK_FALSE(shortest_reset_word(perm).has_value());

  CHECK(shortest_reset_word(cerny(4))->length == 9);
  CHECK(shortest_reset_word(cerny(5))->length == 16);
  CHECK(shortest_reset_word(cerny(6))->length == 25);

  const auto one = shortest_reset_word(Dfa(1, 2, {0, 0}));
  REQUIRE(one);
  CHECK(one->length == 0);

  Rng rng(1);
  CHECK_THROWS_AS(shortest_reset_word(uniform_dfa(25, 2, rng)), CapacityError);
}

TEST_CASE("shortest words are minimal and lexicographically least") {
  for (std::size_t code = 0; code < 729; ++code) {
    const Dfa d = dfa_from_code(3, 2, code);
    const auto w = shortest_reset_word(d);
    const int brute = brute_shortest(d, 6);
    if (!w) {
      REQUIRE(brute == -1);
      continue;
    }
    REQUIRE(static_cast<int>(w->length) == brute);
    REQUIRE(naive::is_constant(naive::run(d, w->letters)));
    REQUIRE(w->word.expand() == w->letters);
    // No lexicographically smaller word of the same length resets.
    std::vector<Letter> x(w->length, 0);
    while (x != w->letters) {
      REQUIRE_FALSE(naive::is_constant(naive::run(d, x)));
      int i = static_cast<int>(x.size()) - 1;
      while (x[i] == 1) x[i--] = 0;
      ++x[i];
    }
  }
}

TEST_CASE("is_synchronizing") {
  CHECK(is_synchronizing(Dfa(1, 1, {0})));
  CHECK_FALSE(is_synchronizing(naive::from_columns({{1, 2, 0}, {1, 0, 2}})));
  CHECK(is_synchronizing(cerny(10)));
  for (std::size_t code = 0; code < 729; ++code) {
    const Dfa d = dfa_from_code(3, 2, code);
    REQUIRE(is_synchronizing(d) == shortest_reset_word(d).has_value());
  }
}

TEST_CASE("pair merge table distances") {
  naive::Gen g(51);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 2 + g.below(7);
    const Dfa d = g.dfa(n, 2);
    const PairMergeTable table(d);
    for (State p = 0; p < n; ++p) {
      CHECK(table.distance(p, p) == 0);
      for (State q = p + 1; q < n; ++q) {
        // Brute force: BFS-free search over all words up to length n^2.
        int best = -1;
        for (int len = 0; len <= static_cast<int>(n * n) && best < 0; ++len) {
          std::vector<Letter> w(len, 0);
          for (;;) {
            const auto m = naive::run(d, w);
            if (m[p] == m[q]) {
              best = len;
              break;
            }
            int i = len - 1;
            while (i >= 0 && w[i] == 1) w[i--] = 0;
            if (i < 0) break;
            ++w[i];
          }
          if (len >= 12) break;  // keep the enumeration small
        }
        const auto dist = table.distance(p, q);
        if (best >= 0) {
          REQUIRE(dist == static_cast<std::uint32_t>(best));
          const auto w = table.word(q, p);
          REQUIRE(w.size() == dist);
          const auto m = naive::run(d, w);
          REQUIRE(m[p] == m[q]);
        } else if (dist != PairMergeTable::kUnreachable) {
          REQUIRE(dist > 12);
        }
      }
    }
  }
}

TEST_CASE("greedy_reset_word") {
  const Dfa c = naive::from_columns({{0, 0, 0}, {0, 1, 2}});
  const auto g1 = greedy_reset_word(c);
  REQUIRE(g1);
  CHECK(g1->length == 1);

  const auto gc = greedy_reset_word(cerny(4));
  REQUIRE(gc);
  CHECK(gc->length >= 9);
  CHECK(naive::is_constant(naive::run(cerny(4), gc->letters)));

  CHECK_FALSE(greedy_reset_word(naive::from_columns({{1, 2, 0}, {1, 0, 2}})).has_value());

  naive::Gen g(52);
  for (int iter = 0; iter < 300; ++iter) {
    const Dfa d = g.dfa(2 + g.below(9), 2);
    const auto gw = greedy_reset_word(d);
    const auto sw = shortest_reset_word(d);
    REQUIRE(gw.has_value() == sw.has_value());
    if (!gw) continue;
    REQUIRE(gw->length >= sw->length);
    const auto m = eval_word(d, gw->word);
    REQUIRE(verify_certificate(d, make_certificate(gw->word, m[0])));
  }
}

TEST_CASE("small automata respect the Cerny and cubic bounds") {
  naive::Gen g(53);
  int synced = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const std::size_t n = 2 + g.below(9);
    const Dfa d = g.dfa(n, 2);
    const auto w = shortest_reset_word(d);
    if (!w) continue;
    ++synced;
    CHECK(w->length <= (n - 1) * (n - 1));
    CHECK(6 * w->length <= n * n * n - n);
  }
  CHECK(synced > 500);
}

}  // TEST_SUITE
