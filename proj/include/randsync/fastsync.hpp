#ifndef RANDSYNC_FASTSYNC_HPP
#define RANDSYNC_FASTSYNC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randsync/automaton.hpp"
#include "randsync/evaluate.hpp"
#include "randsync/funcgraph.hpp"
#include "randsync/word.hpp"

namespace randsync {

/// Size parameters of the structured words for an n-state automaton:
///   alpha  = floor(n^{1/2 + eps})   length of u = a^alpha
///   beta   = floor(n^{1/4 + 2eps})  exponent in v = u (b u)^beta
///   gamma  = floor(n^{1/8 + 4eps})  exponent in w = v (bb v)^gamma
///   lambda = floor(n^{1/8 + 5eps})  longest b-prefix tried when merging a pair
///
/// Floors are taken in double precision; when n^{x} is an exact integer the
/// result may be off by one. Callers needing exact values should avoid such
/// (n, eps) pairs.
struct Thresholds {
  std::uint64_t n = 0;
  double epsilon = 0.0;
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  std::uint64_t gamma = 0;
  std::uint64_t lambda = 0;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// Throws std::invalid_argument unless n >= 4 and 0 < eps < 1/8.
Thresholds thresholds(std::uint64_t n, double epsilon);

/// Same floors with only n >= 1 and eps > 0 required; used by experiments
/// that explore parameters outside the guaranteed range.
Thresholds raw_thresholds(std::uint64_t n, double epsilon);

struct StructuredWords {
  CompressedWord u;
  CompressedWord v;
  CompressedWord w;
};

/// u = a^alpha, v = u (b u)^beta, w = v (bb v)^gamma. The words share
/// subtrees, so evaluating w evaluates u and v once.
StructuredWords build_words(const Thresholds& t);

/// Outcome of a membership test for one of the nested families E, F, G.
struct Membership {
  bool holds = true;
  /// Family whose definition failed first ('E', 'F' or 'G'); 0 if holds.
  char failed_family = 0;
  /// Condition numbers of `failed_family` that are violated.
  std::vector<int> violated;

  explicit operator bool() const noexcept { return holds; }
  /// "ok", or e.g. "F:3,4".
  std::string describe() const;
};

/// Partial automaton: all three conditions (only a-transitions defined; at
/// most alpha a-cyclic states; height of a at most alpha).
/// Throws std::invalid_argument if some a-transition is undefined.
Membership in_E(const PartialDfa& d, const Thresholds& t);
/// Complete automaton: does it extend a member of E (conditions 2 and 3)?
Membership in_E(const Dfa& d, const Thresholds& t);

/// Preimage counts of a mapping; probability of q is counts[q] / n.
struct PreimageDistribution {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::vector<double> probabilities() const;
};

PreimageDistribution preimage_distribution(const StateMapping& f);

/// Does the complete automaton d (k >= 2) extend a member of F?
/// f_B is the restriction of the action of b u to the a-cyclic states.
Membership in_F(const Dfa& d, const Thresholds& t);

/// Does the complete automaton d (k >= 2) extend a member of G?
/// g_C is the restriction of the action of bb v to the f_B-cyclic states;
/// condition 4 is checked against the b-transitions the staged
/// construction has defined, namely those leaving Cyc_a and X_B.
Membership in_G(const Dfa& d, const Thresholds& t);

/// Smallest j in [0, lambda] such that w_map merges b^j(p) and b^j(q), i.e.
/// the word b^j w synchronizes p and q. O(lambda).
std::optional<std::uint64_t> merge_pair(State p, State q, const StateMapping& w_map,
                                        const StateMapping& b_map, std::uint64_t lambda);

/// Per-stage diagnostics of one run of synchronize.
struct StageReport {
  Thresholds thresholds;
  std::size_t cyc_a = 0;
  std::uint32_t height_a = 0;
  /// Absent when f_B (resp. g_C) is not closed on its domain, which can
  /// only happen when an earlier stage's height bound fails.
  std::optional<std::size_t> cyc_f;
  std::optional<std::uint32_t> height_f;
  std::optional<std::size_t> cyc_g;
  std::optional<std::uint32_t> height_g;
  Membership e;
  Membership f;
  Membership g;
  std::size_t image_after_w = 0;
  std::size_t merge_attempts = 0;
  std::size_t merge_failures = 0;
  /// Exponents j_i of the appended factors b^{j_i} w.
  std::vector<std::uint64_t> merge_steps;
  std::optional<std::uint64_t> word_length;
};

/// Stage quantities and E/F/G flags without running the merge loop.
StageReport analyze_stages(const Dfa& d, const Thresholds& t);

struct SyncResult {
  /// Present on success.
  std::optional<SyncCertificate> certificate;
  StageReport report;

  bool success() const noexcept { return certificate.has_value(); }
};

/// Searches for a reset word of the form w (b^{j_1} w) ... (b^{j_m} w).
///
/// Evaluates w once, then repeatedly merges the two smallest states of the
/// current set with the least j <= lambda. Fails (no certificate) if some
/// pair does not merge; the automaton may still be synchronizing. The
/// E/F/G flags are reported but do not gate the search. Every returned
/// certificate has been checked with verify_certificate.
///
/// Requires k >= 2 and 0 < eps < 1/8. n >= 4 is the regime the thresholds
/// are meant for; smaller automata are accepted (n = 1 yields the empty
/// word). Throws std::invalid_argument on bad arguments and
/// std::logic_error if a produced certificate fails verification.
SyncResult synchronize(const Dfa& d, double epsilon);

/// |w| + (image - 1) * (lambda + |w|), checked.
std::uint64_t assembled_length_bound(const Thresholds& t, std::uint64_t w_length,
                                     std::size_t image_size);

}  // namespace randsync

#endif  // RANDSYNC_FASTSYNC_HPP
