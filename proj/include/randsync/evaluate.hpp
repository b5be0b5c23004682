#ifndef RANDSYNC_EVALUATE_HPP
#define RANDSYNC_EVALUATE_HPP

#include <cstdint>

#include "randsync/automaton.hpp"
#include "randsync/word.hpp"

namespace randsync {

/// The action of w on d, computed on the expression tree: letters read the
/// table, concatenations compose left to right, powers use mapping_power.
/// Subtrees shared within w are evaluated once. Cost is
/// O(n * distinct nodes), independent of the word length.
///
/// Throws std::invalid_argument if w uses a letter >= d.letters().
StateMapping eval_word(const Dfa& d, const CompressedWord& w);

/// A claimed reset word together with the state it resets to.
struct SyncCertificate {
  CompressedWord word;
  State sink = 0;
  std::uint64_t length = 0;
};

SyncCertificate make_certificate(CompressedWord word, State sink);

/// True iff cert.word acts as the constant map to cert.sink on d and
/// cert.length is the word's length. Never throws.
bool verify_certificate(const Dfa& d, const SyncCertificate& cert) noexcept;

}  // namespace randsync

#endif  // RANDSYNC_EVALUATE_HPP
