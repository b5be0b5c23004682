#ifndef RANDSYNC_WORD_HPP
#define RANDSYNC_WORD_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "randsync/mapping.hpp"

namespace randsync {

/// A word kept as an expression over letters, concatenation and integer
/// powers, so that words of length n^{1+eps} never need to be spelled out.
///
/// Nodes are immutable and shared: `concat({w, w})` stores `w` once, and
/// evaluation reuses the shared subtree's action. Lengths are computed at
/// construction with checked 64-bit arithmetic; overflow throws
/// std::overflow_error.
class CompressedWord {
 public:
  enum class Kind { kLetter, kConcat, kPower };

  /// The empty word (a concatenation with no parts).
  CompressedWord();

  static CompressedWord letter(Letter c);
  static CompressedWord concat(std::vector<CompressedWord> parts);
  static CompressedWord power(CompressedWord base, std::uint64_t exponent);
  /// Convenience: spells out a letter sequence, run-length compressed.
  static CompressedWord from_letters(const std::vector<Letter>& letters);

  Kind kind() const noexcept { return node_->kind; }
  std::uint64_t length() const noexcept { return node_->length; }
  bool empty() const noexcept { return node_->length == 0; }

  /// Valid for kLetter.
  Letter letter_value() const noexcept { return node_->letter; }
  /// Parts of a kConcat, or the single base of a kPower.
  const std::vector<CompressedWord>& children() const noexcept { return node_->children; }
  /// Valid for kPower.
  std::uint64_t exponent() const noexcept { return node_->exponent; }

  /// Largest letter index used plus one (0 for words without letters).
  Letter alphabet_bound() const noexcept { return node_->alphabet_bound; }

  /// Identity of the shared node; equal for copies of the same word.
  const void* id() const noexcept { return node_.get(); }

  /// Letter-by-letter expansion. Throws std::length_error past `limit`.
  std::vector<Letter> expand(std::uint64_t limit = 10'000'000) const;

 private:
  struct Node {
    Kind kind = Kind::kConcat;
    Letter letter = 0;
    std::vector<CompressedWord> children;
    std::uint64_t exponent = 0;
    std::uint64_t length = 0;
    Letter alphabet_bound = 0;
  };
  explicit CompressedWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

std::uint64_t word_length(const CompressedWord& w);

class WordSyntaxError : public std::invalid_argument {
 public:
  WordSyntaxError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Grammar (whitespace ignored):
///   WORD := TERM*        TERM := ATOM ['^' digits]
///   ATOM := 'a' | 'b' | '(' WORD ')'
/// Empty text is the empty word. Throws WordSyntaxError on malformed input
/// and std::overflow_error if an exponent or the total length overflows.
CompressedWord parse_word(std::string_view text);

/// Inverse of parse_word. Throws std::invalid_argument for letters beyond 'b'.
std::string format_word(const CompressedWord& w);

}  // namespace randsync

#endif  // RANDSYNC_WORD_HPP
