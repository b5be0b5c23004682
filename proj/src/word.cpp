#include "randsync/word.hpp"

#include <algorithm>
#include <cctype>

namespace randsync {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("word length overflows 64 bits");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("word length overflows 64 bits");
  return r;
}

}  // namespace

CompressedWord::CompressedWord() : node_(std::make_shared<const Node>()) {}

CompressedWord CompressedWord::letter(Letter c) {
  Node n;
  n.kind = Kind::kLetter;
  n.letter = c;
  n.length = 1;
  n.alphabet_bound = c + 1;
  return CompressedWord(std::make_shared<const Node>(std::move(n)));
}

CompressedWord CompressedWord::concat(std::vector<CompressedWord> parts) {
  Node n;
  n.kind = Kind::kConcat;
  for (const auto& p : parts) {
    n.length = checked_add(n.length, p.length());
    n.alphabet_bound = std::max(n.alphabet_bound, p.alphabet_bound());
  }
  n.children = std::move(parts);
  return CompressedWord(std::make_shared<const Node>(std::move(n)));
}

CompressedWord CompressedWord::power(CompressedWord base, std::uint64_t exponent) {
  Node n;
  n.kind = Kind::kPower;
  n.exponent = exponent;
  n.length = checked_mul(base.length(), exponent);
  n.alphabet_bound = base.alphabet_bound();
  n.children.push_back(std::move(base));
  return CompressedWord(std::make_shared<const Node>(std::move(n)));
}

CompressedWord CompressedWord::from_letters(const std::vector<Letter>& letters) {
  std::vector<CompressedWord> runs;
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    auto l = letter(letters[i]);
    runs.push_back(j - i == 1 ? l : power(l, j - i));
    i = j;
  }
  if (runs.size() == 1) return runs.front();
  return concat(std::move(runs));
}

std::vector<Letter> CompressedWord::expand(std::uint64_t limit) const {
  if (length() > limit) throw std::length_error("word too long to expand");
  std::vector<Letter> out;
  out.reserve(length());
  // Explicit stack of (node, repetitions left / child index).
  struct Frame {
    const CompressedWord* w;
    std::uint64_t step;
  };
  std::vector<Frame> stack{{this, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const CompressedWord& w = *f.w;
    switch (w.kind()) {
      case Kind::kLetter:
        out.push_back(w.letter_value());
        stack.pop_back();
        break;
      case Kind::kConcat:
        if (f.step == w.children().size()) {
          stack.pop_back();
        } else {
          const auto* child = &w.children()[f.step++];
          stack.push_back({child, 0});
        }
        break;
      case Kind::kPower:
        if (f.step == w.exponent()) {
          stack.pop_back();
        } else {
          ++f.step;
          const auto* child = &w.children().front();
          stack.push_back({child, 0});
        }
        break;
    }
  }
  return out;
}

std::uint64_t word_length(const CompressedWord& w) { return w.length(); }

namespace {

constexpr std::size_t kMaxNesting = 4096;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  CompressedWord parse() {
    auto w = word(0);
    skip_space();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')') throw WordSyntaxError("unbalanced ')'", pos_);
      throw WordSyntaxError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }
    return w;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  CompressedWord word(std::size_t depth) {
    if (depth > kMaxNesting) throw WordSyntaxError("parentheses nested too deeply", pos_);
    std::vector<CompressedWord> terms;
    for (;;) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ')') break;
      terms.push_back(term(depth));
    }
    if (terms.size() == 1) return terms.front();
    return CompressedWord::concat(std::move(terms));
  }

  CompressedWord term(std::size_t depth) {
    CompressedWord base;
    const char c = text_[pos_];
    if (c == 'a' || c == 'b') {
      base = CompressedWord::letter(static_cast<Letter>(c - 'a'));
      ++pos_;
    } else if (c == '(') {
      const std::size_t open = pos_++;
      base = word(depth + 1);
      if (pos_ == text_.size()) throw WordSyntaxError("unclosed '('", open);
      ++pos_;
    } else {
      throw WordSyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      return CompressedWord::power(std::move(base), exponent());
    }
    return base;
  }

  std::uint64_t exponent() {
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (__builtin_mul_overflow(value, 10u, &value) ||
          __builtin_add_overflow(value, digit, &value))
        throw std::overflow_error("exponent overflows 64 bits at position " +
                                  std::to_string(start));
      ++pos_;
    }
    if (pos_ == start) throw WordSyntaxError("expected exponent after '^'", pos_);
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void format_into(const CompressedWord& w, std::string& out) {
  switch (w.kind()) {
    case CompressedWord::Kind::kLetter:
      if (w.letter_value() > 1)
        throw std::invalid_argument("text form only supports letters a and b");
      out.push_back(static_cast<char>('a' + w.letter_value()));
      break;
    case CompressedWord::Kind::kConcat:
      for (const auto& c : w.children()) format_into(c, out);
      break;
    case CompressedWord::Kind::kPower: {
      const auto& base = w.children().front();
      if (base.kind() == CompressedWord::Kind::kLetter) {
        format_into(base, out);
      } else {
        out.push_back('(');
        format_into(base, out);
        out.push_back(')');
      }
      out.push_back('^');
      out += std::to_string(w.exponent());
      break;
    }
  }
}

}  // namespace

CompressedWord parse_word(std::string_view text) { return Parser(text).parse(); }

std::string format_word(const CompressedWord& w) {
  std::string out;
  format_into(w, out);
  return out;
}

}  // namespace randsync
