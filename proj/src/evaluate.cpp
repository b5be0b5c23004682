#include "randsync/evaluate.hpp"

#include <stdexcept>
#include <unordered_map>

namespace randsync {

namespace {

class Evaluator {
 public:
  Evaluator(const Dfa& d, const CompressedWord& root) : d_(d) { count_refs(root); }

  StateMapping eval(const CompressedWord& w) {
    // refs_ counts the remaining requests for each node; a cached value is
    // released on its last use.
    auto& left = refs_[w.id()];
    if (auto it = cache_.find(w.id()); it != cache_.end()) {
      if (--left > 0) return it->second;
      StateMapping last = std::move(it->second);
      cache_.erase(it);
      return last;
    }
    StateMapping result = eval_uncached(w);
    if (--left > 0) cache_.emplace(w.id(), result);
    return result;
  }

 private:
  void count_refs(const CompressedWord& w) {
    if (++refs_[w.id()] > 1) return;
    for (const auto& c : w.children()) count_refs(c);
  }

  StateMapping eval_uncached(const CompressedWord& w) {
    switch (w.kind()) {
      case CompressedWord::Kind::kLetter:
        return letter_action(d_, w.letter_value());
      case CompressedWord::Kind::kConcat: {
        if (w.children().empty()) return StateMapping::identity(d_.states());
        StateMapping acc = eval(w.children().front());
        for (std::size_t i = 1; i < w.children().size(); ++i)
          acc = compose(acc, eval(w.children()[i]));
        return acc;
      }
      case CompressedWord::Kind::kPower:
        if (w.exponent() == 0) return StateMapping::identity(d_.states());
        return mapping_power(eval(w.children().front()), w.exponent());
    }
    throw std::logic_error("unknown word node");
  }

  const Dfa& d_;
  std::unordered_map<const void*, std::size_t> refs_;
  std::unordered_map<const void*, StateMapping> cache_;
};

}  // namespace

StateMapping eval_word(const Dfa& d, const CompressedWord& w) {
  if (w.alphabet_bound() > d.letters()) throw std::invalid_argument("word uses a letter outside the alphabet");
  return Evaluator(d, w).eval(w);
}

SyncCertificate make_certificate(CompressedWord word, State sink) {
  const auto length = word.length();
  return SyncCertificate{std::move(word), sink, length};
}

bool verify_certificate(const Dfa& d, const SyncCertificate& cert) noexcept {
  try {
    if (cert.length != word_length(cert.word)) return false;
    if (cert.sink >= d.states()) return false;
    const auto action = eval_word(d, cert.word);
    return action.is_constant() && action[0] == cert.sink;
  } catch (...) {
    return false;
  }
}

}  // namespace randsync
