#include "randsync/fastsync.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randsync {

namespace {

std::uint64_t floor_power(std::uint64_t n, double exponent) {
  return static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(n), exponent)));
}

void validate_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.125))
    throw std::invalid_argument("epsilon must lie in (0, 1/8)");
}

Membership check_e(const CycleDecomposition& a, const Thresholds& t) {
  Membership m;
  if (a.cyclic_count() > t.alpha) m.violated.push_back(2);
  if (a.max_height() > t.alpha) m.violated.push_back(3);
  if (!m.violated.empty()) {
    m.holds = false;
    m.failed_family = 'E';
  }
  return m;
}

Membership inherit_failure(const Membership& inner) {
  Membership m = inner;
  m.holds = false;
  return m;
}

std::optional<SubMapping> try_restrict(const StateMapping& f, std::span<const State> domain) {
  try {
    return sub_restrict(f, domain);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

}  // namespace

Thresholds raw_thresholds(std::uint64_t n, double epsilon) {
  if (n < 1) throw std::invalid_argument("thresholds need n >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be positive");
  Thresholds t;
  t.n = n;
  t.epsilon = epsilon;
  t.alpha = floor_power(n, 0.5 + epsilon);
  t.beta = floor_power(n, 0.25 + 2 * epsilon);
  t.gamma = floor_power(n, 0.125 + 4 * epsilon);
  t.lambda = floor_power(n, 0.125 + 5 * epsilon);
  return t;
}

Thresholds thresholds(std::uint64_t n, double epsilon) {
  if (n < 4) throw std::invalid_argument("thresholds need n >= 4");
  validate_epsilon(epsilon);
  return raw_thresholds(n, epsilon);
}

StructuredWords build_words(const Thresholds& t) {
  const auto a = CompressedWord::letter(kLetterA);
  const auto b = CompressedWord::letter(kLetterB);
  auto u = CompressedWord::power(a, t.alpha);
  auto v = CompressedWord::concat({u, CompressedWord::power(CompressedWord::concat({b, u}), t.beta)});
  auto w = CompressedWord::concat(
      {v, CompressedWord::power(CompressedWord::concat({b, b, v}), t.gamma)});
  return {std::move(u), std::move(v), std::move(w)};
}

std::string Membership::describe() const {
  if (holds) return "ok";
  std::string s(1, failed_family);
  s += ':';
  for (std::size_t i = 0; i < violated.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(violated[i]);
  }
  return s;
}

Membership in_E(const PartialDfa& d, const Thresholds& t) {
  const auto a = letter_action(d, kLetterA);
  Membership m = check_e(decompose(a), t);
  bool only_a = true;
  for (State q = 0; q < d.states(); ++q)
    for (Letter c = 1; c < d.letters(); ++c)
      if (d.next(q, c)) only_a = false;
  if (!only_a) {
    m.holds = false;
    m.failed_family = 'E';
    m.violated.insert(m.violated.begin(), 1);
  }
  return m;
}

Membership in_E(const Dfa& d, const Thresholds& t) {
  return check_e(decompose(letter_action(d, kLetterA)), t);
}

std::vector<double> PreimageDistribution::probabilities() const {
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  return p;
}

PreimageDistribution preimage_distribution(const StateMapping& f) {
  PreimageDistribution d;
  d.counts.assign(f.size(), 0);
  d.total = f.size();
  for (const State y : f.targets()) ++d.counts[y];
  return d;
}

StageReport analyze_stages(const Dfa& d, const Thresholds& t) {
  if (d.letters() < 2) throw std::invalid_argument("stage analysis needs at least two letters");

  StageReport r;
  r.thresholds = t;

  const std::size_t n = d.states();
  const auto b = letter_action(d, kLetterB);

  // The decomposition of a and a itself are dropped before u is built to
  // keep the peak footprint down at large n.
  std::vector<State> cyc_a;
  std::vector<bool> on_cyc_a(n, false);
  StateMapping u;
  {
    const auto a = letter_action(d, kLetterA);
    {
      const auto a_dec = decompose(a);
      r.cyc_a = a_dec.cyclic_count();
      r.height_a = a_dec.max_height();
      r.e = check_e(a_dec, t);
      cyc_a.reserve(r.cyc_a);
      for (State x = 0; x < n; ++x)
        if (a_dec[x].is_cyclic) {
          cyc_a.push_back(x);
          on_cyc_a[x] = true;
        }
    }
    u = mapping_power(a, t.alpha);
  }
  const auto bu = compose(b, u);

  // Stage F: f_B on Cyc_a.
  const auto f_b = try_restrict(bu, cyc_a);
  std::vector<State> cyc_f;
  if (f_b) {
    cyc_f = cyclic_points(*f_b);
    r.cyc_f = cyc_f.size();
    r.height_f = height(*f_b);
  }
  if (!r.e) {
    r.f = inherit_failure(r.e);
  } else {
    // E holds, so u maps everything into Cyc_a and f_b is defined.
    if (*r.cyc_f > t.beta || *r.height_f > t.beta) r.f.violated.push_back(3);
    for (const State q : cyc_f) {
      if (on_cyc_a[b[q]]) {
        r.f.violated.push_back(4);
        break;
      }
    }
    if (!r.f.violated.empty()) {
      r.f.holds = false;
      r.f.failed_family = 'F';
    }
  }

  // Stage G: g_C on cyc(f_B).
  if (f_b) {
    const auto v = compose(u, mapping_power(bu, t.beta));
    std::vector<State> bbv_targets(n);
    for (State x = 0; x < n; ++x) bbv_targets[x] = v[b[b[x]]];
    const auto bbv = make_unchecked_mapping(std::move(bbv_targets));
    if (const auto g_c = try_restrict(bbv, cyc_f)) {
      const auto cyc_g = cyclic_points(*g_c);
      r.cyc_g = cyc_g.size();
      r.height_g = height(*g_c);
      if (r.f) {
        if (*r.cyc_g > t.gamma || *r.height_g > t.gamma) r.g.violated.push_back(3);
        // b-transitions defined so far leave Cyc_a and X_B = b(cyc(f_B)).
        std::vector<bool> has_b = on_cyc_a;
        for (const State x : cyc_f) has_b[b[x]] = true;
        for (const State q : cyc_g) {
          if (has_b[b[b[q]]]) {
            r.g.violated.push_back(4);
            break;
          }
        }
        if (!r.g.violated.empty()) {
          r.g.holds = false;
          r.g.failed_family = 'G';
        }
      }
    } else if (r.f) {
      throw std::logic_error("g_C is not closed although F holds");
    }
  }
  if (!r.f) r.g = inherit_failure(r.f);
  return r;
}

Membership in_F(const Dfa& d, const Thresholds& t) { return analyze_stages(d, t).f; }

Membership in_G(const Dfa& d, const Thresholds& t) { return analyze_stages(d, t).g; }

std::optional<std::uint64_t> merge_pair(State p, State q, const StateMapping& w_map,
                                        const StateMapping& b_map, std::uint64_t lambda) {
  for (std::uint64_t j = 0;; ++j) {
    if (w_map[p] == w_map[q]) return j;
    if (j == lambda) return std::nullopt;
    p = b_map[p];
    q = b_map[q];
  }
}

std::uint64_t assembled_length_bound(const Thresholds& t, std::uint64_t w_length,
                                     std::size_t image_size) {
  std::uint64_t step, extra, total;
  if (image_size == 0) return w_length;
  if (__builtin_add_overflow(t.lambda, w_length, &step) ||
      __builtin_mul_overflow(step, static_cast<std::uint64_t>(image_size - 1), &extra) ||
      __builtin_add_overflow(w_length, extra, &total))
    throw std::overflow_error("length bound overflows 64 bits");
  return total;
}

SyncResult synchronize(const Dfa& d, double epsilon) {
  if (d.letters() < 2) throw std::invalid_argument("synchronize needs at least two letters");
  validate_epsilon(epsilon);

  const std::size_t n = d.states();
  const Thresholds t = n >= 4 ? thresholds(n, epsilon) : raw_thresholds(n, epsilon);

  SyncResult result;
  result.report = analyze_stages(d, t);
  StageReport& report = result.report;

  if (n == 1) {
    report.image_after_w = 1;
    report.word_length = 0;
    result.certificate = make_certificate(CompressedWord(), 0);
    return result;
  }

  const auto words = build_words(t);
  const auto w_map = eval_word(d, words.w);
  const auto b_map = letter_action(d, kLetterB);
  const auto b_letter = CompressedWord::letter(kLetterB);

  std::vector<State> current = image(w_map);
  report.image_after_w = current.size();

  std::vector<CompressedWord> parts{words.w};
  while (current.size() > 1) {
    ++report.merge_attempts;
    const auto j = merge_pair(current[0], current[1], w_map, b_map, t.lambda);
    if (!j) {
      ++report.merge_failures;
      return result;
    }
    report.merge_steps.push_back(*j);
    if (*j > 0) parts.push_back(CompressedWord::power(b_letter, *j));
    parts.push_back(words.w);

    for (auto& x : current) {
      for (std::uint64_t i = 0; i < *j; ++i) x = b_map[x];
      x = w_map[x];
    }
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
  }

  auto cert = make_certificate(CompressedWord::concat(std::move(parts)), current.front());
  if (!verify_certificate(d, cert))
    throw std::logic_error("synchronize produced a certificate that does not verify");
  report.word_length = cert.length;
  result.certificate = std::move(cert);
  return result;
}

}  // namespace randsync
