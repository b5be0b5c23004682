#include "randsync/io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace randsync {

namespace {

std::uint64_t read_count(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) throw FormatError(std::string("unexpected end of input reading ") + what);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (token.empty() || token[0] == '-' || token[0] == '+') throw std::invalid_argument(token);
    v = std::stoull(token, &used);
  } catch (const std::exception&) {
    throw FormatError(std::string("expected a nonnegative integer for ") + what + ", got '" +
                      token + "'");
  }
  if (used != token.size())
    throw FormatError(std::string("expected a nonnegative integer for ") + what + ", got '" +
                      token + "'");
  return v;
}

}  // namespace

Dfa read_dfa(std::istream& in) {
  std::string magic, version;
  if (!(in >> magic >> version) || magic != "dfa" || version != "v1")
    throw FormatError("missing 'dfa v1' header");
  const auto n = read_count(in, "state count");
  const auto k = read_count(in, "alphabet size");
  if (n == 0 || k == 0) throw FormatError("state count and alphabet size must be positive");
  if (n > std::numeric_limits<State>::max() || n * k > (1ULL << 34))
    throw FormatError("automaton too large");

  std::vector<State> table;
  table.reserve(n * k);
  for (std::uint64_t i = 0; i < n * k; ++i) {
    const auto t = read_count(in, "transition target");
    if (t >= n)
      throw FormatError("transition target " + std::to_string(t) + " out of range in row " +
                        std::to_string(i / k));
    table.push_back(static_cast<State>(t));
  }
  std::string extra;
  if (in >> extra) throw FormatError("trailing data after transition table");
  return Dfa(n, k, std::move(table));
}

Dfa read_dfa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_dfa(in);
}

void write_dfa(std::ostream& out, const Dfa& d) {
  out << "dfa v1 " << d.states() << ' ' << d.letters() << '\n';
  for (State q = 0; q < d.states(); ++q) {
    for (Letter c = 0; c < d.letters(); ++c) {
      if (c) out << ' ';
      out << d.next(q, c);
    }
    out << '\n';
  }
}

std::string dfa_to_text(const Dfa& d) {
  std::ostringstream out;
  write_dfa(out, d);
  return out.str();
}

nlohmann::json certificate_to_json(const SyncCertificate& cert) {
  return {{"word", format_word(cert.word)}, {"length", cert.length}, {"sink", cert.sink}};
}

SyncCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    SyncCertificate c;
    c.word = parse_word(j.at("word").get<std::string>());
    c.length = j.at("length").get<std::uint64_t>();
    c.sink = j.at("sink").get<State>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad certificate word: ") + e.what());
  }
}

nlohmann::json membership_to_json(const Membership& m) {
  nlohmann::json j{{"holds", m.holds}};
  if (!m.holds) {
    j["failed_family"] = std::string(1, m.failed_family);
    j["violated"] = m.violated;
  }
  return j;
}

nlohmann::json stage_report_to_json(const StageReport& r) {
  const auto opt = [](const auto& v) -> nlohmann::json {
    if (v) return *v;
    return nullptr;
  };
  const auto& t = r.thresholds;
  return {
      {"n", t.n},
      {"epsilon", t.epsilon},
      {"thresholds",
       {{"alpha", t.alpha}, {"beta", t.beta}, {"gamma", t.gamma}, {"lambda", t.lambda}}},
      {"cyc_a", r.cyc_a},
      {"height_a", r.height_a},
      {"cyc_f", opt(r.cyc_f)},
      {"height_f", opt(r.height_f)},
      {"cyc_g", opt(r.cyc_g)},
      {"height_g", opt(r.height_g)},
      {"E", membership_to_json(r.e)},
      {"F", membership_to_json(r.f)},
      {"G", membership_to_json(r.g)},
      {"image_after_w", r.image_after_w},
      {"merge_attempts", r.merge_attempts},
      {"merge_failures", r.merge_failures},
      {"merge_steps", r.merge_steps},
      {"word_length", opt(r.word_length)},
  };
}

nlohmann::json experiment_to_json(const ExperimentRecord& rec, bool include_timing) {
  nlohmann::json estimates = nlohmann::json::object();
  for (const auto& [name, e] : rec.estimates) {
    estimates[name] = {{"successes", e.successes}, {"trials", e.trials}, {"point", e.point},
                       {"ci_low", e.ci_low},       {"ci_high", e.ci_high}};
  }
  nlohmann::json stats = nlohmann::json::object();
  for (const auto& [name, v] : rec.stats) stats[name] = v;

  nlohmann::json j{{"experiment", rec.experiment},
                   {"n", rec.n},
                   {"epsilon", rec.epsilon},
                   {"trials", rec.trials},
                   {"seed", rec.seed},
                   {"estimates", estimates},
                   {"stats", stats}};
  if (include_timing) j["wall_seconds"] = rec.wall_seconds;
  return j;
}

void write_experiment_csv(std::ostream& out, const ExperimentRecord& rec) {
  const auto cell = [&](const auto& v) {
    if (v) out << *v;
  };
  const auto flag = [&](const std::optional<bool>& v) {
    if (v) out << (*v ? 1 : 0);
  };
  out << "trial_index,n,epsilon,seed,outcome,word_length,image_size_after_w,e_flag,f_flag,g_flag\n";
  for (const auto& row : rec.rows) {
    out << row.index << ',' << rec.n << ',' << rec.epsilon << ',' << rec.seed << ','
        << (row.outcome ? 1 : 0) << ',';
    cell(row.word_length);
    out << ',';
    cell(row.image_after_w);
    out << ',';
    flag(row.e_flag);
    out << ',';
    flag(row.f_flag);
    out << ',';
    flag(row.g_flag);
    out << '\n';
  }
}

}  // namespace randsync
