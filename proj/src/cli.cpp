#include "randsync/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "randsync/evaluate.hpp"
#include "randsync/fastsync.hpp"
#include "randsync/io.hpp"
#include "randsync/oracle.hpp"
#include "randsync/random.hpp"
#include "randsync/stats.hpp"

namespace randsync::cli {

namespace {

constexpr std::uint64_t kExpandLimit = 1'000'000'000;

struct Config {
  std::uint64_t n = 0;
  std::uint64_t k = 2;
  double epsilon = 0.05;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  std::string in_path;
  std::string out_path;
  std::string word_path;
  std::string report_path;
  std::string format = "text";
  std::string fallback;
  std::string bench_kind;
  std::string which = "E";
  std::string dist = "uniform";
  unsigned threads = 0;
  bool expand = false;
  bool timing = false;
};

// Writes to --out when given, else to the provided stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw FormatError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string word_text(const CompressedWord& w, bool expand) {
  if (!expand) return format_word(w);
  std::string s;
  for (const Letter c : w.expand(kExpandLimit)) s.push_back(static_cast<char>('a' + c));
  return s;
}

void print_certificate(std::ostream& out, const SyncCertificate& cert, const Config& cfg) {
  if (cfg.format == "json") {
    auto j = certificate_to_json(cert);
    if (cfg.expand) j["word"] = word_text(cert.word, true);
    out << j.dump() << '\n';
  } else {
    out << "word: " << word_text(cert.word, cfg.expand) << '\n'
        << "length: " << cert.length << '\n'
        << "sink: " << cert.sink << '\n';
  }
}

int cmd_gen(const Config& cfg, std::ostream& out) {
  Rng rng(cfg.seed);
  const Dfa d = uniform_dfa(cfg.n, cfg.k, rng);
  Sink sink(cfg.out_path, out);
  write_dfa(sink.get(), d);
  return kOk;
}

int cmd_sync(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Dfa d = read_dfa_file(cfg.in_path);
  const auto result = synchronize(d, cfg.epsilon);
  if (!cfg.report_path.empty()) {
    Sink report(cfg.report_path, out);
    report.get() << stage_report_to_json(result.report).dump(2) << '\n';
  }
  if (result.success()) {
    print_certificate(out, *result.certificate, cfg);
    return kOk;
  }

  err << "merge failure: states did not merge within lambda = " << result.report.thresholds.lambda
      << " b-steps (image after w: " << result.report.image_after_w << ")\n";
  if (cfg.fallback != "greedy") return kNegative;

  const auto greedy = greedy_reset_word(d);
  if (!greedy) {
    err << "not synchronizing\n";
    return kNegative;
  }
  const auto action = eval_word(d, greedy->word);
  const auto cert = make_certificate(greedy->word, action[0]);
  if (!verify_certificate(d, cert)) throw std::logic_error("greedy word does not verify");
  err << "using greedy fallback\n";
  print_certificate(out, cert, cfg);
  return kOk;
}

int cmd_exact(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Dfa d = read_dfa_file(cfg.in_path);
  const auto w = shortest_reset_word(d);
  if (!w) {
    err << "not synchronizing\n";
    return kNegative;
  }
  const auto cert = make_certificate(w->word, eval_word(d, w->word)[0]);
  print_certificate(out, cert, cfg);
  return kOk;
}

int cmd_check(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Dfa d = read_dfa_file(cfg.in_path);
  std::ifstream in(cfg.word_path);
  if (!in) throw FormatError("cannot open " + cfg.word_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto word = parse_word(buf.str());
  if (word.alphabet_bound() > d.letters())
    throw std::invalid_argument("word uses a letter outside the automaton's alphabet");
  const auto action = eval_word(d, word);
  if (!action.is_constant()) {
    err << "not synchronizing: image has " << image(action).size() << " states\n";
    return kNegative;
  }
  if (cfg.format == "json") {
    out << nlohmann::json{{"synchronizing", true}, {"sink", action[0]}, {"length", word.length()}}
               .dump()
        << '\n';
  } else {
    out << "synchronizing: sink " << action[0] << ", length " << word.length() << '\n';
  }
  return kOk;
}

int cmd_bench(const Config& cfg, std::ostream& out) {
  const unsigned threads = cfg.threads ? cfg.threads : default_threads();
  ExperimentRecord rec;
  if (cfg.bench_kind == "lemma2") {
    const auto model = cfg.dist == "linear" ? MappingModel::kLinearWeights : MappingModel::kUniform;
    rec = lemma2_experiment(cfg.n, cfg.epsilon, cfg.trials, cfg.seed, model, threads);
  } else if (cfg.bench_kind == "sets") {
    const auto which = cfg.which == "F" ? StageSet::kF : cfg.which == "G" ? StageSet::kG : StageSet::kE;
    rec = set_extension_experiment(cfg.n, cfg.epsilon, cfg.trials, cfg.seed, which, threads);
  } else {
    rec = success_profile(cfg.n, cfg.epsilon, cfg.trials, cfg.seed, threads);
  }

  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.get();
  if (cfg.format == "csv") {
    write_experiment_csv(os, rec);
  } else if (cfg.format == "json") {
    os << experiment_to_json(rec, cfg.timing).dump() << '\n';
  } else {
    os << rec.experiment << " n=" << rec.n << " epsilon=" << rec.epsilon
       << " trials=" << rec.trials << " seed=" << rec.seed << '\n';
    for (const auto& [name, e] : rec.estimates)
      os << "  " << name << ": " << e.successes << "/" << e.trials << " = " << e.point << " [95% CI "
         << e.ci_low << ", " << e.ci_high << "]\n";
    for (const auto& [name, v] : rec.stats) os << "  " << name << ": " << v << '\n';
    if (cfg.timing) os << "  wall_seconds: " << rec.wall_seconds << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Fast synchronization of random automata"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Write a uniform random DFA");
  gen->add_option("--n", cfg.n, "Number of states")->required()->check(CLI::PositiveNumber);
  gen->add_option("--k", cfg.k, "Alphabet size")->check(CLI::PositiveNumber);
  gen->add_option("--seed", cfg.seed, "Seed")->required();
  gen->add_option("--out", cfg.out_path, "Output file (default: stdout)");

  const auto add_format = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));
  };
  const auto add_epsilon = [&](CLI::App* sub) {
    sub->add_option("--epsilon", cfg.epsilon, "Epsilon in (0, 1/8)")
        ->check(CLI::Validator(
            [](std::string& s) -> std::string {
              double e = 0.0;
              if (!CLI::detail::lexical_cast(s, e)) return "epsilon must be a number";
              return e > 0.0 && e < 0.125 ? "" : "epsilon must lie in (0, 1/8)";
            },
            "(0, 1/8)"));
  };

  auto* sync = app.add_subcommand("sync", "Find a reset word with the fast structured search");
  sync->add_option("--in", cfg.in_path, "DFA file")->required();
  add_epsilon(sync);
  sync->add_option("--fallback", cfg.fallback, "Fallback when the fast path fails")
      ->check(CLI::IsMember({"greedy"}));
  sync->add_option("--report", cfg.report_path, "Write the stage report (JSON) here");
  sync->add_flag("--expand", cfg.expand, "Print the word letter by letter");
  add_format(sync, {"text", "json"});

  auto* exact = app.add_subcommand("exact", "Shortest reset word (n <= 24)");
  exact->add_option("--in", cfg.in_path, "DFA file")->required();
  exact->add_flag("--expand", cfg.expand, "Print the word letter by letter");
  add_format(exact, {"text", "json"});

  auto* check = app.add_subcommand("check", "Check that a word synchronizes a DFA");
  check->add_option("--in", cfg.in_path, "DFA file")->required();
  check->add_option("--word", cfg.word_path, "File holding the word in compressed text form")
      ->required();
  add_format(check, {"text", "json"});

  auto* bench = app.add_subcommand("bench", "Monte Carlo experiments");
  bench->add_option("kind", cfg.bench_kind, "lemma2 | sets | success")
      ->required()
      ->check(CLI::IsMember({"lemma2", "sets", "success"}));
  bench->add_option("--n", cfg.n, "Number of states")->required()->check(CLI::PositiveNumber);
  bench->add_option("--epsilon", cfg.epsilon, "Epsilon")->check(CLI::PositiveNumber);
  bench->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
  bench->add_option("--seed", cfg.seed, "Master seed")->required();
  bench->add_option("--which", cfg.which, "Family for 'sets'")->check(CLI::IsMember({"E", "F", "G"}));
  bench->add_option("--dist", cfg.dist, "Mapping model for 'lemma2'")
      ->check(CLI::IsMember({"uniform", "linear"}));
  bench->add_option("--out", cfg.out_path, "Output file (default: stdout)");
  bench->add_option("--threads", cfg.threads, "Worker threads (default: RANDSYNC_THREADS or all cores)");
  bench->add_flag("--timing", cfg.timing, "Include wall-clock time in the output");
  add_format(bench, {"text", "json", "csv"});

  std::vector<std::string> argv_storage{"randsync"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageOrIo;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageOrIo;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (sync->parsed()) return cmd_sync(cfg, out, err);
    if (exact->parsed()) return cmd_exact(cfg, out, err);
    if (check->parsed()) return cmd_check(cfg, out, err);
    if (bench->parsed()) return cmd_bench(cfg, out);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kCapacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  }
  return kUsageOrIo;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace randsync::cli
