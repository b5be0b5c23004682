#ifndef RANDSYNC_IO_HPP
#define RANDSYNC_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "randsync/automaton.hpp"
#include "randsync/evaluate.hpp"
#include "randsync/fastsync.hpp"
#include "randsync/stats.hpp"

namespace randsync {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// DFA text format "dfa v1":
//   dfa v1 <n> <k>
//   n lines of k space-separated 0-based targets (row = state, column = letter)

Dfa read_dfa(std::istream& in);
Dfa read_dfa_file(const std::string& path);
void write_dfa(std::ostream& out, const Dfa& d);
std::string dfa_to_text(const Dfa& d);

/// {"word": <text form>, "length": <int>, "sink": <int>}
nlohmann::json certificate_to_json(const SyncCertificate& cert);
/// Throws FormatError on missing fields or a malformed word.
SyncCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json membership_to_json(const Membership& m);
nlohmann::json stage_report_to_json(const StageReport& r);

/// One JSON object per record. Wall time is left out unless requested, so
/// that reruns with the same seed are byte-identical.
nlohmann::json experiment_to_json(const ExperimentRecord& rec, bool include_timing = false);

/// Header plus one row per trial: trial_index, n, epsilon, seed, outcome,
/// word_length, image_size_after_w, e_flag, f_flag, g_flag. Absent values
/// are empty cells.
void write_experiment_csv(std::ostream& out, const ExperimentRecord& rec);

}  // namespace randsync

#endif  // RANDSYNC_IO_HPP
