#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ntruke/channel.hpp"
#include "ntruke/codec.hpp"
#include "ntruke/params.hpp"

namespace ntruke {

struct ExperimentConfig {
  Params params = Params::guarantee();
  std::uint64_t trials = 1;
  std::uint64_t base_seed = 0;
  Mode mode = Mode::Honest;
  bool continuation = true;
  /// Empty: no report file is written.
  std::string output_path;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;

  /// Throws ConfigError.
  void validate() const;
};

/// Reads {params | preset, trials, seed, mode, continuation, out, threads};
/// absent keys keep their defaults.
[[nodiscard]] ExperimentConfig config_from_json(const codec::Json& json);

/// A session whose keys disagreed, with the margin verdict that explains it.
struct Mismatch {
  std::uint64_t trial = 0;
  bool margin_flagged = false;
};

struct ExperimentSummary {
  Mode mode = Mode::Honest;
  std::uint64_t trials = 0;
  std::uint64_t key_agreement_successes = 0;
  std::uint64_t attacks_attempted = 0;
  std::uint64_t f_A_recoveries = 0;
  std::uint64_t f_B_recoveries = 0;
  std::uint64_t transparent_sessions = 0;
  /// Honest mode only: every K_A != K_B session.
  std::vector<Mismatch> mismatches;
  /// Sessions where the margin check failed, whatever their outcome.
  std::uint64_t margin_violations = 0;

  /// Mismatches the margin check did not predict. Always 0 if check_margin
  /// is sound.
  [[nodiscard]] std::uint64_t unflagged_mismatches() const;
};

/// Runs cfg.trials independent sessions with SessionSeeds::derive and
/// writes the summary JSON to cfg.output_path when set.
[[nodiscard]] ExperimentSummary run_experiment(const ExperimentConfig& cfg);

[[nodiscard]] codec::Json to_json(const ExperimentSummary& summary, const ExperimentConfig& cfg);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> problems;
  /// Set for attack transcripts.
  std::optional<bool> f_A_match;
  std::optional<bool> f_B_match;
};

/// Replays a transcript against oracle secrets.
///
/// Every logged message must equal the one the oracle's keys and blindings
/// produce; the match flags are recomputed by running Eve's recovery on the
/// captured ephemerals. When `report` is given, its flags and recovered keys
/// must agree with the recomputation. Honest transcripts additionally need
/// K_A = K_B.
[[nodiscard]] VerifyResult verify_transcript(const std::vector<LogEntry>& log,
                                             const codec::Json& oracle,
                                             const std::optional<codec::Json>& report);

}  // namespace ntruke
