#include "ntruke/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "ntruke/errors.hpp"

namespace ntruke {

namespace {

struct TrialResult {
  bool agree = false;
  bool margin_ok = false;
  bool f_A = false;
  bool f_B = false;
  bool transparent = false;
};

TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t trial) {
  const auto outcome =
      run_session(cfg.params, SessionSeeds::derive(cfg.base_seed, trial), cfg.mode, cfg.continuation);
  TrialResult r;
  r.agree = outcome.keys_agree();
  r.margin_ok = outcome.margin_ok;
  if (outcome.attack) {
    r.f_A = outcome.attack->f_A_match;
    r.f_B = outcome.attack->f_B_match;
    r.transparent = outcome.attack->sessions_transparent;
  }
  return r;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  params.validate();
}

ExperimentConfig config_from_json(const codec::Json& json) {
  if (!json.is_object()) throw ConfigError("experiment config must be a JSON object");
  ExperimentConfig cfg;
  try {
    if (json.contains("preset")) {
      const auto preset = Params::preset(json.at("preset").get<std::string>());
      if (!preset) throw ConfigError("unknown preset");
      cfg.params = *preset;
    }
    if (json.contains("params")) cfg.params = codec::params_from_json(json.at("params"));
    if (json.contains("trials")) cfg.trials = json.at("trials").get<std::uint64_t>();
    if (json.contains("seed")) cfg.base_seed = json.at("seed").get<std::uint64_t>();
    if (json.contains("mode")) {
      const auto mode = parse_mode(json.at("mode").get<std::string>());
      if (!mode) throw ConfigError("mode must be 'honest' or 'mitm'");
      cfg.mode = *mode;
    }
    if (json.contains("continuation")) cfg.continuation = json.at("continuation").get<bool>();
    if (json.contains("out")) cfg.output_path = json.at("out").get<std::string>();
    if (json.contains("threads")) cfg.threads = json.at("threads").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  } catch (const SchemaError& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
  return cfg;
}

std::uint64_t ExperimentSummary::unflagged_mismatches() const {
  return static_cast<std::uint64_t>(std::count_if(
      mismatches.begin(), mismatches.end(), [](const Mismatch& m) { return !m.margin_flagged; }));
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<TrialResult> results(cfg.trials);

  const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.threads, cfg.trials));
  if (workers <= 1) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) results[t] = run_trial(cfg, t);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t t = next++; t < cfg.trials; t = next++) results[t] = run_trial(cfg, t);
      });
    }
  }

  ExperimentSummary summary;
  summary.mode = cfg.mode;
  summary.trials = cfg.trials;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    const auto& r = results[t];
    if (!r.margin_ok) ++summary.margin_violations;
    if (cfg.mode == Mode::Honest) {
      if (r.agree) {
        ++summary.key_agreement_successes;
      } else {
        summary.mismatches.push_back(Mismatch{t, !r.margin_ok});
      }
    } else {
      ++summary.attacks_attempted;
      summary.f_A_recoveries += r.f_A ? 1 : 0;
      summary.f_B_recoveries += r.f_B ? 1 : 0;
      summary.transparent_sessions += r.transparent ? 1 : 0;
    }
  }

  if (!cfg.output_path.empty()) {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + cfg.output_path + " for writing");
    out << codec::pretty(to_json(summary, cfg)) << '\n';
    if (!out) throw std::runtime_error("failed writing " + cfg.output_path);
  }
  return summary;
}

codec::Json to_json(const ExperimentSummary& summary, const ExperimentConfig& cfg) {
  codec::Json out;
  out["mode"] = to_string(summary.mode);
  out["params"] = codec::to_json(cfg.params);
  out["base_seed"] = cfg.base_seed;
  out["continuation"] = cfg.continuation;
  out["trials"] = summary.trials;
  out["key_agreement_successes"] = summary.key_agreement_successes;
  out["attacks_attempted"] = summary.attacks_attempted;
  out["f_A_recoveries"] = summary.f_A_recoveries;
  out["f_B_recoveries"] = summary.f_B_recoveries;
  out["transparent_sessions"] = summary.transparent_sessions;
  out["margin_violations"] = summary.margin_violations;
  codec::Json mismatches = codec::Json::array();
  for (const auto& m : summary.mismatches) {
    mismatches.push_back(codec::Json{{"trial", m.trial}, {"margin_flagged", m.margin_flagged}});
  }
  out["mismatches"] = std::move(mismatches);
  out["unflagged_mismatches"] = summary.unflagged_mismatches();
  return out;
}

}  // namespace ntruke
