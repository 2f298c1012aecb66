#include "ntruke/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ntruke/channel.hpp"
#include "ntruke/codec.hpp"
#include "ntruke/errors.hpp"
#include "ntruke/experiment.hpp"
#include "ntruke/protocol.hpp"

namespace ntruke::cli {

namespace {

using codec::Json;

struct ParamFlags {
  std::string preset = "guarantee";
  std::optional<std::int64_t> n, p, q, d;

  void attach(CLI::App& app) {
    app.add_option("--preset", preset, "Parameter preset: guarantee or lossy");
    app.add_option("--n", n, "Ring dimension N (prime)");
    app.add_option("--p", p, "Small modulus p");
    app.add_option("--q", q, "Large modulus q");
    app.add_option("--d", d, "Sets d_f, d_g and d_r");
  }

  [[nodiscard]] Params resolve() const {
    auto params = Params::preset(preset);
    if (!params) throw ConfigError("unknown preset '" + preset + "'");
    if (n) params->n = *n;
    if (p) params->p = *p;
    if (q) params->q = *q;
    if (d) params->d_f = params->d_g = params->d_r = *d;
    params->validate();
    return *params;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text << '\n';
}

void write_session_files(const std::string& dir, const Params& params, const SessionSeeds& seeds,
                         const SessionOutcome& outcome, const std::optional<Json>& report) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  write_file(base / "transcript.json", serialize_transcript(outcome.log));
  write_file(base / "oracle.json", serialize_oracle(params, seeds, outcome));
  if (report) write_file(base / "report.json", codec::pretty(*report));
}

SessionSeeds seeds_from(const std::string& seed_text) {
  return SessionSeeds::derive(parse_seed(seed_text), 0);
}

}  // namespace

std::uint64_t parse_seed(const std::string& text) {
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  const std::string digits = hex ? text.substr(2) : text;
  if (digits.empty() || digits[0] == '-' || digits[0] == '+') {
    throw ConfigError("invalid seed '" + text + "'");
  }
  try {
    std::size_t used = 0;
    const auto value = std::stoull(digits, &used, hex ? 16 : 10);
    if (used != digits.size()) throw ConfigError("invalid seed '" + text + "'");
    return value;
  } catch (const std::logic_error&) {
    throw ConfigError("invalid seed '" + text + "'");
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"NTRU-KE key exchange and man-in-the-middle key recovery simulator", "ntruke"};
  app.require_subcommand(1);

  // keygen
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair and print it as JSON");
  ParamFlags keygen_params;
  std::string keygen_seed = "0";
  keygen_params.attach(*keygen_cmd);
  keygen_cmd->add_option("--seed", keygen_seed, "RNG seed (decimal or 0x-hex)");

  // exchange
  auto* exchange_cmd = app.add_subcommand("exchange", "Run one honest session");
  ParamFlags exchange_params;
  std::string exchange_seed = "0";
  std::string exchange_out;
  exchange_params.attach(*exchange_cmd);
  exchange_cmd->add_option("--seed", exchange_seed, "Base seed; Alice, Bob use seed, seed+1");
  exchange_cmd->add_option("--out", exchange_out, "Directory for transcript.json and oracle.json");

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Run one man-in-the-middle session");
  ParamFlags attack_params;
  std::string attack_seed = "0";
  std::string attack_out;
  bool attack_continuation = true;
  attack_params.attach(*attack_cmd);
  attack_cmd->add_option("--seed", attack_seed, "Base seed; Alice, Bob, Eve use seed, +1, +2");
  attack_cmd->add_flag("--continuation,!--no-continuation", attack_continuation,
                       "Eve completes sessions with both victims (default on)");
  attack_cmd->add_option("--out", attack_out,
                         "Directory for transcript.json, report.json and oracle.json");

  // experiment
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a batch of seeded sessions");
  ParamFlags experiment_params;
  std::string experiment_config;
  std::string experiment_seed = "0";
  std::uint64_t experiment_trials = 1;
  std::string experiment_mode = "honest";
  bool experiment_continuation = true;
  std::string experiment_out;
  unsigned experiment_threads = 1;
  experiment_params.attach(*experiment_cmd);
  experiment_cmd->add_option("--config", experiment_config, "JSON config file; flags override it");
  auto* seed_opt = experiment_cmd->add_option("--seed", experiment_seed, "Base seed");
  auto* trials_opt = experiment_cmd->add_option("--trials", experiment_trials, "Number of sessions");
  auto* mode_opt = experiment_cmd->add_option("--mode", experiment_mode, "honest or mitm");
  auto* cont_opt = experiment_cmd->add_flag("--continuation,!--no-continuation",
                                            experiment_continuation, "Session continuation");
  auto* out_opt = experiment_cmd->add_option("--out", experiment_out, "Summary JSON path");
  auto* threads_opt = experiment_cmd->add_option("--threads", experiment_threads, "Worker threads");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Recheck a transcript against oracle keys");
  std::string verify_transcript_path, verify_oracle_path, verify_report_path;
  verify_cmd->add_option("--transcript", verify_transcript_path, "transcript.json")->required();
  verify_cmd->add_option("--oracle", verify_oracle_path, "oracle.json")->required();
  verify_cmd->add_option("--report", verify_report_path, "report.json to cross-check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ntruke: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (keygen_cmd->parsed()) {
      const Params params = keygen_params.resolve();
      Rng rng(parse_seed(keygen_seed));
      const KeyPair keys = keygen(params, rng, false);
      Json doc;
      doc["params"] = codec::to_json(params);
      const Json halves = codec::keypair_to_json(keys);
      for (const auto& [k, v] : halves.items()) doc[k] = v;
      out << codec::pretty(doc) << '\n';
      return kExitOk;
    }

    if (exchange_cmd->parsed()) {
      const Params params = exchange_params.resolve();
      const SessionSeeds seeds = seeds_from(exchange_seed);
      const auto outcome = run_session(params, seeds, Mode::Honest);
      Json doc;
      doc["params"] = codec::to_json(params);
      doc["transcript"] = codec::parse(serialize_transcript(outcome.log));
      doc["K_A"] = codec::to_json(outcome.k_a.k);
      doc["K_B"] = codec::to_json(outcome.k_b.k);
      doc["agree"] = outcome.keys_agree();
      doc["margin_ok"] = outcome.margin_ok;
      out << codec::pretty(doc) << '\n';
      write_session_files(exchange_out, params, seeds, outcome, std::nullopt);
      return kExitOk;
    }

    if (attack_cmd->parsed()) {
      const Params params = attack_params.resolve();
      const SessionSeeds seeds = seeds_from(attack_seed);
      const auto outcome = run_session(params, seeds, Mode::Mitm, attack_continuation);
      const Json report = codec::to_json(*outcome.attack);
      out << codec::pretty(report) << '\n';
      write_session_files(attack_out, params, seeds, outcome, report);
      return kExitOk;
    }

    if (experiment_cmd->parsed()) {
      ExperimentConfig cfg;
      if (!experiment_config.empty()) cfg = config_from_json(codec::parse(read_file(experiment_config)));
      const bool params_given = experiment_params.n || experiment_params.p || experiment_params.q ||
                                experiment_params.d ||
                                experiment_cmd->get_option("--preset")->count() > 0;
      if (params_given || experiment_config.empty()) cfg.params = experiment_params.resolve();
      if (seed_opt->count() > 0) cfg.base_seed = parse_seed(experiment_seed);
      if (trials_opt->count() > 0) cfg.trials = experiment_trials;
      if (mode_opt->count() > 0) {
        const auto mode = parse_mode(experiment_mode);
        if (!mode) throw ConfigError("--mode must be honest or mitm");
        cfg.mode = *mode;
      }
      if (cont_opt->count() > 0) cfg.continuation = experiment_continuation;
      if (out_opt->count() > 0) cfg.output_path = experiment_out;
      if (threads_opt->count() > 0) cfg.threads = experiment_threads;
      const auto summary = run_experiment(cfg);
      out << codec::pretty(to_json(summary, cfg)) << '\n';
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      const auto log = parse_transcript(read_file(verify_transcript_path));
      const Json oracle = codec::parse(read_file(verify_oracle_path));
      std::optional<Json> report;
      if (!verify_report_path.empty()) report = codec::parse(read_file(verify_report_path));
      const auto result = verify_transcript(log, oracle, report);
      Json doc;
      doc["ok"] = result.ok;
      if (result.f_A_match) doc["f_A_match"] = *result.f_A_match;
      if (result.f_B_match) doc["f_B_match"] = *result.f_B_match;
      doc["problems"] = result.problems;
      out << codec::pretty(doc) << '\n';
      return result.ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const std::exception& e) {
    err << "ntruke: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace ntruke::cli
