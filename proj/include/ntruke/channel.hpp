#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ntruke/adversary.hpp"
#include "ntruke/params.hpp"
#include "ntruke/protocol.hpp"

namespace ntruke {

enum class Direction { AliceToBob, BobToAlice, Captured, Forwarded };

/// "a->b", "b->a", "captured", "forwarded"
[[nodiscard]] const char* to_string(Direction direction);
[[nodiscard]] std::optional<Direction> parse_direction(const std::string& text);

struct LogEntry {
  std::size_t seq = 0;
  Direction direction = Direction::AliceToBob;
  Message message;
  std::string wire;

  bool operator==(const LogEntry&) const = default;
};

enum class Mode { Honest, Mitm };

[[nodiscard]] const char* to_string(Mode mode);
[[nodiscard]] std::optional<Mode> parse_mode(const std::string& text);

/// Simulated wire between Alice and Bob.
///
/// Honest mode delivers each message byte-for-byte and logs it once. With an
/// interceptor attached, each message is logged as captured, handed to Eve,
/// and her replacement is logged as forwarded.
class Channel {
 public:
  Channel() = default;
  explicit Channel(Eve& interceptor) : interceptor_(&interceptor) {}

  [[nodiscard]] Mode mode() const { return interceptor_ ? Mode::Mitm : Mode::Honest; }

  Message transmit(const Message& sent);

  [[nodiscard]] const std::vector<LogEntry>& log() const { return log_; }

 private:
  void record(Direction direction, const Message& message);

  Eve* interceptor_ = nullptr;
  std::vector<LogEntry> log_;
};

/// One record per event: {seq, direction, kind, h?, e?, sender, receiver},
/// one record per line, stable field order. An empty log is "[]".
[[nodiscard]] std::string serialize_transcript(const std::vector<LogEntry>& log);
/// Inverse of serialize_transcript; throws SchemaError.
[[nodiscard]] std::vector<LogEntry> parse_transcript(const std::string& text);

/// Trial i of a batch uses (base + 3i, base + 3i + 1, base + 3i + 2).
struct SessionSeeds {
  std::uint64_t alice = 0;
  std::uint64_t bob = 1;
  std::uint64_t eve = 2;

  static SessionSeeds derive(std::uint64_t base, std::uint64_t trial) {
    return {base + 3 * trial, base + 3 * trial + 1, base + 3 * trial + 2};
  }
};

struct SessionOutcome {
  Mode mode = Mode::Honest;
  std::vector<LogEntry> log;
  SessionKey k_a;
  SessionKey k_b;
  /// Honest: margin holds in both derivation directions.
  /// Mitm: margin holds for both of Eve's recoveries.
  bool margin_ok = false;
  std::optional<AttackReport> attack;

  // Oracle view.
  KeyPair alice;
  KeyPair bob;
  Poly r_a;
  Poly r_b;
  std::optional<EveState> eve;

  [[nodiscard]] bool keys_agree() const { return k_a == k_b; }
};

/// Runs one session over a Channel. Eve's RNG is only consumed in mitm mode.
[[nodiscard]] SessionOutcome run_session(const Params& params, const SessionSeeds& seeds,
                                         Mode mode, bool continuation = true);

/// Ground truth for `verify`: params, seeds and every party's secrets.
[[nodiscard]] std::string serialize_oracle(const Params& params, const SessionSeeds& seeds,
                                           const SessionOutcome& outcome);

}  // namespace ntruke
