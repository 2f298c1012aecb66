#pragma once

#include <optional>
#include <vector>

#include "ntruke/params.hpp"
#include "ntruke/protocol.hpp"
#include "ntruke/ring.hpp"
#include "ntruke/sampling.hpp"

namespace ntruke {

/// Everything Eve knows. Nothing here comes from the simulation oracle.
struct EveState {
  KeyPair kp_prime;   // h' is handed to Alice
  KeyPair kp_dprime;  // h'' is handed to Bob
  std::optional<Poly> captured_h_A;
  std::optional<Poly> captured_h_B;
  std::optional<Poly> captured_e_A;  // Alice's M3 ephemeral, encrypted under h'
  std::optional<Poly> captured_e_B;  // Bob's M2 ephemeral, encrypted under h''
  std::optional<Poly> recovered_f_A;
  std::optional<Poly> recovered_f_B;
  // Eve's own ephemerals for session continuation.
  std::optional<Ephemeral> toward_alice;  // encrypted under the real h_A
  std::optional<Poly> f_toward_alice;
  std::optional<Ephemeral> toward_bob;  // encrypted under the real h_B
  std::optional<Poly> f_toward_bob;
};

/// Two key pairs, each invertible mod p and mod q.
[[nodiscard]] EveState eve_keygen(const Params& params, Rng& rng);

/// w = e * f_eve mod q, then w * f_eve^-1 mod p.
///
/// When e = p*r*h_eve + f_victim and the margin condition holds for
/// (f_eve, f_victim, r, g_eve), w equals p*r*g_eve + f_eve*f_victim over the
/// integers and the result is f_victim mod p; for ternary f_victim and p = 3
/// that is f_victim itself. eve_keys.f_inv_p must be present.
[[nodiscard]] Poly recover_key(const Poly& e_victim, const KeyPair& eve_keys, const Params& params);

struct MitmOptions {
  /// false turns Eve into a passive relay.
  bool substitute = true;
  /// Eve derives session keys with both victims and reports transparency.
  bool continuation = true;
};

/// Eve's role. Owns her RNG and state; handles one session.
class Eve {
 public:
  Eve(Params params, Rng rng, MitmOptions options = {});

  /// Captures h_A, forwards M1 with h''.
  Message substitute_m1(const Message& m1);
  /// Captures h_B and e'', recovers f_B, forwards M2 with h' and an ephemeral
  /// of Eve's own encrypted under the real h_A.
  Message substitute_m2(const Message& m2);
  /// Captures e', recovers f_A, forwards M3 with an ephemeral of Eve's own
  /// encrypted under the real h_B.
  Message substitute_m3(const Message& m3);

  /// Dispatches on kind; relays unchanged when substitution is disabled.
  Message intercept(const Message& message);

  [[nodiscard]] const EveState& state() const { return state_; }
  [[nodiscard]] const MitmOptions& options() const { return options_; }
  /// f_victim * f_E mod p for the f_E Eve sent that victim; needs the
  /// recovered key and continuation enabled.
  [[nodiscard]] std::optional<SessionKey> key_with_alice() const;
  [[nodiscard]] std::optional<SessionKey> key_with_bob() const;

 private:
  Params params_;
  Rng rng_;
  MitmOptions options_;
  EveState state_;
};

/// Oracle view beside Eve's view. Match flags compare centered ternary
/// coefficients exactly.
struct AttackReport {
  std::optional<Poly> recovered_f_A;
  std::optional<Poly> recovered_f_B;
  Poly true_f_A;
  Poly true_f_B;
  bool f_A_match = false;
  bool f_B_match = false;
  std::optional<SessionKey> session_key_with_alice;
  std::optional<SessionKey> session_key_with_bob;
  std::optional<SessionKey> alice_key;  // what Alice derived
  std::optional<SessionKey> bob_key;    // what Bob derived
  bool sessions_transparent = false;

  [[nodiscard]] bool success() const { return f_A_match && f_B_match; }
};

[[nodiscard]] AttackReport build_report(const Eve& eve, const Alice& alice, const Bob& bob);

struct MitmRun {
  AttackReport report;
  std::vector<Message> sent;       // as the victims produced them
  std::vector<Message> delivered;  // as the victims received them
};

[[nodiscard]] MitmRun run_mitm(const Params& params, Rng rng_a, Rng rng_b, Rng rng_e,
                               MitmOptions options = {});

}  // namespace ntruke
