#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ntruke/params.hpp"
#include "ntruke/ring.hpp"
#include "ntruke/sampling.hpp"

namespace ntruke {

/// Private (f, g), cached inverses of f, and public h = f^-1 * g mod q.
struct KeyPair {
  Poly f;
  Poly g;
  Poly f_inv_q;
  std::optional<Poly> f_inv_p;
  Poly h;

  bool operator==(const KeyPair&) const = default;
};

enum class MessageKind { M1, M2, M3 };

[[nodiscard]] const char* to_string(MessageKind kind);
[[nodiscard]] std::optional<MessageKind> parse_message_kind(const std::string& text);

/// One protocol message. M1 carries h only, M2 carries h and e, M3 carries
/// e only. Labels are unauthenticated plain text.
struct Message {
  MessageKind kind = MessageKind::M1;
  std::optional<Poly> h;
  std::optional<Poly> e;
  std::string sender;
  std::string receiver;

  static Message m1(Poly h, std::string sender, std::string receiver);
  static Message m2(Poly h, Poly e, std::string sender, std::string receiver);
  static Message m3(Poly e, std::string sender, std::string receiver);

  bool operator==(const Message&) const = default;
};

/// Structural check against the message schema: field presence per kind,
/// polynomial length N, coefficients centered mod q, nonempty labels.
/// Returns the first violation, or nullopt when the message conforms.
[[nodiscard]] std::optional<std::string> message_violation(const Message& message,
                                                           const Params& params);

/// Shared key K with coefficients centered mod p.
struct SessionKey {
  Poly k;

  /// Centered coefficients, lowest degree first, one two's-complement byte each.
  [[nodiscard]] std::vector<std::uint8_t> to_bytes() const;

  bool operator==(const SessionKey&) const = default;
};

/// f from the f-space (invertible mod q, and mod p when with_p_inverse),
/// g from the g-space, h = f^-1 * g mod q.
[[nodiscard]] KeyPair keygen(const Params& params, Rng& rng, bool with_p_inverse);

struct Ephemeral {
  Poly e;
  Poly r;  // kept for inspection only, never transmitted

  bool operator==(const Ephemeral&) const = default;
};

/// e = p * r * peer_h + own_f mod q for the given blinding r.
[[nodiscard]] Poly encrypt_with_blinding(const Poly& own_f, const Poly& peer_h, const Poly& r,
                                         const Params& params);

/// Draws r from the r-space and returns (e, r).
[[nodiscard]] Ephemeral make_ephemeral(const Poly& own_f, const Poly& peer_h, const Params& params,
                                       Rng& rng);

/// i = own_f * peer_e mod q (centered), K = i mod p (centered).
/// Never fails; a wrap mod q silently yields a wrong key.
[[nodiscard]] SessionKey derive_key(const Poly& own_f, const Poly& peer_e, const Params& params);

/// p*(r*g) + f_a*f_b over the integers.
[[nodiscard]] Poly margin_polynomial(const Poly& f_a, const Poly& f_b, const Poly& r, const Poly& g,
                                     const Params& params);

/// True iff every coefficient of margin_polynomial lies in the centered
/// interval for q, in which case the centered lift of f_a * e recovers it
/// exactly and derive_key yields f_a * f_b mod p.
[[nodiscard]] bool check_margin(const Poly& f_a, const Poly& f_b, const Poly& r, const Poly& g,
                                const Params& params);

/// f_a * f_b computed over the integers, then centered mod p.
[[nodiscard]] SessionKey expected_shared_key(const Poly& f_a, const Poly& f_b,
                                             const Params& params);

/// Initiator role: sends M1, answers M2 with M3.
class Alice {
 public:
  Alice(Params params, Rng rng, std::string label = "alice", std::string peer = "bob");

  Message start();
  Message on_m2(const Message& m2);

  [[nodiscard]] const KeyPair& keys() const;
  [[nodiscard]] const Poly& blinding() const;
  [[nodiscard]] const std::optional<SessionKey>& session_key() const { return key_; }
  /// Public key and ephemeral as received in M2.
  [[nodiscard]] const std::optional<Message>& received() const { return received_; }

 private:
  enum class State { Idle, AwaitM2, Done };

  Params params_;
  Rng rng_;
  std::string label_;
  std::string peer_;
  State state_ = State::Idle;
  std::optional<KeyPair> keys_;
  std::optional<Poly> r_;
  std::optional<Message> received_;
  std::optional<SessionKey> key_;
};

/// Responder role: answers M1 with M2, consumes M3.
class Bob {
 public:
  Bob(Params params, Rng rng, std::string label = "bob", std::string peer = "alice");

  Message on_m1(const Message& m1);
  void on_m3(const Message& m3);

  [[nodiscard]] const KeyPair& keys() const;
  [[nodiscard]] const Poly& blinding() const;
  [[nodiscard]] const std::optional<SessionKey>& session_key() const { return key_; }
  [[nodiscard]] const std::optional<Message>& received_m1() const { return received_m1_; }

 private:
  enum class State { AwaitM1, AwaitM3, Done };

  Params params_;
  Rng rng_;
  std::string label_;
  std::string peer_;
  State state_ = State::AwaitM1;
  std::optional<KeyPair> keys_;
  std::optional<Poly> r_;
  std::optional<Message> received_m1_;
  std::optional<SessionKey> key_;
};

/// Transport between the roles: takes the sent message, returns what the
/// receiver gets.
using Deliver = std::function<Message(const Message&)>;

/// Runs M1, M2, M3 through deliver. Returns the messages as sent.
std::vector<Message> drive_exchange(Alice& alice, Bob& bob, const Deliver& deliver);

struct HonestRun {
  std::vector<Message> transcript;
  SessionKey k_a;
  SessionKey k_b;
  KeyPair alice;
  KeyPair bob;
  Poly r_a;
  Poly r_b;

  [[nodiscard]] bool agree() const { return k_a == k_b; }
  /// Margin condition for both derivation directions.
  [[nodiscard]] bool margin_ok(const Params& params) const;
};

[[nodiscard]] HonestRun run_honest_exchange(const Params& params, Rng rng_a, Rng rng_b);

}  // namespace ntruke
