#include "ntruke/protocol.hpp"

#include <utility>

#include "ntruke/errors.hpp"

namespace ntruke {

namespace {

void expect_kind(const Message& message, MessageKind kind, const char* role) {
  if (message.kind != kind) {
    throw ProtocolError(std::string(role) + " expected " + to_string(kind) + ", got " +
                        to_string(message.kind));
  }
}

std::optional<std::string> poly_violation(const Poly& poly, const Params& params,
                                          const char* field) {
  if (poly.size() != static_cast<std::size_t>(params.n)) {
    return std::string(field) + " has length " + std::to_string(poly.size()) + ", expected " +
           std::to_string(params.n);
  }
  for (const auto c : poly.coeffs()) {
    if (center(c, params.q) != c) {
      return std::string(field) + " coefficient " + std::to_string(c) +
             " outside centered range for q";
    }
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::M1:
      return "M1";
    case MessageKind::M2:
      return "M2";
    case MessageKind::M3:
      return "M3";
  }
  return "?";
}

std::optional<MessageKind> parse_message_kind(const std::string& text) {
  if (text == "M1") return MessageKind::M1;
  if (text == "M2") return MessageKind::M2;
  if (text == "M3") return MessageKind::M3;
  return std::nullopt;
}

Message Message::m1(Poly h, std::string sender, std::string receiver) {
  return Message{MessageKind::M1, std::move(h), std::nullopt, std::move(sender),
                 std::move(receiver)};
}

Message Message::m2(Poly h, Poly e, std::string sender, std::string receiver) {
  return Message{MessageKind::M2, std::move(h), std::move(e), std::move(sender),
                 std::move(receiver)};
}

Message Message::m3(Poly e, std::string sender, std::string receiver) {
  return Message{MessageKind::M3, std::nullopt, std::move(e), std::move(sender),
                 std::move(receiver)};
}

std::optional<std::string> message_violation(const Message& message, const Params& params) {
  const bool wants_h = message.kind != MessageKind::M3;
  const bool wants_e = message.kind != MessageKind::M1;
  const std::string kind = to_string(message.kind);
  if (wants_h != message.h.has_value()) {
    return kind + (wants_h ? " is missing h" : " must not carry h");
  }
  if (wants_e != message.e.has_value()) {
    return kind + (wants_e ? " is missing e" : " must not carry e");
  }
  if (message.h) {
    if (auto v = poly_violation(*message.h, params, "h")) return v;
  }
  if (message.e) {
    if (auto v = poly_violation(*message.e, params, "e")) return v;
  }
  if (message.sender.empty() || message.receiver.empty()) return kind + " has an empty label";
  return std::nullopt;
}

std::vector<std::uint8_t> SessionKey::to_bytes() const {
  std::vector<std::uint8_t> out;
  out.reserve(k.size());
  for (const auto c : k.coeffs()) out.push_back(static_cast<std::uint8_t>(static_cast<std::int8_t>(c)));
  return out;
}

KeyPair keygen(const Params& params, Rng& rng, bool with_p_inverse) {
  params.validate();
  auto sample = sample_invertible(TernarySpec::for_f(params), params, rng, with_p_inverse);
  Poly g = sample_ternary(TernarySpec::for_g(params), params, rng);
  Poly h = conv_mul(sample.inv_q, g, params.q);
  return KeyPair{std::move(sample.f), std::move(g), std::move(sample.inv_q),
                 std::move(sample.inv_p), std::move(h)};
}

Poly encrypt_with_blinding(const Poly& own_f, const Poly& peer_h, const Poly& r,
                           const Params& params) {
  return add(scale(conv_mul(r, peer_h, params.q), params.p, params.q), own_f, params.q);
}

Ephemeral make_ephemeral(const Poly& own_f, const Poly& peer_h, const Params& params, Rng& rng) {
  Poly r = sample_ternary(TernarySpec::for_r(params), params, rng);
  Poly e = encrypt_with_blinding(own_f, peer_h, r, params);
  return Ephemeral{std::move(e), std::move(r)};
}

SessionKey derive_key(const Poly& own_f, const Poly& peer_e, const Params& params) {
  const Poly i = conv_mul(own_f, peer_e, params.q);
  return SessionKey{reduce_centered(i, params.p)};
}

Poly margin_polynomial(const Poly& f_a, const Poly& f_b, const Poly& r, const Poly& g,
                       const Params& params) {
  Poly rg = conv_mul_integer(r, g);
  const Poly ff = conv_mul_integer(f_a, f_b);
  for (std::size_t k = 0; k < rg.size(); ++k) rg[k] = params.p * rg[k] + ff[k];
  return rg;
}

bool check_margin(const Poly& f_a, const Poly& f_b, const Poly& r, const Poly& g,
                  const Params& params) {
  const Poly v = margin_polynomial(f_a, f_b, r, g, params);
  for (const auto c : v.coeffs()) {
    if (center(c, params.q) != c) return false;
  }
  return true;
}

SessionKey expected_shared_key(const Poly& f_a, const Poly& f_b, const Params& params) {
  return SessionKey{reduce_centered(conv_mul_integer(f_a, f_b), params.p)};
}

// Alice

Alice::Alice(Params params, Rng rng, std::string label, std::string peer)
    : params_(params), rng_(std::move(rng)), label_(std::move(label)), peer_(std::move(peer)) {}

Message Alice::start() {
  if (state_ != State::Idle) throw ProtocolError("alice: start called twice");
  keys_ = keygen(params_, rng_, false);
  state_ = State::AwaitM2;
  return Message::m1(keys_->h, label_, peer_);
}

Message Alice::on_m2(const Message& m2) {
  if (state_ != State::AwaitM2) throw ProtocolError("alice: M2 received out of order");
  expect_kind(m2, MessageKind::M2, "alice");
  if (auto v = message_violation(m2, params_)) throw ProtocolError("alice: " + *v);
  received_ = m2;
  key_ = derive_key(keys_->f, *m2.e, params_);
  auto eph = make_ephemeral(keys_->f, *m2.h, params_, rng_);
  r_ = std::move(eph.r);
  state_ = State::Done;
  return Message::m3(std::move(eph.e), label_, peer_);
}

const KeyPair& Alice::keys() const {
  if (!keys_) throw ProtocolError("alice: no keys before start");
  return *keys_;
}

const Poly& Alice::blinding() const {
  if (!r_) throw ProtocolError("alice: no blinding before M2");
  return *r_;
}

// Bob

Bob::Bob(Params params, Rng rng, std::string label, std::string peer)
    : params_(params), rng_(std::move(rng)), label_(std::move(label)), peer_(std::move(peer)) {}

Message Bob::on_m1(const Message& m1) {
  if (state_ != State::AwaitM1) throw ProtocolError("bob: M1 received out of order");
  expect_kind(m1, MessageKind::M1, "bob");
  if (auto v = message_violation(m1, params_)) throw ProtocolError("bob: " + *v);
  received_m1_ = m1;
  keys_ = keygen(params_, rng_, false);
  auto eph = make_ephemeral(keys_->f, *m1.h, params_, rng_);
  r_ = std::move(eph.r);
  state_ = State::AwaitM3;
  return Message::m2(keys_->h, std::move(eph.e), label_, peer_);
}

void Bob::on_m3(const Message& m3) {
  if (state_ != State::AwaitM3) throw ProtocolError("bob: M3 received out of order");
  expect_kind(m3, MessageKind::M3, "bob");
  if (auto v = message_violation(m3, params_)) throw ProtocolError("bob: " + *v);
  key_ = derive_key(keys_->f, *m3.e, params_);
  state_ = State::Done;
}

const KeyPair& Bob::keys() const {
  if (!keys_) throw ProtocolError("bob: no keys before M1");
  return *keys_;
}

const Poly& Bob::blinding() const {
  if (!r_) throw ProtocolError("bob: no blinding before M1");
  return *r_;
}

std::vector<Message> drive_exchange(Alice& alice, Bob& bob, const Deliver& deliver) {
  std::vector<Message> sent;
  sent.push_back(alice.start());
  sent.push_back(bob.on_m1(deliver(sent.back())));
  sent.push_back(alice.on_m2(deliver(sent.back())));
  bob.on_m3(deliver(sent.back()));
  return sent;
}

bool HonestRun::margin_ok(const Params& params) const {
  return check_margin(alice.f, bob.f, r_b, alice.g, params) &&
         check_margin(bob.f, alice.f, r_a, bob.g, params);
}

HonestRun run_honest_exchange(const Params& params, Rng rng_a, Rng rng_b) {
  params.validate();
  Alice alice(params, std::move(rng_a));
  Bob bob(params, std::move(rng_b));
  auto transcript = drive_exchange(alice, bob, [](const Message& m) { return m; });
  return HonestRun{std::move(transcript), *alice.session_key(), *bob.session_key(),
                   alice.keys(),          bob.keys(),           alice.blinding(),
                   bob.blinding()};
}

}  // namespace ntruke
