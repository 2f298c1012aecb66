#include "ntruke/adversary.hpp"

#include <utility>

#include "ntruke/errors.hpp"

namespace ntruke {

namespace {

void expect_kind(const Message& message, MessageKind kind) {
  if (message.kind != kind) {
    throw ProtocolError(std::string("eve expected ") + to_string(kind) + ", got " +
                        to_string(message.kind));
  }
}

}  // namespace

EveState eve_keygen(const Params& params, Rng& rng) {
  EveState state;
  state.kp_prime = keygen(params, rng, true);
  state.kp_dprime = keygen(params, rng, true);
  return state;
}

Poly recover_key(const Poly& e_victim, const KeyPair& eve_keys, const Params& params) {
  if (!eve_keys.f_inv_p) throw std::invalid_argument("recover_key: missing inverse mod p");
  const Poly w = conv_mul(e_victim, eve_keys.f, params.q);
  return conv_mul(w, *eve_keys.f_inv_p, params.p);
}

Eve::Eve(Params params, Rng rng, MitmOptions options)
    : params_(params), rng_(std::move(rng)), options_(options) {
  params_.validate();
  state_ = eve_keygen(params_, rng_);
}

Message Eve::substitute_m1(const Message& m1) {
  expect_kind(m1, MessageKind::M1);
  state_.captured_h_A = m1.h;
  return Message::m1(state_.kp_dprime.h, m1.sender, m1.receiver);
}

Message Eve::substitute_m2(const Message& m2) {
  expect_kind(m2, MessageKind::M2);
  if (!state_.captured_h_A) throw ProtocolError("eve: M2 intercepted before M1");
  state_.captured_h_B = m2.h;
  state_.captured_e_B = m2.e;
  state_.recovered_f_B = recover_key(*m2.e, state_.kp_dprime, params_);

  Poly f_e = sample_ternary(TernarySpec::for_f(params_), params_, rng_);
  auto eph = make_ephemeral(f_e, *state_.captured_h_A, params_, rng_);
  state_.f_toward_alice = std::move(f_e);
  state_.toward_alice = eph;
  return Message::m2(state_.kp_prime.h, std::move(eph.e), m2.sender, m2.receiver);
}

Message Eve::substitute_m3(const Message& m3) {
  expect_kind(m3, MessageKind::M3);
  if (!state_.captured_h_B) throw ProtocolError("eve: M3 intercepted before M2");
  state_.captured_e_A = m3.e;
  state_.recovered_f_A = recover_key(*m3.e, state_.kp_prime, params_);

  Poly f_e = sample_ternary(TernarySpec::for_f(params_), params_, rng_);
  auto eph = make_ephemeral(f_e, *state_.captured_h_B, params_, rng_);
  state_.f_toward_bob = std::move(f_e);
  state_.toward_bob = eph;
  return Message::m3(std::move(eph.e), m3.sender, m3.receiver);
}

Message Eve::intercept(const Message& message) {
  if (!options_.substitute) {
    if (message.kind == MessageKind::M1) state_.captured_h_A = message.h;
    if (message.kind == MessageKind::M2) state_.captured_h_B = message.h;
    return message;
  }
  switch (message.kind) {
    case MessageKind::M1:
      return substitute_m1(message);
    case MessageKind::M2:
      return substitute_m2(message);
    case MessageKind::M3:
      return substitute_m3(message);
  }
  throw ProtocolError("eve: unknown message kind");
}

std::optional<SessionKey> Eve::key_with_alice() const {
  if (!options_.continuation || !state_.recovered_f_A || !state_.f_toward_alice) {
    return std::nullopt;
  }
  return expected_shared_key(*state_.recovered_f_A, *state_.f_toward_alice, params_);
}

std::optional<SessionKey> Eve::key_with_bob() const {
  if (!options_.continuation || !state_.recovered_f_B || !state_.f_toward_bob) {
    return std::nullopt;
  }
  return expected_shared_key(*state_.recovered_f_B, *state_.f_toward_bob, params_);
}

AttackReport build_report(const Eve& eve, const Alice& alice, const Bob& bob) {
  AttackReport report;
  report.recovered_f_A = eve.state().recovered_f_A;
  report.recovered_f_B = eve.state().recovered_f_B;
  report.true_f_A = alice.keys().f;
  report.true_f_B = bob.keys().f;
  report.f_A_match = report.recovered_f_A && *report.recovered_f_A == report.true_f_A;
  report.f_B_match = report.recovered_f_B && *report.recovered_f_B == report.true_f_B;
  report.session_key_with_alice = eve.key_with_alice();
  report.session_key_with_bob = eve.key_with_bob();
  report.alice_key = alice.session_key();
  report.bob_key = bob.session_key();
  report.sessions_transparent =
      report.session_key_with_alice && report.session_key_with_bob && report.alice_key &&
      report.bob_key && *report.session_key_with_alice == *report.alice_key &&
      *report.session_key_with_bob == *report.bob_key;
  return report;
}

MitmRun run_mitm(const Params& params, Rng rng_a, Rng rng_b, Rng rng_e, MitmOptions options) {
  params.validate();
  Alice alice(params, std::move(rng_a));
  Bob bob(params, std::move(rng_b));
  Eve eve(params, std::move(rng_e), options);
  std::vector<Message> delivered;
  auto sent = drive_exchange(alice, bob, [&](const Message& m) {
    delivered.push_back(eve.intercept(m));
    return delivered.back();
  });
  return MitmRun{build_report(eve, alice, bob), std::move(sent), std::move(delivered)};
}

}  // namespace ntruke
