#include <algorithm>
#include <utility>

#include "ntruke/errors.hpp"
#include "ntruke/experiment.hpp"

namespace ntruke {

namespace {

using codec::Json;

struct Party {
  Poly f;
  Poly g;
  Poly r;
};

Party party_from_json(const Json& json) {
  if (!json.is_object() || !json.contains("f") || !json.contains("g") || !json.contains("r")) {
    throw SchemaError("oracle party needs f, g and r");
  }
  return Party{codec::poly_from_json(json.at("f")), codec::poly_from_json(json.at("g")),
               codec::poly_from_json(json.at("r"))};
}

const Json& member(const Json& json, const char* name) {
  if (!json.is_object() || !json.contains(name)) {
    throw SchemaError(std::string("oracle is missing '") + name + "'");
  }
  return json.at(name);
}

// Rebuilds a key pair from (f, g); std::nullopt when f is not invertible.
std::optional<KeyPair> rebuild(const Poly& f, const Poly& g, const Params& params, bool with_p) {
  auto inv_q = inverse_mod(f, params.q);
  if (!inv_q) return std::nullopt;
  std::optional<Poly> inv_p;
  if (with_p) {
    inv_p = inverse_mod(f, params.p);
    if (!inv_p) return std::nullopt;
  }
  Poly h = conv_mul(*inv_q, g, params.q);
  return KeyPair{f, g, std::move(*inv_q), std::move(inv_p), std::move(h)};
}

const LogEntry* find(const std::vector<LogEntry>& log, Direction direction, MessageKind kind) {
  for (const auto& entry : log) {
    if (entry.direction == direction && entry.message.kind == kind) return &entry;
  }
  return nullptr;
}

}  // namespace

VerifyResult verify_transcript(const std::vector<LogEntry>& log, const Json& oracle,
                               const std::optional<Json>& report) {
  VerifyResult result;
  auto& problems = result.problems;

  const Params params = codec::params_from_json(member(oracle, "params"));
  params.validate();
  const auto mode = parse_mode(member(oracle, "mode").get<std::string>());
  if (!mode) throw SchemaError("oracle mode must be 'honest' or 'mitm'");

  const Party a = party_from_json(member(oracle, "alice"));
  const Party b = party_from_json(member(oracle, "bob"));
  const auto alice = rebuild(a.f, a.g, params, false);
  const auto bob = rebuild(b.f, b.g, params, false);
  if (!alice || !bob) {
    problems.emplace_back("oracle private key is not invertible mod q");
    return result;
  }

  for (const auto& entry : log) {
    if (auto v = message_violation(entry.message, params)) {
      problems.push_back("seq " + std::to_string(entry.seq) + ": " + *v);
    }
  }

  std::vector<std::pair<Direction, Message>> expected;
  std::optional<KeyPair> eve_prime;
  std::optional<KeyPair> eve_dprime;
  if (*mode == Mode::Honest) {
    expected = {
        {Direction::AliceToBob, Message::m1(alice->h, "alice", "bob")},
        {Direction::BobToAlice,
         Message::m2(bob->h, encrypt_with_blinding(b.f, alice->h, b.r, params), "bob", "alice")},
        {Direction::AliceToBob,
         Message::m3(encrypt_with_blinding(a.f, bob->h, a.r, params), "alice", "bob")},
    };
  } else {
    const Json& e = member(oracle, "eve");
    auto poly = [&](const char* name) { return codec::poly_from_json(member(e, name)); };
    eve_prime = rebuild(poly("f_prime"), poly("g_prime"), params, true);
    eve_dprime = rebuild(poly("f_dprime"), poly("g_dprime"), params, true);
    if (!eve_prime || !eve_dprime) {
      problems.emplace_back("oracle eve key is not invertible mod p and q");
      return result;
    }
    const Poly to_alice =
        encrypt_with_blinding(poly("f_toward_alice"), alice->h, poly("r_toward_alice"), params);
    const Poly to_bob =
        encrypt_with_blinding(poly("f_toward_bob"), bob->h, poly("r_toward_bob"), params);
    expected = {
        {Direction::Captured, Message::m1(alice->h, "alice", "bob")},
        {Direction::Forwarded, Message::m1(eve_dprime->h, "alice", "bob")},
        {Direction::Captured,
         Message::m2(bob->h, encrypt_with_blinding(b.f, eve_dprime->h, b.r, params), "bob",
                     "alice")},
        {Direction::Forwarded, Message::m2(eve_prime->h, to_alice, "bob", "alice")},
        {Direction::Captured,
         Message::m3(encrypt_with_blinding(a.f, eve_prime->h, a.r, params), "alice", "bob")},
        {Direction::Forwarded, Message::m3(to_bob, "alice", "bob")},
    };
  }

  if (log.size() != expected.size()) {
    problems.push_back("transcript has " + std::to_string(log.size()) + " events, expected " +
                       std::to_string(expected.size()));
  }
  for (std::size_t i = 0; i < std::min(log.size(), expected.size()); ++i) {
    const std::string where = "seq " + std::to_string(i);
    if (log[i].seq != i) problems.push_back(where + ": sequence number out of order");
    if (log[i].direction != expected[i].first) problems.push_back(where + ": unexpected direction");
    if (log[i].message != expected[i].second) {
      problems.push_back(where + ": message differs from oracle replay");
    }
  }

  if (*mode == Mode::Honest) {
    const auto* m2 = find(log, Direction::BobToAlice, MessageKind::M2);
    const auto* m3 = find(log, Direction::AliceToBob, MessageKind::M3);
    if (!m2 || !m3 || !m2->message.e || !m3->message.e) {
      problems.emplace_back("transcript lacks the M2/M3 ephemerals");
    } else if (derive_key(a.f, *m2->message.e, params) != derive_key(b.f, *m3->message.e, params)) {
      problems.emplace_back("K_A != K_B");
    }
  } else {
    const auto* m2 = find(log, Direction::Captured, MessageKind::M2);
    const auto* m3 = find(log, Direction::Captured, MessageKind::M3);
    if (!m2 || !m3 || !m2->message.e || !m3->message.e) {
      problems.emplace_back("transcript lacks the captured M2/M3 ephemerals");
    } else {
      const Poly f_b = recover_key(*m2->message.e, *eve_dprime, params);
      const Poly f_a = recover_key(*m3->message.e, *eve_prime, params);
      result.f_A_match = f_a == a.f;
      result.f_B_match = f_b == b.f;
      if (!*result.f_A_match) problems.emplace_back("recovered f_A differs from Alice's key");
      if (!*result.f_B_match) problems.emplace_back("recovered f_B differs from Bob's key");
      if (report) {
        auto flag = [&](const char* name) {
          const Json& v = member(*report, name);
          if (!v.is_boolean()) throw SchemaError(std::string("report '") + name + "' must be bool");
          return v.get<bool>();
        };
        if (flag("f_A_match") != *result.f_A_match) problems.emplace_back("report f_A_match is wrong");
        if (flag("f_B_match") != *result.f_B_match) problems.emplace_back("report f_B_match is wrong");
        if (codec::poly_from_json(member(*report, "recovered_f_A")) != f_a) {
          problems.emplace_back("report recovered_f_A differs from recomputation");
        }
        if (codec::poly_from_json(member(*report, "recovered_f_B")) != f_b) {
          problems.emplace_back("report recovered_f_B differs from recomputation");
        }
      }
    }
  }

  result.ok = problems.empty();
  return result;
}

}  // namespace ntruke
