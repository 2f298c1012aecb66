#include "ntruke/channel.hpp"

#include <utility>

#include "ntruke/codec.hpp"
#include "ntruke/errors.hpp"

namespace ntruke {

namespace {

using codec::Json;

Direction honest_direction(const Message& message) {
  return message.kind == MessageKind::M2 ? Direction::BobToAlice : Direction::AliceToBob;
}

Json entry_to_json(const LogEntry& entry) {
  Json out;
  out["seq"] = entry.seq;
  out["direction"] = to_string(entry.direction);
  const Json message = codec::to_json(entry.message);
  for (const auto& [key, value] : message.items()) out[key] = value;
  return out;
}

Json secrets(const KeyPair& keys, const Poly& r) {
  return Json{{"f", codec::to_json(keys.f)}, {"g", codec::to_json(keys.g)}, {"r", codec::to_json(r)}};
}

}  // namespace

const char* to_string(Direction direction) {
  switch (direction) {
    case Direction::AliceToBob:
      return "a->b";
    case Direction::BobToAlice:
      return "b->a";
    case Direction::Captured:
      return "captured";
    case Direction::Forwarded:
      return "forwarded";
  }
  return "?";
}

std::optional<Direction> parse_direction(const std::string& text) {
  if (text == "a->b") return Direction::AliceToBob;
  if (text == "b->a") return Direction::BobToAlice;
  if (text == "captured") return Direction::Captured;
  if (text == "forwarded") return Direction::Forwarded;
  return std::nullopt;
}

const char* to_string(Mode mode) { return mode == Mode::Honest ? "honest" : "mitm"; }

std::optional<Mode> parse_mode(const std::string& text) {
  if (text == "honest") return Mode::Honest;
  if (text == "mitm") return Mode::Mitm;
  return std::nullopt;
}

void Channel::record(Direction direction, const Message& message) {
  log_.push_back(LogEntry{log_.size(), direction, message, codec::wire_bytes(message)});
}

Message Channel::transmit(const Message& sent) {
  if (!interceptor_) {
    record(honest_direction(sent), sent);
    // Delivered from the wire bytes, not the sender's object.
    return codec::message_from_json(codec::parse(log_.back().wire));
  }
  record(Direction::Captured, sent);
  Message forwarded = interceptor_->intercept(sent);
  record(Direction::Forwarded, forwarded);
  return codec::message_from_json(codec::parse(log_.back().wire));
}

std::string serialize_transcript(const std::vector<LogEntry>& log) {
  if (log.empty()) return "[]";
  std::string out = "[\n";
  for (std::size_t i = 0; i < log.size(); ++i) {
    out += entry_to_json(log[i]).dump();
    out += i + 1 < log.size() ? ",\n" : "\n";
  }
  out += "]";
  return out;
}

std::vector<LogEntry> parse_transcript(const std::string& text) {
  const Json doc = codec::parse(text);
  if (!doc.is_array()) throw SchemaError("transcript must be a JSON array");
  std::vector<LogEntry> log;
  for (const auto& record : doc) {
    if (!record.is_object() || !record.contains("seq") || !record.at("seq").is_number_unsigned()) {
      throw SchemaError("transcript record needs an unsigned 'seq'");
    }
    if (!record.contains("direction") || !record.at("direction").is_string()) {
      throw SchemaError("transcript record needs a 'direction'");
    }
    const auto direction = parse_direction(record.at("direction").get<std::string>());
    if (!direction) throw SchemaError("unknown direction in transcript record");
    LogEntry entry;
    entry.seq = record.at("seq").get<std::size_t>();
    entry.direction = *direction;
    entry.message = codec::message_from_json(record);
    entry.wire = codec::wire_bytes(entry.message);
    log.push_back(std::move(entry));
  }
  return log;
}

SessionOutcome run_session(const Params& params, const SessionSeeds& seeds, Mode mode,
                           bool continuation) {
  params.validate();
  Alice alice(params, Rng(seeds.alice));
  Bob bob(params, Rng(seeds.bob));
  std::optional<Eve> eve;
  Channel channel;
  if (mode == Mode::Mitm) {
    eve.emplace(params, Rng(seeds.eve), MitmOptions{true, continuation});
    channel = Channel(*eve);
  }
  drive_exchange(alice, bob, [&](const Message& m) { return channel.transmit(m); });

  SessionOutcome out;
  out.mode = mode;
  out.log = channel.log();
  out.k_a = *alice.session_key();
  out.k_b = *bob.session_key();
  out.alice = alice.keys();
  out.bob = bob.keys();
  out.r_a = alice.blinding();
  out.r_b = bob.blinding();
  if (eve) {
    const EveState& state = eve->state();
    out.attack = build_report(*eve, alice, bob);
    out.eve = state;
    out.margin_ok = check_margin(state.kp_prime.f, out.alice.f, out.r_a, state.kp_prime.g, params) &&
                    check_margin(state.kp_dprime.f, out.bob.f, out.r_b, state.kp_dprime.g, params);
  } else {
    out.margin_ok = check_margin(out.alice.f, out.bob.f, out.r_b, out.alice.g, params) &&
                    check_margin(out.bob.f, out.alice.f, out.r_a, out.bob.g, params);
  }
  return out;
}

std::string serialize_oracle(const Params& params, const SessionSeeds& seeds,
                             const SessionOutcome& outcome) {
  Json doc;
  doc["mode"] = to_string(outcome.mode);
  doc["params"] = codec::to_json(params);
  doc["seeds"] = Json{{"alice", seeds.alice}, {"bob", seeds.bob}, {"eve", seeds.eve}};
  doc["alice"] = secrets(outcome.alice, outcome.r_a);
  doc["bob"] = secrets(outcome.bob, outcome.r_b);
  if (outcome.eve) {
    const EveState& eve = *outcome.eve;
    Json e;
    e["f_prime"] = codec::to_json(eve.kp_prime.f);
    e["g_prime"] = codec::to_json(eve.kp_prime.g);
    e["f_dprime"] = codec::to_json(eve.kp_dprime.f);
    e["g_dprime"] = codec::to_json(eve.kp_dprime.g);
    if (eve.toward_alice && eve.f_toward_alice) {
      e["f_toward_alice"] = codec::to_json(*eve.f_toward_alice);
      e["r_toward_alice"] = codec::to_json(eve.toward_alice->r);
    }
    if (eve.toward_bob && eve.f_toward_bob) {
      e["f_toward_bob"] = codec::to_json(*eve.f_toward_bob);
      e["r_toward_bob"] = codec::to_json(eve.toward_bob->r);
    }
    doc["eve"] = std::move(e);
  }
  return codec::pretty(doc);
}

}  // namespace ntruke
