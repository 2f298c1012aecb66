#include "ntruke/codec.hpp"

#include <algorithm>

#include "ntruke/errors.hpp"

namespace ntruke::codec {

namespace {

const Json& field(const Json& json, const char* name) {
  if (!json.is_object() || !json.contains(name)) {
    throw SchemaError(std::string("missing field '") + name + "'");
  }
  return json.at(name);
}

std::string string_field(const Json& json, const char* name) {
  const Json& value = field(json, name);
  if (!value.is_string()) throw SchemaError(std::string("field '") + name + "' must be a string");
  return value.get<std::string>();
}

std::int64_t int_field(const Json& json, const char* name) {
  const Json& value = field(json, name);
  if (!value.is_number_integer()) {
    throw SchemaError(std::string("field '") + name + "' must be an integer");
  }
  return value.get<std::int64_t>();
}

Json optional_key(const std::optional<SessionKey>& key) {
  return key ? to_json(key->k) : Json(nullptr);
}

}  // namespace

Json to_json(const Poly& poly) {
  Json out = Json::array();
  for (const auto c : poly.coeffs()) out.push_back(c);
  return out;
}

Poly poly_from_json(const Json& json) {
  if (!json.is_array()) throw SchemaError("polynomial must be an integer array");
  std::vector<std::int64_t> coeffs;
  coeffs.reserve(json.size());
  for (const auto& c : json) {
    if (!c.is_number_integer()) throw SchemaError("polynomial coefficient must be an integer");
    coeffs.push_back(c.get<std::int64_t>());
  }
  return Poly(std::move(coeffs));
}

Json to_json(const Params& params) {
  return Json{{"n", params.n},     {"p", params.p},     {"q", params.q},
              {"d_f", params.d_f}, {"d_g", params.d_g}, {"d_r", params.d_r}};
}

Params params_from_json(const Json& json) {
  return Params{int_field(json, "n"),   int_field(json, "p"),   int_field(json, "q"),
                int_field(json, "d_f"), int_field(json, "d_g"), int_field(json, "d_r")};
}

Json to_json(const Message& message) {
  Json out;
  out["kind"] = to_string(message.kind);
  if (message.h) out["h"] = to_json(*message.h);
  if (message.e) out["e"] = to_json(*message.e);
  out["sender"] = message.sender;
  out["receiver"] = message.receiver;
  return out;
}

Message message_from_json(const Json& json) {
  Message message;
  const auto kind = parse_message_kind(string_field(json, "kind"));
  if (!kind) throw SchemaError("unknown message kind '" + json.at("kind").get<std::string>() + "'");
  message.kind = *kind;
  if (json.contains("h")) message.h = poly_from_json(json.at("h"));
  if (json.contains("e")) message.e = poly_from_json(json.at("e"));
  message.sender = string_field(json, "sender");
  message.receiver = string_field(json, "receiver");
  return message;
}

std::string wire_bytes(const Message& message) { return to_json(message).dump(); }

Json keypair_to_json(const KeyPair& keys) {
  Json out;
  out["public"] = Json{{"h", to_json(keys.h)}};
  out["secret"] = Json{{"f", to_json(keys.f)}, {"g", to_json(keys.g)}};
  return out;
}

Json to_json(const AttackReport& report) {
  Json out;
  out["recovered_f_A"] = report.recovered_f_A ? to_json(*report.recovered_f_A) : Json(nullptr);
  out["recovered_f_B"] = report.recovered_f_B ? to_json(*report.recovered_f_B) : Json(nullptr);
  out["true_f_A"] = to_json(report.true_f_A);
  out["true_f_B"] = to_json(report.true_f_B);
  out["f_A_match"] = report.f_A_match;
  out["f_B_match"] = report.f_B_match;
  out["transparent"] = report.sessions_transparent;
  out["eve_key_with_alice"] = optional_key(report.session_key_with_alice);
  out["alice_key"] = optional_key(report.alice_key);
  out["eve_key_with_bob"] = optional_key(report.session_key_with_bob);
  out["bob_key"] = optional_key(report.bob_key);
  return out;
}

std::string pretty(const Json& json, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (json.is_object()) {
    if (json.empty()) return "{}";
    std::string out = "{\n";
    bool first = true;
    for (const auto& [key, value] : json.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": " + pretty(value, indent + 2);
    }
    return out + "\n" + close + "}";
  }
  if (json.is_array()) {
    const bool flat = std::none_of(json.begin(), json.end(), [](const Json& v) {
      return v.is_structured();
    });
    if (flat) return json.dump();
    std::string out = "[\n";
    for (std::size_t i = 0; i < json.size(); ++i) {
      out += pad + pretty(json[i], indent + 2) + (i + 1 < json.size() ? ",\n" : "\n");
    }
    return out + close + "]";
  }
  return json.dump();
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace ntruke::codec
