#pragma once

#include <string>

#include "json.hpp"

#include "ntruke/adversary.hpp"
#include "ntruke/params.hpp"
#include "ntruke/protocol.hpp"
#include "ntruke/ring.hpp"

namespace ntruke::codec {

// Field order is insertion order, which keeps serialized output canonical.
using Json = nlohmann::ordered_json;

/// Integer array, lowest degree first.
Json to_json(const Poly& poly);
Poly poly_from_json(const Json& json);

Json to_json(const Params& params);
Params params_from_json(const Json& json);

/// {kind, h?, e?, sender, receiver}
Json to_json(const Message& message);
/// Throws SchemaError on missing or mistyped fields.
Message message_from_json(const Json& json);

/// Canonical compact JSON of the message; this is what goes on the wire.
std::string wire_bytes(const Message& message);

/// {public: {h}, secret: {f, g}}
Json keypair_to_json(const KeyPair& keys);

/// {recovered_f_A, recovered_f_B, true_f_A, true_f_B, f_A_match, f_B_match,
///  transparent} followed by the session keys each side derived.
Json to_json(const AttackReport& report);

/// Indented objects, with arrays of scalars (polynomials) kept on one line.
std::string pretty(const Json& json, int indent = 0);

/// Parses a JSON document, mapping syntax errors to SchemaError.
Json parse(const std::string& text);

}  // namespace ntruke::codec
