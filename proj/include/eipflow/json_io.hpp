#pragma once

#include "eipflow/message.hpp"

#include <json.hpp>

namespace eipflow {

// Body nodes map to {"n": name, "v": scalar} leaves and {"n": name, "c":
// [...]} interiors; a tree is the array of its roots. Order and repeated
// names survive the round trip.
nlohmann::json body_to_json(const BodyTree& tree);
BodyTree body_from_json(const nlohmann::json& j);

nlohmann::json message_to_json(const Message& msg);
Message message_from_json(const nlohmann::json& j);

// Canonical byte form used for size accounting, journaling and
// trace-stability checks.
std::string canonical_body_bytes(const BodyTree& tree);
std::string canonical_message_bytes(const Message& msg);

// Channel size measure: canonical body bytes plus the byte length of all
// header keys and values.
std::size_t message_size_bytes(const Message& msg);

} // namespace eipflow
