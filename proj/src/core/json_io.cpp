#include "eipflow/json_io.hpp"

#include <stdexcept>

namespace eipflow {

namespace {

nlohmann::json scalar_to_json(const Scalar& s) {
    switch (s.kind()) {
        case ScalarKind::String: return s.as_string();
        case ScalarKind::Int: return s.as_int();
        case ScalarKind::Decimal: return s.as_decimal();
        case ScalarKind::Bool: return s.as_bool();
    }
    return nullptr;
}

Scalar scalar_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Scalar(j.get<std::string>());
    if (j.is_boolean()) return Scalar(j.get<bool>());
    if (j.is_number_integer()) return Scalar(j.get<std::int64_t>());
    if (j.is_number_float()) return Scalar(j.get<double>());
    throw std::invalid_argument("scalar json must be string/bool/number");
}

nlohmann::json node_to_json(const BodyNode& node) {
    nlohmann::json j;
    j["n"] = node.name;
    if (node.is_leaf()) {
        j["v"] = scalar_to_json(*node.value);
    } else {
        auto arr = nlohmann::json::array();
        for (const auto& c : node.children) arr.push_back(node_to_json(c));
        j["c"] = arr;
    }
    return j;
}

BodyNode node_from_json(const nlohmann::json& j) {
    BodyNode node;
    node.name = j.at("n").get<std::string>();
    if (j.contains("v")) {
        node.value = scalar_from_json(j.at("v"));
    } else if (j.contains("c")) {
        for (const auto& c : j.at("c")) node.children.push_back(node_from_json(c));
    }
    return node;
}

} // namespace

nlohmann::json body_to_json(const BodyTree& tree) {
    auto arr = nlohmann::json::array();
    for (const auto& r : tree.roots) arr.push_back(node_to_json(r));
    return arr;
}

BodyTree body_from_json(const nlohmann::json& j) {
    BodyTree tree;
    for (const auto& n : j) tree.roots.push_back(node_from_json(n));
    return tree;
}

nlohmann::json message_to_json(const Message& msg) {
    nlohmann::json j;
    j["id"] = msg.id;
    if (msg.correlation_id) j["correlation_id"] = *msg.correlation_id;
    if (msg.sequence_number) j["sequence_number"] = *msg.sequence_number;
    auto headers = nlohmann::json::array();
    for (const auto& [k, v] : msg.headers) headers.push_back({k, v});
    j["headers"] = headers;
    j["body"] = body_to_json(msg.body);
    j["body_type"] = msg.body_type;
    return j;
}

Message message_from_json(const nlohmann::json& j) {
    Message msg;
    msg.id = j.at("id").get<std::string>();
    if (j.contains("correlation_id")) msg.correlation_id = j.at("correlation_id").get<std::string>();
    if (j.contains("sequence_number"))
        msg.sequence_number = j.at("sequence_number").get<std::uint64_t>();
    if (j.contains("headers"))
        for (const auto& kv : j.at("headers"))
            msg.headers.set(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
    if (j.contains("body")) msg.body = body_from_json(j.at("body"));
    if (j.contains("body_type")) msg.body_type = j.at("body_type").get<std::string>();
    return msg;
}

std::string canonical_body_bytes(const BodyTree& tree) { return body_to_json(tree).dump(); }

std::string canonical_message_bytes(const Message& msg) { return message_to_json(msg).dump(); }

std::size_t message_size_bytes(const Message& msg) {
    std::size_t n = canonical_body_bytes(msg.body).size();
    for (const auto& [k, v] : msg.headers) n += k.size() + v.size();
    return n;
}

} // namespace eipflow
