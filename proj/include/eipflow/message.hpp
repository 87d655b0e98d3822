#pragma once

#include "eipflow/body.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eipflow {

inline constexpr const char* kUntypedItem = "untyped";

// Insertion-ordered string map with unique keys; header order is part of a
// message's identity on the wire.
class HeaderMap {
public:
    void set(const std::string& key, std::string value);
    void erase(const std::string& key);
    const std::string* get(const std::string& key) const;
    bool contains(const std::string& key) const { return get(key) != nullptr; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool operator==(const HeaderMap&) const = default;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// Required top-level structure of a typed message body.
struct ItemDefinition {
    struct Field {
        std::string path;   // body path text
        ScalarKind kind = ScalarKind::String;
        bool operator==(const Field&) const = default;
    };

    std::string name;
    std::vector<Field> schema;

    bool operator==(const ItemDefinition&) const = default;
};

struct Message {
    std::string id;
    std::optional<std::string> correlation_id;
    std::optional<std::uint64_t> sequence_number; // >= 1 when present
    HeaderMap headers;
    BodyTree body;
    std::string body_type = kUntypedItem;

    bool operator==(const Message&) const = default;
};

class IdGenerator;

// Deep copy under a fresh id. The copy's correlation id points at the
// original: an existing correlation id is kept, otherwise the source id
// becomes the correlation id, so lineage always reaches the ingress message.
Message copy_with_new_id(const Message& msg, IdGenerator& ids);

// Checks msg.body against the definition's required paths and scalar kinds.
// Returns problem descriptions, empty when conformant.
std::vector<std::string> check_against_item(const Message& msg, const ItemDefinition& item);

} // namespace eipflow
