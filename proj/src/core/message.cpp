#include "eipflow/message.hpp"

#include "eipflow/ids.hpp"

namespace eipflow {

void HeaderMap::set(const std::string& key, std::string value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(key, std::move(value));
}

void HeaderMap::erase(const std::string& key) {
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
        if (it->first == key) {
            entries_.erase(it);
            return;
        }
    }
}

const std::string* HeaderMap::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return &v;
    return nullptr;
}

Message copy_with_new_id(const Message& msg, IdGenerator& ids) {
    Message copy = msg;
    copy.correlation_id = msg.correlation_id ? *msg.correlation_id : msg.id;
    copy.id = ids.next();
    return copy;
}

std::vector<std::string> check_against_item(const Message& msg, const ItemDefinition& item) {
    std::vector<std::string> problems;
    for (const auto& field : item.schema) {
        BodyPath path;
        try {
            path = parse_body_path(field.path);
        } catch (const std::exception& e) {
            problems.push_back("bad schema path " + field.path + ": " + e.what());
            continue;
        }
        const BodyNode* node = msg.body.find(path);
        if (!node) {
            problems.push_back("missing required path " + field.path);
            continue;
        }
        if (!node->is_leaf()) {
            problems.push_back("path " + field.path + " is not a scalar");
            continue;
        }
        if (node->value->kind() != field.kind) {
            problems.push_back("path " + field.path + " expects " + to_string(field.kind) +
                               ", found " + to_string(node->value->kind()));
        }
    }
    return problems;
}

} // namespace eipflow
