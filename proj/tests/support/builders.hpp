#pragma once

#include "eipflow/message.hpp"
#include "eipflow/model.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace eipflow::testing {

inline BodyNode leaf(std::string name, Scalar value) {
    return BodyNode(std::move(name), std::move(value));
}

inline BodyNode interior(std::string name, std::vector<BodyNode> children) {
    return BodyNode(std::move(name), std::move(children));
}

inline BodyTree tree(std::vector<BodyNode> roots) {
    BodyTree t;
    t.roots = std::move(roots);
    return t;
}

inline Message make_message(std::string id, BodyTree body = {},
                            std::string body_type = std::string(kUntypedItem)) {
    Message m;
    m.id = std::move(id);
    m.body = std::move(body);
    m.body_type = std::move(body_type);
    return m;
}

// order body used throughout the routing/filter tests:
//   /order/customer, /order/item (repeated), /order/total
inline BodyTree order_body(std::vector<std::pair<std::string, int>> items, double total) {
    std::vector<BodyNode> children;
    children.push_back(leaf("customer", Scalar("acme")));
    for (auto& [sku, qty] : items) {
        children.push_back(interior("item", {leaf("sku", Scalar(sku)),
                                             leaf("qty", Scalar(std::int64_t(qty)))}));
    }
    children.push_back(leaf("total", Scalar(total)));
    return tree({interior("order", std::move(children))});
}

inline Node make_node(std::string id, NodeKind kind, ConfigMap config = {}) {
    Node n;
    n.id = std::move(id);
    n.kind = kind;
    n.config = std::move(config);
    return n;
}

inline SequenceFlow make_flow(std::string id, std::string source, std::string target,
                              std::string condition = "", bool is_default = false) {
    SequenceFlow f;
    f.id = std::move(id);
    f.source = std::move(source);
    f.target = std::move(target);
    f.condition_text = condition;
    if (!condition.empty()) {
        try {
            f.condition = parse_expression(condition);
        } catch (const ExprParseError&) {
        }
    }
    f.is_default = is_default;
    return f;
}

// Minimal well-formed process: message start -> one task -> end.
inline ProcessModel chain_process(std::string id = "p1") {
    ProcessModel p;
    p.id = std::move(id);
    p.nodes.push_back(make_node("start", NodeKind::StartEvent, {{"message", kUntypedItem}}));
    p.nodes.push_back(make_node("work", NodeKind::ServiceTask));
    p.nodes.push_back(make_node("end", NodeKind::EndEvent));
    p.flows.push_back(make_flow("f1", "start", "work"));
    p.flows.push_back(make_flow("f2", "work", "end"));
    return p;
}

} // namespace eipflow::testing
