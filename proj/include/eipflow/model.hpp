#pragma once

#include "eipflow/expression.hpp"
#include "eipflow/message.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eipflow {

enum class NodeKind {
    ServiceTask,
    ScriptTask,
    SendTask,
    ReceiveTask,
    SubProcess,
    ExclusiveGateway,
    ParallelGateway,
    InclusiveGateway,
    StartEvent,
    EndEvent,
    IntermediateMessageThrow,
    IntermediateMessageCatch,
    IntermediateTimer,
    IntermediateEscalationThrow,
    EscalationStartEvent,
    TimerStartEvent,
    ErrorBoundary,
};

const char* to_string(NodeKind kind);
bool node_kind_from_string(const std::string& text, NodeKind& out);

bool is_activity(NodeKind kind);
bool is_gateway(NodeKind kind);
bool is_event(NodeKind kind);
// StartEvent and the sub-process start flavors; these may not be sequence
// flow targets.
bool is_start_kind(NodeKind kind);

using ConfigMap = std::map<std::string, std::string>;

struct Node {
    std::string id;
    NodeKind kind = NodeKind::ServiceTask;
    std::string label;
    ConfigMap config;

    const std::string* config_value(const std::string& key) const {
        auto it = config.find(key);
        return it == config.end() ? nullptr : &it->second;
    }
    bool has_config(const std::string& key) const { return config.count(key) != 0; }
    // A start event with a message event definition instantiates a process.
    bool is_message_start() const {
        return kind == NodeKind::StartEvent && has_config("message");
    }
    bool is_message_end() const { return kind == NodeKind::EndEvent && has_config("message"); }
};

struct SequenceFlow {
    std::string id;
    std::string source;
    std::string target;
    std::string condition_text;            // empty when unconditional
    std::optional<Expression> condition;   // set when condition_text parses
    bool is_default = false;

    bool has_condition() const { return !condition_text.empty(); }
};

struct DataObject {
    std::string id;
    std::string item = kUntypedItem;
    bool is_collection = false;
    ConfigMap config;
};

// Data flow edge; exactly one endpoint is a data object, the other a node.
struct DataAssociation {
    std::string source;
    std::string target;
};

// Binding between a node and a named data store.
struct StoreLink {
    std::string node;
    std::string store;
    bool write = false;
};

struct ProcessModel {
    std::string id;
    std::string name;
    std::vector<Node> nodes;
    std::vector<SequenceFlow> flows;
    std::vector<DataObject> data_objects;
    std::vector<DataAssociation> data_flow;
    std::vector<std::string> data_stores;
    std::vector<StoreLink> store_links;
    std::map<std::string, ProcessModel> sub_processes; // keyed by SubProcess node id
    std::map<std::string, ItemDefinition> items;

    const Node* node_by_id(const std::string& id) const;
    const DataObject* data_object_by_id(const std::string& id) const;

    // Flows in document order; document order is the order flows appear in
    // the model, which gateway tie-breaking depends on.
    std::vector<const SequenceFlow*> outflows(const std::string& node_id) const;
    std::vector<const SequenceFlow*> inflows(const std::string& node_id) const;

    // Data objects associated as inputs (data object -> node) or outputs
    // (node -> data object) of the given node.
    std::vector<const DataObject*> input_objects(const std::string& node_id) const;
    std::vector<const DataObject*> output_objects(const std::string& node_id) const;

    std::vector<const StoreLink*> stores_of(const std::string& node_id) const;

    bool item_known(const std::string& name) const {
        return name == kUntypedItem || items.count(name) != 0;
    }
};

struct Pool {
    std::string id;
    std::string name;
    std::optional<ProcessModel> process; // absent = black-box pool

    bool black_box() const { return !process.has_value(); }
};

struct MessageFlowDef {
    std::string id;
    std::string name;
    std::string source; // pool id or node id
    std::string target;
    std::string item = kUntypedItem;
    bool initiating = true;
};

struct Collaboration {
    std::string id;
    std::vector<Pool> pools;
    std::vector<MessageFlowDef> message_flows;
    std::map<std::string, ItemDefinition> items;
    // BPMN DI subtrees carried through serialization untouched.
    std::vector<std::string> di_passthrough;

    const Pool* pool_by_id(const std::string& id) const;
    // Pool that owns the given element id (pool itself, node, or data object).
    const Pool* pool_of_element(const std::string& id) const;
};

} // namespace eipflow
