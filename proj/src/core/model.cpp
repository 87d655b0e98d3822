#include "eipflow/model.hpp"

namespace eipflow {

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::ServiceTask: return "ServiceTask";
        case NodeKind::ScriptTask: return "ScriptTask";
        case NodeKind::SendTask: return "SendTask";
        case NodeKind::ReceiveTask: return "ReceiveTask";
        case NodeKind::SubProcess: return "SubProcess";
        case NodeKind::ExclusiveGateway: return "ExclusiveGateway";
        case NodeKind::ParallelGateway: return "ParallelGateway";
        case NodeKind::InclusiveGateway: return "InclusiveGateway";
        case NodeKind::StartEvent: return "StartEvent";
        case NodeKind::EndEvent: return "EndEvent";
        case NodeKind::IntermediateMessageThrow: return "IntermediateMessageThrow";
        case NodeKind::IntermediateMessageCatch: return "IntermediateMessageCatch";
        case NodeKind::IntermediateTimer: return "IntermediateTimer";
        case NodeKind::IntermediateEscalationThrow: return "IntermediateEscalationThrow";
        case NodeKind::EscalationStartEvent: return "EscalationStartEvent";
        case NodeKind::TimerStartEvent: return "TimerStartEvent";
        case NodeKind::ErrorBoundary: return "ErrorBoundary";
    }
    return "?";
}

bool node_kind_from_string(const std::string& text, NodeKind& out) {
    static const std::map<std::string, NodeKind> table = {
        {"ServiceTask", NodeKind::ServiceTask},
        {"ScriptTask", NodeKind::ScriptTask},
        {"SendTask", NodeKind::SendTask},
        {"ReceiveTask", NodeKind::ReceiveTask},
        {"SubProcess", NodeKind::SubProcess},
        {"ExclusiveGateway", NodeKind::ExclusiveGateway},
        {"ParallelGateway", NodeKind::ParallelGateway},
        {"InclusiveGateway", NodeKind::InclusiveGateway},
        {"StartEvent", NodeKind::StartEvent},
        {"EndEvent", NodeKind::EndEvent},
        {"IntermediateMessageThrow", NodeKind::IntermediateMessageThrow},
        {"IntermediateMessageCatch", NodeKind::IntermediateMessageCatch},
        {"IntermediateTimer", NodeKind::IntermediateTimer},
        {"IntermediateEscalationThrow", NodeKind::IntermediateEscalationThrow},
        {"EscalationStartEvent", NodeKind::EscalationStartEvent},
        {"TimerStartEvent", NodeKind::TimerStartEvent},
        {"ErrorBoundary", NodeKind::ErrorBoundary},
    };
    auto it = table.find(text);
    if (it == table.end()) return false;
    out = it->second;
    return true;
}

bool is_activity(NodeKind kind) {
    switch (kind) {
        case NodeKind::ServiceTask:
        case NodeKind::ScriptTask:
        case NodeKind::SendTask:
        case NodeKind::ReceiveTask:
        case NodeKind::SubProcess:
            return true;
        default:
            return false;
    }
}

bool is_gateway(NodeKind kind) {
    return kind == NodeKind::ExclusiveGateway || kind == NodeKind::ParallelGateway ||
           kind == NodeKind::InclusiveGateway;
}

bool is_event(NodeKind kind) { return !is_activity(kind) && !is_gateway(kind); }

bool is_start_kind(NodeKind kind) {
    return kind == NodeKind::StartEvent || kind == NodeKind::EscalationStartEvent ||
           kind == NodeKind::TimerStartEvent;
}

const Node* ProcessModel::node_by_id(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

const DataObject* ProcessModel::data_object_by_id(const std::string& id) const {
    for (const auto& d : data_objects)
        if (d.id == id) return &d;
    return nullptr;
}

std::vector<const SequenceFlow*> ProcessModel::outflows(const std::string& node_id) const {
    std::vector<const SequenceFlow*> out;
    for (const auto& f : flows)
        if (f.source == node_id) out.push_back(&f);
    return out;
}

std::vector<const SequenceFlow*> ProcessModel::inflows(const std::string& node_id) const {
    std::vector<const SequenceFlow*> in;
    for (const auto& f : flows)
        if (f.target == node_id) in.push_back(&f);
    return in;
}

std::vector<const DataObject*> ProcessModel::input_objects(const std::string& node_id) const {
    std::vector<const DataObject*> out;
    for (const auto& a : data_flow) {
        if (a.target != node_id) continue;
        if (const DataObject* d = data_object_by_id(a.source)) out.push_back(d);
    }
    return out;
}

std::vector<const DataObject*> ProcessModel::output_objects(const std::string& node_id) const {
    std::vector<const DataObject*> out;
    for (const auto& a : data_flow) {
        if (a.source != node_id) continue;
        if (const DataObject* d = data_object_by_id(a.target)) out.push_back(d);
    }
    return out;
}

std::vector<const StoreLink*> ProcessModel::stores_of(const std::string& node_id) const {
    std::vector<const StoreLink*> out;
    for (const auto& l : store_links)
        if (l.node == node_id) out.push_back(&l);
    return out;
}

const Pool* Collaboration::pool_by_id(const std::string& id) const {
    for (const auto& p : pools)
        if (p.id == id) return &p;
    return nullptr;
}

namespace {

bool model_contains(const ProcessModel& model, const std::string& id) {
    if (model.node_by_id(id) || model.data_object_by_id(id)) return true;
    for (const auto& [_, sub] : model.sub_processes)
        if (model_contains(sub, id)) return true;
    return false;
}

} // namespace

const Pool* Collaboration::pool_of_element(const std::string& id) const {
    for (const auto& p : pools) {
        if (p.id == id) return &p;
        if (p.process && model_contains(*p.process, id)) return &p;
    }
    return nullptr;
}

} // namespace eipflow
