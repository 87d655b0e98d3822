#include "eipflow/validate.hpp"

#include <algorithm>
#include <set>

namespace eipflow {

const char* to_string(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

bool ValidationReport::has_errors() const {
    return std::any_of(entries.begin(), entries.end(),
                       [](const Violation& v) { return v.severity == Severity::Error; });
}

bool ValidationReport::has_rule(const std::string& rule) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const Violation& v) { return v.rule == rule; });
}

namespace {

void add(std::vector<Violation>& out, Severity sev, std::string element, std::string rule,
         std::string text) {
    out.push_back({sev, std::move(element), std::move(rule), std::move(text)});
}

void validate_model(const ProcessModel& model, bool top_level, std::vector<Violation>& out) {
    if (model.nodes.empty())
        add(out, Severity::Error, model.id, "N-EMPTY", "process has no nodes");
    if (model.flows.empty())
        add(out, Severity::Error, model.id, "SF-EMPTY", "process has no sequence flows");

    std::set<std::string> node_ids;
    for (const auto& n : model.nodes) {
        if (!node_ids.insert(n.id).second)
            add(out, Severity::Error, n.id, "NODE-DUP", "duplicate node id");
    }
    std::set<std::string> object_ids;
    for (const auto& d : model.data_objects) {
        if (!object_ids.insert(d.id).second)
            add(out, Severity::Error, d.id, "DO-DUP", "duplicate data object id");
        if (!model.item_known(d.item))
            add(out, Severity::Error, d.id, "DO-ITEM", "unknown item definition " + d.item);
    }

    for (const auto& f : model.flows) {
        const Node* src = model.node_by_id(f.source);
        const Node* dst = model.node_by_id(f.target);
        if (!src)
            add(out, Severity::Error, f.id, "SF-ENDPOINT", "unknown source " + f.source);
        if (!dst)
            add(out, Severity::Error, f.id, "SF-ENDPOINT", "unknown target " + f.target);
        if (src && src->kind == NodeKind::EndEvent)
            add(out, Severity::Error, f.id, "SF-DOMAIN", "sequence flow leaves an end event");
        if (dst && is_start_kind(dst->kind))
            add(out, Severity::Error, f.id, "SF-DOMAIN", "sequence flow enters a start event");
        if (f.is_default && f.has_condition())
            add(out, Severity::Error, f.id, "SF-DEFAULT-COND", "default flow has a condition");
        if (f.has_condition() && !f.condition) {
            std::string why;
            expression_parses(f.condition_text, &why);
            add(out, Severity::Error, f.id, "EXPR-PARSE",
                "condition does not parse: " + why);
        }
    }

    for (const auto& n : model.nodes) {
        if (n.kind != NodeKind::ExclusiveGateway) continue;
        auto outs = model.outflows(n.id);
        std::size_t conditional = 0, defaults = 0;
        for (const auto* f : outs) {
            if (f->has_condition()) ++conditional;
            if (f->is_default) ++defaults;
        }
        if (conditional >= 2 && defaults != 1)
            add(out, Severity::Error, n.id, "XOR-DEFAULT",
                "gateway with " + std::to_string(conditional) +
                    " conditional outflows needs exactly one default flow");
        if (defaults > 1)
            add(out, Severity::Error, n.id, "XOR-MULTI-DEFAULT",
                "gateway has more than one default outflow");
    }

    bool has_entry = false;
    bool has_any_start = false;
    for (const auto& n : model.nodes) {
        if (n.is_message_start() || n.kind == NodeKind::ReceiveTask) has_entry = true;
        if (is_start_kind(n.kind)) has_any_start = true;
    }
    if (top_level) {
        if (!model.nodes.empty() && !has_entry)
            add(out, Severity::Error, model.id, "START-REQUIRED",
                "process needs a message start event or receive task");
    } else {
        if (!model.nodes.empty() && !has_any_start)
            add(out, Severity::Error, model.id, "SUB-START", "sub-process has no start event");
    }

    std::set<std::string> declared_stores(model.data_stores.begin(), model.data_stores.end());
    for (const auto& l : model.store_links) {
        if (!declared_stores.count(l.store))
            add(out, Severity::Warning, l.node, "STORE-DECL",
                "store " + l.store + " is not declared in the model");
    }

    for (const auto& a : model.data_flow) {
        bool src_node = model.node_by_id(a.source) != nullptr;
        bool dst_node = model.node_by_id(a.target) != nullptr;
        bool src_obj = model.data_object_by_id(a.source) != nullptr;
        bool dst_obj = model.data_object_by_id(a.target) != nullptr;
        std::string edge = a.source + "->" + a.target;
        if (!(src_node || src_obj) || !(dst_node || dst_obj)) {
            add(out, Severity::Error, edge, "DA-ENDPOINT", "association endpoint missing");
            continue;
        }
        int objects = (src_obj ? 1 : 0) + (dst_obj ? 1 : 0);
        if (objects != 1)
            add(out, Severity::Error, edge, "DA-SHAPE",
                "exactly one association endpoint must be a data object");
    }

    for (const auto& [node_id, sub] : model.sub_processes) {
        (void)node_id;
        validate_model(sub, false, out);
    }
}

void sort_report(std::vector<Violation>& entries) {
    std::sort(entries.begin(), entries.end(), [](const Violation& a, const Violation& b) {
        if (a.rule != b.rule) return a.rule < b.rule;
        if (a.element != b.element) return a.element < b.element;
        return a.text < b.text;
    });
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
}

} // namespace

ValidationReport validate_graph(const ProcessModel& model) {
    ValidationReport report;
    validate_model(model, true, report.entries);
    sort_report(report.entries);
    return report;
}

ValidationReport validate_collaboration(const Collaboration& collab) {
    ValidationReport report;
    for (const auto& pool : collab.pools)
        if (pool.process) validate_model(*pool.process, true, report.entries);

    for (const auto& mf : collab.message_flows) {
        const Pool* src = collab.pool_of_element(mf.source);
        const Pool* dst = collab.pool_of_element(mf.target);
        if (!src)
            add(report.entries, Severity::Error, mf.id, "MF-ENDPOINT",
                "unknown source " + mf.source);
        if (!dst)
            add(report.entries, Severity::Error, mf.id, "MF-ENDPOINT",
                "unknown target " + mf.target);
        if (src && dst && src->id == dst->id)
            add(report.entries, Severity::Error, mf.id, "MF-CROSS-POOL",
                "message flow stays inside pool " + src->id);
        if (mf.item != kUntypedItem && !collab.items.count(mf.item))
            add(report.entries, Severity::Error, mf.id, "MF-ITEM",
                "unknown item definition " + mf.item);
    }
    sort_report(report.entries);
    return report;
}

} // namespace eipflow
