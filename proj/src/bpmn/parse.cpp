#include "eipflow/bpmn.hpp"

#include "xml.hpp"

#include <algorithm>

namespace eipflow {

bool ParseDiagnostics::ok() const {
    return std::none_of(issues.begin(), issues.end(),
                        [](const ParseIssue& i) { return i.severity == Severity::Error; });
}

std::size_t ParseDiagnostics::warning_count() const {
    return static_cast<std::size_t>(
        std::count_if(issues.begin(), issues.end(),
                      [](const ParseIssue& i) { return i.severity == Severity::Warning; }));
}

namespace {

constexpr const char* kExtPrefix = "flow";

struct Parser {
    ParseDiagnostics diag;
    Collaboration collab;
    // message id -> item definition name, from <message> elements
    std::map<std::string, std::string> message_items;
    // process id -> parsed model (participants reference them)
    std::map<std::string, ProcessModel> processes;
    std::vector<std::string> process_order;

    void warn(const xml::Element& el, const std::string& reason) {
        diag.issues.push_back({Severity::Warning, el.line, el.col, el.name, reason});
    }

    void error(const xml::Element& el, const std::string& reason) {
        diag.issues.push_back({Severity::Error, el.line, el.col, el.name, reason});
    }

    void mapped(std::size_t n = 1) { diag.mapped_elements += n; }

    static std::string attr_or(const xml::Element& el, const std::string& name,
                               const std::string& fallback = {}) {
        const std::string* v = el.attr(name);
        return v ? *v : fallback;
    }

    // flow:* attributes become config entries
    static void collect_config(const xml::Element& el, ConfigMap& out) {
        for (const auto& [k, v] : el.attrs) {
            auto pos = k.find(':');
            if (pos == std::string::npos) continue;
            if (k.substr(0, pos) == kExtPrefix) out[k.substr(pos + 1)] = v;
        }
    }

    void parse_definitions(const xml::Element& root) {
        collab.id = attr_or(root, "id", "definitions");
        mapped(); // definitions itself
        for (const auto& child : root.children) {
            const std::string name = child.local_name();
            if (name == "itemDefinition") parse_item_definition(child);
            else if (name == "message") parse_message(child);
            else if (name == "collaboration") parse_collaboration(child);
            else if (name == "process") parse_process_element(child);
            else if (child.prefix() == "bpmndi" || name == "BPMNDiagram") {
                std::string blob;
                xml::write_element(blob, child, 0);
                collab.di_passthrough.push_back(std::move(blob));
                mapped(child.subtree_size());
            } else {
                warn(child, "unsupported element");
                mapped(child.subtree_size() - 1); // descendants are neither mapped nor re-warned
            }
        }
        attach_processes();
    }

    void parse_item_definition(const xml::Element& el) {
        mapped();
        ItemDefinition item;
        item.name = attr_or(el, "id");
        if (item.name.empty()) {
            error(el, "itemDefinition without id");
            return;
        }
        if (const xml::Element* ext = el.child("extensionElements")) {
            mapped();
            for (const auto& f : ext->children) {
                if (f.local_name() == "field") {
                    mapped();
                    ItemDefinition::Field field;
                    field.path = attr_or(f, "path");
                    ScalarKind kind = ScalarKind::String;
                    scalar_kind_from_string(attr_or(f, "kind", "string"), kind);
                    field.kind = kind;
                    item.schema.push_back(std::move(field));
                } else {
                    warn(f, "unsupported element");
                    mapped(f.subtree_size() - 1);
                }
            }
        }
        collab.items[item.name] = std::move(item);
    }

    void parse_message(const xml::Element& el) {
        mapped();
        std::string id = attr_or(el, "id");
        std::string item = attr_or(el, "itemRef", kUntypedItem);
        if (!id.empty()) message_items[id] = item;
    }

    std::string item_of_message_ref(const std::string& ref) const {
        auto it = message_items.find(ref);
        return it == message_items.end() ? std::string(kUntypedItem) : it->second;
    }

    void parse_collaboration(const xml::Element& el) {
        mapped();
        if (collab.id == "definitions") collab.id = attr_or(el, "id", collab.id);
        for (const auto& child : el.children) {
            const std::string name = child.local_name();
            if (name == "participant") {
                mapped();
                Pool pool;
                pool.id = attr_or(child, "id");
                pool.name = attr_or(child, "name");
                // processRef resolved later in attach_processes
                pool_process_refs.emplace_back(pool.id, attr_or(child, "processRef"));
                collab.pools.push_back(std::move(pool));
            } else if (name == "messageFlow") {
                mapped();
                MessageFlowDef mf;
                mf.id = attr_or(child, "id");
                mf.name = attr_or(child, "name");
                mf.source = attr_or(child, "sourceRef");
                mf.target = attr_or(child, "targetRef");
                const std::string* msg_ref = child.attr("messageRef");
                mf.item = msg_ref ? item_of_message_ref(*msg_ref) : std::string(kUntypedItem);
                mf.initiating = attr_or(child, "initiating", "true") != "false";
                collab.message_flows.push_back(std::move(mf));
            } else {
                warn(child, "unsupported element");
                mapped(child.subtree_size() - 1);
            }
        }
    }

    void parse_process_element(const xml::Element& el) {
        ProcessModel model = parse_model_body(el);
        model.id = attr_or(el, "id");
        model.name = attr_or(el, "name");
        process_order.push_back(model.id);
        processes[model.id] = std::move(model);
    }

    ProcessModel parse_model_body(const xml::Element& el) {
        mapped(); // the process / subProcess container
        // default-flow markers are scoped to the model being read
        std::vector<std::string> outer_defaults = std::move(pending_default_flows);
        pending_default_flows.clear();
        ProcessModel model;
        for (const auto& child : el.children) {
            const std::string name = child.local_name();
            if (name == "sequenceFlow") parse_sequence_flow(child, model);
            else if (name == "dataObject" || name == "dataObjectReference")
                parse_data_object(child, model);
            else if (name == "dataStoreReference") parse_data_store(child, model);
            else if (name == "association") parse_association(child, model);
            else if (name == "extensionElements") {
                mapped();
                warn_children_unsupported(child);
            } else if (parse_flow_node(child, model)) {
                // handled
            } else {
                warn(child, "unsupported element");
                mapped(child.subtree_size() - 1);
            }
        }
        apply_default_flows(model);
        pending_default_flows = std::move(outer_defaults);
        return model;
    }

    void warn_children_unsupported(const xml::Element& el) {
        for (const auto& c : el.children) {
            warn(c, "unsupported element");
            mapped(c.subtree_size() - 1);
        }
    }

    // gateway "default" attributes are collected while reading nodes and
    // applied once all flows exist
    std::vector<std::string> pending_default_flows;
    std::vector<std::pair<std::string, std::string>> pool_process_refs;

    void apply_default_flows(ProcessModel& model) {
        for (const auto& flow_id : pending_default_flows) {
            for (auto& f : model.flows) {
                if (f.id == flow_id) f.is_default = true;
            }
        }
        pending_default_flows.clear();
    }

    void parse_sequence_flow(const xml::Element& el, ProcessModel& model) {
        mapped();
        SequenceFlow flow;
        flow.id = attr_or(el, "id");
        flow.source = attr_or(el, "sourceRef");
        flow.target = attr_or(el, "targetRef");
        if (const xml::Element* cond = el.child("conditionExpression")) {
            mapped();
            flow.condition_text = cond->text;
            try {
                flow.condition = parse_expression(flow.condition_text);
            } catch (const ExprParseError& e) {
                warn(*cond, std::string("condition does not parse: ") + e.what());
            }
        }
        model.flows.push_back(std::move(flow));
    }

    void parse_data_object(const xml::Element& el, ProcessModel& model) {
        mapped();
        DataObject d;
        d.id = attr_or(el, "id");
        d.item = attr_or(el, "itemSubjectRef", kUntypedItem);
        d.is_collection = attr_or(el, "isCollection", "false") == "true";
        collect_config(el, d.config);
        model.data_objects.push_back(std::move(d));
    }

    void parse_data_store(const xml::Element& el, ProcessModel& model) {
        mapped();
        std::string store = attr_or(el, "name", attr_or(el, "id"));
        data_store_ids[attr_or(el, "id")] = store;
        if (std::find(model.data_stores.begin(), model.data_stores.end(), store) ==
            model.data_stores.end())
            model.data_stores.push_back(store);
    }

    std::map<std::string, std::string> data_store_ids; // reference id -> store name

    void parse_association(const xml::Element& el, ProcessModel& model) {
        mapped();
        std::string source = attr_or(el, "sourceRef");
        std::string target = attr_or(el, "targetRef");
        add_data_edge(model, source, target);
    }

    void add_data_edge(ProcessModel& model, const std::string& source, const std::string& target) {
        auto store_src = data_store_ids.find(source);
        auto store_dst = data_store_ids.find(target);
        if (store_dst != data_store_ids.end()) {
            model.store_links.push_back({source, store_dst->second, true});
        } else if (store_src != data_store_ids.end()) {
            model.store_links.push_back({target, store_src->second, false});
        } else {
            model.data_flow.push_back({source, target});
        }
    }

    bool parse_flow_node(const xml::Element& el, ProcessModel& model) {
        const std::string name = el.local_name();
        Node node;
        node.id = attr_or(el, "id");
        node.label = attr_or(el, "name");
        collect_config(el, node.config);

        if (name == "serviceTask" || name == "task") node.kind = NodeKind::ServiceTask;
        else if (name == "scriptTask") node.kind = NodeKind::ScriptTask;
        else if (name == "sendTask") node.kind = NodeKind::SendTask;
        else if (name == "receiveTask") node.kind = NodeKind::ReceiveTask;
        else if (name == "subProcess") node.kind = NodeKind::SubProcess;
        else if (name == "exclusiveGateway") node.kind = NodeKind::ExclusiveGateway;
        else if (name == "parallelGateway") node.kind = NodeKind::ParallelGateway;
        else if (name == "inclusiveGateway") node.kind = NodeKind::InclusiveGateway;
        else if (name == "startEvent") node.kind = NodeKind::StartEvent;
        else if (name == "endEvent") node.kind = NodeKind::EndEvent;
        else if (name == "intermediateThrowEvent") node.kind = NodeKind::IntermediateMessageThrow;
        else if (name == "intermediateCatchEvent") node.kind = NodeKind::IntermediateMessageCatch;
        else if (name == "boundaryEvent") node.kind = NodeKind::ErrorBoundary;
        else return false;

        mapped();

        if (name == "exclusiveGateway" || name == "inclusiveGateway") {
            std::string def = attr_or(el, "default");
            if (!def.empty()) pending_default_flows.push_back(def);
        }
        if (name == "boundaryEvent") {
            std::string attached = attr_or(el, "attachedToRef");
            if (!attached.empty()) node.config["attached"] = attached;
        }
        if ((name == "sendTask" || name == "receiveTask") && el.attr("messageRef"))
            node.config["message"] = item_of_message_ref(*el.attr("messageRef"));

        for (const auto& child : el.children) {
            const std::string cn = child.local_name();
            if (cn == "messageEventDefinition") {
                mapped();
                const std::string* ref = child.attr("messageRef");
                node.config["message"] = ref ? item_of_message_ref(*ref) : kUntypedItem;
                if (name == "intermediateThrowEvent") node.kind = NodeKind::IntermediateMessageThrow;
                if (name == "intermediateCatchEvent") node.kind = NodeKind::IntermediateMessageCatch;
            } else if (cn == "timerEventDefinition") {
                mapped();
                std::string duration;
                if (const xml::Element* dur = child.child("timeDuration")) {
                    mapped();
                    duration = dur->text;
                }
                node.config["timer"] = duration;
                if (name == "startEvent") node.kind = NodeKind::TimerStartEvent;
                if (name == "intermediateCatchEvent") node.kind = NodeKind::IntermediateTimer;
            } else if (cn == "escalationEventDefinition") {
                mapped();
                node.config["escalation"] = attr_or(child, "code");
                if (name == "startEvent") node.kind = NodeKind::EscalationStartEvent;
                if (name == "intermediateThrowEvent")
                    node.kind = NodeKind::IntermediateEscalationThrow;
            } else if (cn == "errorEventDefinition") {
                mapped();
                node.config["error"] = attr_or(child, "code");
            } else if (cn == "script") {
                mapped();
                node.config["script"] = child.text;
            } else if (cn == "dataInputAssociation") {
                mapped();
                std::string source;
                if (const xml::Element* s = child.child("sourceRef")) {
                    mapped();
                    source = s->text;
                }
                if (!source.empty()) add_data_edge(model, source, node.id);
            } else if (cn == "dataOutputAssociation") {
                mapped();
                std::string target;
                if (const xml::Element* t = child.child("targetRef")) {
                    mapped();
                    target = t->text;
                }
                if (!target.empty()) add_data_edge(model, node.id, target);
            } else if (cn == "incoming" || cn == "outgoing") {
                mapped(); // redundant with sequenceFlow refs
            } else if (name == "subProcess") {
                // handled below by recursing over the whole element
                continue;
            } else {
                warn(child, "unsupported element");
                mapped(child.subtree_size() - 1);
            }
        }

        if (name == "subProcess") {
            // re-walk children as a nested model; event definitions and data
            // associations above were only for non-container children
            ProcessModel sub = parse_subprocess_body(el);
            sub.id = node.id;
            sub.name = node.label;
            model.sub_processes[node.id] = std::move(sub);
        }

        model.nodes.push_back(std::move(node));
        return true;
    }

    ProcessModel parse_subprocess_body(const xml::Element& el) {
        // reuse parse_model_body but skip the activity-level children already
        // handled (data associations of the subProcess node itself)
        xml::Element inner = el;
        inner.children.erase(
            std::remove_if(inner.children.begin(), inner.children.end(),
                           [](const xml::Element& c) {
                               const std::string n = c.local_name();
                               return n == "dataInputAssociation" || n == "dataOutputAssociation" ||
                                      n == "incoming" || n == "outgoing";
                           }),
            inner.children.end());
        ProcessModel sub = parse_model_body(inner);
        diag.mapped_elements -= 1; // parse_model_body counted the container again
        return sub;
    }

    void assign_items(ProcessModel& model) {
        model.items = collab.items;
        for (auto& [_, sub] : model.sub_processes) assign_items(sub);
    }

    void attach_processes() {
        for (auto& [_, model] : processes) assign_items(model);
        std::vector<std::string> used;
        for (auto& [pool_id, proc_ref] : pool_process_refs) {
            if (proc_ref.empty()) continue;
            auto it = processes.find(proc_ref);
            if (it == processes.end()) continue;
            for (auto& pool : collab.pools) {
                if (pool.id == pool_id) pool.process = it->second;
            }
            used.push_back(proc_ref);
        }
        // processes not referenced by any participant become implicit pools
        for (const auto& id : process_order) {
            if (std::find(used.begin(), used.end(), id) != used.end()) continue;
            Pool pool;
            pool.id = "pool:" + id;
            pool.name = processes[id].name;
            pool.process = processes[id];
            collab.pools.push_back(std::move(pool));
        }
    }
};

} // namespace

ParseResult parse_bpmn(std::string_view document) {
    xml::Element root;
    try {
        root = xml::parse(document);
    } catch (const xml::XmlError& e) {
        throw XmlParseError(e.what(), e.line(), e.col());
    }
    if (root.local_name() != "definitions")
        throw UnsupportedRootError("document element is <" + root.name +
                                   ">, expected BPMN definitions");
    Parser parser;
    parser.parse_definitions(root);
    ParseResult result;
    result.collaboration = std::move(parser.collab);
    result.diagnostics = std::move(parser.diag);
    return result;
}

} // namespace eipflow
