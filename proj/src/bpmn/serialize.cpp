#include "eipflow/bpmn.hpp"

#include "xml.hpp"

#include <algorithm>
#include <set>

namespace eipflow {

namespace {

constexpr const char* kBpmnNs = "http://www.omg.org/spec/BPMN/20100524/MODEL";
constexpr const char* kExtNs = "urn:eipflow:bpmn";
constexpr const char* kExprLang = "urn:eipflow:expr";

// config keys with first-class XML representations
bool config_key_inline(const std::string& key) {
    return key == "message" || key == "timer" || key == "escalation" || key == "error" ||
           key == "attached" || key == "script";
}

struct Writer {
    const Collaboration& collab;
    std::set<std::string> message_items; // items needing <message> elements

    explicit Writer(const Collaboration& c) : collab(c) { collect_message_items(); }

    static std::string message_id(const std::string& item) { return "msg_" + item; }
    static std::string store_ref_id(const std::string& store) { return "ds_" + store; }

    void collect_from_model(const ProcessModel& model) {
        for (const auto& n : model.nodes) {
            auto it = n.config.find("message");
            if (it != n.config.end() && it->second != kUntypedItem) message_items.insert(it->second);
        }
        for (const auto& [_, sub] : model.sub_processes) collect_from_model(sub);
    }

    void collect_message_items() {
        for (const auto& mf : collab.message_flows)
            if (mf.item != kUntypedItem) message_items.insert(mf.item);
        for (const auto& pool : collab.pools)
            if (pool.process) collect_from_model(*pool.process);
    }

    xml::Element make(const std::string& name) {
        xml::Element el;
        el.name = name;
        return el;
    }

    void set_attr(xml::Element& el, const std::string& key, const std::string& value) {
        el.attrs.emplace_back(key, value);
    }

    xml::Element write_item_definition(const ItemDefinition& item) {
        xml::Element el = make("bpmn:itemDefinition");
        set_attr(el, "id", item.name);
        if (!item.schema.empty()) {
            xml::Element ext = make("bpmn:extensionElements");
            for (const auto& f : item.schema) {
                xml::Element field = make("flow:field");
                set_attr(field, "path", f.path);
                set_attr(field, "kind", to_string(f.kind));
                ext.children.push_back(std::move(field));
            }
            el.children.push_back(std::move(ext));
        }
        return el;
    }

    xml::Element write_collaboration() {
        xml::Element el = make("bpmn:collaboration");
        set_attr(el, "id", "collaboration_1");
        std::vector<const Pool*> pools;
        for (const auto& p : collab.pools) pools.push_back(&p);
        std::sort(pools.begin(), pools.end(),
                  [](const Pool* a, const Pool* b) { return a->id < b->id; });
        for (const Pool* p : pools) {
            xml::Element part = make("bpmn:participant");
            set_attr(part, "id", p->id);
            if (!p->name.empty()) set_attr(part, "name", p->name);
            if (p->process) set_attr(part, "processRef", p->process->id);
            el.children.push_back(std::move(part));
        }
        std::vector<const MessageFlowDef*> mfs;
        for (const auto& mf : collab.message_flows) mfs.push_back(&mf);
        std::sort(mfs.begin(), mfs.end(),
                  [](const MessageFlowDef* a, const MessageFlowDef* b) { return a->id < b->id; });
        for (const MessageFlowDef* mf : mfs) {
            xml::Element m = make("bpmn:messageFlow");
            set_attr(m, "id", mf->id);
            if (!mf->name.empty()) set_attr(m, "name", mf->name);
            set_attr(m, "sourceRef", mf->source);
            set_attr(m, "targetRef", mf->target);
            if (mf->item != kUntypedItem) set_attr(m, "messageRef", message_id(mf->item));
            set_attr(m, "flow:initiating", mf->initiating ? "true" : "false");
            el.children.push_back(std::move(m));
        }
        return el;
    }

    void write_config_attrs(xml::Element& el, const ConfigMap& config) {
        for (const auto& [k, v] : config) {
            if (config_key_inline(k)) continue;
            set_attr(el, "flow:" + k, v);
        }
    }

    const char* element_for(NodeKind kind) {
        switch (kind) {
            case NodeKind::ServiceTask: return "bpmn:serviceTask";
            case NodeKind::ScriptTask: return "bpmn:scriptTask";
            case NodeKind::SendTask: return "bpmn:sendTask";
            case NodeKind::ReceiveTask: return "bpmn:receiveTask";
            case NodeKind::SubProcess: return "bpmn:subProcess";
            case NodeKind::ExclusiveGateway: return "bpmn:exclusiveGateway";
            case NodeKind::ParallelGateway: return "bpmn:parallelGateway";
            case NodeKind::InclusiveGateway: return "bpmn:inclusiveGateway";
            case NodeKind::StartEvent:
            case NodeKind::EscalationStartEvent:
            case NodeKind::TimerStartEvent: return "bpmn:startEvent";
            case NodeKind::EndEvent: return "bpmn:endEvent";
            case NodeKind::IntermediateMessageThrow:
            case NodeKind::IntermediateEscalationThrow: return "bpmn:intermediateThrowEvent";
            case NodeKind::IntermediateMessageCatch:
            case NodeKind::IntermediateTimer: return "bpmn:intermediateCatchEvent";
            case NodeKind::ErrorBoundary: return "bpmn:boundaryEvent";
        }
        return "bpmn:task";
    }

    void add_event_definitions(xml::Element& el, const Node& node) {
        auto message = node.config.find("message");
        bool message_as_attr =
            node.kind == NodeKind::SendTask || node.kind == NodeKind::ReceiveTask;
        if (message != node.config.end() && !message_as_attr) {
            xml::Element def = make("bpmn:messageEventDefinition");
            if (message->second != kUntypedItem)
                set_attr(def, "messageRef", message_id(message->second));
            el.children.push_back(std::move(def));
        }
        if (node.kind == NodeKind::TimerStartEvent || node.kind == NodeKind::IntermediateTimer ||
            node.has_config("timer")) {
            xml::Element def = make("bpmn:timerEventDefinition");
            auto timer = node.config.find("timer");
            if (timer != node.config.end() && !timer->second.empty()) {
                xml::Element dur = make("bpmn:timeDuration");
                dur.text = timer->second;
                def.children.push_back(std::move(dur));
            }
            el.children.push_back(std::move(def));
        }
        if (node.kind == NodeKind::EscalationStartEvent ||
            node.kind == NodeKind::IntermediateEscalationThrow || node.has_config("escalation")) {
            xml::Element def = make("bpmn:escalationEventDefinition");
            auto code = node.config.find("escalation");
            if (code != node.config.end() && !code->second.empty())
                set_attr(def, "code", code->second);
            el.children.push_back(std::move(def));
        }
        if (node.kind == NodeKind::ErrorBoundary) {
            xml::Element def = make("bpmn:errorEventDefinition");
            auto code = node.config.find("error");
            if (code != node.config.end() && !code->second.empty())
                set_attr(def, "code", code->second);
            el.children.push_back(std::move(def));
        }
    }

    xml::Element write_node(const Node& node, const ProcessModel& model) {
        xml::Element el = make(element_for(node.kind));
        set_attr(el, "id", node.id);
        if (!node.label.empty()) set_attr(el, "name", node.label);
        if (node.kind == NodeKind::ErrorBoundary) {
            auto attached = node.config.find("attached");
            if (attached != node.config.end()) set_attr(el, "attachedToRef", attached->second);
        }
        if ((node.kind == NodeKind::SendTask || node.kind == NodeKind::ReceiveTask)) {
            auto message = node.config.find("message");
            if (message != node.config.end() && message->second != kUntypedItem)
                set_attr(el, "messageRef", message_id(message->second));
        }
        if (node.kind == NodeKind::ExclusiveGateway || node.kind == NodeKind::InclusiveGateway) {
            for (const auto* f : model.outflows(node.id)) {
                if (f->is_default) {
                    set_attr(el, "default", f->id);
                    break;
                }
            }
        }
        write_config_attrs(el, node.config);
        add_event_definitions(el, node);

        if (node.kind == NodeKind::ScriptTask) {
            auto script = node.config.find("script");
            if (script != node.config.end()) {
                xml::Element s = make("bpmn:script");
                s.text = script->second;
                el.children.push_back(std::move(s));
            }
        }

        if (is_activity(node.kind)) {
            // data associations and store links live inside the activity
            for (const auto& a : model.data_flow) {
                if (a.target == node.id && model.data_object_by_id(a.source)) {
                    xml::Element da = make("bpmn:dataInputAssociation");
                    xml::Element src = make("bpmn:sourceRef");
                    src.text = a.source;
                    da.children.push_back(std::move(src));
                    el.children.push_back(std::move(da));
                } else if (a.source == node.id && model.data_object_by_id(a.target)) {
                    xml::Element da = make("bpmn:dataOutputAssociation");
                    xml::Element dst = make("bpmn:targetRef");
                    dst.text = a.target;
                    da.children.push_back(std::move(dst));
                    el.children.push_back(std::move(da));
                }
            }
            for (const auto& l : model.store_links) {
                if (l.node != node.id) continue;
                if (l.write) {
                    xml::Element da = make("bpmn:dataOutputAssociation");
                    xml::Element dst = make("bpmn:targetRef");
                    dst.text = store_ref_id(l.store);
                    da.children.push_back(std::move(dst));
                    el.children.push_back(std::move(da));
                } else {
                    xml::Element da = make("bpmn:dataInputAssociation");
                    xml::Element src = make("bpmn:sourceRef");
                    src.text = store_ref_id(l.store);
                    da.children.push_back(std::move(src));
                    el.children.push_back(std::move(da));
                }
            }
        }

        if (node.kind == NodeKind::SubProcess) {
            auto sub = model.sub_processes.find(node.id);
            if (sub != model.sub_processes.end()) write_model_children(el, sub->second);
        }
        return el;
    }

    void write_model_children(xml::Element& el, const ProcessModel& model) {
        std::vector<std::string> stores = model.data_stores;
        std::sort(stores.begin(), stores.end());
        for (const auto& s : stores) {
            xml::Element ds = make("bpmn:dataStoreReference");
            set_attr(ds, "id", store_ref_id(s));
            set_attr(ds, "name", s);
            el.children.push_back(std::move(ds));
        }

        std::vector<const DataObject*> objects;
        for (const auto& d : model.data_objects) objects.push_back(&d);
        std::sort(objects.begin(), objects.end(),
                  [](const DataObject* a, const DataObject* b) { return a->id < b->id; });
        for (const DataObject* d : objects) {
            xml::Element obj = make("bpmn:dataObject");
            set_attr(obj, "id", d->id);
            if (d->item != kUntypedItem) set_attr(obj, "itemSubjectRef", d->item);
            if (d->is_collection) set_attr(obj, "isCollection", "true");
            write_config_attrs(obj, d->config);
            el.children.push_back(std::move(obj));
        }

        std::vector<const Node*> nodes;
        for (const auto& n : model.nodes) nodes.push_back(&n);
        std::sort(nodes.begin(), nodes.end(),
                  [](const Node* a, const Node* b) { return a->id < b->id; });
        for (const Node* n : nodes) el.children.push_back(write_node(*n, model));

        // model order, not id order: condition evaluation follows it
        for (const auto& f : model.flows) {
            xml::Element flow = make("bpmn:sequenceFlow");
            set_attr(flow, "id", f.id);
            set_attr(flow, "sourceRef", f.source);
            set_attr(flow, "targetRef", f.target);
            if (f.has_condition()) {
                xml::Element cond = make("bpmn:conditionExpression");
                set_attr(cond, "language", kExprLang);
                cond.text = f.condition_text;
                flow.children.push_back(std::move(cond));
            }
            el.children.push_back(std::move(flow));
        }

        // associations of non-activity nodes are process-level artifacts
        for (const auto& a : model.data_flow) {
            const Node* src_node = model.node_by_id(a.source);
            const Node* dst_node = model.node_by_id(a.target);
            const Node* endpoint = src_node ? src_node : dst_node;
            if (endpoint && is_activity(endpoint->kind)) continue;
            xml::Element assoc = make("bpmn:association");
            set_attr(assoc, "sourceRef", a.source);
            set_attr(assoc, "targetRef", a.target);
            el.children.push_back(std::move(assoc));
        }
        for (const auto& l : model.store_links) {
            const Node* n = model.node_by_id(l.node);
            if (n && is_activity(n->kind)) continue;
            xml::Element assoc = make("bpmn:association");
            if (l.write) {
                set_attr(assoc, "sourceRef", l.node);
                set_attr(assoc, "targetRef", store_ref_id(l.store));
            } else {
                set_attr(assoc, "sourceRef", store_ref_id(l.store));
                set_attr(assoc, "targetRef", l.node);
            }
            el.children.push_back(std::move(assoc));
        }
    }

    std::string write() {
        xml::Element root = make("bpmn:definitions");
        set_attr(root, "xmlns:bpmn", kBpmnNs);
        set_attr(root, "xmlns:flow", kExtNs);
        set_attr(root, "id", collab.id);
        set_attr(root, "targetNamespace", kExtNs);

        for (const auto& [name, item] : collab.items)
            root.children.push_back(write_item_definition(item));

        for (const auto& item : message_items) {
            xml::Element msg = make("bpmn:message");
            set_attr(msg, "id", message_id(item));
            set_attr(msg, "itemRef", item);
            root.children.push_back(std::move(msg));
        }

        root.children.push_back(write_collaboration());

        std::vector<const Pool*> pools;
        for (const auto& p : collab.pools) pools.push_back(&p);
        std::sort(pools.begin(), pools.end(),
                  [](const Pool* a, const Pool* b) { return a->id < b->id; });
        for (const Pool* p : pools) {
            if (!p->process) continue;
            xml::Element proc = make("bpmn:process");
            set_attr(proc, "id", p->process->id);
            if (!p->process->name.empty()) set_attr(proc, "name", p->process->name);
            set_attr(proc, "isExecutable", "true");
            write_model_children(proc, *p->process);
            root.children.push_back(std::move(proc));
        }

        std::string out = xml::serialize(root);
        for (const auto& blob : collab.di_passthrough) {
            // blobs were captured pre-indented; splice before the close tag
            std::string close = "</bpmn:definitions>\n";
            out.erase(out.size() - close.size());
            std::string indented;
            indented.reserve(blob.size());
            indented += "  ";
            for (std::size_t i = 0; i < blob.size(); ++i) {
                indented += blob[i];
                if (blob[i] == '\n' && i + 1 < blob.size()) indented += "  ";
            }
            out += indented;
            out += close;
        }
        return out;
    }
};

template <typename T, typename Key>
std::vector<const T*> sorted_by(const std::vector<T>& items, Key key) {
    std::vector<const T*> out;
    for (const auto& i : items) out.push_back(&i);
    std::sort(out.begin(), out.end(), [&](const T* a, const T* b) { return key(*a) < key(*b); });
    return out;
}

bool node_equal(const Node& a, const Node& b) {
    return a.id == b.id && a.kind == b.kind && a.label == b.label && a.config == b.config;
}

bool flow_equal(const SequenceFlow& a, const SequenceFlow& b) {
    return a.id == b.id && a.source == b.source && a.target == b.target &&
           a.condition_text == b.condition_text && a.is_default == b.is_default;
}

bool object_equal(const DataObject& a, const DataObject& b) {
    return a.id == b.id && a.item == b.item && a.is_collection == b.is_collection &&
           a.config == b.config;
}

} // namespace

std::string serialize_bpmn(const Collaboration& collab) { return Writer(collab).write(); }

bool deep_equal(const ProcessModel& a, const ProcessModel& b) {
    if (a.id != b.id) return false;

    auto an = sorted_by(a.nodes, [](const Node& n) { return n.id; });
    auto bn = sorted_by(b.nodes, [](const Node& n) { return n.id; });
    if (an.size() != bn.size()) return false;
    for (std::size_t i = 0; i < an.size(); ++i)
        if (!node_equal(*an[i], *bn[i])) return false;

    if (a.flows.size() != b.flows.size()) return false;
    for (std::size_t i = 0; i < a.flows.size(); ++i)
        if (!flow_equal(a.flows[i], b.flows[i])) return false;

    auto ad = sorted_by(a.data_objects, [](const DataObject& d) { return d.id; });
    auto bd = sorted_by(b.data_objects, [](const DataObject& d) { return d.id; });
    if (ad.size() != bd.size()) return false;
    for (std::size_t i = 0; i < ad.size(); ++i)
        if (!object_equal(*ad[i], *bd[i])) return false;

    auto edge_key = [](const DataAssociation& e) { return e.source + "\x01" + e.target; };
    auto ae = sorted_by(a.data_flow, edge_key);
    auto be = sorted_by(b.data_flow, edge_key);
    if (ae.size() != be.size()) return false;
    for (std::size_t i = 0; i < ae.size(); ++i)
        if (edge_key(*ae[i]) != edge_key(*be[i])) return false;

    std::set<std::string> as(a.data_stores.begin(), a.data_stores.end());
    std::set<std::string> bs(b.data_stores.begin(), b.data_stores.end());
    if (as != bs) return false;

    auto link_key = [](const StoreLink& l) {
        return l.node + "\x01" + l.store + (l.write ? "\x01w" : "\x01r");
    };
    auto al = sorted_by(a.store_links, link_key);
    auto bl = sorted_by(b.store_links, link_key);
    if (al.size() != bl.size()) return false;
    for (std::size_t i = 0; i < al.size(); ++i)
        if (link_key(*al[i]) != link_key(*bl[i])) return false;

    if (a.sub_processes.size() != b.sub_processes.size()) return false;
    for (const auto& [id, sub] : a.sub_processes) {
        auto it = b.sub_processes.find(id);
        if (it == b.sub_processes.end() || !deep_equal(sub, it->second)) return false;
    }
    return true;
}

bool deep_equal(const Collaboration& a, const Collaboration& b) {
    if (a.items != b.items) return false;
    if (a.di_passthrough != b.di_passthrough) return false;

    auto ap = sorted_by(a.pools, [](const Pool& p) { return p.id; });
    auto bp = sorted_by(b.pools, [](const Pool& p) { return p.id; });
    if (ap.size() != bp.size()) return false;
    for (std::size_t i = 0; i < ap.size(); ++i) {
        if (ap[i]->id != bp[i]->id || ap[i]->name != bp[i]->name) return false;
        if (ap[i]->process.has_value() != bp[i]->process.has_value()) return false;
        if (ap[i]->process && !deep_equal(*ap[i]->process, *bp[i]->process)) return false;
    }

    auto mf_key = [](const MessageFlowDef& m) { return m.id; };
    auto am = sorted_by(a.message_flows, mf_key);
    auto bm = sorted_by(b.message_flows, mf_key);
    if (am.size() != bm.size()) return false;
    for (std::size_t i = 0; i < am.size(); ++i) {
        const auto& x = *am[i];
        const auto& y = *bm[i];
        if (x.id != y.id || x.name != y.name || x.source != y.source || x.target != y.target ||
            x.item != y.item || x.initiating != y.initiating)
            return false;
    }
    return true;
}

} // namespace eipflow
