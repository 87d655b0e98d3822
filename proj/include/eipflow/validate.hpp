#pragma once

#include "eipflow/model.hpp"

#include <string>
#include <vector>

namespace eipflow {

enum class Severity { Error, Warning };

const char* to_string(Severity severity);

struct Violation {
    Severity severity = Severity::Error;
    std::string element; // node/flow/association id
    std::string rule;
    std::string text;

    bool operator==(const Violation&) const = default;
};

// Entries sorted by (rule, element, text) so permuting a model's node or
// flow order cannot change the report.
struct ValidationReport {
    std::vector<Violation> entries;

    bool clean() const { return entries.empty(); }
    bool has_errors() const;
    bool has_rule(const std::string& rule) const;
};

// Structural validation rules and their stable ids:
//   N-EMPTY        node set is empty
//   SF-EMPTY       sequence flow set is empty
//   SF-ENDPOINT    flow endpoint does not resolve to a node
//   SF-DOMAIN      flow leaves an EndEvent or enters a start event
//   SF-DEFAULT-COND default flow carries a condition
//   XOR-DEFAULT    exclusive gateway with >=2 conditional outflows lacks
//                  exactly one default flow
//   XOR-MULTI-DEFAULT more than one default outflow on a gateway
//   EXPR-PARSE     flow condition text does not parse
//   START-REQUIRED no message start event or receive task in the process
//   SUB-START      sub-process without any start event
//   DO-ITEM        data object references an unknown item definition
//   DO-DUP         duplicate data object id
//   NODE-DUP       duplicate node id
//   DA-ENDPOINT    data association endpoint missing
//   DA-SHAPE       data association does not connect a node with a data object
//   STORE-DECL     store link references an undeclared store (warning)
ValidationReport validate_graph(const ProcessModel& model);

// Per-pool validate_graph plus message flow rules:
//   MF-ENDPOINT    message flow endpoint unknown
//   MF-CROSS-POOL  message flow endpoints live in one pool
//   MF-ITEM        message flow references an unknown item definition
ValidationReport validate_collaboration(const Collaboration& collab);

} // namespace eipflow
