#pragma once

#include "eipflow/model.hpp"
#include "eipflow/validate.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eipflow {

// Raised when the input is not XML at all.
class XmlParseError : public std::runtime_error {
public:
    XmlParseError(const std::string& what, int line, int col)
        : std::runtime_error(what), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

// Raised when the document element is not a BPMN definitions element.
class UnsupportedRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParseIssue {
    Severity severity = Severity::Warning;
    int line = 0;
    int col = 0;
    std::string element;
    std::string reason;
};

// Unsupported-but-well-formed elements are never dropped silently; each one
// contributes a warning, so mapped_elements + issues covers the whole
// document tree.
struct ParseDiagnostics {
    std::vector<ParseIssue> issues;
    std::size_t mapped_elements = 0;

    bool ok() const;
    std::size_t warning_count() const;
};

struct ParseResult {
    Collaboration collaboration;
    ParseDiagnostics diagnostics;
};

// Maps the BPMN 2.0 XML subset in docs/bpmn-subset.md onto core model
// types. Ids are preserved verbatim. Throws XmlParseError or
// UnsupportedRootError; everything else lands in the diagnostics.
ParseResult parse_bpmn(std::string_view document);

// Canonical serialization: fixed prefixes, sorted ids (sequence flows keep
// model order because gateway tie-breaks depend on it). Output re-parses to
// a collaboration deep-equal to the input.
std::string serialize_bpmn(const Collaboration& collab);

// Order-insensitive structural equality on everything except sequence
// flows, whose order is semantic.
bool deep_equal(const Collaboration& a, const Collaboration& b);
bool deep_equal(const ProcessModel& a, const ProcessModel& b);

} // namespace eipflow
