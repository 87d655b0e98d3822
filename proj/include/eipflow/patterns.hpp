#pragma once

#include "eipflow/model.hpp"
#include "eipflow/validate.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace eipflow {

enum class PatternKind {
    RequestReplySync,
    RequestReplyAsync,
    SynchAsynchBridge,
    AsynchSynchBridge,
    ContentBasedRouter,
    MessageFilter,
    RecipientList,
    SplitterIterative,
    SplitterStatic,
    Aggregator,
    Resequencer,
    MessageTranslator,
    ContentEnricher,
    ContentFilter,
    ClaimCheck,
    WireTap,
    MessageStore,
    JoinRouter,
    ExternalService,
    Multicast,
};

inline constexpr std::size_t kPatternKindCount = 20;

const char* to_string(PatternKind kind);
bool pattern_kind_from_string(const std::string& text, PatternKind& out);

enum class Cardinality { OneToOne, OneToN, NToOne, OneToZeroOrOne };

const char* to_string(Cardinality c);

// Static characteristics of one pattern kind, one row per kind. The table
// is checked against data/profiles.csv byte for byte.
struct PatternProfile {
    PatternKind kind;
    Cardinality message_cardinality;
    Cardinality channel_cardinality;
    bool message_generating;
    bool stateful;
    std::vector<std::string> required_params;
};

const std::array<PatternProfile, kPatternKindCount>& profile_table();
const PatternProfile& profile_of(PatternKind kind);

// CSV rendering of the table (header + one line per kind); the acceptance
// suite compares this against the checked-in transcription.
std::string profile_table_csv();

struct PatternInstance {
    PatternKind kind;
    std::string process;             // owning process id
    std::string anchor;              // anchor node id
    std::vector<std::string> satellites; // bound helper nodes / store names
    std::map<std::string, std::string> params;
};

// Template matching over node kinds, flows, data/store associations and
// message flows. Instances come back ordered by topological anchor position
// (ties by id), so permuting model containers cannot change the result.
std::vector<PatternInstance> recognize(const Collaboration& collab);
// Single-process convenience; message-flow based patterns (request-reply
// family, enricher, external service) need the collaboration overload.
std::vector<PatternInstance> recognize(const ProcessModel& model);

struct ConformanceFinding {
    PatternKind pattern;
    std::string anchor;
    std::string rule;
    Severity severity = Severity::Error;
    std::string text;
};

struct ConformanceReport {
    std::vector<ConformanceFinding> findings;

    bool conformant() const;
    bool has_rule(const std::string& rule) const;
    // one JSON object per line: {pattern, anchor, rule, severity}
    std::string to_json_lines() const;
};

// Verifies the structural facts implied by the instance's profile row:
// counted channel cardinality, bound state carriers for stateful kinds,
// required parameters present and parseable. Rules: CHAN-CARD,
// STATEFUL-STORE, PARAM-MISSING, PARAM-PARSE, JOIN-TYPES (warning).
ConformanceReport check_semantics(const PatternInstance& instance, const ProcessModel& model);

ConformanceReport check_all(const Collaboration& collab);

} // namespace eipflow
