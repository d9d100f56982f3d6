#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secinterop/intra.hpp"
#include "secinterop/relations.hpp"

namespace secinterop {

// Condition attributes plus decision attribute, in declared order.
Schema extract_attributes(const RuleSet& rs);

// Shared schema of a preceding and a following component: the preceding
// component's attributes in its order, then the attributes only the
// following component has, in its order. Attributes declared by both get the
// union of the two domains. Throws SchemaError on a kind clash.
Schema union_schema(const Schema& preceding, const Schema& following);

// Re-expresses every rule over `target`: attributes the rule set lacks become
// wildcards, the others keep their values (rebased onto the target domain).
// Returns `rs` itself when its schema already equals `target`. Throws
// SchemaError when `target` lacks one of rs's attributes or cannot hold its
// domain.
RuleSet extend_schema(const RuleSet& rs, const Schema& target);

struct AlignedPair {
    RuleSet preceding;
    RuleSet following;
};

// Both rule sets extended to union_schema of their schemas.
AlignedPair align(const RuleSet& preceding, const RuleSet& following);

// True when the rules are pairwise disjoint, which is what a corrected set
// looks like.
bool is_relevant(const RuleSet& rs);

enum class InterKind { Shadowing, Spuriousness, Redundancy, Correlation };

std::string_view to_string(InterKind kind);

struct InterAnomaly {
    InterKind kind = InterKind::Shadowing;
    int preceding = 0;
    int following = 0;
    RuleRelation evidence;  // relate(preceding rule, following rule)
    Severity severity = Severity::Error;

    friend bool operator==(const InterAnomaly&, const InterAnomaly&) = default;
};

// Subset-based kinds require the following rule's traffic to lie inside the
// preceding rule's traffic.
std::optional<InterAnomaly> classify_inter(const Rule& preceding, const Rule& following,
                                           const Schema& schema);

// All anomalous cross pairs sorted by (preceding, following, kind). Both
// sets must share one condition schema; throws SchemaError otherwise.
std::vector<InterAnomaly> detect_inter(const RuleSet& preceding, const RuleSet& following);
std::vector<InterAnomaly> detect_inter_serial(const RuleSet& preceding, const RuleSet& following);

struct InteropVerdict {
    bool interoperable = true;
    std::vector<InterAnomaly> anomalies;
};

InteropVerdict check_interoperable(const RuleSet& preceding, const RuleSet& following);

struct Hop {
    std::string component;
    ComponentKind kind = ComponentKind::Filtering;
};

struct TopologyComponent {
    std::string name;
    ComponentKind kind = ComponentKind::Filtering;
    std::string file;  // may be empty
};

struct TopologyPath {
    std::string name;
    std::vector<Hop> hops;  // traversal order
};

struct Topology {
    std::vector<TopologyComponent> components;
    std::vector<TopologyPath> paths;

    const TopologyComponent* find(std::string_view name) const;
};

// Format:
//   component <name> <filtering|alerting> [rule-file]
//   path <name>: <component>[:<kind>] <component>[:<kind>] ...
// A hop kind may be omitted for declared components and must agree with the
// declaration otherwise. Throws ParseError / SchemaError.
Topology parse_topology(std::string_view text);

struct PositioningViolation {
    std::string path;
    std::string alerting;
    std::string filtering;
    std::size_t alerting_pos = 0;  // 0-based hop indices
    std::size_t filtering_pos = 0;
};

// Every alerting component that precedes a filtering component on a path.
// Throws SchemaError on an empty path.
std::vector<PositioningViolation> check_positioning(const Topology& t);

}  // namespace secinterop
