#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "secinterop/interop.hpp"
#include "secinterop/rdt.hpp"

namespace secinterop {

struct Provenance {
    std::string component;
    ComponentKind kind = ComponentKind::Filtering;
    int original_id = 0;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Preceding rules followed by following rules, renumbered 1..t+z.
// provenance[id - 1] names where rule `id` came from.
struct GlobalRuleSet {
    RuleSet rules;
    std::vector<Provenance> provenance;

    const Provenance& origin_of(int id) const { return provenance.at(static_cast<std::size_t>(id - 1)); }
};

// Both inputs must already share one schema; throws SchemaError otherwise.
GlobalRuleSet integrate(const RuleSet& preceding, const RuleSet& following);

RelevantDecisionTree correct_global(const GlobalRuleSet& g,
                                    ConflictPolicy policy = ConflictPolicy::SpecificityThenOrder);

enum class ProjectionMode {
    // Drop branches carrying a non-wildcard label on an attribute outside the
    // kept set.
    DropSpecific,
    // Additionally keep only branches whose designated attributes carry
    // specific labels, or whose owner is listed.
    KeepSpecific,
};

struct ProjectionSpec {
    std::vector<std::string> attributes;
    ProjectionMode mode = ProjectionMode::DropSpecific;
    std::vector<std::string> designated;
    std::set<int> owners;
};

// Removes the branches the spec rejects, then deletes the levels of the
// attributes outside spec.attributes (only wildcard edges remain there).
// Sibling edges are not merged afterwards. Throws SchemaError when an
// attribute is not in the tree's schema.
RelevantDecisionTree project(const RelevantDecisionTree& rdt, const ProjectionSpec& spec);

// Same, with an arbitrary predicate deciding which surviving branches stay.
// Branch labels are over the unprojected schema.
RelevantDecisionTree project_if(const RelevantDecisionTree& rdt,
                                const std::vector<std::string>& attributes,
                                const std::function<bool(const Branch&)>& keep);

struct PairCorrection {
    GlobalRuleSet global;
    RelevantDecisionTree tree;
    RuleSet preceding;
    RuleSet following;
};

// Extends both inputs to their union schema, integrates them, builds the
// corrected global tree and splits its branches between the two components.
// A branch is a candidate for component C when it is a wildcard on every
// attribute C lacks and, for an alerting C with attributes of its own (open
// label attributes the other side lacks), either carries specific labels on
// them or belongs to one of C's rules. Each branch goes to its owner's
// component when that is a candidate, else to the other one if candidate.
// A permit branch is also given to the other component when it is a
// candidate and one of its own permit rules covers the branch.
// Outputs keep each component's attribute order over the union domains; rule
// origins read `<component> r<original id>`.
PairCorrection correct_pair(const RuleSet& preceding, const RuleSet& following,
                            ConflictPolicy policy = ConflictPolicy::SpecificityThenOrder);

}  // namespace secinterop
