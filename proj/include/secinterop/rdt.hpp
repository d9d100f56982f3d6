#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "secinterop/decision_tree.hpp"
#include "secinterop/intra.hpp"
#include "secinterop/oracle.hpp"

namespace secinterop {

// How an incoming rule and the incumbent owner of an overlapped region are
// reconciled.
//   SpecificityThenOrder: the incoming rule takes the region iff it lies
//     strictly inside the owner (inclusively matching forward), even when the
//     actions agree; otherwise the owner keeps it.
//   FirstMatch: the owner always keeps it.
enum class ConflictPolicy { SpecificityThenOrder, FirstMatch };

std::string_view to_string(ConflictPolicy p);
std::optional<ConflictPolicy> conflict_policy_from_string(std::string_view text);
// Reference semantics a tree built under `p` must agree with.
Semantics semantics_of(ConflictPolicy p);

struct RelevantDecisionTree {
    DecisionTree tree;
    ConflictPolicy policy = ConflictPolicy::SpecificityThenOrder;
};

// Inserts the rules in order, decomposing each value set against the sibling
// edges at every level, then normalizes. The result has pairwise disjoint
// siblings and one action edge per action node.
RelevantDecisionTree build_rdt(const RuleSet& rs,
                               ConflictPolicy policy = ConflictPolicy::SpecificityThenOrder);

// build_rdt followed by tree_to_rules.
RuleSet correct(const RuleSet& rs, ConflictPolicy policy = ConflictPolicy::SpecificityThenOrder);

struct RdtReport {
    std::vector<RelevanceViolation> violations;
    std::vector<IntraAnomaly> anomalies;
    std::vector<Counterexample> counterexamples;

    bool ok() const { return violations.empty() && anomalies.empty() && counterexamples.empty(); }
};

RdtReport verify_rdt(const RelevantDecisionTree& rdt, const RuleSet& rs, const DomainSpace& space);

}  // namespace secinterop
