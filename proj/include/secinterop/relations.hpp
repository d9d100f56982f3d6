#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "secinterop/policy.hpp"

namespace secinterop {

enum class FieldRel { Equal, ProperSubset, ProperSuperset, Overlapping, Disjoint };

struct FieldRelation {
    std::string attribute;
    FieldRel rel = FieldRel::Equal;

    friend bool operator==(const FieldRelation&, const FieldRelation&) = default;
};

enum class RelationKind {
    ExactlyMatching,
    // every field of the left rule is a subset of the right rule's field
    InclusivelyMatchingForward,
    InclusivelyMatchingBackward,
    Correlated,
    Disjoint,
    // partial overlap on some field; treated as correlated by the analyses
    CorrelatedGeneral,
};

struct RuleRelation {
    RelationKind kind = RelationKind::Disjoint;
    std::vector<FieldRelation> evidence;

    friend bool operator==(const RuleRelation&, const RuleRelation&) = default;
};

std::string_view to_string(FieldRel rel);
std::string_view to_string(RelationKind kind);

FieldRel field_relation(const ValueSet& a, const ValueSet& b);

// Classifies two rules over the condition attributes of `schema`.
// Throws SchemaError when either rule does not fit the schema.
RuleRelation relate(const Rule& left, const Rule& right, const Schema& schema);

// Kind only, without building evidence.
RelationKind relation_kind(const Rule& left, const Rule& right);

inline bool is_correlated(RelationKind k) {
    return k == RelationKind::Correlated || k == RelationKind::CorrelatedGeneral;
}

// left ⊆ right, including equality.
inline bool is_covered_by(RelationKind left_vs_right) {
    return left_vs_right == RelationKind::ExactlyMatching ||
           left_vs_right == RelationKind::InclusivelyMatchingForward;
}

}  // namespace secinterop
