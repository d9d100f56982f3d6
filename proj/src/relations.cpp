#include "secinterop/relations.hpp"

#include "secinterop/error.hpp"

namespace secinterop {

std::string_view to_string(FieldRel rel) {
    switch (rel) {
        case FieldRel::Equal:
            return "equal";
        case FieldRel::ProperSubset:
            return "proper-subset";
        case FieldRel::ProperSuperset:
            return "proper-superset";
        case FieldRel::Overlapping:
            return "overlapping";
        case FieldRel::Disjoint:
            return "disjoint";
    }
    return "?";
}

std::string_view to_string(RelationKind kind) {
    switch (kind) {
        case RelationKind::ExactlyMatching:
            return "exactly-matching";
        case RelationKind::InclusivelyMatchingForward:
            return "inclusively-matching-forward";
        case RelationKind::InclusivelyMatchingBackward:
            return "inclusively-matching-backward";
        case RelationKind::Correlated:
            return "correlated";
        case RelationKind::Disjoint:
            return "disjoint";
        case RelationKind::CorrelatedGeneral:
            return "correlated-general";
    }
    return "?";
}

FieldRel field_relation(const ValueSet& a, const ValueSet& b) {
    const IntervalSet& x = a.points();
    const IntervalSet& y = b.points();
    if (x == y) return FieldRel::Equal;
    IntervalSet common = x.intersect(y);
    if (common.empty()) return FieldRel::Disjoint;
    if (common == x) return FieldRel::ProperSubset;
    if (common == y) return FieldRel::ProperSuperset;
    return FieldRel::Overlapping;
}

namespace {

RelationKind classify(const std::vector<FieldRel>& rels) {
    bool all_eq = true;
    bool any_sub = false;
    bool any_sup = false;
    bool any_overlap = false;
    bool any_disjoint = false;
    for (FieldRel r : rels) {
        all_eq = all_eq && r == FieldRel::Equal;
        any_sub = any_sub || r == FieldRel::ProperSubset;
        any_sup = any_sup || r == FieldRel::ProperSuperset;
        any_overlap = any_overlap || r == FieldRel::Overlapping;
        any_disjoint = any_disjoint || r == FieldRel::Disjoint;
    }
    if (all_eq) return RelationKind::ExactlyMatching;
    bool closed = !any_overlap && !any_disjoint;
    if (closed && !any_sup) return RelationKind::InclusivelyMatchingForward;
    if (closed && !any_sub) return RelationKind::InclusivelyMatchingBackward;
    if (closed) return RelationKind::Correlated;
    if (any_disjoint) return RelationKind::Disjoint;
    return RelationKind::CorrelatedGeneral;
}

void check_fit(const Rule& r, const Schema& schema) {
    if (r.condition.size() != schema.size()) {
        throw SchemaError("rule " + std::to_string(r.id) + " does not fit the schema");
    }
    for (std::size_t m = 0; m < schema.size(); ++m) {
        if (r.condition[m].kind() != schema.conditions[m].kind) {
            throw SchemaError("rule " + std::to_string(r.id) + ": kind mismatch on '" +
                              schema.conditions[m].name + "'");
        }
    }
}

}  // namespace

RuleRelation relate(const Rule& left, const Rule& right, const Schema& schema) {
    check_fit(left, schema);
    check_fit(right, schema);
    RuleRelation out;
    std::vector<FieldRel> rels;
    rels.reserve(schema.size());
    for (std::size_t m = 0; m < schema.size(); ++m) {
        FieldRel r = field_relation(left.condition[m], right.condition[m]);
        rels.push_back(r);
        out.evidence.push_back({schema.conditions[m].name, r});
    }
    out.kind = classify(rels);
    return out;
}

RelationKind relation_kind(const Rule& left, const Rule& right) {
    std::vector<FieldRel> rels;
    rels.reserve(left.condition.size());
    for (std::size_t m = 0; m < left.condition.size(); ++m) {
        rels.push_back(field_relation(left.condition[m], right.condition[m]));
    }
    return classify(rels);
}

}  // namespace secinterop
