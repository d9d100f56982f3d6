#include "secinterop/intra.hpp"

#include <algorithm>
#include <tuple>

namespace secinterop {

std::string_view to_string(IntraKind kind) {
    switch (kind) {
        case IntraKind::Shadowing:
            return "shadowing";
        case IntraKind::Generalization:
            return "generalization";
        case IntraKind::Redundancy:
            return "redundancy";
        case IntraKind::Correlation:
            return "correlation";
    }
    return "?";
}

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

std::optional<IntraAnomaly> classify_intra(const Rule& earlier, const Rule& later,
                                           const Schema& schema) {
    RelationKind k = relation_kind(earlier, later);
    if (k == RelationKind::Disjoint) return std::nullopt;
    bool same_class = action_class(earlier.action) == action_class(later.action);

    std::optional<IntraKind> kind;
    if (k == RelationKind::ExactlyMatching || k == RelationKind::InclusivelyMatchingBackward) {
        kind = same_class ? IntraKind::Redundancy : IntraKind::Shadowing;
    } else if (k == RelationKind::InclusivelyMatchingForward && !same_class) {
        kind = IntraKind::Generalization;
    } else if (is_correlated(k) && !same_class) {
        kind = IntraKind::Correlation;
    }
    if (!kind) return std::nullopt;

    IntraAnomaly a;
    a.kind = *kind;
    a.earlier = earlier.id;
    a.later = later.id;
    a.evidence = relate(earlier, later, schema);
    a.severity = (*kind == IntraKind::Shadowing || *kind == IntraKind::Redundancy)
                     ? Severity::Error
                     : Severity::Warning;
    return a;
}

namespace {

void sort_findings(std::vector<IntraAnomaly>& v) {
    std::sort(v.begin(), v.end(), [](const IntraAnomaly& a, const IntraAnomaly& b) {
        return std::tie(a.earlier, a.later, a.kind) < std::tie(b.earlier, b.later, b.kind);
    });
}

}  // namespace

std::vector<IntraAnomaly> detect_intra_serial(const RuleSet& rs) {
    std::vector<IntraAnomaly> out;
    const auto& rules = rs.rules;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = i + 1; j < rules.size(); ++j) {
            if (auto a = classify_intra(rules[i], rules[j], rs.schema)) out.push_back(*a);
        }
    }
    sort_findings(out);
    return out;
}

std::vector<IntraAnomaly> detect_intra(const RuleSet& rs) {
    const auto& rules = rs.rules;
    const long n = static_cast<long>(rules.size());
    std::vector<std::vector<IntraAnomaly>> per_row(rules.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            if (auto a = classify_intra(rules[i], rules[j], rs.schema)) per_row[i].push_back(*a);
        }
    }
    std::vector<IntraAnomaly> out;
    for (auto& row : per_row) out.insert(out.end(), row.begin(), row.end());
    sort_findings(out);
    return out;
}

}  // namespace secinterop
