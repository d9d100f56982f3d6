#include "secinterop/policy.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "secinterop/error.hpp"

namespace secinterop {

namespace {

constexpr std::array<std::string_view, 5> kDecisionLabels = {"accept", "deny", "discard", "pass",
                                                             "reject"};

}  // namespace

bool is_decision_label(std::string_view action) {
    return std::find(kDecisionLabels.begin(), kDecisionLabels.end(), action) !=
           kDecisionLabels.end();
}

ActionClass action_class(std::string_view action) {
    if (action == "accept" || action == "pass") return ActionClass::Permit;
    if (action == "deny" || action == "reject" || action == "discard") return ActionClass::Block;
    throw SchemaError("unknown decision label '" + std::string(action) + "'");
}

std::string_view to_string(ActionClass c) { return c == ActionClass::Permit ? "permit" : "block"; }

std::string_view to_string(ComponentKind kind) {
    return kind == ComponentKind::Filtering ? "filtering" : "alerting";
}

std::optional<ComponentKind> component_kind_from_string(std::string_view text) {
    if (text == "filtering") return ComponentKind::Filtering;
    if (text == "alerting") return ComponentKind::Alerting;
    return std::nullopt;
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        if (conditions[i].name == name) return i;
    }
    return std::nullopt;
}

const AttributeDef& Schema::at(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw SchemaError("unknown attribute '" + std::string(name) + "'");
    return conditions[*i];
}

void Schema::validate() const {
    if (conditions.empty()) throw SchemaError("schema has no condition attributes");
    std::set<std::string> names;
    for (const AttributeDef& a : conditions) {
        if (!names.insert(a.name).second) {
            throw SchemaError("duplicate attribute '" + a.name + "'");
        }
        if (a.domain.empty()) throw SchemaError("attribute '" + a.name + "' has an empty domain");
    }
    if (names.count(decision.name)) {
        throw SchemaError("duplicate attribute '" + decision.name + "'");
    }
    if (decision.kind != AttrKind::Label || decision.open || decision.labels.empty()) {
        throw SchemaError("decision attribute must be a closed label enumeration");
    }
    for (const std::string& l : decision.labels) {
        if (!is_decision_label(l)) {
            throw SchemaError("decision label '" + l + "' is not one of accept/deny/discard/pass/reject");
        }
    }
}

Schema make_schema(std::vector<AttributeDef> conditions, std::vector<std::string> actions,
                   std::string decision_name) {
    Schema s;
    s.conditions = std::move(conditions);
    s.decision = AttributeDef::enumeration(std::move(decision_name), AttrKind::Label,
                                           std::move(actions), false);
    s.validate();
    return s;
}

void RuleSet::validate() const {
    schema.validate();
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const Rule& r = rules[i];
        std::string where = "rule " + std::to_string(r.id);
        if (r.id != static_cast<int>(i) + 1) {
            throw SchemaError(where + ": rule ids must be 1..t in order");
        }
        if (r.condition.size() != schema.size()) {
            throw SchemaError(where + ": expected " + std::to_string(schema.size()) +
                              " condition values, got " + std::to_string(r.condition.size()));
        }
        for (std::size_t m = 0; m < schema.size(); ++m) {
            const AttributeDef& a = schema.conditions[m];
            const ValueSet& v = r.condition[m];
            if (v.kind() != a.kind) throw SchemaError(where + ": kind mismatch on '" + a.name + "'");
            if (v.empty()) throw DomainError(where + ": empty value for '" + a.name + "'");
            if (!v.points().subset_of(a.domain)) {
                throw DomainError(where + ": value outside the domain of '" + a.name + "'");
            }
        }
        if (!schema.decision.label_point(r.action)) {
            throw DomainError(where + ": action '" + r.action + "' is not in the decision domain");
        }
    }
}

std::vector<std::string> format_rule(const Rule& rule, const Schema& schema) {
    std::vector<std::string> out;
    for (std::size_t m = 0; m < schema.size(); ++m) {
        out.push_back(schema.conditions[m].format_value(rule.condition[m]));
    }
    out.push_back(rule.action);
    return out;
}

}  // namespace secinterop
