#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secinterop/value_set.hpp"

namespace secinterop {

enum class ActionClass { Permit, Block };

// accept/pass permit; deny/reject/discard block. Throws SchemaError otherwise.
ActionClass action_class(std::string_view action);
bool is_decision_label(std::string_view action);
std::string_view to_string(ActionClass c);

enum class ComponentKind { Filtering, Alerting };

std::string_view to_string(ComponentKind kind);
std::optional<ComponentKind> component_kind_from_string(std::string_view text);

// Condition attributes A_1..A_{n-1} in tree-level order plus the decision
// attribute A_n.
struct Schema {
    std::vector<AttributeDef> conditions;
    AttributeDef decision;

    std::optional<std::size_t> index_of(std::string_view name) const;
    const AttributeDef& at(std::string_view name) const;
    std::size_t size() const { return conditions.size(); }

    // Throws SchemaError on duplicate names, empty condition list, or a
    // decision domain outside {accept, deny, discard, pass, reject}.
    void validate() const;

    friend bool operator==(const Schema&, const Schema&) = default;
};

Schema make_schema(std::vector<AttributeDef> conditions, std::vector<std::string> actions,
                   std::string decision_name = "action");

struct Rule {
    // Original 1-based position.
    int id = 0;
    // One value set per schema condition attribute, in schema order.
    std::vector<ValueSet> condition;
    std::string action;
    std::string origin;

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct RuleSet {
    Schema schema;
    std::vector<Rule> rules;
    ComponentKind kind = ComponentKind::Filtering;
    std::string name;

    // Checks the Rule/RuleSet invariants; throws SchemaError / DomainError.
    void validate() const;

    friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

// Value sets of `rule` formatted per attribute, decision last.
std::vector<std::string> format_rule(const Rule& rule, const Schema& schema);

}  // namespace secinterop
