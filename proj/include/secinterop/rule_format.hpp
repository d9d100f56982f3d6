#pragma once

#include <string>
#include <string_view>

#include "secinterop/policy.hpp"

namespace secinterop {

// Rule-file text format:
//
//   # comment
//   component <name> <filtering|alerting>
//   attribute <name> <kind> <domain>        (one line per condition attribute)
//   decision <name> <label,label,...>
//   rules
//   <id> | <v_1> | ... | <v_{n-1}> | <action>
//
// Values are `any`/`All`, a single value, `lo-hi`, or a comma-joined union.
// IPv4 values accept `a.b.c.*` octets and an ignored `/nn` suffix.
// Throws ParseError (with line/column), SchemaError or DomainError.
RuleSet parse_ruleset(std::string_view text);
std::string serialize_ruleset(const RuleSet& rs);

// Key/value mirror of the text format carrying the same fields.
RuleSet parse_ruleset_json(std::string_view text);
std::string serialize_ruleset_json(const RuleSet& rs);

// Dispatches on the first non-space character ('{' means JSON).
RuleSet parse_ruleset_auto(std::string_view text);

}  // namespace secinterop
