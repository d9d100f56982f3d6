#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "secinterop/interop.hpp"
#include "secinterop/intra.hpp"

namespace secinterop {

enum class Format { Text, Json };

std::string sha256_hex(std::string_view data);

struct InputDigest {
    std::string path;
    std::string sha256;
};

struct RuleRef {
    std::string component;
    int rule = 0;  // 0 when the finding is about a whole component
};

struct Finding {
    std::string scope;  // e.g. "FW" or "path web: FW -> IDS"
    std::string kind;
    std::string severity;
    RuleRef first;
    RuleRef second;
    std::string relation;  // empty when not applicable
    std::vector<FieldRelation> evidence;
};

Finding make_finding(const IntraAnomaly& a, const RuleSet& rs);
Finding make_finding(const InterAnomaly& a, const RuleSet& preceding, const RuleSet& following,
                     std::string scope);
Finding make_finding(const PositioningViolation& v);

// Everything a command reports. Both renderings are generated from this one
// value, so they always carry the same findings.
struct Report {
    std::string command;
    std::vector<InputDigest> inputs;
    std::vector<Finding> findings;
    std::vector<std::pair<std::string, std::string>> verdicts;
    std::vector<RuleSet> rules;
    std::vector<std::pair<std::string, std::string>> trees;  // component, dump
    std::vector<std::string> notes;

    void verdict(std::string key, std::string value);
    std::string render(Format format) const;
};

std::string_view tool_version();

}  // namespace secinterop
