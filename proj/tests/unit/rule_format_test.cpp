#include <gtest/gtest.h>

#include "case_study.hpp"
#include "secinterop/error.hpp"
#include "secinterop/rule_format.hpp"

using namespace secinterop;
using namespace secinterop::testing;

TEST(RuleFormat, ParsesTheFirewallCaseStudy) {
    RuleSet fw = load_fixture("fw-case.rules");
    EXPECT_EQ(fw.name, "FW");
    EXPECT_EQ(fw.kind, ComponentKind::Filtering);
    ASSERT_EQ(fw.rules.size(), 4u);
    ASSERT_EQ(fw.schema.size(), 5u);
    const Rule& r1 = fw.rules[0];
    EXPECT_EQ(r1.action, "deny");
    EXPECT_EQ(fw.schema.conditions[1].format_value(r1.condition[1]),
              "140.192.10.1-140.192.10.100");
    EXPECT_TRUE(r1.condition[2].is_wildcard());
}

TEST(RuleFormat, ParsesTheIdsWithItsOwnAttributes) {
    RuleSet ids = load_fixture("ids.rules");
    EXPECT_EQ(ids.kind, ComponentKind::Alerting);
    ASSERT_EQ(ids.schema.size(), 7u);
    EXPECT_EQ(ids.schema.conditions[0].name, "length");
    EXPECT_EQ(ids.schema.conditions[6].kind, AttrKind::Label);
    EXPECT_EQ(ids.schema.conditions[0].format_value(ids.rules[2].condition[0]), "10");
}

TEST(RuleFormat, EmptyRuleListKeepsTheSchema) {
    RuleSet rs = load_fixture("empty.rules");
    EXPECT_TRUE(rs.rules.empty());
    EXPECT_EQ(rs.schema.size(), 1u);
}

TEST(RuleFormat, TextAndJsonRoundTrip) {
    for (const char* name : {"fw-case.rules", "fw-relevant.rules", "ids.rules", "empty.rules"}) {
        RuleSet rs = load_fixture(name);
        std::string text = serialize_ruleset(rs);
        EXPECT_EQ(parse_ruleset(text), rs) << name;
        EXPECT_EQ(serialize_ruleset(parse_ruleset(text)), text) << name;
        std::string json = serialize_ruleset_json(rs);
        EXPECT_EQ(parse_ruleset_json(json), rs) << name;
        EXPECT_EQ(parse_ruleset_auto(json), rs) << name;
    }
}

TEST(RuleFormat, OpenLabelsSeenInRulesJoinTheDomain) {
    RuleSet rs = parse_ruleset(
        "component S alerting\n"
        "attribute cls label-enum worm\n"
        "decision action accept,reject\n"
        "rules\n"
        "1 | scan | reject\n");
    EXPECT_EQ(rs.schema.conditions[0].labels, (std::vector<std::string>{"scan", "worm"}));
}

namespace {

ParseError parse_error(const std::string& text) {
    try {
        parse_ruleset(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no ParseError for:\n" << text;
    return ParseError("none");
}

const char* kHeader =
    "component F filtering\n"
    "attribute dport port-range 0-65535\n"
    "decision action accept,deny\n"
    "rules\n";

}  // namespace

TEST(RuleFormat, ErrorsCarryLineAndColumn) {
    ParseError e = parse_error(std::string(kHeader) + "1 | 80 | accept\n2 | 8x | deny\n");
    EXPECT_EQ(e.line(), 6u);
    EXPECT_EQ(e.column(), 5u);

    e = parse_error(std::string(kHeader) + "1 | 80 \n");
    EXPECT_EQ(e.line(), 5u);

    e = parse_error("component F firewall\n");
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 13u);
}

TEST(RuleFormat, RejectsBadStructure) {
    EXPECT_THROW(parse_ruleset(std::string(kHeader) + "2 | 80 | accept\n"), ParseError);
    EXPECT_THROW(parse_ruleset(std::string(kHeader) + "1 | 80 | allow\n"), DomainError);
    EXPECT_THROW(parse_ruleset(std::string(kHeader) + "1 | 70000 | accept\n"), DomainError);
    EXPECT_THROW(parse_ruleset("component F filtering\nrules\n"), SchemaError);
    EXPECT_THROW(parse_ruleset("component F filtering\n"
                               "attribute a port-range 0-9\nattribute a port-range 0-9\n"
                               "decision action accept\nrules\n"),
                 SchemaError);
    EXPECT_THROW(parse_ruleset("component F filtering\n"
                               "attribute a port-range 0-9\ndecision action allow\nrules\n"),
                 SchemaError);
    EXPECT_THROW(parse_ruleset_json("{\"component\": 1"), ParseError);
}

TEST(RuleFormat, JsonRejectsUnknownAttributes) {
    RuleSet rs = load_fixture("fw-case.rules");
    std::string json = serialize_ruleset_json(rs);
    auto at = json.find("\"proto\": \"TCP\"");
    ASSERT_NE(at, std::string::npos);
    json.replace(at, 7, "\"proto2\"");
    EXPECT_THROW(parse_ruleset_json(json), SchemaError);
}
