#include <gtest/gtest.h>

#include "case_study.hpp"
#include "random_rules.hpp"
#include "secinterop/error.hpp"
#include "secinterop/interop.hpp"
#include "secinterop/oracle.hpp"

using namespace secinterop;
using namespace secinterop::testing;

TEST(Schema, UnionKeepsPrecedingOrderThenNewAttributes) {
    RuleSet fw = load_fixture("fw-relevant.rules");
    RuleSet ids = load_fixture("ids.rules");
    Schema u = union_schema(fw.schema, ids.schema);
    std::vector<std::string> names;
    for (const AttributeDef& a : u.conditions) names.push_back(a.name);
    EXPECT_EQ(names, (std::vector<std::string>{"proto", "src", "sport", "dst", "dport", "length",
                                               "attack_class"}));
    EXPECT_EQ(extract_attributes(fw).conditions.size(), 5u);
    EXPECT_EQ(sorted(rows_of(extend_schema(fw, u))), sorted(table_extended_fw()));
}

TEST(Schema, ExtendIsIdentityOnItsOwnSchema) {
    RuleSet fw = load_fixture("fw-case.rules");
    EXPECT_EQ(extend_schema(fw, fw.schema), fw);
}

TEST(Schema, ExtendRejectsMissingAttributesAndNarrowDomains) {
    RuleSet fw = load_fixture("fw-case.rules");
    Schema narrow = fw.schema;
    narrow.conditions.pop_back();
    EXPECT_THROW(extend_schema(fw, narrow), SchemaError);
    Schema small = fw.schema;
    small.conditions[4] = AttributeDef::interval("dport", AttrKind::Port, IntervalSet::range(0, 1023));
    EXPECT_THROW(extend_schema(fw, small), SchemaError);
}

TEST(Schema, UnionRejectsKindClashes) {
    Schema a = make_schema({AttributeDef::interval("x", AttrKind::Port, IntervalSet::range(0, 9))},
                           {"accept", "deny"});
    Schema b = make_schema({AttributeDef::interval("x", AttrKind::Ipv4, IntervalSet::range(0, 9))},
                           {"accept", "reject"});
    EXPECT_THROW(union_schema(a, b), SchemaError);
}

TEST(DetectInter, CaseStudyFindings) {
    AlignedPair p = align(load_fixture("fw-relevant.rules"), load_fixture("ids.rules"));
    EXPECT_TRUE(is_relevant(p.preceding));
    auto found = detect_inter(p.preceding, p.following);
    ASSERT_EQ(found.size(), 2u);
    EXPECT_EQ(found[0].kind, InterKind::Correlation);
    EXPECT_EQ(found[0].preceding, 2);
    EXPECT_EQ(found[0].following, 1);
    EXPECT_EQ(found[1].kind, InterKind::Spuriousness);
    EXPECT_EQ(found[1].preceding, 5);
    EXPECT_EQ(found[1].following, 2);
    EXPECT_FALSE(check_interoperable(p.preceding, p.following).interoperable);
}

TEST(DetectInter, RequiresSharedConditions) {
    EXPECT_THROW(detect_inter(load_fixture("fw-relevant.rules"), load_fixture("ids.rules")),
                 SchemaError);
}

TEST(ClassifyInter, CoveredFollowingRules) {
    Schema s = make_schema({AttributeDef::interval("p", AttrKind::Port, IntervalSet::range(0, 99))},
                           {"accept", "deny", "reject"});
    const AttributeDef& a = s.conditions[0];
    auto rule = [&](int id, const char* v, const char* act) { return Rule{id, {a.parse_value(v)}, act, ""}; };
    auto kind = [&](const Rule& p, const Rule& f) { return classify_inter(p, f, s); };
    EXPECT_EQ(kind(rule(1, "0-50", "deny"), rule(1, "10-20", "accept"))->kind, InterKind::Shadowing);
    EXPECT_EQ(kind(rule(1, "0-50", "accept"), rule(1, "10-20", "reject"))->kind, InterKind::Spuriousness);
    auto red = kind(rule(1, "0-50", "deny"), rule(1, "10-20", "reject"));
    EXPECT_EQ(red->kind, InterKind::Redundancy);
    EXPECT_EQ(red->severity, Severity::Warning);
    EXPECT_FALSE(kind(rule(1, "0-50", "accept"), rule(1, "10-20", "accept")));
    EXPECT_EQ(kind(rule(1, "0-50", "accept"), rule(1, "40-60", "reject"))->kind, InterKind::Correlation);
    // The following rule is wider: not covered, so the subset kinds do not apply.
    EXPECT_FALSE(kind(rule(1, "10-20", "deny"), rule(1, "0-50", "deny")));
    EXPECT_FALSE(kind(rule(1, "0-9", "deny"), rule(1, "10-20", "accept")));
}

TEST(DetectInter, ParallelMatchesSerial) {
    Rng rng(17);
    for (int i = 0; i < 150; ++i) {
        RandomPair rp = random_pair(rng);
        AlignedPair p = align(rp.preceding, rp.following);
        EXPECT_EQ(detect_inter(p.preceding, p.following), detect_inter_serial(p.preceding, p.following));
    }
}

TEST(Topology, ParsesAndChecksPositioning) {
    Topology t = parse_topology(read_text(fixture_path("case.topo")));
    ASSERT_EQ(t.components.size(), 2u);
    ASSERT_NE(t.find("IDS"), nullptr);
    EXPECT_EQ(t.find("IDS")->file, "ids.rules");
    EXPECT_EQ(t.find("NOPE"), nullptr);
    EXPECT_TRUE(check_positioning(t).empty());

    Topology bad = parse_topology(
        "component A alerting\ncomponent F filtering\n"
        "path p: A F\n"
        "path q: F A F2:filtering\n");
    auto v = check_positioning(bad);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0].path, "p");
    EXPECT_EQ(v[0].alerting_pos, 0u);
    EXPECT_EQ(v[0].filtering_pos, 1u);
    EXPECT_EQ(v[1].path, "q");
    EXPECT_EQ(v[1].filtering, "F2");
}

TEST(Topology, RejectsMalformedInput) {
    EXPECT_THROW(parse_topology("path p:\n"), Error);
    EXPECT_THROW(parse_topology("component A alerting\npath p: A:filtering\n"), SchemaError);
    EXPECT_THROW(parse_topology("component A router\n"), ParseError);
    EXPECT_THROW(parse_topology("path p: X\n"), Error);
    Topology empty;
    empty.paths.push_back({"e", {}});
    EXPECT_THROW(check_positioning(empty), SchemaError);
}
