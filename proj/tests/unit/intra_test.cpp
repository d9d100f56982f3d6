#include <gtest/gtest.h>

#include "case_study.hpp"
#include "random_rules.hpp"
#include "secinterop/intra.hpp"
#include "secinterop/oracle.hpp"

using namespace secinterop;
using namespace secinterop::testing;

TEST(DetectIntra, CaseStudyFindings) {
    auto found = detect_intra(load_fixture("fw-case.rules"));
    ASSERT_EQ(found.size(), 5u);
    auto expect = [&](std::size_t i, IntraKind k, int a, int b, Severity s) {
        EXPECT_EQ(found[i].kind, k) << i;
        EXPECT_EQ(found[i].earlier, a) << i;
        EXPECT_EQ(found[i].later, b) << i;
        EXPECT_EQ(found[i].severity, s) << i;
    };
    expect(0, IntraKind::Shadowing, 1, 2, Severity::Error);
    expect(1, IntraKind::Redundancy, 1, 3, Severity::Error);
    expect(2, IntraKind::Shadowing, 1, 4, Severity::Error);
    expect(3, IntraKind::Generalization, 2, 3, Severity::Warning);
    expect(4, IntraKind::Correlation, 3, 4, Severity::Warning);
    EXPECT_EQ(found[3].evidence.kind, RelationKind::InclusivelyMatchingForward);
}

TEST(DetectIntra, RelevantAndEmptySetsAreClean) {
    EXPECT_TRUE(detect_intra(load_fixture("fw-relevant.rules")).empty());
    EXPECT_TRUE(detect_intra(load_fixture("empty.rules")).empty());
}

TEST(DetectIntra, SameClassOverlapsAreNotAnomalies) {
    Schema s = make_schema({AttributeDef::interval("p", AttrKind::Port, IntervalSet::range(0, 99))},
                           {"accept", "deny", "reject"});
    const AttributeDef& a = s.conditions[0];
    RuleSet rs;
    rs.schema = s;
    rs.rules = {{1, {a.parse_value("10-20")}, "deny", ""},
                {2, {a.parse_value("0-50")}, "reject", ""},
                {3, {a.parse_value("15-60")}, "reject", ""}};
    EXPECT_TRUE(detect_intra(rs).empty());
    rs.rules[1].action = "accept";
    auto f = detect_intra(rs);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].kind, IntraKind::Generalization);
    EXPECT_EQ(f[1].kind, IntraKind::Correlation);
    EXPECT_EQ(f[1].evidence.kind, RelationKind::CorrelatedGeneral);
}

TEST(DetectIntra, ParallelMatchesSerial) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        RuleSet rs = random_ruleset(rng);
        EXPECT_EQ(detect_intra(rs), detect_intra_serial(rs));
    }
}

// A shadowed rule never decides a packet under first-match.
TEST(DetectIntra, ShadowedRulesNeverFire) {
    Rng rng(9);
    for (int i = 0; i < 150; ++i) {
        RuleSet rs = random_ruleset(rng, {3, 10, 12});
        DomainSpace space = DomainSpace::for_rules(rs);
        ReferenceEvaluator first(rs, Semantics::FirstMatch);
        for (const IntraAnomaly& a : detect_intra(rs)) {
            if (a.kind != IntraKind::Shadowing && a.kind != IntraKind::Redundancy) continue;
            for (std::size_t k = 0; k < space.size(); ++k) {
                auto d = first(space.at(k));
                ASSERT_FALSE(d && d->rule == a.later);
            }
        }
    }
}

TEST(DetectIntra, TrivialSetsAreClean) {
    Schema s = make_schema({AttributeDef::interval("p", AttrKind::Port, IntervalSet::range(0, 99))},
                           {"accept", "deny"});
    const AttributeDef& a = s.conditions[0];
    RuleSet rs;
    rs.schema = s;
    rs.rules = {{1, {a.parse_value("0-10")}, "accept", ""}};
    EXPECT_TRUE(detect_intra(rs).empty());
    rs.rules.push_back({2, {a.parse_value("11-20")}, "deny", ""});
    EXPECT_TRUE(detect_intra(rs).empty());
}

TEST(DetectIntra, SwappingAPairSwapsShadowingAndGeneralization) {
    RuleSet fw = load_fixture("fw-case.rules");
    RuleSet pair;
    pair.schema = fw.schema;
    pair.rules = {fw.rules[0], fw.rules[1]};
    pair.rules[1].id = 2;
    ASSERT_EQ(detect_intra(pair).at(0).kind, IntraKind::Shadowing);
    std::swap(pair.rules[0], pair.rules[1]);
    pair.rules[0].id = 1;
    pair.rules[1].id = 2;
    ASSERT_EQ(detect_intra(pair).size(), 1u);
    EXPECT_EQ(detect_intra(pair)[0].kind, IntraKind::Generalization);
}
