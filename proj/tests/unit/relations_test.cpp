#include <gtest/gtest.h>

#include "case_study.hpp"
#include "random_rules.hpp"
#include "secinterop/error.hpp"
#include "secinterop/oracle.hpp"
#include "secinterop/relations.hpp"

using namespace secinterop;
using namespace secinterop::testing;

namespace {

const Rule& rule(const RuleSet& rs, int id) { return rs.rules.at(static_cast<std::size_t>(id - 1)); }

}  // namespace

TEST(Relate, CaseStudyPairs) {
    RuleSet fw = load_fixture("fw-case.rules");
    RuleRelation r21 = relate(rule(fw, 2), rule(fw, 1), fw.schema);
    EXPECT_EQ(r21.kind, RelationKind::InclusivelyMatchingForward);
    ASSERT_EQ(r21.evidence.size(), 5u);
    EXPECT_EQ(r21.evidence[0].rel, FieldRel::Equal);
    EXPECT_EQ(r21.evidence[1], (FieldRelation{"src", FieldRel::ProperSubset}));
    EXPECT_EQ(r21.evidence[3], (FieldRelation{"dst", FieldRel::ProperSubset}));

    EXPECT_EQ(relate(rule(fw, 1), rule(fw, 2), fw.schema).kind,
              RelationKind::InclusivelyMatchingBackward);
    EXPECT_EQ(relate(rule(fw, 3), rule(fw, 4), fw.schema).kind, RelationKind::Correlated);
    EXPECT_EQ(relate(rule(fw, 1), rule(fw, 1), fw.schema).kind, RelationKind::ExactlyMatching);
}

TEST(Relate, PartialOverlapIsCorrelatedGeneral) {
    Schema s = make_schema({AttributeDef::interval("p", AttrKind::Port, IntervalSet::range(0, 99))},
                           {"accept", "deny"});
    const AttributeDef& a = s.conditions[0];
    Rule x{1, {a.parse_value("10-20")}, "accept", ""};
    Rule y{2, {a.parse_value("15-30")}, "deny", ""};
    Rule z{3, {a.parse_value("40-50")}, "deny", ""};
    EXPECT_EQ(relate(x, y, s).kind, RelationKind::CorrelatedGeneral);
    EXPECT_EQ(relate(x, y, s).evidence[0].rel, FieldRel::Overlapping);
    EXPECT_EQ(relate(x, z, s).kind, RelationKind::Disjoint);
}

TEST(Relate, MisfitRulesAreSchemaErrors) {
    RuleSet fw = load_fixture("fw-case.rules");
    Rule shortened = rule(fw, 1);
    shortened.condition.pop_back();
    EXPECT_THROW(relate(shortened, rule(fw, 2), fw.schema), SchemaError);
}

// Oracle check: the relation kind agrees with packet-level containment.
TEST(Relate, KindsMatchPacketSemantics) {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        RuleSet rs = random_ruleset(rng, {3, 2, 12});
        if (rs.rules.size() < 2) continue;
        const Rule& a = rs.rules[0];
        const Rule& b = rs.rules[1];
        DomainSpace space = DomainSpace::for_rules(rs);
        bool a_in_b = true, b_in_a = true, meet = false;
        for (std::size_t k = 0; k < space.size(); ++k) {
            Packet p = space.at(k);
            bool ma = matches(p, a), mb = matches(p, b);
            if (ma && !mb) a_in_b = false;
            if (mb && !ma) b_in_a = false;
            if (ma && mb) meet = true;
        }
        RelationKind k = relation_kind(a, b);
        EXPECT_EQ(k == RelationKind::Disjoint, !meet);
        EXPECT_EQ(k == RelationKind::ExactlyMatching, a_in_b && b_in_a);
        EXPECT_EQ(k == RelationKind::InclusivelyMatchingForward, a_in_b && !b_in_a);
        EXPECT_EQ(k == RelationKind::InclusivelyMatchingBackward, b_in_a && !a_in_b);
        EXPECT_EQ(relate(a, b, rs.schema).kind, k);
    }
}
