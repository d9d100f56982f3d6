#include <gtest/gtest.h>

#include "case_study.hpp"
#include "random_rules.hpp"
#include "secinterop/error.hpp"
#include "secinterop/oracle.hpp"
#include "secinterop/rdt.hpp"

using namespace secinterop;
using namespace secinterop::testing;

namespace {

Packet fw_packet(const RuleSet& fw, const std::string& src, const std::string& dst,
                 const std::string& proto = "TCP") {
    return parse_packet("proto=" + proto + ",src=" + src + ",sport=1000,dst=" + dst + ",dport=80",
                        fw.schema);
}

}  // namespace

TEST(Matches, FieldWise) {
    Schema s = make_schema(
        {AttributeDef::interval("src", AttrKind::Ipv4, IntervalSet::range(0, 0xffffffffU)),
         AttributeDef::interval("dst", AttrKind::Ipv4, IntervalSet::range(0, 0xffffffffU))},
        {"accept", "deny"});
    Rule r{1,
           {s.conditions[0].parse_value("192.120.30.*"), s.conditions[1].parse_value("128.160.40.*")},
           "accept",
           ""};
    EXPECT_TRUE(matches(parse_packet("src=192.120.30.5,dst=128.160.40.25", s), r));
    EXPECT_FALSE(matches(parse_packet("src=192.120.31.5,dst=128.160.40.25", s), r));
    Rule any{2, {ValueSet::any(s.conditions[0]), ValueSet::any(s.conditions[1])}, "deny", ""};
    EXPECT_TRUE(matches(parse_packet("src=1.2.3.4,dst=5.6.7.8", s), any));
}

TEST(Evaluate, CaseStudySemantics) {
    RuleSet fw = load_fixture("fw-case.rules");
    Packet p = fw_packet(fw, "140.192.10.30", "129.170.20.40");
    auto owner = evaluate(fw, p, Semantics::OwnerCapture);
    ASSERT_TRUE(owner);
    EXPECT_EQ(owner->action, "accept");
    EXPECT_EQ(owner->rule, 2);
    auto first = evaluate(fw, p, Semantics::FirstMatch);
    ASSERT_TRUE(first);
    EXPECT_EQ(first->action, "deny");
    EXPECT_EQ(first->rule, 1);
    EXPECT_FALSE(evaluate(fw, fw_packet(fw, "10.0.0.1", "129.170.20.40"), Semantics::FirstMatch));
}

TEST(Evaluate, FirstMatchOnRelevantSetsIgnoresOrder) {
    RuleSet fw = load_fixture("fw-relevant.rules");
    RuleSet reversed = fw;
    std::reverse(reversed.rules.begin(), reversed.rules.end());
    DomainSpace space = DomainSpace::for_rules(fw);
    for (std::size_t i = 0; i < space.size(); ++i) {
        Packet p = space.at(i);
        EXPECT_EQ(evaluate(fw, p, Semantics::FirstMatch), evaluate(reversed, p, Semantics::FirstMatch));
    }
}

TEST(DomainSpace, SamplesEndpointsNeighboursAndGaps) {
    Schema s = make_schema({AttributeDef::interval("p", AttrKind::Port, IntervalSet::range(0, 100))},
                           {"accept"});
    DomainSpace space = DomainSpace::covering(s, {{s.conditions[0].parse_value("10-20")}});
    EXPECT_EQ(space.samples()[0], (std::vector<Point>{0, 4, 9, 10, 15, 20, 21, 60, 100}));
    EXPECT_EQ(space.size(), 9u);

    Schema e = make_schema({AttributeDef::enumeration("c", AttrKind::Label, {"x", "y"}, true),
                            AttributeDef::enumeration("proto", AttrKind::Protocol, {"TCP", "UDP"}, false)},
                           {"accept"});
    DomainSpace all = DomainSpace::covering(e, {});
    EXPECT_EQ(all.size(), 6u);
    EXPECT_EQ(all.at(5), (Packet{2, 1}));
}

// Sampling adequacy: a finer grid finds no disagreement the endpoint space missed.
TEST(DomainSpace, EndpointSamplingIsComplete) {
    Rng rng(21);
    for (int i = 0; i < 60; ++i) {
        RuleSet rs = random_ruleset(rng, {2, 8, 12});
        RelevantDecisionTree rdt = build_rdt(rs);
        ASSERT_TRUE(equivalence(rdt.tree, rs, Semantics::OwnerCapture, DomainSpace::for_rules(rs)).empty());
        std::vector<std::vector<Point>> grid;
        for (const AttributeDef& a : rs.schema.conditions) {
            std::vector<Point> pts;
            for (const Interval& iv : a.domain.parts()) {
                for (Point p = iv.lo; p <= iv.hi; ++p) pts.push_back(p);
            }
            grid.push_back(pts);
        }
        EXPECT_TRUE(equivalence(rdt.tree, rs, Semantics::OwnerCapture, DomainSpace(grid)).empty());
    }
}

TEST(Reliability, ReportsUncoveredPackets) {
    RuleSet fw = load_fixture("fw-case.rules");
    DomainSpace space = DomainSpace::for_rules(fw);
    auto gaps = check_reliability(fw, space);
    bool udp_reported = false;
    for (const Packet& p : gaps) udp_reported |= fw.schema.conditions[0].format_point(p[0]) == "UDP";
    EXPECT_TRUE(udp_reported);
    EXPECT_EQ(check_reliability(build_rdt(fw).tree, space), gaps);

    RuleSet empty = load_fixture("empty.rules");
    EXPECT_EQ(check_reliability(empty, DomainSpace::for_rules(empty)).size(), 3u);

    RuleSet total = fw;
    Rule catch_all{5, {}, "deny", ""};
    for (const AttributeDef& a : fw.schema.conditions) catch_all.condition.push_back(ValueSet::any(a));
    total.rules.push_back(catch_all);
    EXPECT_TRUE(check_reliability(total, space).empty());
}

TEST(Equivalence, FlagsACorruptedTree) {
    RuleSet fw = load_fixture("fw-case.rules");
    RelevantDecisionTree rdt = build_rdt(fw);
    DomainSpace space = DomainSpace::for_rules(fw);
    EXPECT_TRUE(equivalence(rdt.tree, fw, Semantics::OwnerCapture, space).empty());

    // Flip the action of the first leaf.
    std::function<NodePtr(const NodePtr&)> flip = [&](const NodePtr& n) -> NodePtr {
        auto copy = std::make_shared<Node>(*n);
        if (!copy->actions.empty()) {
            copy->actions[0].action = copy->actions[0].action == "deny" ? "accept" : "deny";
        } else {
            copy->edges[0].child = flip(copy->edges[0].child);
        }
        return copy;
    };
    DecisionTree bad = rdt.tree;
    bad.root = flip(bad.root);
    auto cex = equivalence(bad, fw, Semantics::OwnerCapture, space);
    ASSERT_FALSE(cex.empty());
    EXPECT_NE(cex[0].tree_action, cex[0].reference_action);
    EXPECT_EQ(cex, equivalence_serial(bad, fw, Semantics::OwnerCapture, space));

    RuleSet empty = load_fixture("empty.rules");
    EXPECT_TRUE(equivalence(build_tree(empty), empty, Semantics::FirstMatch,
                            DomainSpace::for_rules(empty))
                    .empty());
}

TEST(ParsePacket, ValidatesFields) {
    RuleSet ids = load_fixture("ids.rules");
    const Schema& s = ids.schema;
    std::string base = "length=10,proto=UDP,src=140.192.20.1,sport=1,dst=210.160.20.9,dport=2,";
    Packet p = parse_packet(base + "attack_class=Win32", s);
    EXPECT_EQ(format_packet(p, s), base + "attack_class=Win32");
    // Unnamed labels fall into the complement member.
    EXPECT_EQ(parse_packet(base + "attack_class=slammer", s)[6], s.conditions[6].other_point());
    EXPECT_THROW(parse_packet("length=10", s), ParseError);
    EXPECT_THROW(parse_packet(base + "attack_class=Win32,bogus=1", s), SchemaError);
    EXPECT_THROW(parse_packet(base + "attack_class=Win32,length=3", s), ParseError);
}
