#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secinterop/decision_tree.hpp"
#include "secinterop/policy.hpp"

namespace secinterop {

// One concrete point per condition attribute, in schema order.
using Packet = std::vector<Point>;

enum class Semantics { FirstMatch, OwnerCapture };

std::string_view to_string(Semantics s);

struct Decision {
    std::string action;
    int rule = 0;

    friend bool operator==(const Decision&, const Decision&) = default;
};

// True when every packet field lies in the rule's value set.
bool matches(const Packet& p, const Rule& r);

// Reference resolution of a rule set, independent of any tree code.
//   first-match:   lowest-id matching rule.
//   owner-capture: rules are visited in order; a matching rule takes an
//                  unowned packet, and takes an owned one only when it
//                  inclusively matches the current owner (strictly inside it).
class ReferenceEvaluator {
  public:
    ReferenceEvaluator(const RuleSet& rs, Semantics semantics);

    std::optional<Decision> operator()(const Packet& p) const;

  private:
    const RuleSet* rs_;
    Semantics semantics_;
    // captures_[i][j]: rule i captures a packet owned by rule j.
    std::vector<std::vector<char>> captures_;
};

std::optional<Decision> evaluate(const RuleSet& rs, const Packet& p, Semantics semantics);

// Finite sample of a schema's packet space: every interval endpoint used by
// the given regions, each endpoint +-1 inside the domain, the domain bounds,
// and one interior point per remaining gap. Enumerations are listed fully,
// including the reserved member.
class DomainSpace {
  public:
    DomainSpace() = default;
    explicit DomainSpace(std::vector<std::vector<Point>> samples);

    static DomainSpace covering(const Schema& schema,
                                const std::vector<std::vector<ValueSet>>& regions);
    static DomainSpace for_rules(const RuleSet& rs);
    static DomainSpace for_rules(const Schema& schema, const std::vector<const RuleSet*>& sets);
    static DomainSpace for_tree(const DecisionTree& t);

    std::size_t size() const;
    Packet at(std::size_t index) const;
    const std::vector<std::vector<Point>>& samples() const { return samples_; }

  private:
    std::vector<std::vector<Point>> samples_;
};

// Sampled packets no rule (branch) matches, in index order.
std::vector<Packet> check_reliability(const RuleSet& rs, const DomainSpace& space);
std::vector<Packet> check_reliability(const DecisionTree& t, const DomainSpace& space);

struct Counterexample {
    Packet packet;
    std::optional<std::string> tree_action;
    std::optional<std::string> reference_action;

    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

// Packets where the tree's decision differs from the reference resolution of
// `rs` (no-match included), in index order. Parallel over packets.
std::vector<Counterexample> equivalence(const DecisionTree& t, const RuleSet& rs,
                                        Semantics semantics, const DomainSpace& space);
std::vector<Counterexample> equivalence_serial(const DecisionTree& t, const RuleSet& rs,
                                               Semantics semantics, const DomainSpace& space);

// Packets where two trees over one schema decide differently.
std::vector<Counterexample> compare_trees(const DecisionTree& a, const DecisionTree& b,
                                          const DomainSpace& space);

std::string format_packet(const Packet& p, const Schema& schema);

// Parses `attr=value,attr=value,...`; every condition attribute is required.
Packet parse_packet(std::string_view text, const Schema& schema);

}  // namespace secinterop
