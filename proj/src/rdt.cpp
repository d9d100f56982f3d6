#include "secinterop/rdt.hpp"

#include <unordered_map>

#include "secinterop/relations.hpp"
#include "text_util.hpp"

namespace secinterop {

std::string_view to_string(ConflictPolicy p) {
    return p == ConflictPolicy::FirstMatch ? "first-match" : "specificity";
}

std::optional<ConflictPolicy> conflict_policy_from_string(std::string_view text) {
    if (detail::iequals(text, "specificity") || detail::iequals(text, "specificity-then-order")) {
        return ConflictPolicy::SpecificityThenOrder;
    }
    if (detail::iequals(text, "first-match")) return ConflictPolicy::FirstMatch;
    return std::nullopt;
}

Semantics semantics_of(ConflictPolicy p) {
    return p == ConflictPolicy::FirstMatch ? Semantics::FirstMatch : Semantics::OwnerCapture;
}

namespace {

class Inserter {
  public:
    Inserter(const RuleSet& rs, ConflictPolicy policy) : rs_(rs), policy_(policy) {
        for (const Rule& r : rs.rules) by_id_[r.id] = &r;
    }

    NodePtr insert(const NodePtr& node, const Rule& r, std::size_t depth) const {
        const Schema& schema = rs_.schema;
        if (depth == schema.size()) return resolve(node, r);

        const AttributeDef& attr = schema.conditions[depth];
        const ValueSet& incoming = r.condition[depth];
        std::vector<Edge> edges;
        IntervalSet covered;
        bool changed = false;
        for (const Edge& e : node->edges) {
            ValueSet common = intersect(e.label, incoming, attr);
            covered = covered.unite(common.points());
            if (common.empty()) {
                edges.push_back(e);
                continue;
            }
            NodePtr child = insert(e.child, r, depth + 1);
            if (child == e.child) {
                edges.push_back(e);
                continue;
            }
            changed = true;
            if (common == e.label) {
                edges.push_back({e.label, child});
            } else {
                edges.push_back({difference(e.label, common, attr), e.child});
                edges.push_back({common, child});
            }
        }
        ValueSet rest = ValueSet::of(incoming.points().subtract(covered), attr);
        if (!rest.empty()) {
            changed = true;
            edges.push_back({rest, tail(r, depth)});
        }
        if (!changed) return node;
        sort_edges(edges);
        auto out = std::make_shared<Node>();
        out->edges = std::move(edges);
        return out;
    }

  private:
    NodePtr resolve(const NodePtr& node, const Rule& r) const {
        if (node->actions.empty()) return leaf(r);
        if (policy_ == ConflictPolicy::FirstMatch) return node;
        const Rule& owner = *by_id_.at(node->actions.front().owner);
        if (relation_kind(r, owner) != RelationKind::InclusivelyMatchingForward) return node;
        return leaf(r);
    }

    static NodePtr leaf(const Rule& r) {
        auto n = std::make_shared<Node>();
        n->actions.push_back({r.action, r.id});
        return n;
    }

    // Subtree below the edge for r's value at `depth`.
    NodePtr tail(const Rule& r, std::size_t depth) const {
        if (depth + 1 == rs_.schema.size()) return leaf(r);
        return make_chain(suffix_edge(Branch{r.condition, r.action, r.id}, rs_.schema, depth + 2));
    }

    const RuleSet& rs_;
    ConflictPolicy policy_;
    std::unordered_map<int, const Rule*> by_id_;
};

}  // namespace

RelevantDecisionTree build_rdt(const RuleSet& rs, ConflictPolicy policy) {
    Inserter ins(rs, policy);
    DecisionTree t{rs.schema, std::make_shared<Node>(), rs.name, rs.kind};
    for (const Rule& r : rs.rules) t.root = ins.insert(t.root, r, 0);
    return {normalize(t), policy};
}

RuleSet correct(const RuleSet& rs, ConflictPolicy policy) {
    return tree_to_rules(build_rdt(rs, policy).tree);
}

RdtReport verify_rdt(const RelevantDecisionTree& rdt, const RuleSet& rs, const DomainSpace& space) {
    RdtReport report;
    report.violations = check_relevant(rdt.tree);
    report.anomalies = detect_intra(tree_to_rules(rdt.tree));
    report.counterexamples = equivalence(rdt.tree, rs, semantics_of(rdt.policy), space);
    return report;
}

}  // namespace secinterop
