#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "secinterop/policy.hpp"

namespace secinterop {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Edge e_{m,w} from a level-m node to its child.
struct Edge {
    ValueSet label;
    NodePtr child;
};

// Edge leaving an action node; `owner` is the id of the original rule whose
// action occupies the region. Its target is the implicit Null leaf.
struct ActionEdge {
    std::string action;
    int owner = 0;

    friend bool operator==(const ActionEdge&, const ActionEdge&) = default;
};

// A node's level is its depth: depth m (0-based) tests condition attribute
// A_{m+1}; depth == schema.size() is the action node.
struct Node {
    std::vector<Edge> edges;
    std::vector<ActionEdge> actions;
};

// Trees are immutable values; subtrees are shared between versions.
struct DecisionTree {
    Schema schema;
    NodePtr root;
    std::string component;
    ComponentKind kind = ComponentKind::Filtering;
};

// Root-to-Null path: one label per condition attribute, then the action.
struct Branch {
    std::vector<ValueSet> labels;
    std::string action;
    int owner = 0;

    friend bool operator==(const Branch&, const Branch&) = default;
};

// Postfix of a branch starting either at the node of `level` or at its
// outgoing edge. Levels are 1-based.
struct BranchSuffix {
    std::size_t level = 1;
    bool from_node = true;
    std::vector<std::string> attributes;
    std::vector<ValueSet> labels;
    std::string action;
    int owner = 0;

    std::string to_string(const Schema& schema) const;
};

// Throws std::out_of_range unless 1 <= level <= n-1.
BranchSuffix suffix_node(const Branch& b, const Schema& schema, std::size_t level);
BranchSuffix suffix_edge(const Branch& b, const Schema& schema, std::size_t level);

// Chain of nodes realizing a suffix that starts at an edge; returns the node
// the suffix's first edge hangs from.
NodePtr make_chain(const BranchSuffix& suffix);

// Naive tree: one branch per rule; a new branch reuses an existing edge only
// when the labels are identical.
DecisionTree build_tree(const RuleSet& rs);

// All branches in depth-first order (siblings ordered by label).
std::vector<Branch> branches(const DecisionTree& t);

struct RelevanceViolation {
    // Labels leading from the root to the offending node.
    std::vector<ValueSet> path;
    std::size_t level = 0;  // 1-based; schema.size()+1 for the action node
    std::string attribute;
    std::size_t first = 0;   // sibling indices
    std::size_t second = 0;
};

// Empty exactly when every pair of sibling edges is disjoint and every action
// node has a single action edge.
std::vector<RelevanceViolation> check_relevant(const DecisionTree& t);

// Merges sibling edges whose subtrees are identical (labels, actions and
// owners) by uniting their labels, bottom-up.
DecisionTree normalize(const DecisionTree& t);

// One rule per branch, ordered by owner id then depth-first order; ids are
// renumbered 1..t.
RuleSet tree_to_rules(const DecisionTree& t);

struct TreeDecision {
    std::string action;
    int owner = 0;

    friend bool operator==(const TreeDecision&, const TreeDecision&) = default;
};

// Action of the matching branch with the lowest owner id; nullopt when no
// branch matches.
std::optional<TreeDecision> evaluate_tree(const DecisionTree& t, const std::vector<Point>& packet);

// Structural equality of subtrees: labels, actions and owners.
bool same_structure(const NodePtr& a, const NodePtr& b);

std::size_t branch_count(const DecisionTree& t);

// One edge per line: `<level> <attribute> <label> -> ...`, indented by depth.
std::string dump_tree(const DecisionTree& t);

// Sorts sibling edges by label.
void sort_edges(std::vector<Edge>& edges);

}  // namespace secinterop
