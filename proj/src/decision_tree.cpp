#include "secinterop/decision_tree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace secinterop {

void sort_edges(std::vector<Edge>& edges) {
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& a, const Edge& b) { return label_less(a.label, b.label); });
}

namespace {

BranchSuffix make_suffix(const Branch& b, const Schema& schema, std::size_t level, bool from_node) {
    if (level < 1 || level > schema.size()) {
        throw std::out_of_range("suffix level " + std::to_string(level) + " outside 1.." +
                                std::to_string(schema.size()));
    }
    BranchSuffix s;
    s.level = level;
    s.from_node = from_node;
    for (std::size_t m = level - 1; m < schema.size(); ++m) {
        s.attributes.push_back(schema.conditions[m].name);
        s.labels.push_back(b.labels[m]);
    }
    s.action = b.action;
    s.owner = b.owner;
    return s;
}

Branch branch_of(const Rule& r) { return Branch{r.condition, r.action, r.id}; }

NodePtr insert_naive(const NodePtr& node, const Rule& r, const Schema& schema, std::size_t depth) {
    auto out = std::make_shared<Node>(*node);
    if (depth == schema.size()) {
        out->actions.push_back({r.action, r.id});
        return out;
    }
    for (Edge& e : out->edges) {
        if (e.label == r.condition[depth]) {
            e.child = insert_naive(e.child, r, schema, depth + 1);
            return out;
        }
    }
    NodePtr rest;
    if (depth + 1 == schema.size()) {
        auto leaf = std::make_shared<Node>();
        leaf->actions.push_back({r.action, r.id});
        rest = leaf;
    } else {
        rest = make_chain(suffix_edge(branch_of(r), schema, depth + 2));
    }
    out->edges.push_back({r.condition[depth], rest});
    sort_edges(out->edges);
    return out;
}

void collect(const NodePtr& node, std::vector<ValueSet>& path, std::vector<Branch>& out) {
    for (const ActionEdge& a : node->actions) out.push_back(Branch{path, a.action, a.owner});
    for (const Edge& e : node->edges) {
        path.push_back(e.label);
        collect(e.child, path, out);
        path.pop_back();
    }
}

void find_violations(const NodePtr& node, const Schema& schema, std::vector<ValueSet>& path,
                     std::vector<RelevanceViolation>& out) {
    std::size_t depth = path.size();
    if (depth == schema.size()) {
        for (std::size_t i = 0; i < node->actions.size(); ++i) {
            for (std::size_t j = i + 1; j < node->actions.size(); ++j) {
                out.push_back({path, depth + 1, schema.decision.name, i, j});
            }
        }
        return;
    }
    const auto& edges = node->edges;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (!edges[i].label.points().disjoint_with(edges[j].label.points())) {
                out.push_back({path, depth + 1, schema.conditions[depth].name, i, j});
            }
        }
    }
    for (const Edge& e : edges) {
        path.push_back(e.label);
        find_violations(e.child, schema, path, out);
        path.pop_back();
    }
}

NodePtr normalize_node(const NodePtr& node, const Schema& schema, std::size_t depth) {
    if (depth == schema.size()) return node;
    const AttributeDef& attr = schema.conditions[depth];
    std::vector<Edge> merged;
    for (const Edge& e : node->edges) {
        NodePtr child = normalize_node(e.child, schema, depth + 1);
        auto same = std::find_if(merged.begin(), merged.end(), [&](const Edge& m) {
            return same_structure(m.child, child);
        });
        if (same == merged.end()) {
            merged.push_back({e.label, child});
        } else {
            same->label = unite(same->label, e.label, attr);
        }
    }
    sort_edges(merged);
    auto out = std::make_shared<Node>();
    out->edges = std::move(merged);
    return out;
}

void evaluate_node(const NodePtr& node, const std::vector<Point>& packet, std::size_t depth,
                   std::optional<TreeDecision>& best) {
    for (const ActionEdge& a : node->actions) {
        if (!best || a.owner < best->owner) best = TreeDecision{a.action, a.owner};
    }
    if (depth >= packet.size()) return;
    for (const Edge& e : node->edges) {
        if (e.label.contains(packet[depth])) evaluate_node(e.child, packet, depth + 1, best);
    }
}

void dump_node(const NodePtr& node, const Schema& schema, std::size_t depth, std::ostream& os) {
    std::string indent(depth * 2, ' ');
    for (const ActionEdge& a : node->actions) {
        os << indent << depth + 1 << ' ' << schema.decision.name << ' ' << a.action << " [r"
           << a.owner << "] -> Null\n";
    }
    for (const Edge& e : node->edges) {
        const AttributeDef& attr = schema.conditions[depth];
        os << indent << depth + 1 << ' ' << attr.name << ' ' << attr.format_value(e.label)
           << " -> " << (depth + 1 < schema.size() ? schema.conditions[depth + 1].name
                                                    : schema.decision.name)
           << '\n';
        dump_node(e.child, schema, depth + 1, os);
    }
}

}  // namespace

std::string BranchSuffix::to_string(const Schema& schema) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const AttributeDef& attr = schema.conditions[level - 1 + i];
        if (i > 0 || from_node) os << attr.name << " - ";
        os << attr.format_value(labels[i]) << " - ";
    }
    os << schema.decision.name << " - " << action << " - Null";
    return os.str();
}

BranchSuffix suffix_node(const Branch& b, const Schema& schema, std::size_t level) {
    return make_suffix(b, schema, level, true);
}

BranchSuffix suffix_edge(const Branch& b, const Schema& schema, std::size_t level) {
    return make_suffix(b, schema, level, false);
}

NodePtr make_chain(const BranchSuffix& suffix) {
    auto leaf = std::make_shared<Node>();
    leaf->actions.push_back({suffix.action, suffix.owner});
    NodePtr cur = leaf;
    for (auto it = suffix.labels.rbegin(); it != suffix.labels.rend(); ++it) {
        auto n = std::make_shared<Node>();
        n->edges.push_back({*it, cur});
        cur = n;
    }
    return cur;
}

DecisionTree build_tree(const RuleSet& rs) {
    DecisionTree t{rs.schema, std::make_shared<Node>(), rs.name, rs.kind};
    for (const Rule& r : rs.rules) t.root = insert_naive(t.root, r, rs.schema, 0);
    return t;
}

std::vector<Branch> branches(const DecisionTree& t) {
    std::vector<Branch> out;
    std::vector<ValueSet> path;
    collect(t.root, path, out);
    return out;
}

std::size_t branch_count(const DecisionTree& t) { return branches(t).size(); }

std::vector<RelevanceViolation> check_relevant(const DecisionTree& t) {
    std::vector<RelevanceViolation> out;
    std::vector<ValueSet> path;
    find_violations(t.root, t.schema, path, out);
    return out;
}

bool same_structure(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (a->actions != b->actions || a->edges.size() != b->edges.size()) return false;
    for (std::size_t i = 0; i < a->edges.size(); ++i) {
        if (!(a->edges[i].label == b->edges[i].label)) return false;
        if (!same_structure(a->edges[i].child, b->edges[i].child)) return false;
    }
    return true;
}

DecisionTree normalize(const DecisionTree& t) {
    DecisionTree out = t;
    out.root = normalize_node(t.root, t.schema, 0);
    return out;
}

RuleSet tree_to_rules(const DecisionTree& t) {
    std::vector<Branch> bs = branches(t);
    std::stable_sort(bs.begin(), bs.end(),
                     [](const Branch& a, const Branch& b) { return a.owner < b.owner; });
    RuleSet rs;
    rs.schema = t.schema;
    rs.kind = t.kind;
    rs.name = t.component;
    int id = 0;
    for (Branch& b : bs) {
        rs.rules.push_back(Rule{++id, std::move(b.labels), std::move(b.action), t.component});
    }
    return rs;
}

std::optional<TreeDecision> evaluate_tree(const DecisionTree& t, const std::vector<Point>& packet) {
    std::optional<TreeDecision> best;
    evaluate_node(t.root, packet, 0, best);
    return best;
}

std::string dump_tree(const DecisionTree& t) {
    std::ostringstream os;
    os << "tree " << t.component << " (" << branch_count(t) << " branches)\n";
    dump_node(t.root, t.schema, 0, os);
    return os.str();
}

}  // namespace secinterop
