#include "secinterop/correction.hpp"

#include <algorithm>

#include "secinterop/error.hpp"

namespace secinterop {

GlobalRuleSet integrate(const RuleSet& preceding, const RuleSet& following) {
    if (!(preceding.schema == following.schema)) {
        throw SchemaError("cannot integrate '" + preceding.name + "' and '" + following.name +
                          "': schemas differ; extend them first");
    }
    GlobalRuleSet g;
    g.rules.schema = preceding.schema;
    g.rules.kind = preceding.kind;
    g.rules.name = preceding.name + "+" + following.name;
    int id = 0;
    for (const RuleSet* rs : {&preceding, &following}) {
        for (const Rule& r : rs->rules) {
            Rule copy = r;
            copy.id = ++id;
            g.rules.rules.push_back(std::move(copy));
            g.provenance.push_back({rs->name, rs->kind, r.id});
        }
    }
    return g;
}

RelevantDecisionTree correct_global(const GlobalRuleSet& g, ConflictPolicy policy) {
    return build_rdt(g.rules, policy);
}

namespace {

std::vector<bool> kept_mask(const Schema& schema, const std::vector<std::string>& attributes) {
    if (attributes.empty()) throw SchemaError("projection keeps no attribute");
    std::vector<bool> kept(schema.size(), false);
    for (const std::string& name : attributes) {
        auto idx = schema.index_of(name);
        if (!idx) throw SchemaError("projection attribute '" + name + "' is not in the tree");
        kept[*idx] = true;
    }
    return kept;
}

class Pruner {
  public:
    Pruner(const Schema& schema, std::vector<bool> kept,
           const std::function<bool(const Branch&)>& keep)
        : schema_(schema), kept_(std::move(kept)), keep_(keep) {}

    // Null when nothing below `node` survives. A dropped level is replaced
    // by the child of its wildcard edge.
    NodePtr prune(const NodePtr& node, std::vector<ValueSet>& path) const {
        std::size_t depth = path.size();
        if (depth == schema_.size()) {
            for (const ActionEdge& a : node->actions) {
                if (keep_(Branch{path, a.action, a.owner})) return node;
            }
            return nullptr;
        }
        if (!kept_[depth]) {
            for (const Edge& e : node->edges) {
                if (!e.label.is_wildcard()) continue;
                path.push_back(e.label);
                NodePtr c = prune(e.child, path);
                path.pop_back();
                return c;
            }
            return nullptr;
        }
        auto out = std::make_shared<Node>();
        bool changed = false;
        for (const Edge& e : node->edges) {
            path.push_back(e.label);
            NodePtr c = prune(e.child, path);
            path.pop_back();
            if (c) out->edges.push_back({e.label, c});
            if (c != e.child) changed = true;
        }
        if (out->edges.empty()) return nullptr;
        if (!changed) return node;
        return out;
    }

  private:
    const Schema& schema_;
    std::vector<bool> kept_;
    const std::function<bool(const Branch&)>& keep_;
};

}  // namespace

RelevantDecisionTree project_if(const RelevantDecisionTree& rdt,
                                const std::vector<std::string>& attributes,
                                const std::function<bool(const Branch&)>& keep) {
    const Schema& full = rdt.tree.schema;
    std::vector<bool> kept = kept_mask(full, attributes);
    RelevantDecisionTree out = rdt;
    out.tree.schema.conditions.clear();
    for (std::size_t m = 0; m < full.size(); ++m) {
        if (kept[m]) out.tree.schema.conditions.push_back(full.conditions[m]);
    }
    std::vector<ValueSet> path;
    NodePtr root = Pruner(full, std::move(kept), keep).prune(rdt.tree.root, path);
    out.tree.root = root ? root : std::make_shared<Node>();
    return out;
}

RelevantDecisionTree project(const RelevantDecisionTree& rdt, const ProjectionSpec& spec) {
    const Schema& full = rdt.tree.schema;
    std::vector<std::size_t> designated;
    for (const std::string& name : spec.designated) {
        auto idx = full.index_of(name);
        if (!idx) throw SchemaError("designated attribute '" + name + "' is not in the tree");
        designated.push_back(*idx);
    }
    std::function<bool(const Branch&)> keep = [&](const Branch& b) {
        if (spec.mode == ProjectionMode::DropSpecific) return true;
        if (spec.owners.count(b.owner)) return true;
        return std::all_of(designated.begin(), designated.end(), [&](std::size_t m) {
            return is_specific(b.labels[m], full.conditions[m]);
        });
    };
    return project_if(rdt, spec.attributes, keep);
}

namespace {

struct Side {
    const RuleSet* input = nullptr;     // as given
    const RuleSet* extended = nullptr;  // over the union schema
    std::vector<bool> has;              // per union attribute
    std::vector<std::size_t> own_labels;
    int first_id = 0;                   // global id range [first_id, last_id]
    int last_id = -1;

    bool owns(int id) const { return id >= first_id && id <= last_id; }
};

Side make_side(const RuleSet& input, const RuleSet& extended, const Schema& other,
               const Schema& u, int first_id) {
    Side s;
    s.input = &input;
    s.extended = &extended;
    for (std::size_t m = 0; m < u.size(); ++m) {
        const AttributeDef& a = u.conditions[m];
        bool has = input.schema.index_of(a.name).has_value();
        s.has.push_back(has);
        if (has && a.kind == AttrKind::Label && a.open && !other.index_of(a.name)) {
            s.own_labels.push_back(m);
        }
    }
    s.first_id = first_id;
    s.last_id = first_id + static_cast<int>(input.rules.size()) - 1;
    return s;
}

bool candidate(const Side& s, const Branch& b, const Schema& u) {
    for (std::size_t m = 0; m < u.size(); ++m) {
        if (!s.has[m] && !b.labels[m].is_wildcard()) return false;
    }
    if (s.input->kind == ComponentKind::Filtering || s.own_labels.empty()) return true;
    if (s.owns(b.owner)) return true;
    return std::all_of(s.own_labels.begin(), s.own_labels.end(),
                       [&](std::size_t m) { return is_specific(b.labels[m], u.conditions[m]); });
}

bool permits_region(const Side& s, const Branch& b) {
    for (const Rule& r : s.extended->rules) {
        if (action_class(r.action) != ActionClass::Permit) continue;
        bool inside = true;
        for (std::size_t m = 0; m < b.labels.size() && inside; ++m) {
            inside = b.labels[m].points().subset_of(r.condition[m].points());
        }
        if (inside) return true;
    }
    return false;
}

RuleSet component_rules(const RelevantDecisionTree& projected, const GlobalRuleSet& g,
                        const RuleSet& input, const Schema& u) {
    const Schema& level = projected.tree.schema;
    RuleSet out;
    out.name = input.name;
    out.kind = input.kind;
    out.schema.decision = u.decision;
    std::vector<std::size_t> from;
    for (const AttributeDef& a : input.schema.conditions) {
        out.schema.conditions.push_back(u.at(a.name));
        from.push_back(*level.index_of(a.name));
    }
    std::vector<Branch> bs = branches(projected.tree);
    std::stable_sort(bs.begin(), bs.end(),
                     [](const Branch& a, const Branch& b) { return a.owner < b.owner; });
    int id = 0;
    for (const Branch& b : bs) {
        Rule r;
        r.id = ++id;
        for (std::size_t idx : from) r.condition.push_back(b.labels[idx]);
        r.action = b.action;
        const Provenance& p = g.origin_of(b.owner);
        r.origin = p.component + " r" + std::to_string(p.original_id);
        out.rules.push_back(std::move(r));
    }
    return out;
}

}  // namespace

PairCorrection correct_pair(const RuleSet& preceding, const RuleSet& following,
                            ConflictPolicy policy) {
    AlignedPair aligned = align(preceding, following);
    PairCorrection out;
    out.global = integrate(aligned.preceding, aligned.following);
    out.tree = correct_global(out.global, policy);
    const Schema& u = out.global.rules.schema;

    Side sides[2] = {
        make_side(preceding, aligned.preceding, following.schema, u, 1),
        make_side(following, aligned.following, preceding.schema, u,
                  static_cast<int>(preceding.rules.size()) + 1),
    };

    // receives[s]: whether side s keeps branch b.
    auto receives = [&](std::size_t s, const Branch& b) {
        std::size_t own = sides[0].owns(b.owner) ? 0 : 1;
        std::size_t other = 1 - own;
        std::optional<std::size_t> primary;
        if (candidate(sides[own], b, u)) {
            primary = own;
        } else if (candidate(sides[other], b, u)) {
            primary = other;
        }
        if (!primary) return false;
        if (*primary == s) return true;
        return action_class(b.action) == ActionClass::Permit && candidate(sides[s], b, u) &&
               permits_region(sides[s], b);
    };

    for (std::size_t s = 0; s < 2; ++s) {
        std::vector<std::string> names;
        for (std::size_t m = 0; m < u.size(); ++m) {
            if (sides[s].has[m]) names.push_back(u.conditions[m].name);
        }
        RelevantDecisionTree projected =
            project_if(out.tree, names, [&](const Branch& b) { return receives(s, b); });
        RuleSet rs = component_rules(projected, out.global, *sides[s].input, u);
        (s == 0 ? out.preceding : out.following) = std::move(rs);
    }
    return out;
}

}  // namespace secinterop
