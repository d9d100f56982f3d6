#include "secinterop/interop.hpp"

#include <algorithm>
#include <tuple>

#include "secinterop/error.hpp"
#include "text_util.hpp"

namespace secinterop {

Schema extract_attributes(const RuleSet& rs) { return rs.schema; }

Schema union_schema(const Schema& preceding, const Schema& following) {
    Schema out;
    for (const AttributeDef& a : preceding.conditions) {
        auto other = following.index_of(a.name);
        out.conditions.push_back(other ? merge_attribute(a, following.conditions[*other]) : a);
    }
    for (const AttributeDef& b : following.conditions) {
        if (!preceding.index_of(b.name)) out.conditions.push_back(b);
    }
    if (preceding.decision.name != following.decision.name) {
        throw SchemaError("decision attributes differ: '" + preceding.decision.name + "' vs '" +
                          following.decision.name + "'");
    }
    out.decision = merge_attribute(preceding.decision, following.decision);
    out.validate();
    return out;
}

RuleSet extend_schema(const RuleSet& rs, const Schema& target) {
    if (rs.schema == target) return rs;
    // Position of each target attribute in rs, if present.
    std::vector<std::optional<std::size_t>> source(target.size());
    for (std::size_t m = 0; m < target.size(); ++m) {
        source[m] = rs.schema.index_of(target.conditions[m].name);
    }
    for (const AttributeDef& a : rs.schema.conditions) {
        auto idx = target.index_of(a.name);
        if (!idx) {
            throw SchemaError("target schema lacks attribute '" + a.name + "' of " +
                              (rs.name.empty() ? std::string("the rule set") : rs.name));
        }
        if (!domain_within(a, target.conditions[*idx])) {
            throw SchemaError("target declaration of '" + a.name + "' cannot hold the domain of " +
                              (rs.name.empty() ? std::string("the rule set") : rs.name));
        }
    }
    if (!domain_within(rs.schema.decision, target.decision)) {
        throw SchemaError("target decision domain lacks actions of " +
                          (rs.name.empty() ? std::string("the rule set") : rs.name));
    }

    RuleSet out;
    out.schema = target;
    out.kind = rs.kind;
    out.name = rs.name;
    for (const Rule& r : rs.rules) {
        Rule e;
        e.id = r.id;
        e.action = r.action;
        e.origin = r.origin;
        for (std::size_t m = 0; m < target.size(); ++m) {
            const AttributeDef& to = target.conditions[m];
            if (source[m]) {
                e.condition.push_back(
                    rebase(r.condition[*source[m]], rs.schema.conditions[*source[m]], to));
            } else {
                e.condition.push_back(ValueSet::any(to));
            }
        }
        out.rules.push_back(std::move(e));
    }
    return out;
}

AlignedPair align(const RuleSet& preceding, const RuleSet& following) {
    Schema u = union_schema(preceding.schema, following.schema);
    return {extend_schema(preceding, u), extend_schema(following, u)};
}

bool is_relevant(const RuleSet& rs) {
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
        for (std::size_t j = i + 1; j < rs.rules.size(); ++j) {
            if (relation_kind(rs.rules[i], rs.rules[j]) != RelationKind::Disjoint) return false;
        }
    }
    return true;
}

std::string_view to_string(InterKind kind) {
    switch (kind) {
        case InterKind::Shadowing:
            return "inter-shadowing";
        case InterKind::Spuriousness:
            return "inter-spuriousness";
        case InterKind::Redundancy:
            return "inter-redundancy";
        case InterKind::Correlation:
            return "inter-correlation";
    }
    return "?";
}

std::optional<InterAnomaly> classify_inter(const Rule& preceding, const Rule& following,
                                           const Schema& schema) {
    RelationKind k = relation_kind(following, preceding);
    if (k == RelationKind::Disjoint) return std::nullopt;
    ActionClass pc = action_class(preceding.action);
    ActionClass fc = action_class(following.action);

    std::optional<InterKind> kind;
    if (is_covered_by(k)) {
        if (pc == ActionClass::Block && fc == ActionClass::Permit) {
            kind = InterKind::Shadowing;
        } else if (pc == ActionClass::Permit && fc == ActionClass::Block) {
            kind = InterKind::Spuriousness;
        } else if (pc == ActionClass::Block && fc == ActionClass::Block) {
            kind = InterKind::Redundancy;
        }
    } else if (is_correlated(k) && pc != fc) {
        kind = InterKind::Correlation;
    }
    if (!kind) return std::nullopt;

    InterAnomaly a;
    a.kind = *kind;
    a.preceding = preceding.id;
    a.following = following.id;
    a.evidence = relate(preceding, following, schema);
    a.severity = *kind == InterKind::Redundancy ? Severity::Warning : Severity::Error;
    return a;
}

namespace {

void require_shared_schema(const RuleSet& preceding, const RuleSet& following) {
    if (preceding.schema.conditions != following.schema.conditions) {
        throw SchemaError("rule sets '" + preceding.name + "' and '" + following.name +
                          "' do not share a condition schema; extend them first");
    }
}

void sort_findings(std::vector<InterAnomaly>& v) {
    std::sort(v.begin(), v.end(), [](const InterAnomaly& a, const InterAnomaly& b) {
        return std::tie(a.preceding, a.following, a.kind) <
               std::tie(b.preceding, b.following, b.kind);
    });
}

}  // namespace

std::vector<InterAnomaly> detect_inter_serial(const RuleSet& preceding, const RuleSet& following) {
    require_shared_schema(preceding, following);
    std::vector<InterAnomaly> out;
    for (const Rule& p : preceding.rules) {
        for (const Rule& f : following.rules) {
            if (auto a = classify_inter(p, f, preceding.schema)) out.push_back(*a);
        }
    }
    sort_findings(out);
    return out;
}

std::vector<InterAnomaly> detect_inter(const RuleSet& preceding, const RuleSet& following) {
    require_shared_schema(preceding, following);
    const long n = static_cast<long>(preceding.rules.size());
    std::vector<std::vector<InterAnomaly>> per_row(preceding.rules.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
        for (const Rule& f : following.rules) {
            if (auto a = classify_inter(preceding.rules[i], f, preceding.schema)) {
                per_row[i].push_back(*a);
            }
        }
    }
    std::vector<InterAnomaly> out;
    for (auto& row : per_row) out.insert(out.end(), row.begin(), row.end());
    sort_findings(out);
    return out;
}

InteropVerdict check_interoperable(const RuleSet& preceding, const RuleSet& following) {
    InteropVerdict v;
    v.anomalies = detect_inter(preceding, following);
    v.interoperable = v.anomalies.empty();
    return v;
}

const TopologyComponent* Topology::find(std::string_view name) const {
    for (const TopologyComponent& c : components) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

ComponentKind parse_kind(std::string_view text, std::size_t line) {
    auto k = component_kind_from_string(text);
    if (!k) {
        throw ParseError("unknown component kind '" + std::string(text) +
                             "' (expected filtering or alerting)",
                         line, 1);
    }
    return *k;
}

}  // namespace

Topology parse_topology(std::string_view text) {
    Topology t;
    std::size_t line_no = 0;
    for (std::string_view line : detail::split(text, '\n')) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        std::vector<std::string_view> w = detail::words(line);
        if (w[0] == "component") {
            if (w.size() < 3 || w.size() > 4) {
                throw ParseError("expected 'component <name> <kind> [file]'", line_no, 1);
            }
            if (t.find(w[1])) {
                throw ParseError("component '" + std::string(w[1]) + "' declared twice", line_no, 1);
            }
            t.components.push_back({std::string(w[1]), parse_kind(w[2], line_no),
                                    w.size() == 4 ? std::string(w[3]) : std::string()});
        } else if (w[0] == "path") {
            std::string_view rest = detail::trim(line.substr(4));
            auto colon = rest.find(':');
            if (colon == std::string_view::npos) {
                throw ParseError("expected 'path <name>: <hops>'", line_no, 1);
            }
            TopologyPath p;
            p.name = std::string(detail::trim(rest.substr(0, colon)));
            if (p.name.empty()) throw ParseError("path without a name", line_no, 1);
            for (std::string_view hop : detail::words(rest.substr(colon + 1))) {
                auto sep = hop.find(':');
                Hop h;
                h.component = std::string(hop.substr(0, sep));
                const TopologyComponent* decl = t.find(h.component);
                if (sep != std::string_view::npos) {
                    h.kind = parse_kind(hop.substr(sep + 1), line_no);
                    if (decl && decl->kind != h.kind) {
                        throw SchemaError(std::to_string(line_no) + ": component '" +
                                          h.component + "' is declared " +
                                          std::string(to_string(decl->kind)));
                    }
                } else if (decl) {
                    h.kind = decl->kind;
                } else {
                    throw ParseError("hop '" + h.component + "' needs a kind", line_no, 1);
                }
                p.hops.push_back(std::move(h));
            }
            if (p.hops.empty()) throw ParseError("path '" + p.name + "' is empty", line_no, 1);
            t.paths.push_back(std::move(p));
        } else {
            throw ParseError("unknown directive '" + std::string(w[0]) + "'", line_no, 1);
        }
    }
    return t;
}

std::vector<PositioningViolation> check_positioning(const Topology& t) {
    std::vector<PositioningViolation> out;
    for (const TopologyPath& p : t.paths) {
        if (p.hops.empty()) throw SchemaError("path '" + p.name + "' is empty");
        for (std::size_t i = 0; i < p.hops.size(); ++i) {
            if (p.hops[i].kind != ComponentKind::Alerting) continue;
            for (std::size_t j = i + 1; j < p.hops.size(); ++j) {
                if (p.hops[j].kind == ComponentKind::Filtering) {
                    out.push_back({p.name, p.hops[i].component, p.hops[j].component, i, j});
                }
            }
        }
    }
    return out;
}

}  // namespace secinterop
