#include "secinterop/rule_format.hpp"

#include <json.hpp>
#include <set>
#include <sstream>

#include "secinterop/error.hpp"
#include "text_util.hpp"

namespace secinterop {

namespace {

using json = nlohmann::ordered_json;

struct AttributeDecl {
    std::string name;
    AttrKind kind;
    std::string domain;
    std::size_t line;
};

struct RawRule {
    std::vector<std::string> fields;
    std::vector<std::size_t> columns;
    std::size_t line;
};

std::vector<std::string> label_tokens(std::string_view value) {
    std::vector<std::string> out;
    for (std::string_view item : detail::split(value, ',')) {
        item = detail::trim(item);
        if (item.empty() || detail::iequals(item, "any") || detail::iequals(item, "all") ||
            item == kOtherLabel) {
            continue;
        }
        out.emplace_back(item);
    }
    return out;
}

AttributeDef build_attribute(const std::string& name, AttrKind kind, std::string_view domain,
                             const std::vector<std::string>& seen_labels) {
    if (is_enum_kind(kind)) {
        std::vector<std::string> labels = label_tokens(domain);
        bool open = kind == AttrKind::Label;
        if (open) labels.insert(labels.end(), seen_labels.begin(), seen_labels.end());
        return AttributeDef::enumeration(name, kind, std::move(labels), open);
    }
    // Parse the domain against an unbounded declaration of the same kind.
    AttributeDef full = AttributeDef::interval(name, kind, IntervalSet::range(0, 0xffffffffU));
    ValueSet d = full.parse_value(domain);
    return AttributeDef::interval(name, kind, d.points());
}

template <typename Fn>
auto at_line(std::size_t line, std::size_t column, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError& e) {
        if (e.line() != 0) throw;
        throw ParseError(e.detail(), line, column);
    } catch (const DomainError& e) {
        throw DomainError(std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    } catch (const SchemaError& e) {
        throw SchemaError(std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    }
}

// Assembles a RuleSet from header pieces and raw rule fields (shared by the
// text and key/value readers).
RuleSet assemble(std::string name, ComponentKind kind, const std::vector<AttributeDecl>& attrs,
                 const std::string& decision_name, std::string_view decision_domain,
                 std::size_t decision_line, const std::vector<RawRule>& raw) {
    std::set<std::string> names;
    for (const AttributeDecl& a : attrs) {
        if (!names.insert(a.name).second) {
            throw SchemaError(std::to_string(a.line) + ": duplicate attribute '" + a.name + "'");
        }
    }
    if (attrs.empty()) throw SchemaError("no attribute declarations");
    if (decision_name.empty()) throw SchemaError("missing decision declaration");

    RuleSet rs;
    rs.name = std::move(name);
    rs.kind = kind;
    for (std::size_t m = 0; m < attrs.size(); ++m) {
        const AttributeDecl& a = attrs[m];
        std::vector<std::string> seen;
        if (a.kind == AttrKind::Label) {
            for (const RawRule& r : raw) {
                if (m + 1 < r.fields.size()) {
                    auto t = label_tokens(r.fields[m + 1]);
                    seen.insert(seen.end(), t.begin(), t.end());
                }
            }
        }
        rs.schema.conditions.push_back(
            at_line(a.line, 0, [&] { return build_attribute(a.name, a.kind, a.domain, seen); }));
    }
    rs.schema.decision = at_line(decision_line, 0, [&] {
        return AttributeDef::enumeration(decision_name, AttrKind::Label,
                                         label_tokens(decision_domain), false);
    });
    at_line(decision_line, 0, [&] { rs.schema.validate(); });

    const std::size_t n = rs.schema.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const RawRule& r = raw[i];
        if (r.fields.size() != n + 2) {
            throw ParseError("expected " + std::to_string(n + 2) + " '|'-separated fields, got " +
                                 std::to_string(r.fields.size()),
                             r.line, 1);
        }
        Rule rule;
        rule.id = at_line(r.line, r.columns[0], [&] {
            return static_cast<int>(AttributeDef::interval("id", AttrKind::Integer,
                                                           IntervalSet::range(0, 0x7fffffff))
                                        .parse_point(r.fields[0]));
        });
        if (rule.id != static_cast<int>(i) + 1) {
            throw ParseError("rule ids must be 1..t in order; expected " + std::to_string(i + 1),
                             r.line, r.columns[0]);
        }
        for (std::size_t m = 0; m < n; ++m) {
            rule.condition.push_back(at_line(r.line, r.columns[m + 1], [&] {
                return rs.schema.conditions[m].parse_value(r.fields[m + 1]);
            }));
        }
        rule.action = std::string(detail::trim(r.fields[n + 1]));
        if (!rs.schema.decision.label_point(rule.action)) {
            throw DomainError(std::to_string(r.line) + ":" + std::to_string(r.columns[n + 1]) +
                              ": action '" + rule.action + "' is not in the decision domain");
        }
        rule.origin = rs.name;
        rs.rules.push_back(std::move(rule));
    }
    rs.validate();
    return rs;
}

std::size_t column_of(std::string_view line, std::string_view part) {
    return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

}  // namespace

RuleSet parse_ruleset(std::string_view text) {
    std::string name;
    std::optional<ComponentKind> kind;
    std::vector<AttributeDecl> attrs;
    std::string decision_name;
    std::string decision_domain;
    std::size_t decision_line = 0;
    std::vector<RawRule> raw;
    bool in_rules = false;

    std::size_t line_no = 0;
    for (std::string_view full : detail::split(text, '\n')) {
        ++line_no;
        std::string_view line = full;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (detail::trim(line).empty()) continue;

        if (in_rules) {
            RawRule r;
            r.line = line_no;
            for (std::string_view f : detail::split(line, '|')) {
                std::string_view t = detail::trim(f);
                r.columns.push_back(t.empty() ? column_of(full, f) : column_of(full, t));
                r.fields.emplace_back(t);
            }
            raw.push_back(std::move(r));
            continue;
        }

        std::vector<std::string_view> w = detail::words(line);
        std::string_view directive = w[0];
        std::size_t col = column_of(full, directive);
        if (directive == "component") {
            if (w.size() != 3) throw ParseError("expected 'component <name> <kind>'", line_no, col);
            name = std::string(w[1]);
            kind = component_kind_from_string(w[2]);
            if (!kind) {
                throw ParseError("component kind must be filtering or alerting", line_no,
                                 column_of(full, w[2]));
            }
        } else if (directive == "attribute") {
            if (w.size() < 4) {
                throw ParseError("expected 'attribute <name> <kind> <domain>'", line_no, col);
            }
            auto k = attr_kind_from_string(w[2]);
            if (!k) {
                throw ParseError("unknown attribute kind '" + std::string(w[2]) + "'", line_no,
                                 column_of(full, w[2]));
            }
            std::string_view rest = line.substr(static_cast<std::size_t>(w[3].data() - line.data()));
            attrs.push_back({std::string(w[1]), *k, std::string(detail::trim(rest)), line_no});
        } else if (directive == "decision") {
            if (w.size() < 3) throw ParseError("expected 'decision <name> <labels>'", line_no, col);
            decision_name = std::string(w[1]);
            std::string_view rest = line.substr(static_cast<std::size_t>(w[2].data() - line.data()));
            decision_domain = std::string(detail::trim(rest));
            decision_line = line_no;
        } else if (directive == "rules" && w.size() == 1) {
            in_rules = true;
        } else {
            throw ParseError("unknown directive '" + std::string(directive) + "'", line_no, col);
        }
    }
    if (!kind) throw ParseError("missing 'component' header", 1, 1);
    if (!in_rules) throw ParseError("missing 'rules' section", line_no, 1);
    return assemble(std::move(name), *kind, attrs, decision_name, decision_domain, decision_line,
                    raw);
}

std::string serialize_ruleset(const RuleSet& rs) {
    std::ostringstream os;
    os << "component " << rs.name << ' ' << to_string(rs.kind) << '\n';
    for (const AttributeDef& a : rs.schema.conditions) {
        os << "attribute " << a.name << ' ' << to_string(a.kind) << ' ' << a.format_domain()
           << '\n';
    }
    os << "decision " << rs.schema.decision.name << ' ' << rs.schema.decision.format_domain()
       << '\n';
    os << "rules\n";
    for (const Rule& r : rs.rules) {
        os << r.id;
        for (const std::string& v : format_rule(r, rs.schema)) os << " | " << v;
        os << '\n';
    }
    return os.str();
}

RuleSet parse_ruleset_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        const json& comp = doc.at("component");
        auto kind = component_kind_from_string(comp.at("kind").get<std::string>());
        if (!kind) throw ParseError("component kind must be filtering or alerting");
        std::vector<AttributeDecl> attrs;
        for (const json& a : doc.at("schema").at("attributes")) {
            std::string kind_text = a.at("kind").get<std::string>();
            auto k = attr_kind_from_string(kind_text);
            if (!k) throw ParseError("unknown attribute kind '" + kind_text + "'");
            attrs.push_back({a.at("name").get<std::string>(), *k, a.at("domain").get<std::string>(),
                             0});
        }
        const json& dec = doc.at("schema").at("decision");
        std::vector<RawRule> raw;
        for (const json& r : doc.at("rules")) {
            RawRule rr;
            rr.line = 0;
            rr.fields.push_back(std::to_string(r.at("id").get<long long>()));
            const json& cond = r.at("condition");
            for (auto it = cond.begin(); it != cond.end(); ++it) {
                bool known = std::any_of(attrs.begin(), attrs.end(),
                                         [&](const AttributeDecl& a) { return a.name == it.key(); });
                if (!known) throw SchemaError("unknown attribute '" + it.key() + "'");
            }
            for (const AttributeDecl& a : attrs) {
                if (!cond.contains(a.name)) {
                    throw SchemaError("rule " + rr.fields[0] + " lacks attribute '" + a.name + "'");
                }
                rr.fields.push_back(cond.at(a.name).get<std::string>());
            }
            rr.fields.push_back(r.at("action").get<std::string>());
            rr.columns.assign(rr.fields.size(), 0);
            raw.push_back(std::move(rr));
        }
        return assemble(comp.at("name").get<std::string>(), *kind, attrs,
                        dec.at("name").get<std::string>(), dec.at("domain").get<std::string>(), 0,
                        raw);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed rule document: ") + e.what());
    }
}

std::string serialize_ruleset_json(const RuleSet& rs) {
    json doc;
    doc["component"] = {{"name", rs.name}, {"kind", std::string(to_string(rs.kind))}};
    json attrs = json::array();
    for (const AttributeDef& a : rs.schema.conditions) {
        attrs.push_back({{"name", a.name},
                         {"kind", std::string(to_string(a.kind))},
                         {"domain", a.format_domain()}});
    }
    doc["schema"] = {{"attributes", attrs},
                     {"decision",
                      {{"name", rs.schema.decision.name},
                       {"domain", rs.schema.decision.format_domain()}}}};
    json rules = json::array();
    for (const Rule& r : rs.rules) {
        json cond = json::object();
        for (std::size_t m = 0; m < rs.schema.size(); ++m) {
            cond[rs.schema.conditions[m].name] = rs.schema.conditions[m].format_value(r.condition[m]);
        }
        rules.push_back({{"id", r.id}, {"condition", cond}, {"action", r.action}});
    }
    doc["rules"] = rules;
    return doc.dump(2) + "\n";
}

RuleSet parse_ruleset_auto(std::string_view text) {
    std::string_view t = detail::trim(text);
    if (!t.empty() && t.front() == '{') return parse_ruleset_json(text);
    return parse_ruleset(text);
}

}  // namespace secinterop
