#include "secinterop/report.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"

#ifndef SECINTEROP_VERSION
#define SECINTEROP_VERSION "0.0.0"
#endif

namespace secinterop {

using json = nlohmann::ordered_json;

std::string_view tool_version() { return SECINTEROP_VERSION; }

std::string sha256_hex(std::string_view data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
    return os.str();
}

Finding make_finding(const IntraAnomaly& a, const RuleSet& rs) {
    return {rs.name,
            std::string(to_string(a.kind)),
            std::string(to_string(a.severity)),
            {rs.name, a.earlier},
            {rs.name, a.later},
            std::string(to_string(a.evidence.kind)),
            a.evidence.evidence};
}

Finding make_finding(const InterAnomaly& a, const RuleSet& preceding, const RuleSet& following,
                     std::string scope) {
    return {std::move(scope),
            std::string(to_string(a.kind)),
            std::string(to_string(a.severity)),
            {preceding.name, a.preceding},
            {following.name, a.following},
            std::string(to_string(a.evidence.kind)),
            a.evidence.evidence};
}

Finding make_finding(const PositioningViolation& v) {
    return {"path " + v.path, "positioning", "error", {v.alerting, 0}, {v.filtering, 0}, "", {}};
}

void Report::verdict(std::string key, std::string value) {
    verdicts.emplace_back(std::move(key), std::move(value));
}

namespace {

json ref_json(const RuleRef& r) {
    json j = {{"component", r.component}};
    if (r.rule != 0) j["rule"] = r.rule;
    return j;
}

std::string ref_text(const RuleRef& r) {
    return r.rule == 0 ? r.component : r.component + " r" + std::to_string(r.rule);
}

json render_json(const Report& r) {
    json doc;
    doc["tool"] = {{"name", "secinterop"}, {"version", std::string(tool_version())}};
    doc["command"] = r.command;
    json inputs = json::array();
    for (const InputDigest& d : r.inputs) inputs.push_back({{"path", d.path}, {"sha256", d.sha256}});
    doc["inputs"] = inputs;
    json findings = json::array();
    for (const Finding& f : r.findings) {
        json j = {{"scope", f.scope},
                  {"kind", f.kind},
                  {"severity", f.severity},
                  {"first", ref_json(f.first)},
                  {"second", ref_json(f.second)}};
        if (!f.relation.empty()) {
            j["relation"] = f.relation;
            json ev = json::array();
            for (const FieldRelation& e : f.evidence) {
                ev.push_back({{"attribute", e.attribute}, {"relation", std::string(to_string(e.rel))}});
            }
            j["evidence"] = ev;
        }
        findings.push_back(j);
    }
    doc["findings"] = findings;
    json verdicts = json::object();
    for (const auto& [k, v] : r.verdicts) verdicts[k] = v;
    doc["verdicts"] = verdicts;
    if (!r.rules.empty()) {
        json sets = json::array();
        for (const RuleSet& rs : r.rules) {
            json rules = json::array();
            for (const Rule& rule : rs.rules) {
                json cond = json::object();
                for (std::size_t m = 0; m < rs.schema.size(); ++m) {
                    cond[rs.schema.conditions[m].name] =
                        rs.schema.conditions[m].format_value(rule.condition[m]);
                }
                json jr = {{"id", rule.id}, {"condition", cond}, {"action", rule.action}};
                if (!rule.origin.empty()) jr["origin"] = rule.origin;
                rules.push_back(jr);
            }
            sets.push_back({{"component", rs.name}, {"rules", rules}});
        }
        doc["rules"] = sets;
    }
    if (!r.trees.empty()) {
        json trees = json::array();
        for (const auto& [name, dump] : r.trees) {
            json lines = json::array();
            for (std::string_view l : detail::split(dump, '\n')) {
                if (!l.empty()) lines.push_back(std::string(l));
            }
            trees.push_back({{"component", name}, {"dump", lines}});
        }
        doc["trees"] = trees;
    }
    if (!r.notes.empty()) doc["notes"] = r.notes;
    return doc;
}

std::string render_text(const Report& r) {
    std::ostringstream os;
    os << "secinterop " << tool_version() << ' ' << r.command << '\n';
    for (const InputDigest& d : r.inputs) os << "input " << d.path << " sha256:" << d.sha256 << '\n';
    for (const Finding& f : r.findings) {
        os << f.severity << ": " << f.kind << ' ' << ref_text(f.first) << " / " << ref_text(f.second);
        if (!f.scope.empty()) os << " [" << f.scope << ']';
        if (!f.relation.empty()) {
            os << "\n    " << f.relation << ':';
            for (const FieldRelation& e : f.evidence) {
                os << ' ' << e.attribute << '=' << to_string(e.rel);
            }
        }
        os << '\n';
    }
    for (const RuleSet& rs : r.rules) {
        os << "rules " << rs.name << " (" << rs.rules.size() << ")\n";
        for (const Rule& rule : rs.rules) {
            os << "  " << rule.id;
            for (const std::string& v : format_rule(rule, rs.schema)) os << " | " << v;
            if (!rule.origin.empty()) os << "   # " << rule.origin;
            os << '\n';
        }
    }
    for (const auto& [name, dump] : r.trees) os << dump;
    for (const std::string& n : r.notes) os << "note: " << n << '\n';
    for (const auto& [k, v] : r.verdicts) os << k << ": " << v << '\n';
    return os.str();
}

}  // namespace

std::string Report::render(Format format) const {
    if (format == Format::Json) return render_json(*this).dump(2) + "\n";
    return render_text(*this);
}

}  // namespace secinterop
