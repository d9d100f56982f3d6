#include "secinterop/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "secinterop/correction.hpp"
#include "secinterop/error.hpp"
#include "secinterop/interop.hpp"
#include "secinterop/intra.hpp"
#include "secinterop/oracle.hpp"
#include "secinterop/rdt.hpp"
#include "secinterop/report.hpp"
#include "secinterop/rule_format.hpp"

namespace fs = std::filesystem;

namespace secinterop {

namespace {

// Exhaustive oracle checks above this many sample packets are skipped.
constexpr std::size_t kVerifyLimit = 4'000'000;

enum Exit { kClean = 0, kFindings = 1, kInputError = 2 };

struct Options {
    ConflictPolicy policy = ConflictPolicy::SpecificityThenOrder;
    Format format = Format::Text;
    bool assume_relevant = false;
    bool dump_tree = false;
};

// Failure that is reported as an input error, without a finding list.
class InputError : public Error {
  public:
    using Error::Error;
};

struct Loaded {
    std::string path;
    std::string text;
    RuleSet rules;
    bool json = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot read file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Loaded load(const std::string& path) {
    Loaded l;
    l.path = path;
    l.text = read_file(path);
    try {
        l.rules = parse_ruleset_auto(l.text);
    } catch (const Error& e) {
        throw InputError(path + ":" + e.what());
    }
    l.json = fs::path(path).extension() == ".json";
    return l;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError(path.string() + ": cannot write file");
}

std::string serialize_for(const RuleSet& rs, bool json) {
    return json ? serialize_ruleset_json(rs) : serialize_ruleset(rs);
}

void digest(Report& r, const Loaded& l) { r.inputs.push_back({l.path, sha256_hex(l.text)}); }

void require_relevant(const Loaded& l, const Options& o) {
    if (o.assume_relevant || is_relevant(l.rules)) return;
    throw InputError(l.path + ": rules overlap; run `correct` first or pass --assume-relevant");
}

int exit_for(const Report& r) { return r.findings.empty() ? kClean : kFindings; }

int cmd_lint(const std::string& file, const Options& o, Report& r) {
    Loaded l = load(file);
    digest(r, l);
    for (const IntraAnomaly& a : detect_intra(l.rules)) r.findings.push_back(make_finding(a, l.rules));
    if (o.dump_tree) r.trees.emplace_back(l.rules.name, dump_tree(build_tree(l.rules)));
    r.verdict("rules", std::to_string(l.rules.rules.size()));
    r.verdict("anomalies", std::to_string(r.findings.size()));
    return exit_for(r);
}

int cmd_correct(const std::string& file, const std::string& output, const Options& o, Report& r) {
    Loaded l = load(file);
    digest(r, l);
    RelevantDecisionTree rdt = build_rdt(l.rules, o.policy);
    RuleSet fixed = tree_to_rules(rdt.tree);
    DomainSpace space = DomainSpace::for_rules(l.rules);
    std::string verified = "skipped";
    if (space.size() <= kVerifyLimit) {
        RdtReport check = verify_rdt(rdt, l.rules, space);
        verified = check.ok() ? "yes" : "no";
    } else {
        r.notes.push_back("oracle check skipped: " + std::to_string(space.size()) +
                          " sample packets");
        if (!check_relevant(rdt.tree).empty() || !detect_intra(fixed).empty()) verified = "no";
    }
    if (verified == "no") {
        r.notes.push_back("corrected rules not written: verification failed");
        r.verdict("verified", verified);
        return kFindings;
    }
    bool json = fs::path(output).extension() == ".json";
    write_file(output, serialize_for(fixed, json));
    if (o.dump_tree) r.trees.emplace_back(l.rules.name, dump_tree(rdt.tree));
    r.rules.push_back(fixed);
    r.verdict("policy", std::string(to_string(o.policy)));
    r.verdict("rules", std::to_string(l.rules.rules.size()) + " -> " +
                           std::to_string(fixed.rules.size()));
    r.verdict("verified", verified);
    r.verdict("output", output);
    return kClean;
}

std::string pair_scope(const RuleSet& p, const RuleSet& f) { return p.name + " -> " + f.name; }

int cmd_check_interop(const std::string& pre, const std::string& fol, const Options& o,
                      Report& r) {
    Loaded p = load(pre);
    Loaded f = load(fol);
    digest(r, p);
    digest(r, f);
    require_relevant(p, o);
    require_relevant(f, o);
    AlignedPair a = align(p.rules, f.rules);
    InteropVerdict v = check_interoperable(a.preceding, a.following);
    for (const InterAnomaly& x : v.anomalies) {
        r.findings.push_back(make_finding(x, a.preceding, a.following, pair_scope(p.rules, f.rules)));
    }
    if (o.dump_tree) {
        r.trees.emplace_back(p.rules.name, dump_tree(build_tree(a.preceding)));
        r.trees.emplace_back(f.rules.name, dump_tree(build_tree(a.following)));
    }
    r.verdict("interoperable", v.interoperable ? "yes" : "no");
    return exit_for(r);
}

int cmd_fix_interop(const std::string& pre, const std::string& fol, const std::string& dir,
                    const Options& o, Report& r) {
    Loaded p = load(pre);
    Loaded f = load(fol);
    digest(r, p);
    digest(r, f);
    require_relevant(p, o);
    require_relevant(f, o);
    PairCorrection pc = correct_pair(p.rules, f.rules, o.policy);
    AlignedPair after = align(pc.preceding, pc.following);
    InteropVerdict v = check_interoperable(after.preceding, after.following);
    for (const InterAnomaly& x : v.anomalies) {
        r.findings.push_back(
            make_finding(x, after.preceding, after.following, pair_scope(p.rules, f.rules)));
    }

    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError(dir + ": " + ec.message());
    for (const auto& [rs, src] : {std::pair{&pc.preceding, &p}, std::pair{&pc.following, &f}}) {
        fs::path out = fs::path(dir) / (rs->name + "-corrected" + (src->json ? ".json" : ".rules"));
        write_file(out, serialize_for(*rs, src->json));
        r.notes.push_back("wrote " + out.string());
    }
    if (o.dump_tree) r.trees.emplace_back(pc.global.rules.name, dump_tree(pc.tree.tree));
    r.rules.push_back(pc.preceding);
    r.rules.push_back(pc.following);
    r.verdict("policy", std::string(to_string(o.policy)));
    r.verdict("interoperable", v.interoperable ? "yes" : "no");
    return exit_for(r);
}

int cmd_check_topology(const std::string& file, const Options& o, Report& r) {
    std::string text = read_file(file);
    r.inputs.push_back({file, sha256_hex(text)});
    Topology t;
    try {
        t = parse_topology(text);
    } catch (const Error& e) {
        throw InputError(file + ":" + e.what());
    }
    for (const PositioningViolation& v : check_positioning(t)) r.findings.push_back(make_finding(v));

    fs::path base = fs::path(file).parent_path();
    std::map<std::string, Loaded> cache;
    auto rules_of = [&](const std::string& component) -> const Loaded* {
        const TopologyComponent* c = t.find(component);
        if (!c || c->file.empty()) return nullptr;
        auto it = cache.find(component);
        if (it == cache.end()) {
            fs::path path = fs::path(c->file).is_absolute() ? fs::path(c->file) : base / c->file;
            Loaded l = load(path.string());
            digest(r, l);
            require_relevant(l, o);
            it = cache.emplace(component, std::move(l)).first;
        }
        return &it->second;
    };

    std::size_t pairs = 0;
    for (const TopologyPath& path : t.paths) {
        for (std::size_t i = 0; i < path.hops.size(); ++i) {
            for (std::size_t j = i + 1; j < path.hops.size(); ++j) {
                const Loaded* p = rules_of(path.hops[i].component);
                const Loaded* f = rules_of(path.hops[j].component);
                if (!p || !f) continue;
                ++pairs;
                AlignedPair a = align(p->rules, f->rules);
                std::string scope = "path " + path.name + ": " + pair_scope(p->rules, f->rules);
                for (const InterAnomaly& x : detect_inter(a.preceding, a.following)) {
                    r.findings.push_back(make_finding(x, a.preceding, a.following, scope));
                }
            }
        }
    }
    r.verdict("paths", std::to_string(t.paths.size()));
    r.verdict("pairs checked", std::to_string(pairs));
    r.verdict("findings", std::to_string(r.findings.size()));
    return exit_for(r);
}

int cmd_eval(const std::string& file, const std::string& packet, const Options& o, Report& r) {
    Loaded l = load(file);
    digest(r, l);
    Packet p;
    try {
        p = parse_packet(packet, l.rules.schema);
    } catch (const Error& e) {
        throw InputError(std::string("--packet: ") + e.what());
    }
    auto d = evaluate(l.rules, p, semantics_of(o.policy));
    if (o.dump_tree) r.trees.emplace_back(l.rules.name, dump_tree(build_rdt(l.rules, o.policy).tree));
    r.verdict("packet", format_packet(p, l.rules.schema));
    r.verdict("semantics", std::string(to_string(semantics_of(o.policy))));
    r.verdict("decision", d ? d->action : "no-match");
    r.verdict("rule", d ? std::to_string(d->rule) : "none");
    return kClean;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analyse and correct security component rule sets", "secinterop"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(tool_version()));

    std::string policy = "specificity";
    std::string format = "text";
    Options opts;
    app.add_option("--policy", policy, "Overlap resolution: specificity or first-match")
        ->check(CLI::IsMember({"specificity", "first-match"}));
    app.add_option("--format", format, "Report format: text or json")
        ->check(CLI::IsMember({"text", "json", "json-like"}));
    app.add_flag("--assume-relevant", opts.assume_relevant,
                 "Accept overlapping rule sets where corrected ones are expected");
    app.add_flag("--dump-tree", opts.dump_tree, "Include decision tree dumps in the report");

    std::string file, second, output, packet;
    auto* lint = app.add_subcommand("lint", "Report intra-component anomalies");
    lint->add_option("file", file)->required();
    auto* correct = app.add_subcommand("correct", "Write an anomaly-free equivalent rule set");
    correct->add_option("file", file)->required();
    correct->add_option("-o,--output", output)->required();
    auto* check = app.add_subcommand("check-interop", "Report anomalies between two components");
    check->add_option("preceding", file)->required();
    check->add_option("following", second)->required();
    auto* fix = app.add_subcommand("fix-interop", "Correct two components jointly");
    fix->add_option("preceding", file)->required();
    fix->add_option("following", second)->required();
    fix->add_option("-o,--output", output, "Output directory")->required();
    auto* topo = app.add_subcommand("check-topology", "Check component order and pairs on paths");
    topo->add_option("file", file)->required();
    auto* eval = app.add_subcommand("eval", "Decide one packet");
    eval->add_option("file", file)->required();
    eval->add_option("--packet", packet, "attr=value,...")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kClean : kInputError;
    }
    opts.policy = *conflict_policy_from_string(policy);
    opts.format = format == "text" ? Format::Text : Format::Json;

    Report report;
    int code = kClean;
    try {
        if (lint->parsed()) {
            report.command = "lint";
            code = cmd_lint(file, opts, report);
        } else if (correct->parsed()) {
            report.command = "correct";
            code = cmd_correct(file, output, opts, report);
        } else if (check->parsed()) {
            report.command = "check-interop";
            code = cmd_check_interop(file, second, opts, report);
        } else if (fix->parsed()) {
            report.command = "fix-interop";
            code = cmd_fix_interop(file, second, output, opts, report);
        } else if (topo->parsed()) {
            report.command = "check-topology";
            code = cmd_check_topology(file, opts, report);
        } else if (eval->parsed()) {
            report.command = "eval";
            code = cmd_eval(file, packet, opts, report);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    out << report.render(opts.format);
    return code;
}

}  // namespace secinterop
