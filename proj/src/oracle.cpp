#include "secinterop/oracle.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "secinterop/error.hpp"
#include "secinterop/relations.hpp"
#include "text_util.hpp"

namespace secinterop {

std::string_view to_string(Semantics s) {
    return s == Semantics::FirstMatch ? "first-match" : "owner-capture";
}

bool matches(const Packet& p, const Rule& r) {
    if (p.size() != r.condition.size()) return false;
    for (std::size_t m = 0; m < p.size(); ++m) {
        if (!r.condition[m].contains(p[m])) return false;
    }
    return true;
}

ReferenceEvaluator::ReferenceEvaluator(const RuleSet& rs, Semantics semantics)
    : rs_(&rs), semantics_(semantics) {
    if (semantics_ != Semantics::OwnerCapture) return;
    const auto& rules = rs.rules;
    captures_.assign(rules.size(), std::vector<char>(rules.size(), 0));
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            captures_[i][j] =
                relation_kind(rules[i], rules[j]) == RelationKind::InclusivelyMatchingForward;
        }
    }
}

std::optional<Decision> ReferenceEvaluator::operator()(const Packet& p) const {
    const auto& rules = rs_->rules;
    std::size_t owner = rules.size();
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (!matches(p, rules[i])) continue;
        if (owner == rules.size()) {
            owner = i;
            if (semantics_ == Semantics::FirstMatch) break;
        } else if (captures_[i][owner]) {
            owner = i;
        }
    }
    if (owner == rules.size()) return std::nullopt;
    return Decision{rules[owner].action, rules[owner].id};
}

std::optional<Decision> evaluate(const RuleSet& rs, const Packet& p, Semantics semantics) {
    return ReferenceEvaluator(rs, semantics)(p);
}

DomainSpace::DomainSpace(std::vector<std::vector<Point>> samples) : samples_(std::move(samples)) {}

namespace {

std::vector<Point> sample_attribute(const AttributeDef& attr, const std::vector<IntervalSet>& used) {
    std::vector<Point> out;
    const IntervalSet& dom = attr.domain;
    if (is_enum_kind(attr.kind)) {
        for (const Interval& iv : dom.parts()) {
            for (std::uint64_t p = iv.lo; p <= iv.hi; ++p) out.push_back(static_cast<Point>(p));
        }
        return out;
    }
    auto add = [&](std::uint64_t p) {
        if (p <= std::numeric_limits<Point>::max() && dom.contains(static_cast<Point>(p))) {
            out.push_back(static_cast<Point>(p));
        }
    };
    for (const Interval& iv : dom.parts()) {
        add(iv.lo);
        add(iv.hi);
    }
    for (const IntervalSet& s : used) {
        for (const Interval& iv : s.parts()) {
            add(iv.lo);
            add(iv.hi);
            if (iv.lo > 0) add(static_cast<std::uint64_t>(iv.lo) - 1);
            add(static_cast<std::uint64_t>(iv.hi) + 1);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::vector<Point> gaps;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        if (out[i + 1] - out[i] < 2) continue;
        IntervalSet inside = dom.intersect(IntervalSet::range(out[i] + 1, out[i + 1] - 1));
        if (inside.empty()) continue;
        const Interval& mid = inside.parts()[inside.parts().size() / 2];
        gaps.push_back(mid.lo + (mid.hi - mid.lo) / 2);
    }
    out.insert(out.end(), gaps.begin(), gaps.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

DomainSpace DomainSpace::covering(const Schema& schema,
                                  const std::vector<std::vector<ValueSet>>& regions) {
    std::vector<std::vector<Point>> samples;
    for (std::size_t m = 0; m < schema.size(); ++m) {
        std::vector<IntervalSet> used;
        for (const auto& region : regions) {
            if (m < region.size()) used.push_back(region[m].points());
        }
        samples.push_back(sample_attribute(schema.conditions[m], used));
    }
    return DomainSpace(std::move(samples));
}

DomainSpace DomainSpace::for_rules(const RuleSet& rs) { return for_rules(rs.schema, {&rs}); }

DomainSpace DomainSpace::for_rules(const Schema& schema, const std::vector<const RuleSet*>& sets) {
    std::vector<std::vector<ValueSet>> regions;
    for (const RuleSet* rs : sets) {
        for (const Rule& r : rs->rules) regions.push_back(r.condition);
    }
    return covering(schema, regions);
}

DomainSpace DomainSpace::for_tree(const DecisionTree& t) {
    std::vector<std::vector<ValueSet>> regions;
    for (Branch& b : branches(t)) regions.push_back(std::move(b.labels));
    return covering(t.schema, regions);
}

std::size_t DomainSpace::size() const {
    if (samples_.empty()) return 0;
    std::size_t n = 1;
    for (const auto& s : samples_) {
        if (s.empty()) return 0;
        if (n > std::numeric_limits<std::size_t>::max() / s.size()) {
            return std::numeric_limits<std::size_t>::max();
        }
        n *= s.size();
    }
    return n;
}

Packet DomainSpace::at(std::size_t index) const {
    Packet p(samples_.size());
    for (std::size_t m = samples_.size(); m-- > 0;) {
        p[m] = samples_[m][index % samples_[m].size()];
        index /= samples_[m].size();
    }
    return p;
}

std::vector<Packet> check_reliability(const RuleSet& rs, const DomainSpace& space) {
    std::vector<Packet> out;
    for (std::size_t i = 0; i < space.size(); ++i) {
        Packet p = space.at(i);
        bool hit = std::any_of(rs.rules.begin(), rs.rules.end(),
                               [&](const Rule& r) { return matches(p, r); });
        if (!hit) out.push_back(std::move(p));
    }
    return out;
}

std::vector<Packet> check_reliability(const DecisionTree& t, const DomainSpace& space) {
    std::vector<Packet> out;
    for (std::size_t i = 0; i < space.size(); ++i) {
        Packet p = space.at(i);
        if (!evaluate_tree(t, p)) out.push_back(std::move(p));
    }
    return out;
}

namespace {

std::optional<std::string> action_of(const std::optional<TreeDecision>& d) {
    if (!d) return std::nullopt;
    return d->action;
}

std::optional<std::string> action_of(const std::optional<Decision>& d) {
    if (!d) return std::nullopt;
    return d->action;
}

template <typename Check>
std::vector<Counterexample> scan_parallel(std::size_t n, Check check) {
    std::vector<std::pair<std::size_t, Counterexample>> found;
    const long total = static_cast<long>(n);
#pragma omp parallel
    {
        std::vector<std::pair<std::size_t, Counterexample>> local;
#pragma omp for schedule(static)
        for (long i = 0; i < total; ++i) {
            if (auto c = check(static_cast<std::size_t>(i))) local.emplace_back(i, std::move(*c));
        }
#pragma omp critical
        found.insert(found.end(), std::make_move_iterator(local.begin()),
                     std::make_move_iterator(local.end()));
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Counterexample> out;
    out.reserve(found.size());
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
}

template <typename Check>
std::vector<Counterexample> scan_serial(std::size_t n, Check check) {
    std::vector<Counterexample> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = check(i)) out.push_back(std::move(*c));
    }
    return out;
}

auto tree_vs_rules(const DecisionTree& t, const ReferenceEvaluator& ref, const DomainSpace& space) {
    return [&t, &ref, &space](std::size_t i) -> std::optional<Counterexample> {
        Packet p = space.at(i);
        auto got = action_of(evaluate_tree(t, p));
        auto want = action_of(ref(p));
        if (got == want) return std::nullopt;
        return Counterexample{std::move(p), std::move(got), std::move(want)};
    };
}

}  // namespace

std::vector<Counterexample> equivalence(const DecisionTree& t, const RuleSet& rs,
                                        Semantics semantics, const DomainSpace& space) {
    ReferenceEvaluator ref(rs, semantics);
    return scan_parallel(space.size(), tree_vs_rules(t, ref, space));
}

std::vector<Counterexample> equivalence_serial(const DecisionTree& t, const RuleSet& rs,
                                               Semantics semantics, const DomainSpace& space) {
    ReferenceEvaluator ref(rs, semantics);
    return scan_serial(space.size(), tree_vs_rules(t, ref, space));
}

std::vector<Counterexample> compare_trees(const DecisionTree& a, const DecisionTree& b,
                                          const DomainSpace& space) {
    return scan_parallel(space.size(), [&](std::size_t i) -> std::optional<Counterexample> {
        Packet p = space.at(i);
        auto x = action_of(evaluate_tree(a, p));
        auto y = action_of(evaluate_tree(b, p));
        if (x == y) return std::nullopt;
        return Counterexample{std::move(p), std::move(x), std::move(y)};
    });
}

std::string format_packet(const Packet& p, const Schema& schema) {
    std::vector<std::string> parts;
    for (std::size_t m = 0; m < p.size() && m < schema.size(); ++m) {
        const AttributeDef& attr = schema.conditions[m];
        parts.push_back(attr.name + "=" + attr.format_point(p[m]));
    }
    return detail::join(parts, ",");
}

Packet parse_packet(std::string_view text, const Schema& schema) {
    Packet p(schema.size());
    std::vector<bool> seen(schema.size(), false);
    for (std::string_view item : detail::split(text, ',')) {
        item = detail::trim(item);
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("packet field '" + std::string(item) + "' lacks '='");
        }
        std::string name(detail::trim(item.substr(0, eq)));
        auto idx = schema.index_of(name);
        if (!idx) throw SchemaError("packet names unknown attribute '" + name + "'");
        if (seen[*idx]) throw ParseError("packet repeats attribute '" + name + "'");
        const AttributeDef& attr = schema.conditions[*idx];
        std::string_view value = detail::trim(item.substr(eq + 1));
        if (attr.kind == AttrKind::Label && attr.open && !attr.label_point(value)) {
            p[*idx] = attr.other_point();
        } else {
            p[*idx] = attr.parse_point(value);
        }
        seen[*idx] = true;
    }
    for (std::size_t m = 0; m < schema.size(); ++m) {
        if (!seen[m]) {
            throw ParseError("packet lacks attribute '" + schema.conditions[m].name + "'");
        }
    }
    return p;
}

}  // namespace secinterop
