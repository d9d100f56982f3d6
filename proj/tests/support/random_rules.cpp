#include "random_rules.hpp"

#include <algorithm>

namespace secinterop::testing {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

IntervalSet random_interval(Rng& rng, const IntervalSet& dom) {
    Point lo = dom.min();
    Point hi = dom.max();
    Point a = static_cast<Point>(uniform(rng, lo, hi));
    Point b = static_cast<Point>(uniform(rng, lo, hi));
    if (a > b) std::swap(a, b);
    return IntervalSet::range(a, b);
}

}  // namespace

AttributeDef random_attribute(Rng& rng, const std::string& name, const GenLimits& lim) {
    Point size = static_cast<Point>(uniform(rng, 2, lim.max_domain));
    switch (uniform(rng, 0, 4)) {
        case 0:
            return AttributeDef::enumeration(name, AttrKind::Protocol, {"ICMP", "TCP", "UDP"}, false);
        case 1: {
            std::vector<std::string> labels = {"alpha", "beta", "gamma"};
            labels.resize(uniform(rng, 1, 3));
            return AttributeDef::enumeration(name, AttrKind::Label, labels, true);
        }
        case 2: {
            Point base = (10U << 24) + static_cast<Point>(uniform(rng, 0, 1000));
            return AttributeDef::interval(name, AttrKind::Ipv4,
                                          IntervalSet::range(base, base + size - 1));
        }
        case 3:
            return AttributeDef::interval(name, AttrKind::Port, IntervalSet::range(0, size - 1));
        default: {
            Point base = static_cast<Point>(uniform(rng, 0, 100));
            return AttributeDef::interval(name, AttrKind::Integer,
                                          IntervalSet::range(base, base + size - 1));
        }
    }
}

ValueSet random_value(Rng& rng, const AttributeDef& attr) {
    if (chance(rng, 0.25)) return ValueSet::any(attr);
    if (is_enum_kind(attr.kind)) {
        std::vector<Interval> parts;
        for (const Interval& iv : attr.domain.parts()) {
            for (Point p = iv.lo; p <= iv.hi; ++p) {
                if (chance(rng, 0.5)) parts.push_back({p, p});
            }
        }
        if (parts.empty()) {
            Point p = static_cast<Point>(uniform(rng, attr.domain.min(), attr.domain.max()));
            parts.push_back({p, p});
        }
        return ValueSet::of(IntervalSet::of(parts), attr);
    }
    IntervalSet v = random_interval(rng, attr.domain);
    if (chance(rng, 0.3)) v = v.unite(random_interval(rng, attr.domain));
    return ValueSet::of(v, attr);
}

Schema random_schema(Rng& rng, const GenLimits& lim) {
    std::vector<AttributeDef> attrs;
    std::size_t n = uniform(rng, 1, lim.max_attributes);
    for (std::size_t i = 0; i < n; ++i) {
        attrs.push_back(random_attribute(rng, "a" + std::to_string(i), lim));
    }
    return make_schema(std::move(attrs), {"accept", "deny"});
}

RuleSet random_rules(Rng& rng, const Schema& schema, const GenLimits& lim, ComponentKind kind,
                     const std::string& name) {
    RuleSet rs;
    rs.schema = schema;
    rs.kind = kind;
    rs.name = name;
    const auto& actions = schema.decision.labels;
    std::size_t t = uniform(rng, 0, lim.max_rules);
    for (std::size_t i = 0; i < t; ++i) {
        Rule r;
        r.id = static_cast<int>(i) + 1;
        for (const AttributeDef& a : schema.conditions) r.condition.push_back(random_value(rng, a));
        r.action = actions[uniform(rng, 0, actions.size() - 1)];
        r.origin = name;
        rs.rules.push_back(std::move(r));
    }
    return rs;
}

RuleSet random_ruleset(Rng& rng, const GenLimits& lim) {
    return random_rules(rng, random_schema(rng, lim), lim);
}

RandomPair random_pair(Rng& rng, const GenLimits& lim) {
    std::size_t pool_size = uniform(rng, 2, lim.max_attributes + 1);
    std::vector<AttributeDef> pool;
    for (std::size_t i = 0; i < pool_size; ++i) {
        pool.push_back(random_attribute(rng, "a" + std::to_string(i), lim));
    }
    // The alerting side often carries a label attribute of its own.
    if (chance(rng, 0.7)) {
        pool.back() = AttributeDef::enumeration(pool.back().name, AttrKind::Label,
                                                {"worm", "scan"}, true);
    }

    auto pick = [&](bool alerting) {
        std::vector<AttributeDef> out;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            bool label_only = i + 1 == pool.size() && pool[i].kind == AttrKind::Label;
            if (label_only && !alerting) continue;
            if (chance(rng, 0.75) && out.size() < lim.max_attributes) out.push_back(pool[i]);
        }
        if (out.empty()) out.push_back(pool.front());
        return out;
    };

    std::vector<AttributeDef> fa = pick(false);
    std::vector<AttributeDef> ia = pick(true);
    if (chance(rng, 0.5)) std::shuffle(ia.begin(), ia.end(), rng);
    RandomPair p;
    p.preceding = random_rules(rng, make_schema(fa, {"accept", "deny"}), lim,
                               ComponentKind::Filtering, "FW");
    p.following = random_rules(rng, make_schema(ia, {"accept", "reject"}), lim,
                               ComponentKind::Alerting, "IDS");
    return p;
}

}  // namespace secinterop::testing
