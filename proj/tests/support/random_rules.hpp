#pragma once

// Random schemas and rule sets over small domains for property tests.

#include <random>
#include <string>
#include <vector>

#include "secinterop/policy.hpp"

namespace secinterop::testing {

using Rng = std::mt19937_64;

struct GenLimits {
    std::size_t max_attributes = 4;
    std::size_t max_rules = 20;
    Point max_domain = 40;  // points per interval domain
};

// One attribute of a random kind. Interval domains hold 2..max_domain points.
AttributeDef random_attribute(Rng& rng, const std::string& name, const GenLimits& lim);

// Random value set: wildcard, one interval, or a union of two; for
// enumerations a random non-empty subset.
ValueSet random_value(Rng& rng, const AttributeDef& attr);

Schema random_schema(Rng& rng, const GenLimits& lim);

RuleSet random_rules(Rng& rng, const Schema& schema, const GenLimits& lim,
                     ComponentKind kind = ComponentKind::Filtering, const std::string& name = "C");

RuleSet random_ruleset(Rng& rng, const GenLimits& lim = {});

struct RandomPair {
    RuleSet preceding;
    RuleSet following;
};

// A filtering and an alerting component over overlapping attribute sets
// drawn from one pool. Shared attributes are declared identically.
RandomPair random_pair(Rng& rng, const GenLimits& lim = {});

}  // namespace secinterop::testing
