#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "secinterop/relations.hpp"

namespace secinterop {

enum class IntraKind { Shadowing, Generalization, Redundancy, Correlation };
enum class Severity { Error, Warning };

std::string_view to_string(IntraKind kind);
std::string_view to_string(Severity s);

struct IntraAnomaly {
    IntraKind kind = IntraKind::Shadowing;
    int earlier = 0;
    int later = 0;
    RuleRelation evidence;  // relate(earlier, later)
    Severity severity = Severity::Error;

    friend bool operator==(const IntraAnomaly&, const IntraAnomaly&) = default;
};

// Anomaly for the ordered pair (earlier, later), if any.
std::optional<IntraAnomaly> classify_intra(const Rule& earlier, const Rule& later,
                                           const Schema& schema);

// All anomalous pairs i < j, sorted by (earlier, later, kind). The pairwise
// scan runs under OpenMP when available.
std::vector<IntraAnomaly> detect_intra(const RuleSet& rs);

// Single-threaded reference of detect_intra.
std::vector<IntraAnomaly> detect_intra_serial(const RuleSet& rs);

}  // namespace secinterop
