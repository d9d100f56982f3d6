#pragma once

// Expected rule tables of the firewall/IDS case study, as
// attribute -> formatted value maps (the decision under "action").

#include <map>
#include <string>
#include <vector>

#include "secinterop/policy.hpp"

namespace secinterop::testing {

using Row = std::map<std::string, std::string>;
using Rows = std::vector<Row>;

std::string fixture_path(const std::string& name);
RuleSet load_fixture(const std::string& name);
std::string read_text(const std::string& path);

// Rows of `rs` in rule order; attributes missing from `rs` are absent.
Rows rows_of(const RuleSet& rs);
// Sorted copy, for order-insensitive comparison.
Rows sorted(Rows rows);
std::string describe(const Rows& rows);

// Relevant firewall rules.
Rows table_relevant_fw();
// Firewall rules extended with the IDS attributes.
Rows table_extended_fw();
// Global rule set: extended firewall rules followed by the IDS rules.
Rows table_global();
// Firewall and IDS rules after joint correction.
Rows table_corrected_fw();
Rows table_corrected_ids();

}  // namespace secinterop::testing
