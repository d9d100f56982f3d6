#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace secinterop {

using Point = std::uint32_t;

// Closed interval [lo, hi].
struct Interval {
    Point lo = 0;
    Point hi = 0;

    friend bool operator==(const Interval&, const Interval&) = default;
    friend auto operator<=>(const Interval&, const Interval&) = default;
};

// Union of closed intervals over 32-bit points, kept canonical: sorted,
// non-overlapping and non-adjacent.
class IntervalSet {
  public:
    IntervalSet() = default;

    static IntervalSet of(std::vector<Interval> parts);
    static IntervalSet range(Point lo, Point hi);
    static IntervalSet point(Point p) { return range(p, p); }

    bool empty() const { return parts_.empty(); }
    const std::vector<Interval>& parts() const { return parts_; }
    // Number of points covered.
    std::uint64_t size() const;
    Point min() const { return parts_.front().lo; }
    Point max() const { return parts_.back().hi; }

    bool contains(Point p) const;
    bool subset_of(const IntervalSet& other) const;
    bool disjoint_with(const IntervalSet& other) const;

    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet subtract(const IntervalSet& other) const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
    friend auto operator<=>(const IntervalSet&, const IntervalSet&) = default;

  private:
    std::vector<Interval> parts_;
};

enum class AttrKind { Protocol, Ipv4, Port, Integer, Label };

std::string_view to_string(AttrKind kind);
std::optional<AttrKind> attr_kind_from_string(std::string_view text);

inline bool is_enum_kind(AttrKind k) { return k == AttrKind::Protocol || k == AttrKind::Label; }

// Token used for the reserved member of open label enumerations: every label
// not named in the domain.
inline constexpr std::string_view kOtherLabel = "@other";

class ValueSet;

// One attribute A_m with its domain D_m. Enumerated kinds map their labels
// to the points 0..n-1 in lexicographic order; open enumerations append the
// reserved complement member as the last point.
struct AttributeDef {
    std::string name;
    AttrKind kind = AttrKind::Integer;
    IntervalSet domain;
    std::vector<std::string> labels;
    bool open = false;

    static AttributeDef interval(std::string name, AttrKind kind, IntervalSet domain);
    // labels need not be sorted or unique.
    static AttributeDef enumeration(std::string name, AttrKind kind, std::vector<std::string> labels,
                                    bool open);

    std::optional<Point> label_point(std::string_view label) const;
    // Point of the reserved member; only valid for open enumerations.
    Point other_point() const { return static_cast<Point>(labels.size()); }
    std::string point_name(Point p) const;

    // Parses a value token: `any`/`All`, a single value, `lo-hi`, or a
    // comma-joined union of those. Throws ParseError / DomainError.
    ValueSet parse_value(std::string_view text) const;
    std::string format_value(const ValueSet& v) const;
    // Single concrete value (for packets).
    Point parse_point(std::string_view text) const;
    std::string format_point(Point p) const;
    // Domain as written in a rule-file header (no reserved member).
    std::string format_domain() const;

    friend bool operator==(const AttributeDef&, const AttributeDef&) = default;
};

// Value constraint e_{m,w} of one attribute. Always canonical; the wildcard
// flag is set exactly when the points equal the owning attribute's domain.
class ValueSet {
  public:
    ValueSet() = default;

    static ValueSet any(const AttributeDef& attr);
    static ValueSet none(const AttributeDef& attr);
    static ValueSet of(IntervalSet points, const AttributeDef& attr);

    AttrKind kind() const { return kind_; }
    bool is_wildcard() const { return wildcard_; }
    bool empty() const { return points_.empty(); }
    const IntervalSet& points() const { return points_; }
    bool contains(Point p) const { return points_.contains(p); }

    friend bool operator==(const ValueSet& a, const ValueSet& b) {
        return a.kind_ == b.kind_ && a.points_ == b.points_;
    }

  private:
    IntervalSet points_;
    AttrKind kind_ = AttrKind::Integer;
    bool wildcard_ = false;
};

// Orders value sets by lower bound, then full interval list.
bool label_less(const ValueSet& a, const ValueSet& b);

enum class SetOp { Intersect, Difference, Union };
enum class SetRel { Subset, ProperSubset, Equal, Disjoint };

ValueSet value_set_op(SetOp op, const ValueSet& a, const ValueSet& b, const AttributeDef& dom);
bool value_set_rel(SetRel rel, const ValueSet& a, const ValueSet& b, const AttributeDef& dom);

ValueSet intersect(const ValueSet& a, const ValueSet& b, const AttributeDef& dom);
ValueSet difference(const ValueSet& a, const ValueSet& b, const AttributeDef& dom);
ValueSet unite(const ValueSet& a, const ValueSet& b, const AttributeDef& dom);

// True when a label set names only concrete labels: not the wildcard and not
// containing the reserved complement member.
bool is_specific(const ValueSet& v, const AttributeDef& attr);

// Union of two declarations of the same attribute. Kinds must agree.
AttributeDef merge_attribute(const AttributeDef& a, const AttributeDef& b);
// True when every point of `inner`'s domain is representable in `outer`.
bool domain_within(const AttributeDef& inner, const AttributeDef& outer);
// Re-expresses v (over `from`) in the point space of `to`. Requires
// domain_within(from, to); the reserved member of an open `from` expands to
// every `to` label that `from` does not name.
ValueSet rebase(const ValueSet& v, const AttributeDef& from, const AttributeDef& to);

std::string format_ipv4(Point p);

}  // namespace secinterop
