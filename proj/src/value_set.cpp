#include "secinterop/value_set.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "secinterop/error.hpp"
#include "text_util.hpp"

namespace secinterop {

IntervalSet IntervalSet::of(std::vector<Interval> parts) {
    std::sort(parts.begin(), parts.end());
    IntervalSet out;
    for (const Interval& iv : parts) {
        if (!out.parts_.empty() &&
            static_cast<std::uint64_t>(out.parts_.back().hi) + 1 >= iv.lo) {
            out.parts_.back().hi = std::max(out.parts_.back().hi, iv.hi);
        } else {
            out.parts_.push_back(iv);
        }
    }
    return out;
}

IntervalSet IntervalSet::range(Point lo, Point hi) {
    IntervalSet out;
    if (lo <= hi) out.parts_.push_back({lo, hi});
    return out;
}

std::uint64_t IntervalSet::size() const {
    std::uint64_t n = 0;
    for (const Interval& iv : parts_) n += static_cast<std::uint64_t>(iv.hi) - iv.lo + 1;
    return n;
}

bool IntervalSet::contains(Point p) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), p,
                               [](Point v, const Interval& iv) { return v < iv.lo; });
    if (it == parts_.begin()) return false;
    --it;
    return p <= it->hi;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return of(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    IntervalSet out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < parts_.size() && j < other.parts_.size()) {
        const Interval& a = parts_[i];
        const Interval& b = other.parts_[j];
        Point lo = std::max(a.lo, b.lo);
        Point hi = std::min(a.hi, b.hi);
        if (lo <= hi) out.parts_.push_back({lo, hi});
        if (a.hi < b.hi) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const {
    IntervalSet out;
    std::size_t j = 0;
    for (Interval cur : parts_) {
        bool alive = true;
        while (j < other.parts_.size() && other.parts_[j].hi < cur.lo) ++j;
        for (std::size_t k = j; k < other.parts_.size() && other.parts_[k].lo <= cur.hi; ++k) {
            const Interval& cut = other.parts_[k];
            if (cut.lo > cur.lo) out.parts_.push_back({cur.lo, cut.lo - 1});
            if (cut.hi >= cur.hi) {
                alive = false;
                break;
            }
            cur.lo = cut.hi + 1;
        }
        if (alive) out.parts_.push_back(cur);
    }
    return out;
}

bool IntervalSet::subset_of(const IntervalSet& other) const {
    return subtract(other).empty();
}

bool IntervalSet::disjoint_with(const IntervalSet& other) const {
    return intersect(other).empty();
}

namespace {

constexpr std::string_view kKindNames[] = {"protocol-enum", "ipv4-range", "port-range",
                                           "integer-range", "label-enum"};

bool is_wildcard_token(std::string_view t) {
    return detail::iequals(t, "any") || detail::iequals(t, "all");
}

Point parse_unsigned(std::string_view text, std::uint64_t max) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("expected an unsigned integer, got '" + std::string(text) + "'");
    }
    if (value > max) {
        throw DomainError("value " + std::string(text) + " exceeds " + std::to_string(max));
    }
    return static_cast<Point>(value);
}

// Dotted quad with optional trailing `*` octets and an ignored `/nn` suffix.
Interval parse_ipv4(std::string_view text) {
    text = detail::trim(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        parse_unsigned(detail::trim(text.substr(slash + 1)), 32);
        text = detail::trim(text.substr(0, slash));
    }
    std::vector<std::string_view> octets = detail::split(text, '.');
    if (octets.size() != 4) {
        throw ParseError("malformed IPv4 address '" + std::string(text) + "'");
    }
    Point lo = 0;
    Point hi = 0;
    bool wild = false;
    for (std::string_view o : octets) {
        o = detail::trim(o);
        lo <<= 8;
        hi <<= 8;
        if (o == "*") {
            wild = true;
            hi |= 0xffU;
            continue;
        }
        if (wild) {
            throw ParseError("wildcard octets must be trailing in '" + std::string(text) + "'");
        }
        Point v = parse_unsigned(o, 255);
        lo |= v;
        hi |= v;
    }
    return {lo, hi};
}

Interval parse_scalar(std::string_view text, AttrKind kind) {
    switch (kind) {
        case AttrKind::Ipv4:
            return parse_ipv4(text);
        case AttrKind::Port: {
            Point p = parse_unsigned(detail::trim(text), 0xffffffffULL);
            return {p, p};
        }
        default: {
            Point p = parse_unsigned(detail::trim(text), 0xffffffffULL);
            return {p, p};
        }
    }
}

bool valid_label(std::string_view s) {
    if (s.empty() || s.front() == '@') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
               c == ':' || c == '+' || c == '/';
    });
}

}  // namespace

std::string_view to_string(AttrKind kind) { return kKindNames[static_cast<int>(kind)]; }

std::optional<AttrKind> attr_kind_from_string(std::string_view text) {
    for (int i = 0; i < 5; ++i) {
        if (kKindNames[i] == text) return static_cast<AttrKind>(i);
    }
    return std::nullopt;
}

std::string format_ipv4(Point p) {
    std::ostringstream os;
    os << ((p >> 24) & 0xff) << '.' << ((p >> 16) & 0xff) << '.' << ((p >> 8) & 0xff) << '.'
       << (p & 0xff);
    return os.str();
}

AttributeDef AttributeDef::interval(std::string name, AttrKind kind, IntervalSet domain) {
    if (is_enum_kind(kind)) throw SchemaError("attribute '" + name + "' is enumerated");
    if (domain.empty()) throw SchemaError("attribute '" + name + "' has an empty domain");
    AttributeDef a;
    a.name = std::move(name);
    a.kind = kind;
    a.domain = std::move(domain);
    return a;
}

AttributeDef AttributeDef::enumeration(std::string name, AttrKind kind,
                                       std::vector<std::string> labels, bool open) {
    if (!is_enum_kind(kind)) throw SchemaError("attribute '" + name + "' is not enumerated");
    for (const std::string& l : labels) {
        if (!valid_label(l) || is_wildcard_token(l)) {
            throw ParseError("invalid label '" + l + "' for attribute '" + name + "'");
        }
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.empty() && !open) throw SchemaError("attribute '" + name + "' has an empty domain");
    AttributeDef a;
    a.name = std::move(name);
    a.kind = kind;
    a.labels = std::move(labels);
    a.open = open;
    Point last = static_cast<Point>(a.labels.size()) - (open ? 0 : 1);
    a.domain = IntervalSet::range(0, last);
    return a;
}

std::optional<Point> AttributeDef::label_point(std::string_view label) const {
    if (open && label == kOtherLabel) return other_point();
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) return std::nullopt;
    return static_cast<Point>(it - labels.begin());
}

std::string AttributeDef::point_name(Point p) const {
    if (p < labels.size()) return labels[p];
    return std::string(kOtherLabel);
}

ValueSet AttributeDef::parse_value(std::string_view text) const {
    text = detail::trim(text);
    if (text.empty()) throw ParseError("empty value for attribute '" + name + "'");
    if (is_wildcard_token(text)) return ValueSet::any(*this);
    std::vector<Interval> parts;
    for (std::string_view item : detail::split(text, ',')) {
        item = detail::trim(item);
        if (item.empty()) throw ParseError("empty item in value '" + std::string(text) + "'");
        if (is_enum_kind(kind)) {
            auto p = label_point(item);
            if (!p) {
                throw DomainError("label '" + std::string(item) + "' is not in the domain of '" +
                                  name + "'");
            }
            parts.push_back({*p, *p});
            continue;
        }
        // Ranges use '-' between endpoints; none of the scalar syntaxes contain one.
        auto dash = item.find('-');
        Interval iv;
        if (dash == std::string_view::npos) {
            iv = parse_scalar(item, kind);
        } else {
            Interval lo = parse_scalar(item.substr(0, dash), kind);
            Interval hi = parse_scalar(item.substr(dash + 1), kind);
            iv = {lo.lo, hi.hi};
            if (iv.lo > iv.hi) {
                throw ParseError("range '" + std::string(item) + "' has lo > hi");
            }
        }
        if (!IntervalSet::range(iv.lo, iv.hi).subset_of(domain)) {
            throw DomainError("value '" + std::string(item) + "' is outside the domain of '" +
                              name + "'");
        }
        parts.push_back(iv);
    }
    return ValueSet::of(IntervalSet::of(std::move(parts)), *this);
}

Point AttributeDef::parse_point(std::string_view text) const {
    ValueSet v = parse_value(text);
    if (v.points().size() != 1) {
        throw ParseError("expected a single value for '" + name + "', got '" + std::string(text) +
                         "'");
    }
    return v.points().min();
}

std::string AttributeDef::format_point(Point p) const {
    switch (kind) {
        case AttrKind::Ipv4:
            return format_ipv4(p);
        case AttrKind::Protocol:
        case AttrKind::Label:
            return point_name(p);
        default:
            return std::to_string(p);
    }
}

std::string AttributeDef::format_value(const ValueSet& v) const {
    if (v.is_wildcard()) return "any";
    std::string out;
    auto add = [&out](const std::string& s) {
        if (!out.empty()) out += ',';
        out += s;
    };
    for (const Interval& iv : v.points().parts()) {
        if (is_enum_kind(kind)) {
            for (std::uint64_t p = iv.lo; p <= iv.hi; ++p) add(point_name(static_cast<Point>(p)));
        } else if (iv.lo == iv.hi) {
            add(format_point(iv.lo));
        } else {
            add(format_point(iv.lo) + "-" + format_point(iv.hi));
        }
    }
    return out;
}

std::string AttributeDef::format_domain() const {
    if (is_enum_kind(kind)) return detail::join(labels, ",");
    ValueSet full = ValueSet::of(domain, AttributeDef{});
    return format_value(full);
}

ValueSet ValueSet::any(const AttributeDef& attr) { return of(attr.domain, attr); }

ValueSet ValueSet::none(const AttributeDef& attr) { return of(IntervalSet{}, attr); }

ValueSet ValueSet::of(IntervalSet points, const AttributeDef& attr) {
    ValueSet v;
    v.wildcard_ = !points.empty() && points == attr.domain;
    v.points_ = std::move(points);
    v.kind_ = attr.kind;
    return v;
}

bool label_less(const ValueSet& a, const ValueSet& b) {
    if (a.empty() || b.empty()) return a.empty() && !b.empty();
    if (a.points().min() != b.points().min()) return a.points().min() < b.points().min();
    return a.points() < b.points();
}

namespace {

void check_kinds(const ValueSet& a, const ValueSet& b, const AttributeDef& dom) {
    if (a.kind() != dom.kind || b.kind() != dom.kind) {
        throw SchemaError("attribute-kind mismatch for '" + dom.name + "'");
    }
}

}  // namespace

ValueSet value_set_op(SetOp op, const ValueSet& a, const ValueSet& b, const AttributeDef& dom) {
    check_kinds(a, b, dom);
    switch (op) {
        case SetOp::Intersect:
            return ValueSet::of(a.points().intersect(b.points()), dom);
        case SetOp::Difference:
            return ValueSet::of(a.points().subtract(b.points()), dom);
        case SetOp::Union:
            return ValueSet::of(a.points().unite(b.points()), dom);
    }
    return {};
}

bool value_set_rel(SetRel rel, const ValueSet& a, const ValueSet& b, const AttributeDef& dom) {
    check_kinds(a, b, dom);
    switch (rel) {
        case SetRel::Subset:
            return a.points().subset_of(b.points());
        case SetRel::ProperSubset:
            return a.points() != b.points() && a.points().subset_of(b.points());
        case SetRel::Equal:
            return a.points() == b.points();
        case SetRel::Disjoint:
            return a.points().disjoint_with(b.points());
    }
    return false;
}

ValueSet intersect(const ValueSet& a, const ValueSet& b, const AttributeDef& dom) {
    return value_set_op(SetOp::Intersect, a, b, dom);
}

ValueSet difference(const ValueSet& a, const ValueSet& b, const AttributeDef& dom) {
    return value_set_op(SetOp::Difference, a, b, dom);
}

ValueSet unite(const ValueSet& a, const ValueSet& b, const AttributeDef& dom) {
    return value_set_op(SetOp::Union, a, b, dom);
}

bool is_specific(const ValueSet& v, const AttributeDef& attr) {
    if (v.empty() || v.is_wildcard()) return false;
    return !(attr.open && v.contains(attr.other_point()));
}

AttributeDef merge_attribute(const AttributeDef& a, const AttributeDef& b) {
    if (a.kind != b.kind) {
        throw SchemaError("attribute '" + a.name + "' declared as both " +
                          std::string(to_string(a.kind)) + " and " +
                          std::string(to_string(b.kind)));
    }
    if (!is_enum_kind(a.kind)) {
        return AttributeDef::interval(a.name, a.kind, a.domain.unite(b.domain));
    }
    std::vector<std::string> labels = a.labels;
    labels.insert(labels.end(), b.labels.begin(), b.labels.end());
    return AttributeDef::enumeration(a.name, a.kind, std::move(labels), a.open || b.open);
}

bool domain_within(const AttributeDef& inner, const AttributeDef& outer) {
    if (inner.kind != outer.kind) return false;
    if (!is_enum_kind(inner.kind)) return inner.domain.subset_of(outer.domain);
    if (inner.open && !outer.open) return false;
    return std::all_of(inner.labels.begin(), inner.labels.end(),
                       [&](const std::string& l) { return outer.label_point(l).has_value(); });
}

ValueSet rebase(const ValueSet& v, const AttributeDef& from, const AttributeDef& to) {
    if (!domain_within(from, to)) {
        throw SchemaError("domain of '" + from.name + "' does not fit the target declaration");
    }
    if (v.is_wildcard()) {
        if (from == to) return ValueSet::any(to);
        if (!is_enum_kind(from.kind)) return ValueSet::of(from.domain, to);
    }
    if (!is_enum_kind(from.kind)) return ValueSet::of(v.points(), to);
    std::vector<Interval> parts;
    for (const Interval& iv : v.points().parts()) {
        for (std::uint64_t p = iv.lo; p <= iv.hi; ++p) {
            if (from.open && p == from.other_point()) {
                for (Point q = 0; q < to.labels.size(); ++q) {
                    if (!from.label_point(to.labels[q])) parts.push_back({q, q});
                }
                parts.push_back({to.other_point(), to.other_point()});
            } else {
                Point q = *to.label_point(from.labels[p]);
                parts.push_back({q, q});
            }
        }
    }
    return ValueSet::of(IntervalSet::of(std::move(parts)), to);
}

}  // namespace secinterop
