#include "shasim/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace shasim {

namespace {

std::string num(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, r.ptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// Interval
// ---------------------------------------------------------------------------

Interval Interval::intersect(const Interval& o) const {
    Interval r;
    if (lo > o.lo) {
        r.lo = lo;
        r.lo_open = lo_open;
    } else if (lo < o.lo) {
        r.lo = o.lo;
        r.lo_open = o.lo_open;
    } else {
        r.lo = lo;
        r.lo_open = lo_open || o.lo_open;
    }
    if (hi < o.hi) {
        r.hi = hi;
        r.hi_open = hi_open;
    } else if (hi > o.hi) {
        r.hi = o.hi;
        r.hi_open = o.hi_open;
    } else {
        r.hi = hi;
        r.hi_open = hi_open || o.hi_open;
    }
    return r;
}

std::string Interval::to_string() const {
    if (empty()) return "{}";
    std::string s;
    s += (lo_open || lo == -kInf) ? '(' : '[';
    s += num(lo);
    s += ", ";
    s += num(hi);
    s += (hi_open || hi == kInf) ? ')' : ']';
    return s;
}

// ---------------------------------------------------------------------------
// Box
// ---------------------------------------------------------------------------

bool Box::contains(const std::vector<double>& v) const {
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (!dims[i].contains(v[i])) return false;
    }
    return true;
}

bool Box::empty() const {
    for (const auto& d : dims) {
        if (d.empty()) return true;
    }
    return false;
}

bool Box::is_full() const {
    for (const auto& d : dims) {
        if (!d.is_full()) return false;
    }
    return true;
}

Box Box::intersect(const Box& o) const {
    Box r(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        r.dims[i] = dims[i].intersect(o.dims[i]);
    }
    return r;
}

std::string Box::to_string(const std::vector<std::string>& var_names) const {
    std::ostringstream oss;
    bool first = true;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i].is_full()) continue;
        if (!first) oss << " and ";
        oss << var_names[i] << " in " << dims[i].to_string();
        first = false;
    }
    if (first) oss << "true";
    return oss.str();
}

// ---------------------------------------------------------------------------
// TimeIntervalSet
// ---------------------------------------------------------------------------

TimeIntervalSet TimeIntervalSet::full() {
    return TimeIntervalSet(Interval{0.0, kInf, false, true});
}

void TimeIntervalSet::normalize() {
    std::vector<Interval> kept;
    for (auto iv : parts_) {
        // Clip to the nonnegative time axis.
        iv = iv.canonical().intersect(Interval{0.0, kInf, false, true});
        if (!iv.empty()) kept.push_back(iv);
    }
    std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return !a.lo_open && b.lo_open;
    });

    std::vector<Interval> merged;
    for (const auto& iv : kept) {
        if (merged.empty()) {
            merged.push_back(iv);
            continue;
        }
        Interval& last = merged.back();
        bool overlaps;
        if (iv.lo < last.hi) {
            overlaps = true;
        } else if (iv.lo > last.hi) {
            overlaps = false;
        } else {
            // Touching endpoints merge unless both sides are open there.
            overlaps = !(last.hi_open && iv.lo_open);
        }
        if (overlaps) {
            if (iv.hi > last.hi) {
                last.hi = iv.hi;
                last.hi_open = iv.hi_open;
            } else if (iv.hi == last.hi) {
                last.hi_open = last.hi_open && iv.hi_open;
            }
        } else {
            merged.push_back(iv);
        }
    }
    parts_ = std::move(merged);
}

bool TimeIntervalSet::contains(double t) const {
    for (const auto& p : parts_) {
        if (p.contains(t)) return true;
        if (t < p.lo) break;
    }
    return false;
}

TimeIntervalSet TimeIntervalSet::unite(const TimeIntervalSet& o) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), o.parts_.begin(), o.parts_.end());
    return TimeIntervalSet(std::move(all));
}

TimeIntervalSet TimeIntervalSet::intersect(const TimeIntervalSet& o) const {
    std::vector<Interval> out;
    for (const auto& a : parts_) {
        for (const auto& b : o.parts_) {
            Interval iv = a.intersect(b);
            if (!iv.empty()) out.push_back(iv);
        }
    }
    return TimeIntervalSet(std::move(out));
}

TimeIntervalSet TimeIntervalSet::complement() const {
    std::vector<Interval> out;
    double cursor = 0.0;
    bool cursor_open = false;  // complement so far includes `cursor` itself?
    for (const auto& p : parts_) {
        Interval gap{cursor, p.lo, cursor_open, !p.lo_open};
        if (!gap.empty()) out.push_back(gap);
        cursor = p.hi;
        cursor_open = !p.hi_open;
        if (cursor == kInf) return TimeIntervalSet(std::move(out));
    }
    out.push_back(Interval{cursor, kInf, cursor_open, true});
    return TimeIntervalSet(std::move(out));
}

double TimeIntervalSet::measure() const {
    double m = 0.0;
    for (const auto& p : parts_) m += p.length();
    return m;
}

double TimeIntervalSet::sup() const { return parts_.empty() ? 0.0 : parts_.back().hi; }

double TimeIntervalSet::inf() const { return parts_.empty() ? kInf : parts_.front().lo; }

std::string TimeIntervalSet::to_string() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i > 0) s += " u ";
        s += parts_[i].to_string();
    }
    return s;
}

// ---------------------------------------------------------------------------
// linear_in_interval
// ---------------------------------------------------------------------------

TimeIntervalSet linear_in_interval(double c0, double c1, const Interval& range) {
    if (range.empty()) return TimeIntervalSet::empty_set();
    if (c1 == 0.0) {
        return range.contains(c0) ? TimeIntervalSet::full() : TimeIntervalSet::empty_set();
    }
    Interval t;
    if (c1 > 0.0) {
        t.lo = range.lo == -kInf ? -kInf : (range.lo - c0) / c1;
        t.lo_open = range.lo_open;
        t.hi = range.hi == kInf ? kInf : (range.hi - c0) / c1;
        t.hi_open = range.hi_open;
    } else {
        t.lo = range.hi == kInf ? -kInf : (range.hi - c0) / c1;
        t.lo_open = range.hi_open;
        t.hi = range.lo == -kInf ? kInf : (range.lo - c0) / c1;
        t.hi_open = range.lo_open;
    }
    return TimeIntervalSet(t);
}

}  // namespace shasim
