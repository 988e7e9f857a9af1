#ifndef SHASIM_INTERVAL_HPP_
#define SHASIM_INTERVAL_HPP_

#include <limits>
#include <string>
#include <vector>

namespace shasim {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ============================================================================
// Interval — a scalar interval with independently open/closed ends.
// Infinite ends are always treated as open.
// ============================================================================

struct Interval {
    // Infinite ends are canonically open; the defaults give the full line.
    double lo = -kInf;
    double hi = kInf;
    bool lo_open = true;
    bool hi_open = true;

    static Interval full() { return {}; }
    static Interval closed(double a, double b) { return {a, b, false, false}; }
    static Interval point(double a) { return {a, a, false, false}; }
    static Interval empty_interval() { return {1.0, 0.0, false, false}; }

    bool empty() const {
        if (lo > hi) return true;
        if (lo == hi) return lo_open || hi_open;
        return false;
    }

    bool contains(double x) const {
        if (x < lo || (x == lo && lo_open)) return false;
        if (x > hi || (x == hi && hi_open)) return false;
        return true;
    }

    bool is_full() const { return lo == -kInf && hi == kInf; }

    // Width; infinite for unbounded intervals, 0 for empty ones.
    double length() const { return empty() ? 0.0 : hi - lo; }

    Interval intersect(const Interval& o) const;

    // Same interval with the open flags at infinite ends forced.
    Interval canonical() const {
        Interval r = *this;
        if (r.lo == -kInf) r.lo_open = true;
        if (r.hi == kInf) r.hi_open = true;
        return r;
    }

    bool operator==(const Interval& o) const = default;

    std::string to_string() const;
};

// ============================================================================
// Box — one interval per variable; the trivial box is all-(-inf,inf).
// ============================================================================

struct Box {
    std::vector<Interval> dims;

    Box() = default;
    explicit Box(std::size_t dimension) : dims(dimension) {}

    std::size_t dimension() const { return dims.size(); }

    static Box full(std::size_t dimension) { return Box(dimension); }

    bool contains(const std::vector<double>& v) const;
    bool empty() const;
    bool is_full() const;
    Box intersect(const Box& o) const;

    bool operator==(const Box& o) const = default;

    std::string to_string(const std::vector<std::string>& var_names) const;
};

// ============================================================================
// TimeIntervalSet — a finite union of disjoint intervals over t >= 0.
//
// Parts are kept sorted and normalized: empty parts dropped, adjacent parts
// merged when they share an endpoint and at least one side is closed there
// ([0,3) + [3,9] -> [0,9], but [0,3) + (3,9] stays two parts).
// ============================================================================

class TimeIntervalSet {
  public:
    TimeIntervalSet() = default;
    explicit TimeIntervalSet(Interval iv) { parts_.push_back(iv); normalize(); }
    explicit TimeIntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) {
        normalize();
    }

    static TimeIntervalSet empty_set() { return TimeIntervalSet(); }
    // The whole nonnegative time axis [0, inf).
    static TimeIntervalSet full();

    bool empty() const { return parts_.empty(); }
    bool contains(double t) const;

    TimeIntervalSet unite(const TimeIntervalSet& o) const;
    TimeIntervalSet intersect(const TimeIntervalSet& o) const;
    // Complement within [0, inf).
    TimeIntervalSet complement() const;

    // Total length of all parts (may be +inf).
    double measure() const;
    // Supremum of the set; 0 for the empty set.
    double sup() const;
    // Infimum of the set; +inf for the empty set.
    double inf() const;

    const std::vector<Interval>& parts() const { return parts_; }

    bool operator==(const TimeIntervalSet& o) const = default;

    std::string to_string() const;

  private:
    void normalize();
    std::vector<Interval> parts_;
};

// Times t >= 0 at which the linear function c0 + c1*t lies in `range`.
// Used for box guards, invariants and reset images along constant-rate flows.
TimeIntervalSet linear_in_interval(double c0, double c1, const Interval& range);

}  // namespace shasim

#endif  // SHASIM_INTERVAL_HPP_
