#include "shasim/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shasim/errors.hpp"

namespace shasim {

std::string ValidationReport::to_string() const {
    std::ostringstream oss;
    for (const auto& e : errors) oss << "error: " << e << "\n";
    for (const auto& w : warnings) oss << "warning: " << w << "\n";
    if (approximate) oss << "note: some checks used a conservative over-approximation\n";
    oss << (valid() ? "valid" : "invalid") << "\n";
    return oss.str();
}

HybridAutomaton::HybridAutomaton(std::vector<std::string> variables,
                                 std::vector<Location> locations, std::vector<Edge> edges,
                                 State init)
    : variables_(std::move(variables)),
      locations_(std::move(locations)),
      edges_(std::move(edges)),
      init_(std::move(init)) {
    out_edges_.resize(locations_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        int src = edges_[i].source;
        if (src >= 0 && src < static_cast<int>(locations_.size())) {
            out_edges_[src].push_back(static_cast<int>(i));
        }
    }
}

int HybridAutomaton::location_index(const std::string& name) const {
    for (std::size_t i = 0; i < locations_.size(); ++i) {
        if (locations_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

int HybridAutomaton::edge_index(const std::string& name) const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

// ----------------------------------------------------------------------------
// Semantics
// ----------------------------------------------------------------------------

State HybridAutomaton::advance(const State& s, double t) const {
    if (t < 0.0) throw InvariantViolation("advance: negative duration");
    const Location& loc = locations_[s.location];
    State out = s;
    for (std::size_t i = 0; i < out.valuation.size(); ++i) {
        out.valuation[i] += t * loc.flow[i];
    }
    // Linear trajectory in a box invariant: endpoint checks suffice.
    if (!loc.invariant.contains(s.valuation) || !loc.invariant.contains(out.valuation)) {
        throw InvariantViolation("advance: trajectory leaves invariant of " + loc.name);
    }
    return out;
}

State HybridAutomaton::take_jump(const State& s, int edge) const {
    const Edge& e = edges_[edge];
    if (e.source != s.location) {
        throw JumpDisabled("take_jump: state not in source location of " + e.name);
    }
    if (!e.guard.contains(s.valuation)) {
        throw JumpDisabled("take_jump: guard of " + e.name + " not satisfied");
    }
    State out;
    out.location = e.target;
    out.valuation = e.reset.apply(s.valuation);
    if (!locations_[e.target].invariant.contains(out.valuation)) {
        throw JumpDisabled("take_jump: reset of " + e.name + " leaves target invariant");
    }
    return out;
}

bool HybridAutomaton::jump_enabled(const State& s, int edge) const {
    const Edge& e = edges_[edge];
    if (e.source != s.location) return false;
    if (!e.guard.contains(s.valuation)) return false;
    return locations_[e.target].invariant.contains(e.reset.apply(s.valuation));
}

std::vector<int> HybridAutomaton::enabled_edges(const State& s) const {
    std::vector<int> out;
    for (int e : out_edges_[s.location]) {
        if (jump_enabled(s, e)) out.push_back(e);
    }
    return out;
}

// ----------------------------------------------------------------------------
// Characteristic sets
// ----------------------------------------------------------------------------

TimeIntervalSet HybridAutomaton::box_time_set(const Box& b, const std::vector<double>& v,
                                              const std::vector<double>& flow) const {
    TimeIntervalSet result = TimeIntervalSet::full();
    for (std::size_t i = 0; i < b.dims.size(); ++i) {
        if (b.dims[i].is_full()) continue;
        result = result.intersect(linear_in_interval(v[i], flow[i], b.dims[i]));
        if (result.empty()) break;
    }
    return result;
}

TimeIntervalSet HybridAutomaton::guard_time_set(const Guard& g, const std::vector<double>& v,
                                                const std::vector<double>& flow) const {
    if (!g.is_complement) return box_time_set(g.box, v, flow);
    TimeIntervalSet inside;
    for (const auto& b : g.complement_of) {
        inside = inside.unite(box_time_set(b, v, flow));
    }
    return inside.complement();
}

TimeIntervalSet HybridAutomaton::reset_target_time_set(const Edge& e,
                                                       const std::vector<double>& v,
                                                       const std::vector<double>& flow) const {
    const Box& inv = locations_[e.target].invariant;
    TimeIntervalSet result = TimeIntervalSet::full();
    for (std::size_t i = 0; i < e.reset.rows.size(); ++i) {
        if (inv.dims[i].is_full()) continue;
        // reset row along the trajectory is again linear in t.
        const AffineExpr& row = e.reset.rows[i];
        double c0 = row.eval(v);
        double c1 = 0.0;
        for (std::size_t j = 0; j < row.coeff.size() && j < flow.size(); ++j) {
            c1 += row.coeff[j] * flow[j];
        }
        result = result.intersect(linear_in_interval(c0, c1, inv.dims[i]));
        if (result.empty()) break;
    }
    return result;
}

TimeIntervalSet HybridAutomaton::dwell_set(const State& s) const {
    const Location& loc = locations_[s.location];
    if (!loc.invariant.contains(s.valuation)) return TimeIntervalSet::empty_set();
    TimeIntervalSet inside = box_time_set(loc.invariant, s.valuation, loc.flow);
    // The trajectory must stay inside for the whole prefix [0,t]; since 0 is
    // inside and the inside-set is an interval, only its upper part matters.
    for (const auto& p : inside.parts()) {
        if (p.contains(0.0)) {
            return TimeIntervalSet(Interval{0.0, p.hi, false, p.hi_open});
        }
    }
    return TimeIntervalSet::empty_set();
}

TimeIntervalSet HybridAutomaton::jump_time_set(const State& s, int edge) const {
    const Edge& e = edges_[edge];
    if (e.source != s.location) return TimeIntervalSet::empty_set();
    const Location& loc = locations_[s.location];
    TimeIntervalSet t = dwell_set(s);
    if (t.empty()) return t;
    t = t.intersect(guard_time_set(e.guard, s.valuation, loc.flow));
    if (t.empty()) return t;
    return t.intersect(reset_target_time_set(e, s.valuation, loc.flow));
}

TimeIntervalSet HybridAutomaton::time_set(const State& s) const {
    TimeIntervalSet result;
    for (int e : out_edges_[s.location]) {
        result = result.unite(jump_time_set(s, e));
    }
    return result;
}

double HybridAutomaton::t_max(const State& s) const {
    TimeIntervalSet d = dwell_set(s);
    if (d.empty()) return 0.0;
    return d.sup();
}

namespace {

// Does a finite union of scalar intervals cover the whole real line?
bool intervals_cover_line(std::vector<Interval> parts) {
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return !a.lo_open && b.lo_open;
    });
    double covered_to = -kInf;
    bool covered_to_open = true;  // is `covered_to` itself still uncovered?
    bool started = false;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!started) {
            if (p.lo != -kInf) return false;
            started = true;
        } else if (p.lo > covered_to || (p.lo == covered_to && covered_to_open && p.lo_open)) {
            return false;
        }
        if (p.hi > covered_to || (p.hi == covered_to && covered_to_open && !p.hi_open)) {
            covered_to = p.hi;
            covered_to_open = p.hi_open;
        }
    }
    return started && covered_to == kInf;
}

}  // namespace

// edges_plus: guard nonempty and reset image can meet the target invariant.
// Exact when every reset row involves at most one variable; rows mixing
// several variables are over-approximated by their interval range.
bool HybridAutomaton::edge_possibly_enabled(const Edge& e, bool* approximate) const {
    const std::size_t d = dimension();
    Box feasible = Box::full(d);
    if (!e.guard.is_complement) {
        feasible = e.guard.box;
    } else {
        // Complement of a box union: empty only if the union covers R^d.
        // Exact in one dimension; in higher dimensions covering requires a
        // single full box (otherwise assume nonempty, conservatively).
        bool covered = false;
        if (d == 1) {
            std::vector<Interval> parts;
            for (const auto& b : e.guard.complement_of) parts.push_back(b.dims[0]);
            covered = intervals_cover_line(std::move(parts));
        } else {
            for (const auto& b : e.guard.complement_of) {
                if (b.is_full()) covered = true;
            }
            if (!covered && !e.guard.complement_of.empty() && approximate) {
                *approximate = true;
            }
        }
        if (covered) return false;
        // The complement shape is not intersected with the reset pre-image
        // below; the full box keeps the check conservative.
    }
    if (feasible.empty()) return false;

    const Box& inv = locations_[e.target].invariant;
    for (std::size_t i = 0; i < e.reset.rows.size(); ++i) {
        if (inv.dims[i].is_full()) continue;
        const AffineExpr& row = e.reset.rows[i];
        std::size_t terms = row.nonzero_terms();
        if (terms == 0) {
            if (!inv.dims[i].contains(row.constant)) return false;
        } else if (terms == 1) {
            // Single-variable row: pull the constraint back onto that variable.
            std::size_t j = 0;
            while (row.coeff[j] == 0.0) ++j;
            const double a = row.coeff[j];
            const Interval& target = inv.dims[i];
            Interval r;
            if (a > 0) {
                r.lo = target.lo == -kInf ? -kInf : (target.lo - row.constant) / a;
                r.lo_open = target.lo_open;
                r.hi = target.hi == kInf ? kInf : (target.hi - row.constant) / a;
                r.hi_open = target.hi_open;
            } else {
                r.lo = target.hi == kInf ? -kInf : (target.hi - row.constant) / a;
                r.lo_open = target.hi_open;
                r.hi = target.lo == -kInf ? kInf : (target.lo - row.constant) / a;
                r.hi_open = target.lo_open;
            }
            feasible.dims[j] = feasible.dims[j].intersect(r);
            if (feasible.dims[j].empty()) return false;
        } else {
            // Multi-variable row: interval range over the feasible box.
            double lo = row.constant, hi = row.constant;
            for (std::size_t j = 0; j < row.coeff.size(); ++j) {
                double c = row.coeff[j];
                if (c == 0.0) continue;
                const Interval& dj = feasible.dims[j];
                lo += c * (c > 0 ? dj.lo : dj.hi);
                hi += c * (c > 0 ? dj.hi : dj.lo);
            }
            Interval range{lo, hi, false, false};
            if (range.intersect(inv.dims[i]).empty()) return false;
            if (approximate) *approximate = true;
        }
    }
    return !feasible.empty();
}

std::vector<int> HybridAutomaton::edges_plus(int location) const {
    std::vector<int> out;
    for (int e : out_edges_[location]) {
        bool approx = false;
        if (edge_possibly_enabled(edges_[e], &approx)) out.push_back(e);
    }
    return out;
}

// ----------------------------------------------------------------------------
// Validation
// ----------------------------------------------------------------------------

ValidationReport HybridAutomaton::validate() const {
    ValidationReport rep;
    const std::size_t d = dimension();

    if (locations_.empty()) rep.errors.push_back("automaton has no locations");

    for (const auto& loc : locations_) {
        if (loc.flow.size() != d) {
            rep.errors.push_back("location " + loc.name + ": flow has " +
                                 std::to_string(loc.flow.size()) + " rates, expected " +
                                 std::to_string(d));
        }
        if (loc.invariant.dimension() != d) {
            rep.errors.push_back("location " + loc.name + ": invariant dimension mismatch");
        } else {
            for (std::size_t i = 0; i < d; ++i) {
                const Interval& iv = loc.invariant.dims[i];
                if (iv.lo > iv.hi) {
                    rep.errors.push_back("location " + loc.name + ": invariant for " +
                                         variables_[i] + " has lo > hi");
                }
            }
        }
    }

    for (const auto& e : edges_) {
        if (e.source < 0 || e.source >= static_cast<int>(locations_.size()) || e.target < 0 ||
            e.target >= static_cast<int>(locations_.size())) {
            rep.errors.push_back("edge " + e.name + ": source/target location missing");
            continue;
        }
        if (e.reset.rows.size() != d) {
            rep.errors.push_back("edge " + e.name + ": reset has " +
                                 std::to_string(e.reset.rows.size()) +
                                 " rows, expected " + std::to_string(d));
        }
        if (!e.guard.is_complement && e.guard.box.dimension() != d) {
            rep.errors.push_back("edge " + e.name + ": guard dimension mismatch");
        }
        if (e.kind != EdgeKind::original) {
            if (e.source != e.target) {
                rep.errors.push_back("edge " + e.name + ": resampling edge must be a self-loop");
            }
            if (e.reset.rows.size() == d && !e.reset.is_identity()) {
                rep.errors.push_back("edge " + e.name +
                                     ": resampling edge must have identity reset");
            }
        }
    }

    // At most one forced edge per location; bounded invariant without one is
    // a latent timelock.
    std::vector<int> forced_count(locations_.size(), 0);
    for (const auto& e : edges_) {
        if (e.forced && e.source >= 0 && e.source < static_cast<int>(locations_.size())) {
            forced_count[e.source]++;
        }
    }
    for (std::size_t i = 0; i < locations_.size(); ++i) {
        if (forced_count[i] > 1) {
            rep.errors.push_back("location " + locations_[i].name +
                                 ": more than one forced edge");
        }
        bool bounded = false;
        for (std::size_t j = 0; j < locations_[i].invariant.dims.size(); ++j) {
            const Interval& iv = locations_[i].invariant.dims[j];
            double rate = j < locations_[i].flow.size() ? locations_[i].flow[j] : 0.0;
            if ((rate > 0 && iv.hi != kInf) || (rate < 0 && iv.lo != -kInf)) bounded = true;
        }
        if (bounded && forced_count[i] == 0) {
            rep.warnings.push_back("location " + locations_[i].name +
                                   ": bounded invariant but no forced edge declared");
        }
    }

    if (init_.location < 0 || init_.location >= static_cast<int>(locations_.size())) {
        rep.errors.push_back("initial state: unknown location");
    } else if (init_.valuation.size() != d) {
        rep.errors.push_back("initial state: valuation dimension mismatch");
    } else if (!locations_[init_.location].invariant.contains(init_.valuation)) {
        rep.errors.push_back("initial state lies outside the invariant of " +
                             locations_[init_.location].name);
    }

    // Surface approximation use in edges_plus.
    if (rep.errors.empty()) {
        for (std::size_t li = 0; li < locations_.size(); ++li) {
            for (int e : out_edges_[li]) {
                bool approx = false;
                edge_possibly_enabled(edges_[e], &approx);
                if (approx) rep.approximate = true;
            }
        }
    }
    return rep;
}

}  // namespace shasim
