#ifndef SHASIM_AUTOMATON_HPP_
#define SHASIM_AUTOMATON_HPP_

#include <optional>
#include <string>
#include <vector>

#include "shasim/affine.hpp"
#include "shasim/interval.hpp"

namespace shasim {

// ============================================================================
// Hybrid automata with constant-rate flows, box invariants, box (or
// complement-of-box-union) guards and affine resets. Continuous dynamics are
// linear in time, so enabling time sets and maximal dwell times are exact.
// ============================================================================

enum class EdgeKind {
    original,             // written by the modeler
    resample_composed,    // self-loop added by the composed extension
    resample_decomposed,  // self-loop added per (location, label)
};

// A guard is either a single box, or the complement of a finite union of
// boxes (the shape of resampling-edge guards). Complements are stored
// symbolically and evaluated pointwise.
struct Guard {
    Box box;
    std::vector<Box> complement_of;
    bool is_complement = false;

    static Guard full(std::size_t dimension) {
        Guard g;
        g.box = Box::full(dimension);
        return g;
    }
    static Guard of_box(Box b) {
        Guard g;
        g.box = std::move(b);
        return g;
    }
    static Guard complement_of_union(std::vector<Box> boxes, std::size_t dimension) {
        Guard g;
        g.box = Box::full(dimension);
        g.complement_of = std::move(boxes);
        g.is_complement = true;
        return g;
    }

    bool contains(const std::vector<double>& v) const {
        if (!is_complement) return box.contains(v);
        for (const auto& b : complement_of) {
            if (b.contains(v)) return false;
        }
        return true;
    }

    bool operator==(const Guard& o) const = default;
};

// Per-variable affine update; identity rows may be omitted entirely when the
// reset is the identity.
struct AffineReset {
    std::vector<AffineExpr> rows;  // one per variable

    static AffineReset identity(std::size_t dimension) {
        AffineReset r;
        r.rows.reserve(dimension);
        for (std::size_t i = 0; i < dimension; ++i) {
            r.rows.push_back(AffineExpr::var(i, dimension));
        }
        return r;
    }

    std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<double> out(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i].eval(v);
        return out;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].constant != 0.0) return false;
            for (std::size_t j = 0; j < rows[i].coeff.size(); ++j) {
                double want = (i == j) ? 1.0 : 0.0;
                if (rows[i].coeff[j] != want) return false;
            }
            if (rows[i].coeff.size() <= i) return false;
        }
        return true;
    }

    bool operator==(const AffineReset& o) const = default;
};

struct Edge {
    std::string name;
    int source = -1;
    int target = -1;
    Guard guard;
    AffineReset reset;
    EdgeKind kind = EdgeKind::original;
    int label = 0;        // 1..k for decomposed models, 0 otherwise
    bool forced = false;  // designated forced jump of its source location
};

struct Location {
    std::string name;
    std::vector<double> flow;  // constant rate per variable
    Box invariant;
};

struct State {
    int location = -1;
    std::vector<double> valuation;

    bool operator==(const State& o) const = default;
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    // True when some check had to over-approximate (non-box reset pre-image).
    bool approximate = false;

    bool valid() const { return errors.empty(); }
    std::string to_string() const;
};

// ----------------------------------------------------------------------------
// HybridAutomaton — immutable after construction; all operations are pure.
// ----------------------------------------------------------------------------

class HybridAutomaton {
  public:
    HybridAutomaton() = default;
    HybridAutomaton(std::vector<std::string> variables, std::vector<Location> locations,
                    std::vector<Edge> edges, State init);

    std::size_t dimension() const { return variables_.size(); }
    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<Location>& locations() const { return locations_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const State& init() const { return init_; }

    const Location& location(int i) const { return locations_[i]; }
    const Edge& edge(int i) const { return edges_[i]; }
    int location_index(const std::string& name) const;  // -1 if unknown
    int edge_index(const std::string& name) const;      // -1 if unknown
    const std::vector<int>& out_edges(int location) const { return out_edges_[location]; }

    bool satisfies_invariant(const State& s) const {
        return locations_[s.location].invariant.contains(s.valuation);
    }

    // --- continuous / discrete semantics -----------------------------------

    // Let time elapse: (l, v) -> (l, v + t*flow(l)). Throws InvariantViolation
    // if the trajectory leaves the invariant (endpoints suffice for boxes).
    State advance(const State& s, double t) const;

    // Take edge e from s. Throws JumpDisabled if the guard fails or the reset
    // lands outside the target invariant.
    State take_jump(const State& s, int edge) const;

    bool jump_enabled(const State& s, int edge) const;

    // Edges immediately enabled in s.
    std::vector<int> enabled_edges(const State& s) const;

    // --- characteristic sets ------------------------------------------------

    // Delays t after which edge e can be taken from s. Empty for edges whose
    // source is not s's location.
    TimeIntervalSet jump_time_set(const State& s, int edge) const;

    // Union of jump_time_set over all edges.
    TimeIntervalSet time_set(const State& s) const;

    // Supremum of invariant-respecting dwell time (+inf when unbounded).
    double t_max(const State& s) const;

    // Delays t such that the whole trajectory [0,t] stays in the invariant.
    TimeIntervalSet dwell_set(const State& s) const;

    // Edges from `location` enabled for at least one valuation. Exact for box
    // guards with per-variable resets; conservative otherwise (see report of
    // validate()).
    std::vector<int> edges_plus(int location) const;

    // --- structural validation ---------------------------------------------

    ValidationReport validate() const;

  private:
    TimeIntervalSet guard_time_set(const Guard& g, const std::vector<double>& v,
                                   const std::vector<double>& flow) const;
    TimeIntervalSet box_time_set(const Box& b, const std::vector<double>& v,
                                 const std::vector<double>& flow) const;
    TimeIntervalSet reset_target_time_set(const Edge& e, const std::vector<double>& v,
                                          const std::vector<double>& flow) const;
    bool edge_possibly_enabled(const Edge& e, bool* approximate) const;

    std::vector<std::string> variables_;
    std::vector<Location> locations_;
    std::vector<Edge> edges_;
    State init_;
    std::vector<std::vector<int>> out_edges_;
};

}  // namespace shasim

#endif  // SHASIM_AUTOMATON_HPP_
