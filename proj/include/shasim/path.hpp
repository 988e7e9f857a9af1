#ifndef SHASIM_PATH_HPP_
#define SHASIM_PATH_HPP_

#include <string>
#include <vector>

#include "shasim/automaton.hpp"

namespace shasim {

// ============================================================================
// Path — timed run of a scheduled automaton: alternating delays and jumps,
// with absolute timestamps. Decomposed runs also carry race-vector snapshots.
// ============================================================================

struct PathStep {
    double delay = 0.0;
    State before_jump;             // post-delay state the jump fires from
    int edge = -1;
    State after;                   // jump successor
    double time = 0.0;             // absolute time of the jump
    bool forced_routing = false;   // delay was capped at t_max
    std::vector<double> race;      // race vector after resampling (decomposed)
};

struct Path {
    State initial;
    std::vector<double> race_initial;  // initial realizations (decomposed)
    std::vector<PathStep> steps;

    std::size_t len() const { return steps.size(); }
    double dur() const {
        double d = 0.0;
        for (const auto& s : steps) d += s.delay;
        return d;
    }
};

struct SimulationBounds {
    std::size_t max_jumps = 100;
    double max_time = kInf;
};

// Trace per the measure calculus: a head state plus an edge-id sequence
// (possibly empty; resampling and forced edges are ordinary members).
struct Trace {
    State head;
    std::vector<int> edges;

    static Trace of(const HybridAutomaton& ha, std::vector<int> edge_ids) {
        return Trace{ha.init(), std::move(edge_ids)};
    }

    // Edge chain must start at the head location and link source/target.
    bool structurally_valid(const HybridAutomaton& ha) const;
};

// Edge sequence of a simulated path, for matching against traces.
std::vector<int> edge_sequence(const Path& p);

// Delimited-text export. One line per event; the first line of each
// trajectory (step == 0, empty edge) is the initial state. Columns:
//   trajectory, step, time, location, <one column per variable>,
//   edge, kind [, r1..rk]
// A header row is mandatory; `header_comment` lines are prepended as
// '# '-prefixed provenance.
std::string export_paths_csv(const HybridAutomaton& ha, const std::vector<Path>& paths,
                             std::size_t race_columns,
                             const std::vector<std::string>& header_comment);

std::string format_double(double x);

}  // namespace shasim

#endif  // SHASIM_PATH_HPP_
