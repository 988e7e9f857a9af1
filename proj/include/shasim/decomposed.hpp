#ifndef SHASIM_DECOMPOSED_HPP_
#define SHASIM_DECOMPOSED_HPP_

#include <memory>
#include <vector>

#include "shasim/automaton.hpp"
#include "shasim/distribution.hpp"
#include "shasim/path.hpp"

namespace shasim {

// ============================================================================
// Decomposed scheduling: each edge carries one of k continuous random
// variables; realizations race, the smallest expires, and the unique enabled
// edge with the winning label fires. Per-(location,label) resampling loops
// catch the case where the winner has no enabled edge.
// ============================================================================

// Input: automaton whose edges are labeled 1..k (Edge::label). Adds, per
// location and label, a self-loop guarded by the complement of the union of
// that label's guards from the location, labeled the same.
HybridAutomaton build_decomposed_extension(const HybridAutomaton& input, int k);

class DecomposedModel {
  public:
    DecomposedModel(std::shared_ptr<const HybridAutomaton> extension,
                    std::vector<DistSpec> rvs);

    static DecomposedModel from_parts(const HybridAutomaton& input,
                                      std::vector<DistSpec> rvs);

    const HybridAutomaton& automaton() const { return *ha_; }
    std::shared_ptr<const HybridAutomaton> automaton_ptr() const { return ha_; }

    int k() const { return static_cast<int>(rvs_.size()); }
    const std::vector<DistSpec>& rvs() const { return rvs_; }
    // 1-based label of an edge.
    int label_of(int edge) const { return ha_->edge(edge).label; }

    DistPtr rv_dist(int label, const State& at) const {
        return rvs_[label - 1].resolve(at.valuation);
    }

    int forced_edge(int location) const { return forced_edge_by_loc_[location]; }

    // The unique enabled edge with the given label, or RaceViolation.
    int enabled_edge_with_label(const State& s, int label) const;

    ValidationReport validate() const;

  private:
    std::shared_ptr<const HybridAutomaton> ha_;
    std::vector<DistSpec> rvs_;
    std::vector<int> forced_edge_by_loc_;
};

using RaceVector = std::vector<double>;  // remaining time per label, >= 0

struct DecomposedStep {
    double delay = 0.0;
    int winner = 0;  // 1-based label that expired (or the forced edge's label)
    int edge = -1;
    State next;
    RaceVector race_next;
    bool forced_routing = false;
};

// One race step from (s, race): elapse min(race) (capped at t_max with forced
// routing), fire the winner's unique enabled edge, resample the winner's
// entry at the successor state, carry the rest.
DecomposedStep step_decomposed(const DecomposedModel& model, const State& s,
                               const RaceVector& race, Rng& rng);

// Fresh race vector sampled at a state (used for the initial state).
RaceVector sample_race(const DecomposedModel& model, const State& at, Rng& rng);

Path simulate_decomposed(const DecomposedModel& model, std::uint64_t seed,
                         const SimulationBounds& bounds, std::uint64_t trajectory_index = 0);

std::vector<Path> simulate_decomposed_many(const DecomposedModel& model, std::uint64_t seed,
                                           std::size_t trajectories,
                                           const SimulationBounds& bounds, int workers = 1);

}  // namespace shasim

#endif  // SHASIM_DECOMPOSED_HPP_
