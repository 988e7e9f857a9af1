#ifndef SHASIM_COMPOSED_HPP_
#define SHASIM_COMPOSED_HPP_

#include <functional>
#include <memory>
#include <vector>

#include "shasim/automaton.hpp"
#include "shasim/distribution.hpp"
#include "shasim/path.hpp"

namespace shasim {

// ============================================================================
// Composed scheduling: a delay kernel samples the dwell duration from the
// current state, then a jump kernel picks among the edges enabled at the
// post-delay state. When no modeler edge is enabled, the location's
// resampling self-loop fires with probability 1.
// ============================================================================

// Adds one resampling self-loop per location, guarded by the complement of
// the union of the location's outgoing guards (identity reset). The input
// edges must all have plain box guards.
HybridAutomaton build_composed_extension(const HybridAutomaton& input);

// One row of a jump-weight table. Rows are tried in order; the first row
// whose condition holds at the post-delay valuation applies. Weights are then
// restricted to enabled edges and must sum to 1 unless `auto_normalize`.
struct WeightRow {
    Box condition;
    std::vector<std::pair<int, double>> weights;  // edge index -> weight
    bool auto_normalize = false;
};

struct ComposedScheduleTable {
    std::vector<DistSpec> delay_by_location;
    std::vector<std::vector<WeightRow>> rules_by_location;
};

// Raw output of a jump kernel before the support restriction.
struct JumpWeights {
    std::vector<std::pair<int, double>> weights;
    bool auto_normalize = false;
};

// The discrete jump distribution at one state: enabled edges with weights
// summing to one.
struct EdgeDistribution {
    std::vector<std::pair<int, double>> outcomes;

    void normalize();
    int sample(Rng& rng) const;
    double prob_of(int edge) const;
};

class ComposedModel {
  public:
    using DelayKernel = std::function<DistPtr(const State&)>;
    using JumpKernel = std::function<JumpWeights(const State&)>;
    // Extra time-axis breakpoints of the jump kernel along the dwell from a
    // given state (where weight-table conditions flip). Guard-driven
    // breakpoints are added by the measure module itself.
    using BreakpointFn = std::function<std::vector<double>(const State&)>;

    ComposedModel(std::shared_ptr<const HybridAutomaton> extension, DelayKernel delay,
                  JumpKernel jump, BreakpointFn breakpoints = nullptr);

    static ComposedModel from_table(const HybridAutomaton& input, ComposedScheduleTable table);

    const HybridAutomaton& automaton() const { return *ha_; }
    std::shared_ptr<const HybridAutomaton> automaton_ptr() const { return ha_; }

    DistPtr delay_dist(const State& s) const { return delay_(s); }
    // Jump distribution at a post-delay state, including the resampling rule.
    EdgeDistribution jump_distribution(const State& s) const;
    double jump_prob(const State& s, int edge) const;
    std::vector<double> jump_kernel_breakpoints(const State& from) const {
        return breakpoints_ ? breakpoints_(from) : std::vector<double>{};
    }

    int resample_edge(int location) const { return resample_edge_by_loc_[location]; }
    int forced_edge(int location) const { return forced_edge_by_loc_[location]; }

    ValidationReport validate() const;

    // Table accessor (null for kernel-backed models, e.g. translations).
    const ComposedScheduleTable* table() const { return table_.get(); }

  private:
    std::shared_ptr<const HybridAutomaton> ha_;
    DelayKernel delay_;
    JumpKernel jump_;
    BreakpointFn breakpoints_;
    std::vector<int> resample_edge_by_loc_;
    std::vector<int> forced_edge_by_loc_;
    std::shared_ptr<const ComposedScheduleTable> table_;  // set for table models
};

struct ComposedStep {
    double sampled_delay = 0.0;  // raw draw from the delay kernel
    double delay = 0.0;          // executed delay (capped at t_max when forced)
    int edge = -1;
    State next;
    bool forced_routing = false;
};

// One scheduling step with an externally supplied delay draw; used by tests
// and by step_composed itself.
ComposedStep step_composed_with_delay(const ComposedModel& model, const State& s,
                                      double sampled_delay, Rng& rng);
ComposedStep step_composed(const ComposedModel& model, const State& s, Rng& rng);

Path simulate_composed(const ComposedModel& model, std::uint64_t seed,
                       const SimulationBounds& bounds, std::uint64_t trajectory_index = 0);

// N trajectories over worker threads; results identical for any worker count
// (per-trajectory substreams, merge by index).
std::vector<Path> simulate_composed_many(const ComposedModel& model, std::uint64_t seed,
                                         std::size_t trajectories,
                                         const SimulationBounds& bounds, int workers = 1);

}  // namespace shasim

#endif  // SHASIM_COMPOSED_HPP_
