#ifndef SHASIM_MEASURE_HPP_
#define SHASIM_MEASURE_HPP_

#include <cstdint>
#include <vector>

#include "shasim/composed.hpp"
#include "shasim/decomposed.hpp"
#include "shasim/path.hpp"

namespace shasim {

// ============================================================================
// Trace probability measures. The composed measure integrates the delay
// density over the exact enabling time set of each jump, weighting by the
// jump kernel at the post-delay state and recursing on the remainder of the
// trace. The decomposed measure is estimated by Monte Carlo over full race
// executions, backed by a direct nested-quadrature oracle on small instances.
// ============================================================================

struct ProbEstimate {
    double value = 0.0;
    double ci_half_width = 0.0;
    double confidence = 0.0;
    enum class Method { quadrature, monte_carlo } method = Method::quadrature;
    long n = 0;  // sample count (MC) or 0 (quadrature)

    double lo() const { return value - ci_half_width < 0.0 ? 0.0 : value - ci_half_width; }
    double hi() const { return value + ci_half_width > 1.0 ? 1.0 : value + ci_half_width; }
    bool overlaps(const ProbEstimate& o) const { return lo() <= o.hi() && o.lo() <= hi(); }
};

// Recursive quadrature of the composed trace measure. Probability mass of
// delays beyond t_max flows to the source location's forced edge. Traces
// with structurally impossible chains have probability exactly 0.
ProbEstimate trace_prob_composed(const ComposedModel& model, const Trace& trace,
                                 double tol = 1e-8, int max_depth = 32);

// Monte Carlo estimate over full race executions: the fraction of runs whose
// first len(trace) jumps equal the trace's edge sequence. Wilson interval.
ProbEstimate trace_prob_decomposed_mc(const DecomposedModel& model, const Trace& trace,
                                      long n, std::uint64_t seed, double confidence = 0.99,
                                      int workers = 1);

// Direct nested quadrature of the decomposed measure, with the full race
// bookkeeping. Oracle regime: k <= 2, len(trace) <= 2, trivial invariants
// along the chain; throws UnsupportedSize beyond it.
ProbEstimate trace_prob_decomposed_quad(const DecomposedModel& model, const Trace& trace,
                                        double tol = 1e-8);

// --- delay distributions at trace heads --------------------------------------

// Analytic dwell-duration distribution starting in s.
DistPtr head_delay_dist(const ComposedModel& model, const State& s);
// Analytic dwell-duration distribution with a freshly sampled race (valid at
// the initial state; also at later heads for memoryless families).
DistPtr head_delay_dist_fresh(const DecomposedModel& model, const State& s);

struct DelayCdfTable {
    std::vector<double> t;
    std::vector<double> cdf;
    bool analytic = true;
};
DelayCdfTable delay_cdf(const ComposedModel& model, const State& s,
                        const std::vector<double>& grid);
DelayCdfTable delay_cdf(const DecomposedModel& model, const State& s,
                        const std::vector<double>& grid);

// Empirical dwell durations following a given edge prefix (conditional on
// the run matching the prefix). Returns up to `want` samples.
std::vector<double> delay_samples_after_prefix(const ComposedModel& model,
                                               const std::vector<int>& prefix, long want,
                                               std::uint64_t seed, long max_trials);
std::vector<double> delay_samples_after_prefix(const DecomposedModel& model,
                                               const std::vector<int>& prefix, long want,
                                               std::uint64_t seed, long max_trials);

// --- Zeno probe ---------------------------------------------------------------

// Probability of k consecutive resampling jumps staying in `location`,
// for k = 1..k_max.
struct ZenoProbe {
    std::vector<double> prob;  // prob[i] is Pr of i+1 consecutive loops
    bool strictly_decreasing = false;
    // Heuristic trend flag: decreasing and the last probe is well below the
    // first. A qualitative report, not a limit statement.
    bool vanishing = false;
};
ZenoProbe zeno_probe(const ComposedModel& model, int location, int k_max, double tol = 1e-8);

}  // namespace shasim

#endif  // SHASIM_MEASURE_HPP_
