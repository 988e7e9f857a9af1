#include "shasim/measure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "shasim/errors.hpp"
#include "shasim/quadrature.hpp"
#include "shasim/stats.hpp"

namespace shasim {

namespace {

// Tolerance passed to the next recursion level; keeps inner values smooth
// relative to the enclosing quadrature.
constexpr double kInnerTolFactor = 0.2;

// Time-axis points where the jump kernel can switch along the dwell from s:
// the enabling-set boundaries of every outgoing edge plus the kernel's own
// condition boundaries.
std::vector<double> kernel_breakpoints(const ComposedModel& model, const State& s) {
    const HybridAutomaton& ha = model.automaton();
    std::vector<double> pts;
    for (int e : ha.out_edges(s.location)) {
        for (const auto& part : ha.jump_time_set(s, e).parts()) {
            pts.push_back(part.lo);
            if (part.hi != kInf) pts.push_back(part.hi);
        }
    }
    for (double t : model.jump_kernel_breakpoints(s)) pts.push_back(t);
    return pts;
}

double prob_composed_rec(const ComposedModel& model, const State& s,
                         const std::vector<int>& edges, std::size_t index, double tol,
                         int depth, int max_depth) {
    if (index == edges.size()) return 1.0;
    if (depth > max_depth) throw DepthLimit("trace_prob_composed: recursion depth exceeded");

    const HybridAutomaton& ha = model.automaton();
    const int e = edges[index];
    if (ha.edge(e).source != s.location) return 0.0;

    DistPtr delay = model.delay_dist(s);
    const double trunc = delay->truncation_point();
    const double cap = ha.t_max(s);

    double total = 0.0;

    // Regular part: integrate the delay density over the exact enabling set,
    // piece by piece. Within each smooth piece the jump kernel is constant
    // (table rows and race win-probabilities only switch at breakpoints), so
    // it is evaluated once at the piece midpoint.
    TimeIntervalSet enabling = ha.jump_time_set(s, e);
    std::vector<double> cuts = kernel_breakpoints(model, s);
    for (const auto& part : enabling.parts()) {
        double lo = part.lo;
        double hi = std::min(part.hi, trunc);
        if (!(hi > lo)) {
            // Zero-length piece: a point can still carry kernel mass only if
            // the delay distribution has an atom there; continuous kernels
            // contribute nothing.
            continue;
        }
        std::vector<double> inner_cuts;
        for (double c : cuts) {
            if (c > lo && c < hi) inner_cuts.push_back(c);
        }
        inner_cuts.push_back(lo);
        inner_cuts.push_back(hi);
        std::sort(inner_cuts.begin(), inner_cuts.end());
        double piece_tol = tol / static_cast<double>(inner_cuts.size() - 1) / 2.0;
        for (std::size_t i = 0; i + 1 < inner_cuts.size(); ++i) {
            double a = inner_cuts[i];
            double b = inner_cuts[i + 1];
            if (!(b > a)) continue;
            State mid_state = ha.advance(s, 0.5 * (a + b));
            double w = model.jump_prob(mid_state, e);
            if (w == 0.0) continue;
            auto integrand = [&](double t) {
                double f = delay->pdf(t);
                if (f == 0.0) return 0.0;
                State post = ha.advance(s, t);
                // Piece endpoints can fall on the open edge of the enabling
                // set; these points carry no kernel mass.
                if (!ha.jump_enabled(post, e)) return 0.0;
                State next = ha.take_jump(post, e);
                return f * prob_composed_rec(model, next, edges, index + 1,
                                             tol * kInnerTolFactor, depth + 1, max_depth);
            };
            total += w * integrate(integrand, a, b, piece_tol);
        }
    }

    // Forced part: delays beyond t_max are capped there and routed to the
    // forced edge, so that edge absorbs the tail mass of the delay kernel.
    if (model.forced_edge(s.location) == e && cap != kInf) {
        double tail = 1.0 - delay->cdf(cap);
        if (tail > 0.0) {
            State boundary = ha.advance(s, cap);
            if (ha.jump_enabled(boundary, e)) {
                State next = ha.take_jump(boundary, e);
                total += tail * prob_composed_rec(model, next, edges, index + 1,
                                                  tol * kInnerTolFactor, depth + 1, max_depth);
            }
        }
    }
    return total;
}

}  // namespace

ProbEstimate trace_prob_composed(const ComposedModel& model, const Trace& trace, double tol,
                                 int max_depth) {
    ProbEstimate est;
    est.method = ProbEstimate::Method::quadrature;
    est.confidence = 1.0;
    // Conservative bound on accumulated quadrature/truncation error.
    est.ci_half_width = 100.0 * tol;
    if (!trace.structurally_valid(model.automaton()) ||
        !model.automaton().satisfies_invariant(trace.head)) {
        est.value = 0.0;
        return est;
    }
    if (static_cast<int>(trace.edges.size()) > max_depth) {
        throw DepthLimit("trace longer than max_depth");
    }
    est.value =
        prob_composed_rec(model, trace.head, trace.edges, 0, tol, 0, max_depth);
    return est;
}

// ----------------------------------------------------------------------------
// Decomposed Monte Carlo
// ----------------------------------------------------------------------------

ProbEstimate trace_prob_decomposed_mc(const DecomposedModel& model, const Trace& trace,
                                      long n, std::uint64_t seed, double confidence,
                                      int workers) {
    if (n <= 0) throw InvalidParameter("trace_prob_decomposed_mc: n must be positive");
    ProbEstimate est;
    est.method = ProbEstimate::Method::monte_carlo;
    est.confidence = confidence;
    est.n = n;
    if (!trace.structurally_valid(model.automaton())) {
        est.value = 0.0;
        est.ci_half_width = 0.0;
        return est;
    }
    if (trace.head != model.automaton().init()) {
        // Runs start at the initial state; other heads have no sampling law.
        throw InvalidParameter("trace_prob_decomposed_mc: trace head must be the initial state");
    }

    SimulationBounds bounds;
    bounds.max_jumps = trace.edges.size();

    std::atomic<long> matches{0};
    if (workers < 1) workers = 1;
    auto run_range = [&](long begin, long end) {
        long local = 0;
        for (long i = begin; i < end; ++i) {
            Path p = simulate_decomposed(model, seed, bounds, static_cast<std::uint64_t>(i));
            if (edge_sequence(p) == trace.edges) ++local;
        }
        matches += local;
    };
    if (workers == 1) {
        run_range(0, n);
    } else {
        std::vector<std::thread> threads;
        long chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            long begin = static_cast<long>(w) * chunk;
            long end = std::min(n, begin + chunk);
            if (begin >= end) break;
            threads.emplace_back(run_range, begin, end);
        }
        for (auto& t : threads) t.join();
    }

    WilsonInterval wi = wilson_interval(matches.load(), n, confidence);
    est.value = static_cast<double>(matches.load()) / static_cast<double>(n);
    est.ci_half_width = wi.half_width + std::abs(wi.center - est.value);
    return est;
}

// ----------------------------------------------------------------------------
// Decomposed quadrature oracle (k <= 2, len <= 2)
// ----------------------------------------------------------------------------

namespace {

// P of the decomposed measure, evaluated numerically: `race` entries are the
// remaining times at the current instant, the entry of the trace's next edge
// must be exactly zero for the jump to fire.
double decomposed_p(const DecomposedModel& model, const State& s,
                    const std::vector<double>& race, const std::vector<int>& edges,
                    std::size_t index, double tol) {
    if (index == edges.size()) return 1.0;
    const HybridAutomaton& ha = model.automaton();
    const int e = edges[index];
    const int m = model.label_of(e);
    if (race[m - 1] != 0.0) return 0.0;
    if (!ha.jump_enabled(s, e)) return 0.0;
    State after = ha.take_jump(s, e);
    if (index + 1 == edges.size()) return 1.0;  // closing density integrates to 1

    // Integrate over the fresh realization of the fired label, sampled at the
    // successor state; time then elapses by the minimum over the race.
    DistPtr dist = model.rv_dist(m, after);
    double trunc = dist->truncation_point();
    double min_other = kInf;
    for (std::size_t j = 0; j < race.size(); ++j) {
        if (static_cast<int>(j) != m - 1) min_other = std::min(min_other, race[j]);
    }

    std::vector<double> cuts;
    if (min_other != kInf) cuts.push_back(min_other);
    for (const auto& part : ha.jump_time_set(after, edges[index + 1]).parts()) {
        cuts.push_back(part.lo);
        if (part.hi != kInf) cuts.push_back(part.hi);
    }

    auto integrand = [&](double fresh) {
        double f = dist->pdf(fresh);
        if (f == 0.0) return 0.0;
        double elapse = std::min(fresh, min_other);
        State moved = ha.advance(after, elapse);
        std::vector<double> next_race(race.size());
        for (std::size_t j = 0; j < race.size(); ++j) next_race[j] = race[j] - elapse;
        next_race[m - 1] = fresh - elapse;
        return f * decomposed_p(model, moved, next_race, edges, index + 1,
                                tol * kInnerTolFactor);
    };
    return integrate_with_breakpoints(integrand, 0.0, trunc, cuts, tol);
}

}  // namespace

ProbEstimate trace_prob_decomposed_quad(const DecomposedModel& model, const Trace& trace,
                                        double tol) {
    ProbEstimate est;
    est.method = ProbEstimate::Method::quadrature;
    est.confidence = 1.0;
    est.ci_half_width = 100.0 * tol;

    const HybridAutomaton& ha = model.automaton();
    if (!trace.structurally_valid(ha) || !ha.satisfies_invariant(trace.head)) {
        est.value = 0.0;
        return est;
    }
    if (model.k() > 2 || trace.edges.size() > 2) {
        throw UnsupportedSize("decomposed quadrature oracle supports k <= 2 and len <= 2");
    }
    // The oracle does not model forced routing; require unbounded dwell along
    // the chain.
    {
        State probe = trace.head;
        if (ha.t_max(probe) != kInf) {
            throw UnsupportedSize("decomposed quadrature oracle requires trivial invariants");
        }
    }
    if (trace.edges.empty()) {
        est.value = 1.0;
        return est;
    }

    const State& s0 = trace.head;
    const int e0 = trace.edges[0];

    if (model.k() == 1) {
        DistPtr d1 = model.rv_dist(1, s0);
        std::vector<double> cuts;
        for (const auto& part : ha.jump_time_set(s0, e0).parts()) {
            cuts.push_back(part.lo);
            if (part.hi != kInf) cuts.push_back(part.hi);
        }
        auto integrand = [&](double t1) {
            double f = d1->pdf(t1);
            if (f == 0.0) return 0.0;
            State moved = ha.advance(s0, t1);
            std::vector<double> race{0.0};
            return f * decomposed_p(model, moved, race, trace.edges, 0,
                                    tol * kInnerTolFactor);
        };
        est.value =
            integrate_with_breakpoints(integrand, 0.0, d1->truncation_point(), cuts, tol);
        return est;
    }

    // k == 2: nested integral over both initial realizations.
    DistPtr d1 = model.rv_dist(1, s0);
    DistPtr d2 = model.rv_dist(2, s0);
    std::vector<double> guard_cuts;
    for (const auto& part : ha.jump_time_set(s0, e0).parts()) {
        guard_cuts.push_back(part.lo);
        if (part.hi != kInf) guard_cuts.push_back(part.hi);
    }

    auto outer = [&](double t1) {
        double f1 = d1->pdf(t1);
        if (f1 == 0.0) return 0.0;
        std::vector<double> inner_cuts = guard_cuts;
        inner_cuts.push_back(t1);
        auto inner = [&](double t2) {
            double f2 = d2->pdf(t2);
            if (f2 == 0.0) return 0.0;
            double elapse = std::min(t1, t2);
            State moved = ha.advance(s0, elapse);
            std::vector<double> race{t1 - elapse, t2 - elapse};
            return f2 * decomposed_p(model, moved, race, trace.edges, 0,
                                     tol * kInnerTolFactor * kInnerTolFactor);
        };
        return f1 * integrate_with_breakpoints(inner, 0.0, d2->truncation_point(), inner_cuts,
                                               tol * kInnerTolFactor);
    };
    est.value = integrate_with_breakpoints(outer, 0.0, d1->truncation_point(), guard_cuts, tol);
    return est;
}

// ----------------------------------------------------------------------------
// Delay distributions at trace heads
// ----------------------------------------------------------------------------

DistPtr head_delay_dist(const ComposedModel& model, const State& s) {
    return model.delay_dist(s);
}

DistPtr head_delay_dist_fresh(const DecomposedModel& model, const State& s) {
    std::vector<DistPtr> parts;
    for (int j = 1; j <= model.k(); ++j) parts.push_back(model.rv_dist(j, s));
    return min_of(std::move(parts));
}

namespace {

DelayCdfTable tabulate(const DistPtr& dist, const std::vector<double>& grid) {
    DelayCdfTable tab;
    tab.analytic = true;
    tab.t = grid;
    tab.cdf.reserve(grid.size());
    for (double t : grid) tab.cdf.push_back(dist->cdf(t));
    return tab;
}

}  // namespace

DelayCdfTable delay_cdf(const ComposedModel& model, const State& s,
                        const std::vector<double>& grid) {
    return tabulate(head_delay_dist(model, s), grid);
}

DelayCdfTable delay_cdf(const DecomposedModel& model, const State& s,
                        const std::vector<double>& grid) {
    return tabulate(head_delay_dist_fresh(model, s), grid);
}

namespace {

template <typename Model, typename SimulateFn>
std::vector<double> samples_after_prefix_impl(const Model& model, SimulateFn simulate,
                                              const std::vector<int>& prefix, long want,
                                              std::uint64_t seed, long max_trials) {
    SimulationBounds bounds;
    bounds.max_jumps = prefix.size() + 1;
    std::vector<double> out;
    for (long i = 0; i < max_trials && static_cast<long>(out.size()) < want; ++i) {
        Path p = simulate(model, seed, bounds, static_cast<std::uint64_t>(i));
        if (p.steps.size() != prefix.size() + 1) continue;
        bool match = true;
        for (std::size_t j = 0; j < prefix.size(); ++j) {
            if (p.steps[j].edge != prefix[j]) {
                match = false;
                break;
            }
        }
        if (match) out.push_back(p.steps[prefix.size()].delay);
    }
    return out;
}

}  // namespace

std::vector<double> delay_samples_after_prefix(const ComposedModel& model,
                                               const std::vector<int>& prefix, long want,
                                               std::uint64_t seed, long max_trials) {
    return samples_after_prefix_impl(
        model,
        [](const ComposedModel& m, std::uint64_t s, const SimulationBounds& b,
           std::uint64_t i) { return simulate_composed(m, s, b, i); },
        prefix, want, seed, max_trials);
}

std::vector<double> delay_samples_after_prefix(const DecomposedModel& model,
                                               const std::vector<int>& prefix, long want,
                                               std::uint64_t seed, long max_trials) {
    return samples_after_prefix_impl(
        model,
        [](const DecomposedModel& m, std::uint64_t s, const SimulationBounds& b,
           std::uint64_t i) { return simulate_decomposed(m, s, b, i); },
        prefix, want, seed, max_trials);
}

// ----------------------------------------------------------------------------
// Zeno probe
// ----------------------------------------------------------------------------

ZenoProbe zeno_probe(const ComposedModel& model, int location, int k_max, double tol) {
    const HybridAutomaton& ha = model.automaton();
    int eps = model.resample_edge(location);
    if (eps < 0) throw UnsupportedModel("zeno_probe: location has no resampling edge");

    State head;
    if (ha.init().location == location) {
        head = ha.init();
    } else {
        head.location = location;
        head.valuation = ha.init().valuation;
        if (!ha.satisfies_invariant(head)) {
            throw UnsupportedModel("zeno_probe: no representative state inside invariant");
        }
    }

    ZenoProbe probe;
    std::vector<int> edges;
    for (int k = 1; k <= k_max; ++k) {
        edges.push_back(eps);
        Trace trace{head, edges};
        probe.prob.push_back(trace_prob_composed(model, trace, tol).value);
    }
    probe.strictly_decreasing = true;
    for (std::size_t i = 0; i + 1 < probe.prob.size(); ++i) {
        if (!(probe.prob[i + 1] < probe.prob[i])) probe.strictly_decreasing = false;
    }
    probe.vanishing = probe.strictly_decreasing && !probe.prob.empty() &&
                      probe.prob.back() < 0.5 * probe.prob.front();
    return probe;
}

}  // namespace shasim
