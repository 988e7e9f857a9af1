#include "shasim/composed.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "shasim/errors.hpp"

namespace shasim {

namespace {
constexpr double kWeightSumTol = 1e-9;
}

// ----------------------------------------------------------------------------
// Resampling extension
// ----------------------------------------------------------------------------

HybridAutomaton build_composed_extension(const HybridAutomaton& input) {
    const std::size_t d = input.dimension();
    std::vector<Edge> edges = input.edges();
    for (const auto& e : edges) {
        if (e.kind == EdgeKind::resample_composed) {
            throw UnsupportedModel(
                "composed extension: input already contains a composed resampling edge");
        }
    }
    for (std::size_t li = 0; li < input.locations().size(); ++li) {
        std::vector<Box> guards;
        for (int ei : input.out_edges(static_cast<int>(li))) {
            const Edge& e = input.edge(ei);
            if (e.guard.is_complement) {
                // Already a complement (a lifted decomposed resampling loop):
                // its own excluded boxes cover exactly the label's guards, so
                // the union over all out-edges covers R^d and the new loop
                // ends up with an empty guard. Representing that exactly
                // would need box-union subtraction; instead mark the whole
                // space as covered, which yields the same empty guard.
                guards.push_back(Box::full(d));
            } else {
                guards.push_back(e.guard.box);
            }
        }
        Edge eps;
        eps.name = "eps_" + input.location(static_cast<int>(li)).name;
        eps.source = static_cast<int>(li);
        eps.target = static_cast<int>(li);
        eps.guard = Guard::complement_of_union(std::move(guards), d);
        eps.reset = AffineReset::identity(d);
        eps.kind = EdgeKind::resample_composed;
        edges.push_back(std::move(eps));
    }
    return HybridAutomaton(input.variables(), input.locations(), std::move(edges),
                           input.init());
}

// ----------------------------------------------------------------------------
// EdgeDistribution
// ----------------------------------------------------------------------------

void EdgeDistribution::normalize() {
    double total = 0.0;
    for (const auto& [e, w] : outcomes) total += w;
    if (total <= 0.0) throw KernelError("jump distribution: zero total weight");
    for (auto& [e, w] : outcomes) w /= total;
}

int EdgeDistribution::sample(Rng& rng) const {
    double u = rng.uniform01();
    double cum = 0.0;
    for (const auto& [e, w] : outcomes) {
        cum += w;
        if (u <= cum) return e;
    }
    return outcomes.back().first;  // guard against rounding dust
}

double EdgeDistribution::prob_of(int edge) const {
    for (const auto& [e, w] : outcomes) {
        if (e == edge) return w;
    }
    return 0.0;
}

// ----------------------------------------------------------------------------
// ComposedModel
// ----------------------------------------------------------------------------

ComposedModel::ComposedModel(std::shared_ptr<const HybridAutomaton> extension,
                             DelayKernel delay, JumpKernel jump, BreakpointFn breakpoints)
    : ha_(std::move(extension)),
      delay_(std::move(delay)),
      jump_(std::move(jump)),
      breakpoints_(std::move(breakpoints)) {
    resample_edge_by_loc_.assign(ha_->locations().size(), -1);
    forced_edge_by_loc_.assign(ha_->locations().size(), -1);
    for (std::size_t i = 0; i < ha_->edges().size(); ++i) {
        const Edge& e = ha_->edge(static_cast<int>(i));
        if (e.kind == EdgeKind::resample_composed) {
            resample_edge_by_loc_[e.source] = static_cast<int>(i);
        }
        if (e.forced) forced_edge_by_loc_[e.source] = static_cast<int>(i);
    }
}

ComposedModel ComposedModel::from_table(const HybridAutomaton& input,
                                        ComposedScheduleTable table) {
    auto ha = std::make_shared<const HybridAutomaton>(build_composed_extension(input));
    auto shared = std::make_shared<const ComposedScheduleTable>(std::move(table));

    auto delay = [shared](const State& s) -> DistPtr {
        return shared->delay_by_location[s.location].resolve(s.valuation);
    };
    auto jump = [shared, ha](const State& s) -> JumpWeights {
        for (const auto& row : shared->rules_by_location[s.location]) {
            if (row.condition.contains(s.valuation)) {
                return JumpWeights{row.weights, row.auto_normalize};
            }
        }
        throw KernelError("no jump-weight rule matches state in location " +
                          ha->location(s.location).name);
    };
    auto breakpoints = [shared, ha](const State& from) -> std::vector<double> {
        std::vector<double> times;
        const Location& loc = ha->location(from.location);
        for (const auto& row : shared->rules_by_location[from.location]) {
            for (std::size_t i = 0; i < row.condition.dims.size(); ++i) {
                const Interval& iv = row.condition.dims[i];
                if (iv.is_full()) continue;
                double rate = loc.flow[i];
                if (rate == 0.0) continue;
                if (iv.lo != -kInf) times.push_back((iv.lo - from.valuation[i]) / rate);
                if (iv.hi != kInf) times.push_back((iv.hi - from.valuation[i]) / rate);
            }
        }
        return times;
    };

    ComposedModel m(ha, std::move(delay), std::move(jump), std::move(breakpoints));
    m.table_ = shared;
    return m;
}

EdgeDistribution ComposedModel::jump_distribution(const State& s) const {
    std::vector<int> enabled = ha_->enabled_edges(s);
    std::vector<int> enabled_modeler;
    for (int e : enabled) {
        if (ha_->edge(e).kind != EdgeKind::resample_composed) enabled_modeler.push_back(e);
    }

    EdgeDistribution out;
    if (enabled_modeler.empty()) {
        // Resampling rule: probability 1 when nothing else is enabled.
        int eps = resample_edge_by_loc_[s.location];
        if (eps < 0 || std::find(enabled.begin(), enabled.end(), eps) == enabled.end()) {
            throw KernelError("no enabled edge (resampling loop missing or disabled) in " +
                              ha_->location(s.location).name);
        }
        out.outcomes.emplace_back(eps, 1.0);
        return out;
    }

    JumpWeights raw = jump_(s);

    // Restrict to enabled modeler edges (the kernel's support condition).
    double sum = 0.0;
    for (const auto& [e, w] : raw.weights) {
        if (w < 0.0) throw KernelError("negative jump weight");
        if (std::find(enabled_modeler.begin(), enabled_modeler.end(), e) !=
            enabled_modeler.end()) {
            if (w > 0.0) out.outcomes.emplace_back(e, w);
            sum += w;
        } else if (w > 0.0 && !raw.auto_normalize) {
            throw KernelError("jump kernel assigns weight to disabled edge " +
                              ha_->edge(e).name);
        }
    }
    if (out.outcomes.empty()) {
        throw KernelError("jump kernel assigns no weight to any enabled edge in " +
                          ha_->location(s.location).name);
    }
    if (raw.auto_normalize) {
        out.normalize();
    } else if (std::abs(sum - 1.0) > kWeightSumTol) {
        throw KernelError("jump weights over enabled edges sum to " + std::to_string(sum) +
                          " (declare auto-normalize to renormalize)");
    }
    return out;
}

double ComposedModel::jump_prob(const State& s, int edge) const {
    return jump_distribution(s).prob_of(edge);
}

ValidationReport ComposedModel::validate() const {
    ValidationReport rep = ha_->validate();
    if (table_) {
        if (table_->delay_by_location.size() != ha_->locations().size()) {
            rep.errors.push_back(
                "composed schedule: missing delay distribution for some location");
        }
        for (std::size_t li = 0; li < table_->rules_by_location.size(); ++li) {
            for (const auto& row : table_->rules_by_location[li]) {
                for (const auto& [e, w] : row.weights) {
                    if (e < 0 || e >= static_cast<int>(ha_->edges().size())) {
                        rep.errors.push_back("weight rule references unknown edge");
                    } else if (ha_->edge(e).source != static_cast<int>(li)) {
                        rep.errors.push_back("weight rule for " + ha_->location(li).name +
                                             " references edge " + ha_->edge(e).name +
                                             " from another location");
                    }
                    if (w < 0.0) rep.errors.push_back("negative weight in rule table");
                }
            }
        }
    }
    return rep;
}

// ----------------------------------------------------------------------------
// Stepping and simulation
// ----------------------------------------------------------------------------

ComposedStep step_composed_with_delay(const ComposedModel& model, const State& s,
                                      double sampled_delay, Rng& rng) {
    const HybridAutomaton& ha = model.automaton();
    ComposedStep step;
    step.sampled_delay = sampled_delay;

    double cap = ha.t_max(s);
    if (sampled_delay > cap) {
        // Invariant would be violated before the sampled delay elapses:
        // route to the declared forced jump at the boundary.
        int forced = model.forced_edge(s.location);
        if (forced < 0) {
            throw TimelockError("delay " + std::to_string(sampled_delay) +
                                " exceeds t_max=" + std::to_string(cap) + " in " +
                                ha.location(s.location).name + " and no forced edge declared");
        }
        step.delay = cap;
        step.forced_routing = true;
        State at_boundary = ha.advance(s, cap);
        step.edge = forced;
        step.next = ha.take_jump(at_boundary, forced);
        return step;
    }

    step.delay = sampled_delay;
    State post = ha.advance(s, sampled_delay);
    EdgeDistribution dist = model.jump_distribution(post);
    step.edge = dist.sample(rng);
    step.next = ha.take_jump(post, step.edge);
    return step;
}

ComposedStep step_composed(const ComposedModel& model, const State& s, Rng& rng) {
    DistPtr delay = model.delay_dist(s);
    if (!delay->continuous()) {
        throw KernelError("delay kernel must be continuous");
    }
    return step_composed_with_delay(model, s, delay->sample(rng), rng);
}

Path simulate_composed(const ComposedModel& model, std::uint64_t seed,
                       const SimulationBounds& bounds, std::uint64_t trajectory_index) {
    Rng rng(seed, trajectory_index);
    Path path;
    path.initial = model.automaton().init();
    State current = path.initial;
    double now = 0.0;
    while (path.steps.size() < bounds.max_jumps && now < bounds.max_time) {
        ComposedStep st = step_composed(model, current, rng);
        now += st.delay;
        PathStep ps;
        ps.delay = st.delay;
        ps.before_jump = model.automaton().advance(current, st.delay);
        ps.edge = st.edge;
        ps.after = st.next;
        ps.time = now;
        ps.forced_routing = st.forced_routing;
        path.steps.push_back(std::move(ps));
        current = st.next;
    }
    return path;
}

std::vector<Path> simulate_composed_many(const ComposedModel& model, std::uint64_t seed,
                                         std::size_t trajectories,
                                         const SimulationBounds& bounds, int workers) {
    std::vector<Path> out(trajectories);
    if (workers < 1) workers = 1;
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = simulate_composed(model, seed, bounds, i);
        }
    };
    if (workers == 1 || trajectories < 2) {
        run_range(0, trajectories);
        return out;
    }
    std::vector<std::thread> threads;
    std::size_t chunk = (trajectories + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t begin = static_cast<std::size_t>(w) * chunk;
        std::size_t end = std::min(trajectories, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back(run_range, begin, end);
    }
    for (auto& t : threads) t.join();
    return out;
}

}  // namespace shasim
