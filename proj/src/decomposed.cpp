#include "shasim/decomposed.hpp"

#include <algorithm>
#include <thread>

#include "shasim/errors.hpp"

namespace shasim {

// ----------------------------------------------------------------------------
// Resampling extension
// ----------------------------------------------------------------------------

HybridAutomaton build_decomposed_extension(const HybridAutomaton& input, int k) {
    const std::size_t d = input.dimension();
    if (k < 1) throw LabelRangeError("decomposed extension: need k >= 1 random variables");
    std::vector<Edge> edges = input.edges();
    for (const auto& e : edges) {
        if (e.kind != EdgeKind::original) {
            throw UnsupportedModel(
                "decomposed extension: input already contains resampling edges");
        }
        if (e.label < 1 || e.label > k) {
            throw LabelRangeError("edge " + e.name + ": label " + std::to_string(e.label) +
                                  " outside 1.." + std::to_string(k));
        }
        if (e.guard.is_complement) {
            throw UnsupportedModel("decomposed extension: complement guard on modeler edge " +
                                   e.name);
        }
    }
    for (std::size_t li = 0; li < input.locations().size(); ++li) {
        for (int label = 1; label <= k; ++label) {
            std::vector<Box> guards;
            for (int ei : input.out_edges(static_cast<int>(li))) {
                const Edge& e = input.edge(ei);
                if (e.label == label) guards.push_back(e.guard.box);
            }
            Edge eps;
            eps.name = "eps_" + input.location(static_cast<int>(li)).name + "_" +
                       std::to_string(label);
            eps.source = static_cast<int>(li);
            eps.target = static_cast<int>(li);
            eps.guard = Guard::complement_of_union(std::move(guards), d);
            eps.reset = AffineReset::identity(d);
            eps.kind = EdgeKind::resample_decomposed;
            eps.label = label;
            edges.push_back(std::move(eps));
        }
    }
    return HybridAutomaton(input.variables(), input.locations(), std::move(edges),
                           input.init());
}

// ----------------------------------------------------------------------------
// DecomposedModel
// ----------------------------------------------------------------------------

DecomposedModel::DecomposedModel(std::shared_ptr<const HybridAutomaton> extension,
                                 std::vector<DistSpec> rvs)
    : ha_(std::move(extension)), rvs_(std::move(rvs)) {
    if (rvs_.empty()) throw LabelRangeError("decomposed model: empty random-variable set");
    forced_edge_by_loc_.assign(ha_->locations().size(), -1);
    for (std::size_t i = 0; i < ha_->edges().size(); ++i) {
        if (ha_->edge(static_cast<int>(i)).forced) {
            forced_edge_by_loc_[ha_->edge(static_cast<int>(i)).source] = static_cast<int>(i);
        }
    }
}

DecomposedModel DecomposedModel::from_parts(const HybridAutomaton& input,
                                            std::vector<DistSpec> rvs) {
    auto ext = std::make_shared<const HybridAutomaton>(
        build_decomposed_extension(input, static_cast<int>(rvs.size())));
    return DecomposedModel(ext, std::move(rvs));
}

int DecomposedModel::enabled_edge_with_label(const State& s, int label) const {
    int found = -1;
    for (int e : ha_->out_edges(s.location)) {
        if (ha_->edge(e).label != label) continue;
        if (!ha_->jump_enabled(s, e)) continue;
        if (found >= 0) {
            throw RaceViolation("labels not well-formed: edges " + ha_->edge(found).name +
                                " and " + ha_->edge(e).name + " (label " +
                                std::to_string(label) + ") enabled simultaneously");
        }
        found = e;
    }
    if (found < 0) {
        throw RaceViolation("no enabled edge with label " + std::to_string(label) + " in " +
                            ha_->location(s.location).name);
    }
    return found;
}

ValidationReport DecomposedModel::validate() const {
    ValidationReport rep = ha_->validate();
    const int num_labels = k();
    for (const auto& e : ha_->edges()) {
        if (e.label < 1 || e.label > num_labels) {
            rep.errors.push_back("edge " + e.name + ": label outside 1.." +
                                 std::to_string(num_labels));
        }
    }
    // Static well-labeledness: same-source, same-label modeler edges must
    // have pairwise disjoint guards. This is sound but incomplete; the
    // simulator re-asserts it on every step.
    for (std::size_t li = 0; li < ha_->locations().size(); ++li) {
        const auto& out = ha_->out_edges(static_cast<int>(li));
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                const Edge& a = ha_->edge(out[i]);
                const Edge& b = ha_->edge(out[j]);
                if (a.kind != EdgeKind::original || b.kind != EdgeKind::original) continue;
                if (a.label != b.label) continue;
                if (!a.guard.box.intersect(b.guard.box).empty()) {
                    rep.errors.push_back("edges " + a.name + " and " + b.name +
                                         " share label " + std::to_string(a.label) +
                                         " with overlapping guards");
                }
            }
        }
    }
    for (const auto& rv : rvs_) {
        if (rv.family != DistSpec::Family::uniform &&
            rv.family != DistSpec::Family::exponential) {
            rep.errors.push_back("decomposed random variables must be continuous");
        }
    }
    return rep;
}

// ----------------------------------------------------------------------------
// Stepping and simulation
// ----------------------------------------------------------------------------

RaceVector sample_race(const DecomposedModel& model, const State& at, Rng& rng) {
    RaceVector r(model.k());
    for (int j = 1; j <= model.k(); ++j) {
        r[j - 1] = model.rv_dist(j, at)->sample(rng);
    }
    return r;
}

DecomposedStep step_decomposed(const DecomposedModel& model, const State& s,
                               const RaceVector& race, Rng& rng) {
    const HybridAutomaton& ha = model.automaton();
    if (static_cast<int>(race.size()) != model.k()) {
        throw RaceViolation("race vector has wrong arity");
    }
    for (double x : race) {
        if (x < 0.0) throw RaceViolation("race vector entry below zero");
    }

    // Winner: smallest remaining time, lowest index on exact float ties
    // (a probability-zero event; the choice only needs to be deterministic).
    int winner = 0;
    for (int j = 1; j < model.k(); ++j) {
        if (race[j] < race[winner]) winner = j;
    }
    double t = race[winner];

    DecomposedStep step;
    double cap = ha.t_max(s);
    if (t > cap) {
        // Forced routing per the invariant-capping rule: elapse t_max, take
        // the forced edge, resample that edge's label at the successor.
        int forced = model.forced_edge(s.location);
        if (forced < 0) {
            throw TimelockError("race minimum " + std::to_string(t) + " exceeds t_max=" +
                                std::to_string(cap) + " in " + ha.location(s.location).name +
                                " and no forced edge declared");
        }
        step.delay = cap;
        step.forced_routing = true;
        step.edge = forced;
        step.winner = ha.edge(forced).label;
        State boundary = ha.advance(s, cap);
        step.next = ha.take_jump(boundary, forced);
        step.race_next.resize(race.size());
        for (std::size_t j = 0; j < race.size(); ++j) step.race_next[j] = race[j] - cap;
        step.race_next[step.winner - 1] =
            model.rv_dist(step.winner, step.next)->sample(rng);
        return step;
    }

    step.delay = t;
    step.winner = winner + 1;
    State post = ha.advance(s, t);
    step.edge = model.enabled_edge_with_label(post, step.winner);
    step.next = ha.take_jump(post, step.edge);

    // Decrement everyone by the elapsed time (the winner hits exactly zero),
    // then resample the winner at the successor state; the rest carry over.
    step.race_next.resize(race.size());
    for (std::size_t j = 0; j < race.size(); ++j) step.race_next[j] = race[j] - t;
    step.race_next[winner] = model.rv_dist(step.winner, step.next)->sample(rng);
    return step;
}

Path simulate_decomposed(const DecomposedModel& model, std::uint64_t seed,
                         const SimulationBounds& bounds, std::uint64_t trajectory_index) {
    Rng rng(seed, trajectory_index);
    Path path;
    path.initial = model.automaton().init();
    path.race_initial = sample_race(model, path.initial, rng);
    State current = path.initial;
    RaceVector race = path.race_initial;
    double now = 0.0;
    while (path.steps.size() < bounds.max_jumps && now < bounds.max_time) {
        DecomposedStep st = step_decomposed(model, current, race, rng);
        now += st.delay;
        PathStep ps;
        ps.delay = st.delay;
        ps.before_jump = model.automaton().advance(current, st.delay);
        ps.edge = st.edge;
        ps.after = st.next;
        ps.time = now;
        ps.forced_routing = st.forced_routing;
        ps.race = st.race_next;
        path.steps.push_back(std::move(ps));
        current = st.next;
        race = st.race_next;
    }
    return path;
}

std::vector<Path> simulate_decomposed_many(const DecomposedModel& model, std::uint64_t seed,
                                           std::size_t trajectories,
                                           const SimulationBounds& bounds, int workers) {
    std::vector<Path> out(trajectories);
    if (workers < 1) workers = 1;
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = simulate_decomposed(model, seed, bounds, i);
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
