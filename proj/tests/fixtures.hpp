#ifndef SHASIM_TESTS_FIXTURES_HPP_
#define SHASIM_TESTS_FIXTURES_HPP_

#include "shasim/automaton.hpp"
#include "shasim/composed.hpp"
#include "shasim/decomposed.hpp"

namespace shasim::fixtures {

// Single-variable automaton with a rate-1 clock in q0 (invariant x <= 9),
// a resetting self-loop e1 (x >= 3, x := 0, designated forced) and a jump e2
// (x <= 8) to an unconstrained q1 with self-loop e3.
inline HybridAutomaton clock_reset_automaton() {
    std::vector<std::string> vars{"x"};
    Location q0{"q0", {1.0}, Box(1)};
    q0.invariant.dims[0] = Interval{-kInf, 9.0, true, false};
    Location q1{"q1", {1.0}, Box(1)};

    Edge e1;
    e1.name = "e1";
    e1.source = 0;
    e1.target = 0;
    e1.guard = Guard::of_box(Box(1));
    e1.guard.box.dims[0] = Interval{3.0, kInf, false, true};
    e1.reset.rows = {AffineExpr(0.0)};  // x := 0
    e1.forced = true;

    Edge e2;
    e2.name = "e2";
    e2.source = 0;
    e2.target = 1;
    e2.guard = Guard::of_box(Box(1));
    e2.guard.box.dims[0] = Interval{-kInf, 8.0, true, false};
    e2.reset = AffineReset::identity(1);

    Edge e3;
    e3.name = "e3";
    e3.source = 1;
    e3.target = 1;
    e3.guard = Guard::full(1);
    e3.reset = AffineReset::identity(1);

    State init{0, {0.0}};
    return HybridAutomaton(vars, {q0, q1}, {e1, e2, e3}, init);
}

inline ComposedModel clock_reset_composed() {
    HybridAutomaton ha = clock_reset_automaton();
    ComposedScheduleTable table;
    table.delay_by_location = {
        DistSpec::uniform(AffineExpr(0.0), AffineExpr(10.0)),
        DistSpec::exponential(AffineExpr(1.0)),
    };
    table.rules_by_location.resize(2);
    WeightRow both;
    both.condition = Box(1);
    both.condition.dims[0] = Interval::closed(3.0, 8.0);
    both.weights = {{0, 0.5}, {1, 0.5}};
    WeightRow only_e1;
    only_e1.condition = Box(1);
    only_e1.condition.dims[0] = Interval{8.0, 9.0, true, false};
    only_e1.weights = {{0, 1.0}};
    WeightRow only_e2;
    only_e2.condition = Box(1);
    only_e2.condition.dims[0] = Interval{-kInf, 3.0, true, true};
    only_e2.weights = {{1, 1.0}};
    table.rules_by_location[0] = {both, only_e1, only_e2};
    WeightRow loop;
    loop.condition = Box(1);
    loop.weights = {{2, 1.0}};
    table.rules_by_location[1] = {loop};
    return ComposedModel::from_table(ha, std::move(table));
}

// Three-location branching automaton: rate-1 clock in l0, edges to l1
// (x >= 4) and l2 (3 <= x <= 7), trivial invariants, x := 0 initially.
// Labels 1 and 2 mark the two edges for race scheduling.
inline HybridAutomaton branching_automaton() {
    std::vector<std::string> vars{"x"};
    Location l0{"l0", {1.0}, Box(1)};
    Location l1{"l1", {2.0}, Box(1)};
    Location l2{"l2", {3.0}, Box(1)};

    Edge e1;
    e1.name = "e1";
    e1.source = 0;
    e1.target = 1;
    e1.guard = Guard::of_box(Box(1));
    e1.guard.box.dims[0] = Interval{4.0, kInf, false, true};
    e1.reset = AffineReset::identity(1);
    e1.label = 1;

    Edge e2;
    e2.name = "e2";
    e2.source = 0;
    e2.target = 2;
    e2.guard = Guard::of_box(Box(1));
    e2.guard.box.dims[0] = Interval::closed(3.0, 7.0);
    e2.reset = AffineReset::identity(1);
    e2.label = 2;

    State init{0, {0.0}};
    return HybridAutomaton(vars, {l0, l1, l2}, {e1, e2}, init);
}

// Composed scheduling over the branching automaton: uniform(0,10) dwell in
// l0, exp(5) elsewhere; both edges enabled -> weights 0.7/0.3.
inline ComposedModel branching_composed(double weight_e1 = 0.7) {
    HybridAutomaton ha = branching_automaton();
    ComposedScheduleTable table;
    table.delay_by_location = {
        DistSpec::uniform(AffineExpr(0.0), AffineExpr(10.0)),
        DistSpec::exponential(AffineExpr(5.0)),
        DistSpec::exponential(AffineExpr(5.0)),
    };
    table.rules_by_location.resize(3);
    WeightRow both;
    both.condition = Box(1);
    both.condition.dims[0] = Interval::closed(4.0, 7.0);
    both.weights = {{0, weight_e1}, {1, 1.0 - weight_e1}};
    WeightRow only_e1;
    only_e1.condition = Box(1);
    only_e1.condition.dims[0] = Interval{7.0, kInf, true, true};
    only_e1.weights = {{0, 1.0}};
    WeightRow only_e2;
    only_e2.condition = Box(1);
    only_e2.condition.dims[0] = Interval{3.0, 4.0, false, true};
    only_e2.weights = {{1, 1.0}};
    table.rules_by_location[0] = {both, only_e1, only_e2};
    return ComposedModel::from_table(ha, std::move(table));
}

// Decomposed scheduling over the same automaton, both labels exp(0.2).
inline DecomposedModel branching_decomposed(double rate1 = 0.2, double rate2 = 0.2) {
    return DecomposedModel::from_parts(
        branching_automaton(),
        {DistSpec::exponential(AffineExpr(rate1)), DistSpec::exponential(AffineExpr(rate2))});
}

// Composed counterexample shape: unguarded branch with fixed probabilities
// 0.25 / 0.75 and uniform(0,10) dwell in l0.
inline ComposedModel unguarded_branching_composed() {
    HybridAutomaton ha = branching_automaton();
    std::vector<Edge> edges = ha.edges();
    edges[0].guard = Guard::full(1);
    edges[1].guard = Guard::full(1);
    HybridAutomaton open_ha(ha.variables(), ha.locations(), edges, ha.init());

    ComposedScheduleTable table;
    table.delay_by_location = {
        DistSpec::uniform(AffineExpr(0.0), AffineExpr(10.0)),
        DistSpec::exponential(AffineExpr(5.0)),
        DistSpec::exponential(AffineExpr(5.0)),
    };
    table.rules_by_location.resize(3);
    WeightRow row;
    row.condition = Box(1);
    row.weights = {{0, 0.25}, {1, 0.75}};
    table.rules_by_location[0] = {row};
    return ComposedModel::from_table(open_ha, std::move(table));
}

}  // namespace shasim::fixtures

#endif  // SHASIM_TESTS_FIXTURES_HPP_
