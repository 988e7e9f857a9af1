#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "shasim/automaton.hpp"
#include "shasim/errors.hpp"

using namespace shasim;

namespace {
State q0_at(double x) { return State{0, {x}}; }
}  // namespace

TEST_CASE("advance integrates constant rates and checks the invariant") {
    HybridAutomaton ha = fixtures::clock_reset_automaton();
    CHECK(ha.advance(q0_at(0.0), 4.0) == q0_at(4.0));
    // Boundary is admitted.
    CHECK(ha.advance(q0_at(0.0), 9.0) == q0_at(9.0));
    CHECK_THROWS_AS(ha.advance(q0_at(0.0), 10.0), InvariantViolation);
}

TEST_CASE("take_jump applies guard, reset and target invariant") {
    HybridAutomaton ha = fixtures::clock_reset_automaton();
    const int e1 = 0, e2 = 1;
    CHECK(ha.take_jump(q0_at(3.0), e1) == q0_at(0.0));
    CHECK_THROWS_AS(ha.take_jump(q0_at(2.0), e1), JumpDisabled);
    State after = ha.take_jump(q0_at(5.0), e2);
    CHECK(after.location == 1);
    CHECK(after.valuation == std::vector<double>{5.0});
}

TEST_CASE("enabled_edges matches immediate jump enabledness") {
    HybridAutomaton ha = fixtures::clock_reset_automaton();
    CHECK(ha.enabled_edges(q0_at(0.0)) == std::vector<int>{1});
    CHECK(ha.enabled_edges(q0_at(5.0)) == std::vector<int>{0, 1});
    CHECK(ha.enabled_edges(State{1, {42.0}}) == std::vector<int>{2});
}

TEST_CASE("characteristic time sets of the clock-reset automaton") {
    HybridAutomaton ha = fixtures::clock_reset_automaton();
    State s = q0_at(0.0);
    CHECK(ha.jump_time_set(s, 0) == TimeIntervalSet(Interval::closed(3.0, 9.0)));
    CHECK(ha.jump_time_set(s, 1) == TimeIntervalSet(Interval::closed(0.0, 8.0)));
    CHECK(ha.jump_time_set(s, 2).empty());  // wrong source location
    CHECK(ha.time_set(s) == TimeIntervalSet(Interval::closed(0.0, 9.0)));
    CHECK(ha.t_max(s) == 9.0);
    CHECK(ha.t_max(q0_at(9.0)) == 0.0);
    CHECK(ha.t_max(State{1, {0.0}}) == kInf);
}

TEST_CASE("complement guards produce half-open enabling sets") {
    // Self-loop with guard "not (x >= 3)" from x=0 at rate 1.
    std::vector<std::string> vars{"x"};
    Location loc{"loc", {1.0}, Box(1)};
    Edge eps;
    eps.name = "eps";
    eps.source = 0;
    eps.target = 0;
    Box ge3(1);
    ge3.dims[0] = Interval{3.0, kInf, false, true};
    eps.guard = Guard::complement_of_union({ge3}, 1);
    eps.reset = AffineReset::identity(1);
    HybridAutomaton ha(vars, {loc}, {eps}, State{0, {0.0}});

    CHECK(ha.jump_time_set(State{0, {0.0}}, 0) ==
          TimeIntervalSet(Interval{0.0, 3.0, false, true}));
    CHECK(eps.guard.contains({2.999}));
    CHECK_FALSE(eps.guard.contains({3.0}));
}

TEST_CASE("edges_plus lists edges enabled for some valuation") {
    HybridAutomaton ha = fixtures::clock_reset_automaton();
    CHECK(ha.edges_plus(0) == std::vector<int>{0, 1});
    CHECK(ha.edges_plus(1) == std::vector<int>{2});

    // A location with no outgoing edges.
    HybridAutomaton lonely({"x"}, {Location{"only", {1.0}, Box(1)}}, {}, State{0, {0.0}});
    CHECK(lonely.edges_plus(0).empty());
}

TEST_CASE("edges_plus prunes unsatisfiable reset targets") {
    // Reset forces x := 20, but the target invariant caps x at 9.
    HybridAutomaton base = fixtures::clock_reset_automaton();
    std::vector<Edge> edges = base.edges();
    Edge bad;
    bad.name = "bad";
    bad.source = 1;
    bad.target = 0;
    bad.guard = Guard::full(1);
    bad.reset.rows = {AffineExpr(20.0)};
    edges.push_back(bad);
    HybridAutomaton ha(base.variables(), base.locations(), edges, base.init());
    CHECK(ha.edges_plus(1) == std::vector<int>{2});
}

TEST_CASE("validate flags dimension and init errors") {
    HybridAutomaton good = fixtures::clock_reset_automaton();
    CHECK(good.validate().valid());

    // Reset with too many rows.
    std::vector<Edge> edges = good.edges();
    edges[0].reset.rows.push_back(AffineExpr(1.0));
    HybridAutomaton bad_reset(good.variables(), good.locations(), edges, good.init());
    CHECK_FALSE(bad_reset.validate().valid());

    // Initial state outside the invariant.
    HybridAutomaton bad_init(good.variables(), good.locations(), good.edges(),
                             State{0, {12.0}});
    CHECK_FALSE(bad_init.validate().valid());

    // Bounded invariant without a forced edge is only a warning.
    std::vector<Edge> unforced = good.edges();
    unforced[0].forced = false;
    HybridAutomaton warn(good.variables(), good.locations(), unforced, good.init());
    ValidationReport rep = warn.validate();
    CHECK(rep.valid());
    CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("flow semigroup is exact on dyadic fixtures") {
    Rng rng(20240811, 1);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        auto fx = testgen::random_flow_fixture(rng);
        double t1 = testgen::nonneg_dyadic(rng);
        double t2 = testgen::nonneg_dyadic(rng);
        State direct;
        bool direct_ok = true;
        try {
            direct = fx.ha.advance(fx.state, t1 + t2);
        } catch (const InvariantViolation&) {
            direct_ok = false;
        }
        State stepped;
        bool stepped_ok = true;
        try {
            stepped = fx.ha.advance(fx.ha.advance(fx.state, t1), t2);
        } catch (const InvariantViolation&) {
            stepped_ok = false;
        }
        REQUIRE(direct_ok == stepped_ok);
        if (direct_ok) {
            REQUIRE(direct == stepped);  // bitwise: dyadic arithmetic is exact
            ++checked;
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("time-set containment chain and enabledness at zero") {
    Rng rng(555, 2);
    for (int i = 0; i < 400; ++i) {
        auto fx = testgen::random_flow_fixture(rng);
        const State& s = fx.state;
        double cap = fx.ha.t_max(s);
        TimeIntervalSet total = fx.ha.time_set(s);
        for (std::size_t e = 0; e < fx.ha.edges().size(); ++e) {
            TimeIntervalSet te = fx.ha.jump_time_set(s, static_cast<int>(e));
            CHECK(te.unite(total) == total);  // T(s,e) subset of T(s)
            CHECK(te.contains(0.0) == fx.ha.jump_enabled(s, static_cast<int>(e)));
        }
        CHECK(total.sup() <= cap);
        // enabled edges are always possibly-enabled edges
        auto enabled = fx.ha.enabled_edges(s);
        auto plus = fx.ha.edges_plus(s.location);
        for (int e : enabled) {
            CHECK(std::find(plus.begin(), plus.end(), e) != plus.end());
        }
    }
}

TEST_CASE("identity self-loop preserves the valuation exactly") {
    HybridAutomaton ha = fixtures::clock_reset_automaton();
    State s{1, {3.7777777777777}};
    State after = ha.take_jump(s, 2);
    CHECK(after == s);
}
