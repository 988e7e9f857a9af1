#ifndef SHASIM_TESTS_GENERATORS_HPP_
#define SHASIM_TESTS_GENERATORS_HPP_

#include <vector>

#include "shasim/automaton.hpp"
#include "shasim/rng.hpp"

namespace shasim::testgen {

// Dyadic rationals (multiples of 2^-10 up to magnitude 16) keep all flow
// arithmetic exact in doubles, so semigroup checks can compare bitwise.
inline double dyadic(Rng& rng) {
    auto k = static_cast<std::int64_t>(rng.next() % 32769) - 16384;
    return static_cast<double>(k) / 1024.0;
}

inline double nonneg_dyadic(Rng& rng) {
    auto k = static_cast<std::int64_t>(rng.next() % 16385);
    return static_cast<double>(k) / 1024.0;
}

struct RandomFixture {
    HybridAutomaton ha;
    State state;  // satisfies the invariant of its location
};

// A one-location automaton with random dyadic rates and a box invariant wide
// enough to contain `state`; some dimensions unbounded.
inline RandomFixture random_flow_fixture(Rng& rng) {
    std::size_t d = 1 + rng.next() % 3;
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < d; ++i) vars.push_back("v" + std::to_string(i));

    Location loc{"loc", {}, Box(d)};
    State state{0, {}};
    for (std::size_t i = 0; i < d; ++i) {
        loc.flow.push_back(dyadic(rng));
        double x = dyadic(rng);
        state.valuation.push_back(x);
        switch (rng.next() % 3) {
            case 0:
                break;  // unbounded
            case 1:
                loc.invariant.dims[i] = Interval{x - nonneg_dyadic(rng), kInf, false, true};
                break;
            default:
                loc.invariant.dims[i] =
                    Interval::closed(x - nonneg_dyadic(rng), x + nonneg_dyadic(rng));
                break;
        }
    }

    // A couple of edges with random dyadic box guards and simple resets.
    std::vector<Edge> edges;
    std::size_t n_edges = rng.next() % 3;
    for (std::size_t e = 0; e < n_edges; ++e) {
        Edge edge;
        edge.name = "e" + std::to_string(e);
        edge.source = 0;
        edge.target = 0;
        edge.guard = Guard::of_box(Box(d));
        for (std::size_t i = 0; i < d; ++i) {
            if (rng.next() % 2 == 0) {
                double lo = dyadic(rng);
                edge.guard.box.dims[i] = Interval::closed(lo, lo + nonneg_dyadic(rng));
            }
        }
        if (rng.next() % 2 == 0) {
            edge.reset = AffineReset::identity(d);
        } else {
            for (std::size_t i = 0; i < d; ++i) edge.reset.rows.push_back(AffineExpr(dyadic(rng)));
        }
        edges.push_back(edge);
    }

    HybridAutomaton ha(vars, {loc}, edges, state);
    return RandomFixture{std::move(ha), std::move(state)};
}

}  // namespace shasim::testgen

#endif  // SHASIM_TESTS_GENERATORS_HPP_
