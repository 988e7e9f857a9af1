#include "doctest.h"
#include "shasim/interval.hpp"

using namespace shasim;

TEST_CASE("interval membership honors open ends") {
    Interval closed = Interval::closed(3.0, 9.0);
    CHECK(closed.contains(3.0));
    CHECK(closed.contains(9.0));
    CHECK_FALSE(closed.contains(9.0000001));

    Interval half{0.0, 3.0, false, true};
    CHECK(half.contains(0.0));
    CHECK_FALSE(half.contains(3.0));

    CHECK(Interval::full().contains(1e308));
    CHECK(Interval::empty_interval().empty());
    CHECK(Interval{5.0, 5.0, true, false}.empty());
    CHECK_FALSE(Interval::point(5.0).empty());
}

TEST_CASE("interval set normalization merges touching parts") {
    TimeIntervalSet a{{Interval{0.0, 3.0, false, true}, Interval::closed(3.0, 9.0)}};
    CHECK(a == TimeIntervalSet(Interval::closed(0.0, 9.0)));

    // Both open at the junction: a point gap remains.
    TimeIntervalSet b{{Interval{0.0, 3.0, false, true}, Interval{3.0, 9.0, true, false}}};
    CHECK(b.parts().size() == 2);
    CHECK_FALSE(b.contains(3.0));
    CHECK(b.contains(2.9999));
    CHECK(b.contains(3.0001));
}

TEST_CASE("interval set complement within the time axis") {
    TimeIntervalSet inside{{Interval{3.0, kInf, false, true}}};
    TimeIntervalSet outside = inside.complement();
    CHECK(outside == TimeIntervalSet(Interval{0.0, 3.0, false, true}));
    CHECK(outside.complement() == inside);

    CHECK(TimeIntervalSet::empty_set().complement() == TimeIntervalSet::full());
    CHECK(TimeIntervalSet::full().complement().empty());
}

TEST_CASE("interval set algebra") {
    TimeIntervalSet a(Interval::closed(3.0, 9.0));
    TimeIntervalSet b(Interval::closed(0.0, 8.0));
    CHECK(a.unite(b) == TimeIntervalSet(Interval::closed(0.0, 9.0)));
    CHECK(a.intersect(b) == TimeIntervalSet(Interval::closed(3.0, 8.0)));
    CHECK(a.measure() == doctest::Approx(6.0));
    CHECK(a.sup() == 9.0);
    CHECK(a.inf() == 3.0);
    CHECK(TimeIntervalSet::empty_set().sup() == 0.0);
}

TEST_CASE("linear_in_interval handles slope signs and zero rate") {
    // value(t) = 0 + 1*t in [3,9]
    CHECK(linear_in_interval(0.0, 1.0, Interval::closed(3.0, 9.0)) ==
          TimeIntervalSet(Interval::closed(3.0, 9.0)));
    // decreasing through the strict bound
    TimeIntervalSet dec = linear_in_interval(10.0, -2.0, Interval{4.0, 8.0, true, false});
    CHECK(dec == TimeIntervalSet(Interval{1.0, 3.0, false, true}));
    // zero slope inside / outside
    CHECK(linear_in_interval(5.0, 0.0, Interval::closed(0.0, 9.0)) == TimeIntervalSet::full());
    CHECK(linear_in_interval(15.0, 0.0, Interval::closed(0.0, 9.0)).empty());
    // clipped to nonnegative time
    CHECK(linear_in_interval(5.0, 1.0, Interval::closed(0.0, 9.0)) ==
          TimeIntervalSet(Interval::closed(0.0, 4.0)));
}
