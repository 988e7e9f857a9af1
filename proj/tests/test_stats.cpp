#include <cmath>

#include "doctest.h"
#include "shasim/rng.hpp"
#include "shasim/stats.hpp"

using namespace shasim;

TEST_CASE("rng substreams are deterministic and independent of order") {
    Rng a(42, 7);
    Rng b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

    Rng c(42, 8);
    Rng d(43, 7);
    CHECK(c.next() != Rng(42, 7).next());
    CHECK(d.next() != Rng(42, 7).next());

    Rng u(1, 2);
    for (int i = 0; i < 1000; ++i) {
        double x = u.uniform01();
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("one-sample KS accepts the true cdf and rejects a wrong one") {
    Rng rng(2024, 0);
    std::vector<double> samples;
    for (int i = 0; i < 20000; ++i) samples.push_back(rng.uniform01());

    auto ok = ks_test_one_sample(samples, [](double x) {
        if (x < 0.0) return 0.0;
        if (x > 1.0) return 1.0;
        return x;
    });
    CHECK_FALSE(ok.reject(0.01));

    auto bad = ks_test_one_sample(samples, [](double x) {
        if (x < 0.0) return 0.0;
        if (x > 1.0) return 1.0;
        return x * x;  // wrong law
    });
    CHECK(bad.reject(0.01));
}

TEST_CASE("two-sample KS distinguishes laws") {
    Rng rng(2025, 0);
    std::vector<double> a, b, c;
    for (int i = 0; i < 8000; ++i) {
        a.push_back(rng.uniform01());
        b.push_back(rng.uniform01());
        c.push_back(rng.uniform01() * rng.uniform01());
    }
    CHECK_FALSE(ks_test_two_sample(a, b).reject(0.01));
    CHECK(ks_test_two_sample(a, c).reject(0.01));
}

TEST_CASE("kolmogorov tail is monotone with known anchor values") {
    CHECK(kolmogorov_q(0.0) == doctest::Approx(1.0));
    // Q(1.2238...) ~ 0.1 (standard table value)
    CHECK(kolmogorov_q(1.224) == doctest::Approx(0.1).epsilon(0.01));
    CHECK(kolmogorov_q(1.628) == doctest::Approx(0.01).epsilon(0.05));
    CHECK(kolmogorov_q(3.0) < 1e-6);
}

TEST_CASE("wilson interval brackets the true proportion") {
    WilsonInterval w = wilson_interval(300, 1000, 0.99);
    CHECK(w.contains(0.3));
    CHECK(w.half_width < 0.05);
    CHECK(w.lo() >= 0.0);
    CHECK(w.hi() <= 1.0);

    // Extreme counts stay clipped to [0,1].
    WilsonInterval zero = wilson_interval(0, 50, 0.99);
    CHECK(zero.lo() == 0.0);
    WilsonInterval all = wilson_interval(50, 50, 0.99);
    CHECK(all.hi() == 1.0);
}

TEST_CASE("normal quantile hits textbook values") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-6));
    CHECK(normal_quantile(0.995) == doctest::Approx(2.575829304).epsilon(1e-6));
    CHECK(normal_quantile(0.005) == doctest::Approx(-2.575829304).epsilon(1e-6));
}

TEST_CASE("grid sup distance finds the maximum gap") {
    auto f = [](double x) { return x / 10.0; };
    auto g = [](double x) { return 1.0 - (1.0 - x / 10.0) * (1.0 - x / 10.0); };
    GridDistance d = cdf_sup_distance(f, g, 0.0, 10.0);
    CHECK(d.distance == doctest::Approx(0.25).epsilon(1e-4));
    CHECK(d.at == doctest::Approx(5.0).epsilon(1e-2));
}
