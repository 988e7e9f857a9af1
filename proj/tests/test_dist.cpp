#include <cmath>

#include "doctest.h"
#include "shasim/distribution.hpp"
#include "shasim/errors.hpp"
#include "shasim/quadrature.hpp"
#include "shasim/stats.hpp"

using namespace shasim;

namespace {

DistPtr uni(double a, double b) { return std::make_shared<UniformDist>(a, b); }
DistPtr expo(double rate) { return std::make_shared<ExponentialDist>(rate); }

}  // namespace

TEST_CASE("basic cdf/pdf/quantile contracts") {
    CHECK(uni(0, 10)->cdf(5.0) == doctest::Approx(0.5));
    CHECK(uni(0, 10)->quantile(0.3) == doctest::Approx(3.0));
    CHECK(expo(0.2)->cdf(5.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(expo(0.2)->pdf(0.0) == doctest::Approx(0.2));
    CHECK(expo(2.0)->quantile(expo(2.0)->cdf(1.234)) == doctest::Approx(1.234));

    CHECK_THROWS_AS(UniformDist(5.0, 5.0), InvalidParameter);
    CHECK_THROWS_AS(ExponentialDist(0.0), InvalidParameter);
    CHECK_THROWS_AS(ExponentialDist(-1.0), InvalidParameter);
}

TEST_CASE("dist spec resolves affine parameters against a valuation") {
    // uniform(0, (1-x)/2) at x = 0.5 -> uniform(0, 0.25)
    AffineExpr upper({-0.5}, 0.5);
    DistSpec spec = DistSpec::uniform(AffineExpr(0.0), upper);
    CHECK(spec.state_dependent());
    DistPtr d = spec.resolve({0.5});
    CHECK(d->support().hi == doctest::Approx(0.25));
    // Width collapses at x = 1: invalid, no silent clamping.
    CHECK_THROWS_AS(spec.resolve({1.0}), InvalidParameter);
}

TEST_CASE("min of two equal exponentials is the rate-sum exponential") {
    DistPtr m = min_of({expo(0.2), expo(0.2)});
    DistPtr target = expo(0.4);
    for (double t = 0.0; t <= 30.0; t += 0.125) {
        CHECK(std::abs(m->cdf(t) - target->cdf(t)) < 1e-12);
    }
}

TEST_CASE("min of two uniform(0,10) has the Appendix-style triangular density") {
    DistPtr m = min_of({uni(0, 10), uni(0, 10)});
    // f(m) = (10-m)/50 from the product rule
    CHECK(m->pdf(0.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(m->pdf(5.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(m->cdf(5.0) == doctest::Approx(0.75).epsilon(1e-12));

    // Independent oracle: empirical minimum over sampled pairs.
    Rng rng(99, 0);
    DistPtr u = uni(0, 10);
    std::vector<double> mins;
    mins.reserve(100000);
    for (int i = 0; i < 100000; ++i) {
        mins.push_back(std::min(u->sample(rng), u->sample(rng)));
    }
    auto ks = ks_test_one_sample(mins, [&](double x) { return m->cdf(x); });
    CHECK_FALSE(ks.reject(0.01));
}

TEST_CASE("min_of of a single distribution is the distribution itself") {
    DistPtr u = uni(0, 10);
    CHECK(min_of({u}) == u);
}

TEST_CASE("shift_condition yields the residual-life distribution") {
    // uniform(0,10) after 4 elapsed: F(x) = x/6 on [0,6]
    DistPtr shifted = shift_condition(uni(0, 10), 4.0);
    DistPtr base = uni(0, 10);
    for (double x = 0.0; x <= 6.0; x += 0.25) {
        CHECK(shifted->cdf(x) == doctest::Approx(x / 6.0).epsilon(1e-12));
        // Quadrature oracle straight from the definition.
        double direct = integrate([&](double t) { return base->pdf(t); }, 4.0, 4.0 + x, 1e-10) /
                        (1.0 - base->cdf(4.0));
        CHECK(shifted->cdf(x) == doctest::Approx(direct).epsilon(1e-8));
    }
    CHECK(shifted->support().hi == doctest::Approx(6.0));

    // Memorylessness of the exponential.
    DistPtr e = expo(0.7);
    DistPtr es = shift_condition(e, 3.3);
    for (double x = 0.0; x <= 10.0; x += 0.5) {
        CHECK(std::abs(es->cdf(x) - e->cdf(x)) < 1e-12);
    }

    CHECK_THROWS_AS(shift_condition(uni(0, 10), 10.0), ExhaustedSupport);

    // Zero elapsed time on nonnegative support changes nothing.
    DistPtr zs = shift_condition(uni(0, 10), 0.0);
    for (double x = 0.0; x <= 10.0; x += 0.5) {
        CHECK(std::abs(zs->cdf(x) - base->cdf(x)) < 1e-12);
    }
}

TEST_CASE("prob_is_min matches closed forms and sampling") {
    // exp(1) vs exp(3): first wins with rate ratio 1/4.
    std::vector<DistPtr> race{expo(1.0), expo(3.0)};
    double p0 = prob_is_min(0, race);
    double p1 = prob_is_min(1, race);
    CHECK(p0 == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(p1 == doctest::Approx(0.75).epsilon(1e-6));

    // Sampling oracle.
    Rng rng(7, 0);
    int wins = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        if (race[0]->sample(rng) < race[1]->sample(rng)) ++wins;
    }
    double freq = static_cast<double>(wins) / n;
    double sigma = std::sqrt(0.25 * 0.75 / n);
    CHECK(std::abs(freq - 0.25) < 3.0 * sigma);

    // Symmetric and disjoint cases.
    CHECK(prob_is_min(0, {expo(2.0), expo(2.0)}) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(prob_is_min(0, {uni(0, 1), uni(5, 6)}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(prob_is_min(1, {uni(0, 1), uni(5, 6)}) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("prob_is_min sums to one over the family") {
    std::vector<std::vector<DistPtr>> families = {
        {expo(1.0), expo(3.0)},
        {uni(0, 10), uni(0, 10)},
        {uni(0, 10), expo(0.2), uni(2, 6)},
        {expo(0.5), uni(0, 3), expo(2.0)},
    };
    for (const auto& fam : families) {
        double sum = 0.0;
        for (std::size_t i = 0; i < fam.size(); ++i) sum += prob_is_min(i, fam);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("uniformity deviation quantifies non-constant densities") {
    DistPtr mu = min_of({uni(0, 10), uni(0, 10)});
    UniformityReport rep = uniformity_deviation(*mu, Interval::closed(0.0, 10.0));
    // pdf(0)/pdf(5) = 2 exactly.
    CHECK(rep.pdf_at_lo / rep.pdf_at_mid == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.lo_mid_ratio == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.max_pdf == doctest::Approx(0.2).epsilon(1e-12));

    // A uniform is flat.
    UniformityReport flat = uniformity_deviation(*uni(0, 10), Interval::closed(0.0, 10.0));
    CHECK(flat.ratio == doctest::Approx(1.0));

    // min of two exp(1) on [0,1]: density 2e^{-2m}, endpoint ratio e^2.
    DistPtr me = min_of({expo(1.0), expo(1.0)});
    UniformityReport er = uniformity_deviation(*me, Interval::closed(0.0, 1.0));
    CHECK(er.ratio == doctest::Approx(std::exp(2.0)).epsilon(1e-9));

    // Any overlapping continuous pair deviates from uniformity.
    std::vector<std::pair<DistPtr, DistPtr>> pairs = {
        {uni(0, 10), uni(0, 10)}, {expo(1.0), expo(1.0)},   {uni(0, 10), expo(0.3)},
        {uni(2, 8), uni(0, 10)},  {expo(0.5), uni(0, 4)},
    };
    for (const auto& [a, b] : pairs) {
        DistPtr m = min_of({a, b});
        double lo = std::max(a->support().lo, b->support().lo);
        double hi = std::min(a->truncation_point(), b->truncation_point());
        UniformityReport r = uniformity_deviation(*m, Interval::closed(lo, hi));
        CHECK(r.ratio > 1.01);
    }
}

TEST_CASE("sampling matches the analytic cdf for every variant") {
    std::vector<DistPtr> variants = {
        uni(0, 10),
        expo(0.2),
        shift_condition(uni(0, 10), 4.0),
        min_of({uni(0, 10), uni(0, 10)}),
        min_of({expo(1.0), expo(3.0)}),
        min_of({shift_condition(uni(0, 10), 2.0), expo(0.5)}),
    };
    for (std::size_t v = 0; v < variants.size(); ++v) {
        Rng rng(1234, v);
        std::vector<double> samples;
        samples.reserve(100000);
        for (int i = 0; i < 100000; ++i) samples.push_back(variants[v]->sample(rng));
        auto ks = ks_test_one_sample(samples,
                                     [&](double x) { return variants[v]->cdf(x); });
        INFO("variant ", variants[v]->describe(), " D=", ks.statistic);
        CHECK_FALSE(ks.reject(0.01));
    }
}

TEST_CASE("dirac mixture acts as a discrete distribution") {
    DiracMixtureDist d({2.0, 1.0}, {1.0, 3.0});
    CHECK(d.cdf(0.5) == doctest::Approx(0.0));
    CHECK(d.cdf(1.0) == doctest::Approx(0.75));
    CHECK(d.cdf(2.0) == doctest::Approx(1.0));
    CHECK(d.quantile(0.5) == doctest::Approx(1.0));
    CHECK(d.quantile(0.9) == doctest::Approx(2.0));
    CHECK_FALSE(d.continuous());
    CHECK_THROWS_AS(d.pdf(1.0), InvalidParameter);

    Rng rng(11, 0);
    int at_one = 0;
    for (int i = 0; i < 20000; ++i) {
        if (d.sample(rng) == 1.0) ++at_one;
    }
    CHECK(std::abs(at_one / 20000.0 - 0.75) < 0.02);
}

TEST_CASE("minimum quantile inverts its cdf") {
    DistPtr m = min_of({uni(0, 10), expo(0.15)});
    for (double p : {0.01, 0.1, 0.5, 0.9, 0.99}) {
        double q = m->quantile(p);
        CHECK(m->cdf(q) == doctest::Approx(p).epsilon(1e-9));
    }
}
