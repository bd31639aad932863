#include <cmath>

#include <doctest.h>

#include "semispec/errors.hpp"
#include "semispec/weights.hpp"
#include "oracles.hpp"

using namespace semispec;
using cplx = std::complex<double>;

TEST_SUITE_BEGIN("weights");

TEST_CASE("standard alpha=0 closed forms") {
    const RadialWeight w = RadialWeight::standard(0.0);
    CHECK(w(0.3) == doctest::Approx(1.0).epsilon(1e-15));
    // tail(r) = 1 - r exactly
    for (double r : {0.0, 0.25, 0.5, 0.9, 0.999, 1.0 - 1e-8})
        CHECK(std::abs(w.tail(r) - (1.0 - r)) < 1e-12);
    // star(r) = (1/2) log(1/r) - (1-r^2)/4
    for (double r : {0.1, 0.5, 0.9, 0.99})
        CHECK(std::abs(w.star(r) - oracle::star_alpha0(r)) < 1e-12);
    // the frozen spot value: log(2)/2 - 3/16
    CHECK(w.star(0.5) == doctest::Approx(0.159073590279972).epsilon(1e-12));
    CHECK(w.tail0() == doctest::Approx(1.0));
}

TEST_CASE("standard alpha=1 and alpha=2.5 tails against the Simpson oracle") {
    for (double alpha : {1.0, 2.5}) {
        const RadialWeight w = RadialWeight::standard(alpha);
        for (double r : {0.0, 0.3, 0.7, 0.95, 0.999})
            CHECK(w.tail(r) ==
                  doctest::Approx(oracle::std_tail(alpha, r)).epsilon(1e-10));
    }
}

TEST_CASE("tail_first_moment matches the oracle") {
    const RadialWeight w = RadialWeight::standard(1.0);
    for (double r : {0.0, 0.5, 0.9}) {
        const double want =
            oracle::integrate([](double s) { return 2.0 * (1.0 - s * s) * s; }, r, 1.0);
        CHECK(w.tail_first_moment(r) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("star stays comparable to tail(r)*(1-r) toward the boundary") {
    // the two-sided comparison behind the essential-radius machinery
    for (double alpha : {0.0, 1.0, 2.0}) {
        const RadialWeight w = RadialWeight::standard(alpha);
        double lo = 1e300, hi = 0.0;
        for (int j = 2; j <= 10; ++j) {
            const double r = 1.0 - std::pow(0.5, j);
            const double q = w.star(r) / (w.tail(r) * (1.0 - r));
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        CHECK(hi / lo < 10.0);
    }
}

TEST_CASE("doubling verdicts") {
    SUBCASE("standard weights are in both classes") {
        for (double alpha : {0.0, 1.0, 3.0}) {
            const DoublingReport rep = doubling_diagnostics(RadialWeight::standard(alpha));
            CHECK(rep.upper == DoublingReport::Verdict::yes);
            CHECK(rep.lower == DoublingReport::Verdict::yes);
            CHECK(rep.in_both());
        }
    }
    SUBCASE("alpha=0 upper constant is the dyadic ratio 2") {
        const DoublingReport rep = doubling_diagnostics(RadialWeight::standard(0.0));
        CHECK(rep.C_upper == doctest::Approx(2.0).epsilon(1e-6));
    }
    SUBCASE("rapidly decreasing weight fails the upper test") {
        const DoublingReport rep = doubling_diagnostics(RadialWeight::exponential(1.0));
        CHECK(rep.upper == DoublingReport::Verdict::no);
    }
}

TEST_CASE("tabulated weight tracks its sample function") {
    std::vector<double> r, v;
    for (int i = 0; i <= 64; ++i) {
        r.push_back(i / 65.0);
        v.push_back(1.0 + 0.5 * r.back());
    }
    const RadialWeight w = RadialWeight::tabulated(r, v);
    CHECK(w(0.5) == doctest::Approx(1.25).epsilon(1e-3));
    const double want = oracle::integrate([](double s) { return 1.0 + 0.5 * s; }, 0.2, 1.0);
    CHECK(w.tail(0.2) == doctest::Approx(want).epsilon(1e-3));
}

TEST_CASE("carleson square and metric disk masses") {
    const RadialWeight w = RadialWeight::standard(0.0);
    // alpha=0 mass is normalized area; the metric disk at (0.5, 0.5) is the
    // Euclidean disk of center 2/5 and radius 2/5
    CHECK(disk_mass(w, cplx{0.5, 0.0}, 0.5) == doctest::Approx(0.16).epsilon(1e-8));
    // square over a: angular fraction (1-|a|)/(2 pi) times the radial mass
    const double ang = 0.25 / (2.0 * M_PI);
    const double rad =
        oracle::integrate([](double s) { return 2.0 * s; }, 0.75, 1.0);
    CHECK(square_mass(w, cplx{0.75, 0.0}) == doctest::Approx(ang * rad).epsilon(1e-8));
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(RadialWeight::standard(-1.0), domain_error);
    const RadialWeight w = RadialWeight::standard(0.0);
    CHECK_THROWS_AS((void)w(1.5), domain_error);
    CHECK_THROWS_AS((void)w.star(0.0), domain_error);
    CHECK_THROWS_AS(RadialWeight::tabulated({0.0, 0.5}, {1.0, -2.0}), domain_error);
}

TEST_CASE("JSON round trip keeps the identity") {
    const RadialWeight w = RadialWeight::standard(1.5);
    const RadialWeight back = RadialWeight::from_json(w.to_json());
    CHECK(back.identity() == w.identity());
    CHECK(back.tail(0.5) == doctest::Approx(w.tail(0.5)).epsilon(1e-14));
}

TEST_SUITE_END();
