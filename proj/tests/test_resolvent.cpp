#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <doctest.h>

#include "semispec/errors.hpp"
#include "semispec/resolvent.hpp"
#include "semispec/spectral.hpp"
#include "oracles.hpp"

using namespace semispec;

namespace {

const std::vector<std::string> kKoenigsNames{"z", "log(1/(1-z))", "log((1+z)/(1-z))"};

}  // namespace

TEST_SUITE_BEGIN("resolvent");

TEST_CASE("J and M_z act on coefficients as expected") {
    std::mt19937 rng(5);
    const AnalyticSeries f(oracle::random_poly(9, rng));
    const AnalyticSeries jf = apply_J(f);
    const AnalyticSeries zf = apply_M_z(f);
    for (int n = 0; n < f.length(); ++n) {
        CHECK(std::abs(jf.coeff(n) - f.coeff(n) / double(n + 1)) < 1e-15);
        CHECK(std::abs(zf.coeff(n + 1) - f.coeff(n)) < 1e-15);
    }
    CHECK(std::abs(zf.coeff(0)) == 0.0);
}

TEST_CASE("averaging operator section has the harmonic eigenvalue ladder") {
    const AnalyticSeries hz = named_series("z", 32);
    const FiniteSection T = operator_section(
        [&](const AnalyticSeries& f) { return apply_R_h(hz, f); }, RadialWeight::standard(0.0),
        16, "R_z");
    CHECK(T.lower_triangular());
    const auto eigs = section_eigenvalues(T);
    REQUIRE(eigs.size() == 16);
    // sorted by descending modulus: 1/(k+1)
    for (int k = 0; k < 16; ++k)
        CHECK(std::abs(eigs[static_cast<size_t>(k)] - 1.0 / double(k + 1)) < 1e-13);
}

TEST_CASE("eigen-identity on koenigs powers") {
    for (const auto& name : kKoenigsNames) {
        const AnalyticSeries h = named_series(name, 128);
        for (int k = 1; k <= 4; ++k) {
            const AnalyticSeries hk = pow_int(h, k, 128);
            const AnalyticSeries got = apply_R_h(h, hk);
            const AnalyticSeries want = scale(hk, 1.0 / double(k + 1));
            CAPTURE(name);
            CHECK(sup_coeff_diff(got, want, 128) < 1e-10);
        }
    }
}

TEST_CASE("decomposition identities on random polynomials") {
    std::mt19937 rng(17);
    for (const auto& name : kKoenigsNames) {
        const AnalyticSeries h = named_series(name, 64);
        for (int trial = 0; trial < 10; ++trial) {
            const AnalyticSeries f(oracle::random_poly(20, rng));
            // intertwining: M_z P_h = R_h M_z
            const AnalyticSeries lhs1 = apply_M_z(apply_P_h(h, f));
            const AnalyticSeries rhs1 = apply_R_h(h, apply_M_z(f));
            CAPTURE(name);
            CHECK(sup_coeff_diff(lhs1, rhs1, 24) < 1e-10);
            // splitting: Q_h = P_h + Q_h P_h
            const AnalyticSeries pf = apply_P_h(h, f);
            const AnalyticSeries lhs2 = apply_Q_h(h, f);
            const AnalyticSeries rhs2 = add(pf, apply_Q_h(h, pf));
            CHECK(sup_coeff_diff(lhs2, rhs2, 24) < 1e-10);
        }
    }
}

TEST_CASE("trivial koenigs function collapses the operator family") {
    const AnalyticSeries hz = named_series("z", 24);
    std::mt19937 rng(23);
    const AnalyticSeries f(oracle::random_poly(10, rng));
    // R_z = Q_z = J and L_z = 0
    CHECK(sup_coeff_diff(apply_R_h(hz, f), apply_J(f), 12) < 1e-14);
    CHECK(sup_coeff_diff(apply_Q_h(hz, f), apply_J(f), 12) < 1e-14);
    for (int n = 0; n < 12; ++n) CHECK(std::abs(apply_L_h(hz, f).coeff(n)) < 1e-14);
}

TEST_CASE("fractional antiderivative tracks the offset") {
    FractionalSeries f;
    f.offset = cplx{0.5, 2.0};
    f.part = AnalyticSeries(std::vector<cplx>{{1.0, 0.0}, {2.0, 0.0}, {0.0, 3.0}});
    const FractionalSeries g = fractional_antiderivative(f);
    CHECK(std::abs(g.offset - (f.offset + 1.0)) < 1e-15);
    for (int n = 0; n < 3; ++n)
        CHECK(std::abs(g.part.coeff(n) - f.part.coeff(n) / (f.offset + 1.0 + double(n))) <
              1e-15);
    FractionalSeries bad;
    bad.offset = cplx{-1.0, 0.0};
    bad.part = f.part;
    CHECK_THROWS_AS((void)fractional_antiderivative(bad), domain_error);
}

TEST_CASE("resolvent of the dilation generator is diagonal") {
    const SemigroupSpec s = make_semigroup("dilation(1)", 64);
    std::mt19937 rng(29);
    const AnalyticSeries f(oracle::random_poly(12, rng));
    const cplx lambda{1.0, 1.0};
    const AnalyticSeries rf = apply_resolvent(s, lambda, f);
    for (int n = 0; n <= 12; ++n)
        CHECK(std::abs(rf.coeff(n) - f.coeff(n) / (lambda + double(n))) < 1e-12);
}

TEST_CASE("resolvent equation and inverse property") {
    const SemigroupSpec s = make_semigroup("example2", 256);
    const cplx mu = s.mu();
    std::mt19937 rng(31);
    const std::vector<cplx> lambdas{{1.0, 0.0}, {2.0, 0.0}, {1.0, 1.0}};

    // generator as a series multiplier: G = G'(b) h / h'
    const AnalyticSeries hp = derivative(s.h);
    const AnalyticSeries G = scale(div(s.h, hp, 256), s.gprime_b);

    for (int trial = 0; trial < 5; ++trial) {
        const AnalyticSeries f(oracle::random_poly(20, rng));
        for (const cplx& la : lambdas) {
            const AnalyticSeries rf = apply_resolvent(s, la, f);
            // (lambda - Gamma) R(lambda) f = f with Gamma g = G g'
            const AnalyticSeries back = sub(scale(rf, la), mul(G, derivative(rf), 256));
            CHECK(sup_coeff_diff(back, f, 21) < 1e-9);
            for (const cplx& nu : lambdas) {
                const AnalyticSeries lhs = sub(rf, apply_resolvent(s, nu, f));
                const AnalyticSeries rhs =
                    scale(apply_resolvent(s, la, apply_resolvent(s, nu, f)), nu - la);
                CHECK(sup_coeff_diff(lhs, rhs, 21) < 1e-9);
            }
        }
    }
    CHECK(std::abs(mu - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("resolvent rejections") {
    const SemigroupSpec s = make_semigroup("example2", 64);
    const AnalyticSeries f(std::vector<cplx>{{1.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_WITH_AS((void)apply_resolvent(s, cplx{-1.0, 0.0}, f),
                         doctest::Contains("positive real part"), domain_error);
    SemigroupSpec off;  // fixed point away from the origin
    off.h = AnalyticSeries(std::vector<cplx>{{-0.3, 0.0}, {1.0, 0.0}});
    off.b = cplx{0.3, 0.0};
    CHECK_THROWS_WITH_AS((void)apply_resolvent(off, cplx{1.0, 0.0}, f),
                         doctest::Contains("h(0) must vanish"), domain_error);
}

TEST_CASE("bloch classification of log(h/z)") {
    SUBCASE("identity map: identically zero, little-o") {
        const BlochProfile b = bloch_little_o_test(AnalyticSeries(std::vector<cplx>{{0.0, 0.0}}));
        CHECK(b.verdict == BlochVerdict::little_o);
        for (double v : b.values) CHECK(v == 0.0);
    }
    SUBCASE("half-plane map: profile climbs to two, bounded") {
        // g = log((z/(1-z))/z) = log(1/(1-z)), profile (1-r^2)|g'| = 1+r on the axis
        const AnalyticSeries g = named_series("log(1/(1-z))", 1 << 16);
        const BlochProfile b = bloch_little_o_test(g);
        CHECK(b.verdict == BlochVerdict::bounded);
        REQUIRE(!b.values.empty());
        CHECK(std::abs(b.values.back() - 2.0) < 1e-3);
        for (size_t j = 0; j < b.values.size(); ++j)
            CHECK(b.values[j] == doctest::Approx(1.0 + b.radii[j]).epsilon(1e-6));
    }
    SUBCASE("short truncation is refused, not misread") {
        const AnalyticSeries g = named_series("log(1/(1-z))", 64);
        CHECK_THROWS_AS((void)bloch_little_o_test(g), precision_error);
    }
}

TEST_CASE("boundary growth of the generator") {
    SUBCASE("rotation and dilation diverge at every boundary point") {
        for (const char* name : {"rotation(1)", "dilation(1)"}) {
            const BoundaryTestResult r = generator_boundary_test(make_semigroup(name));
            CAPTURE(name);
            CHECK(r.verdict == BoundaryVerdict::divergent_everywhere);
        }
    }
    SUBCASE("half-plane map stalls at its boundary fixed point") {
        SemigroupSpec s;  // h = z/(1-z): G = -z(1-z) vanishes linearly at z = 1
        s.h = named_series("z/(1-z)", 1 << 15);
        const BoundaryTestResult r = generator_boundary_test(s);
        CHECK(r.verdict == BoundaryVerdict::mixed);
        REQUIRE(!r.ratios.empty());
        // the zeta = 1 row is pinned near r, far from divergent
        CHECK(r.ratios[0].back() < 2.0);
    }
}

TEST_CASE("spectrum of the averaging operator") {
    SpiralGeometry geo;
    geo.eta = 0.0;
    geo.status = SpiralGeometry::Status::exact_user_supplied;
    const RadialWeight w = RadialWeight::standard(0.0);
    SUBCASE("harmonic ladder plus zero for the identity koenigs map") {
        const SpectrumReport rep =
            r_h_spectrum(named_series("z", 64), cplx{1.0, 0.0}, 2.0, w, geo, 16);
        CHECK(rep.contains(cplx{0.0, 0.0}, 1e-12));
        for (int k = 0; k <= 16; ++k)
            CHECK(rep.contains(cplx{1.0 / double(k + 1), 0.0}, 1e-12));
        CHECK(!rep.contains(cplx{0.4, 0.0}, 1e-6));
        bool consistent = false;
        for (const auto& cv : rep.caveats)
            consistent |= cv.find("finite-section") != std::string::npos;
        CHECK(consistent);
    }
    SUBCASE("refused when the compactness criterion fails") {
        CHECK_THROWS_WITH_AS((void)r_h_spectrum(named_series("z/(1-z)", 1 << 14),
                                                cplx{1.0, 0.0}, 2.0, w, geo, 8),
                             doctest::Contains("little Bloch"), domain_error);
    }
}

TEST_SUITE_END();
