#include "aflaz/chu.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace aflaz;

TEST_SUITE("chu-sequences") {

TEST_CASE("Chu entries") {
    const Sequence x = chu_sequence(5, 2);
    for (long t = 0; t < 5; ++t) {
        const auto want = std::exp(std::complex<double>(0, std::numbers::pi * 2.0 * t * t / 5.0));
        CHECK(std::abs(x[t] - want) < 1e-12);
    }
    CHECK((chu_sequence(4, 1).entries() - oracle::chu(4, 1)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((chu_sequence(100003, 7).entries() - oracle::chu(100003, 7)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("Chu arguments") {
    CHECK_THROWS_AS(chu_sequence(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(chu_sequence(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(chu_sequence(5, -5), std::invalid_argument);
    CHECK_NOTHROW(chu_sequence(5, -4));
    CHECK_THROWS_AS(chu_set(ChuSpec{8, {2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(chu_set(ChuSpec{8, {}}), std::invalid_argument);
    CHECK(chu_set(ChuSpec{8, {1, 3, -2}}).count() == 3);
}

TEST_CASE("closed-form auto AF at delay one") {
    CHECK(chu_aaf_closed_form(5, 2, 1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(chu_aaf_closed_form(5, 2, 0, 0) == doctest::Approx(25.0).epsilon(1e-14));
    CHECK(chu_aaf_closed_form(5, 2, 1, 2) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(chu_aaf_closed_form(5, 2, 0, 3) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("closed form agrees with direct sums for both root signs") {
    for (long n : {2, 3, 8, 13, 20}) {
        for (long a = -(n - 1); a <= n - 1; ++a) {
            if (a == 0) continue;
            const Eigen::VectorXcd x = oracle::chu(n, a);
            for (long tau = -(n - 1); tau <= n - 1; ++tau) {
                for (long nu = -(n - 1); nu <= n - 1; ++nu) {
                    const double want = std::norm(oracle::naive_af(x, x, tau, nu));
                    CHECK(std::abs(chu_aaf_closed_form(n, a, tau, nu) - want) <= 1e-9 * n * n);
                }
            }
        }
    }
}

TEST_CASE("reflection identities") {
    for (long n : {7, 12}) {
        for (long a : {1L, 3L, n - 2}) {
            for (long tau = -(n - 1); tau <= n - 1; ++tau) {
                for (long nu = -(n - 1); nu <= n - 1; ++nu) {
                    const double v = chu_aaf_closed_form(n, a, tau, nu);
                    CHECK(v == doctest::Approx(chu_aaf_closed_form(n, a, -tau, -nu)).epsilon(1e-12));
                    CHECK(v == doctest::Approx(chu_aaf_closed_form(n, -a, tau, -nu)).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("auto-AF LAZ examples") {
    CHECK(chu_aaf_laz(1000, 20, 0.9) == LazSpec{45, 20});
    CHECK(chu_aaf_laz(1000, 19, 0.9) == LazSpec{47, 19});
    CHECK(chu_aaf_laz(100, -4, 0.75) == LazSpec{18, 4});
    CHECK_THROWS_AS(chu_aaf_laz(1000, 1, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(chu_aaf_laz(99, 20, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(chu_aaf_laz(1000, 20, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(chu_aaf_laz(1000, 20, 1.0), std::invalid_argument);
}

TEST_CASE("peak ratio equals a scan of the direct surface") {
    for (long a : {2L, 3L, -3L}) {
        const long n = 60;
        const LazSpec laz = chu_aaf_laz(n, a, 0.9);
        const Sequence x = chu_sequence(n, a);
        const AfSurface s = af_surface(x, x, laz, SurfaceMethod::direct);
        double best = 0;
        for (Index tau = -(laz.zx - 1); tau <= laz.zx - 1; ++tau) {
            for (Index nu = -(laz.zy - 1); nu <= laz.zy - 1; ++nu) {
                if (tau != 0 || nu != 0) best = std::max(best, s.at(tau, nu));
            }
        }
        CHECK(chu_aaf_peak_ratio(n, a, 0.9) == doctest::Approx(std::sqrt(best / n)).epsilon(1e-9));
    }
}

TEST_CASE("asymptote constants") {
    const double phi0 = ChuAsymptote::locate_phi0();
    CHECK(phi0 == doctest::Approx(ChuAsymptote::phi0).epsilon(5e-5 / 2.3311));
    CHECK(ChuAsymptote::shape(phi0) == doctest::Approx(ChuAsymptote::shape_max).epsilon(5e-5 / 0.7246));
    CHECK(ChuAsymptote::shape(phi0) / std::numbers::pi ==
          doctest::Approx(ChuAsymptote::limit_sq).epsilon(5e-5 / 0.2306));
    CHECK(std::sqrt(ChuAsymptote::limit_sq) == doctest::Approx(ChuAsymptote::peak_constant).epsilon(2e-4));
    CHECK(ChuAsymptote::small_delay_sq == doctest::Approx(0.45 * 0.45));
    // (1 - cos phi)/phi is stationary where phi sin phi = 1 - cos phi
    CHECK(std::abs(phi0 * std::sin(phi0) - (1 - std::cos(phi0))) < 1e-6);
}

TEST_CASE("peak ratio approaches the asymptote") {
    for (long a : {19L, 20L}) {
        const double target = ChuAsymptote::peak_constant / std::sqrt(double(a));
        const double r4 = chu_aaf_peak_ratio(10'000, a, 0.9);
        const double r5 = chu_aaf_peak_ratio(100'000, a, 0.9);
        CHECK(std::abs(r5 - target) < std::abs(r4 - target) + 1e-12);
        CHECK(std::abs(r5 / target - 1) < 0.05);
    }
}

TEST_CASE("cross-AF cap formula") {
    CHECK(chu_caf_cap(100, 5, 4, 0) == doctest::Approx(90.0));
    CHECK(chu_caf_cap(100, 5, 4, 10) == doctest::Approx(87.0));
    CHECK(chu_caf_cap(400, 20, 19, 0) == doctest::Approx(chu_caf_cap(400, -19, -20, 0)));
    CHECK_THROWS_AS(chu_caf_cap(100, 4, 5, 0), std::invalid_argument);
    CHECK(van_der_corput_cap(4, 1, 1) == doctest::Approx(9.0));
    CHECK_THROWS_AS(van_der_corput_cap(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(van_der_corput_cap(1, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(van_der_corput_cap(1, 1, -1), std::invalid_argument);
}

TEST_CASE("cross AF of close roots stays under the cap") {
    for (long n : {64, 101, 256}) {
        for (auto [a1, a2] : {std::pair{3L, 2L}, std::pair{7L, 5L}, std::pair{-1L, -4L}}) {
            const Sequence x = chu_sequence(n, a1), y = chu_sequence(n, a2);
            for (Index tau = -(n - 1); tau <= n - 1; ++tau) {
                const double cap = chu_caf_cap(n, a1, a2, tau);
                CHECK(doppler_row(x, y, tau).cwiseAbs().maxCoeff() <= cap);
                CHECK(doppler_row(y, x, tau).cwiseAbs().maxCoeff() <= cap);
            }
        }
    }
}

TEST_CASE("order-optimal LAZ") {
    const OrderOptimalLaz a = order_optimal_laz(ChuSpec{1000, {20, 19}});
    CHECK(a.laz == LazSpec{48, 19});
    CHECK(a.applicable);
    CHECK(a.spread_ok);
    const OrderOptimalLaz b = order_optimal_laz(ChuSpec{100, {1, 2}});
    CHECK_FALSE(b.applicable);
    CHECK_FALSE(b.note.empty());
    const OrderOptimalLaz c = order_optimal_laz(ChuSpec{100, {20, 2}});
    CHECK_FALSE(c.spread_ok);
    CHECK_THROWS_AS(order_optimal_laz(ChuSpec{99, {20, 19}}), std::invalid_argument);
}

}
