#include "tmsc/thresholds.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"

#include "test_helpers.hpp"
#include "tmsc/errors.hpp"

using namespace tmsc;
using tmsc_test::TempFile;

TEST_CASE("quantile: singleton, extremes, and the 1..100 midpoint") {
    CHECK(quantile({5.0}, 0.0) == 5.0);
    CHECK(quantile({5.0}, 0.37) == 5.0);
    CHECK(quantile({5.0}, 1.0) == 5.0);

    std::vector<double> v;
    for (int i = 100; i >= 1; --i) v.push_back(static_cast<double>(i));
    // rank 0.5 * 99 = 49.5 between sorted values 50 and 51
    CHECK(quantile(v, 0.5) == doctest::Approx(50.5));
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 100.0);

    CHECK_THROWS_AS(quantile({}, 0.5), ValidationError);
    CHECK_THROWS_AS(quantile({1.0}, -0.1), ValidationError);
    CHECK_THROWS_AS(quantile({1.0}, 1.1), ValidationError);
}

TEST_CASE("quantile: monotone in p, affine equivariant, permutation invariant") {
    std::mt19937 gen(17);
    std::normal_distribution<double> noise(0.0, 1.0);

    std::vector<double> data;
    for (int i = 0; i < 400; ++i) data.push_back(noise(gen));

    double prev = quantile(data, 0.0);
    for (double p = 0.05; p <= 1.0; p += 0.05) {
        const double q = quantile(data, p);
        CHECK(q >= prev);
        prev = q;
    }

    const double a = 2.5, b = -0.75;
    std::vector<double> affine(data);
    for (double& x : affine) x = a * x + b;
    for (double p : {0.01, 0.25, 0.5, 0.9}) {
        CHECK(quantile(affine, p) == doctest::Approx(a * quantile(data, p) + b).epsilon(1e-12));
    }

    std::vector<double> shuffled(data);
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    for (double p : {0.005, 0.3, 0.995}) {
        CHECK(quantile(shuffled, p) == quantile(data, p));
    }
}

TEST_CASE("calibrate_thresholds: symmetric data gives symmetric bounds") {
    std::vector<double> deltas;
    for (int k = -300; k <= 300; ++k) deltas.push_back(static_cast<double>(k) * 1e-4);

    Thresholds th = calibrate_thresholds(deltas, 0.01, 2.0);
    CHECK(th.theta_minus == doctest::Approx(-th.theta_plus).epsilon(1e-12));
    CHECK(th.relaxed_minus == 2.0 * th.theta_minus);
    CHECK(th.relaxed_plus == 2.0 * th.theta_plus);
    CHECK_NOTHROW(th.validate());
}

TEST_CASE("calibrate_thresholds: gamma scales the working bounds linearly") {
    std::mt19937 gen(29);
    std::normal_distribution<double> noise(0.0, 1e-3);
    std::vector<double> deltas;
    for (int i = 0; i < 4000; ++i) deltas.push_back(noise(gen));

    Thresholds g2 = calibrate_thresholds(deltas, 0.005, 2.0);
    Thresholds g4 = calibrate_thresholds(deltas, 0.005, 4.0);
    CHECK(g2.theta_minus == g4.theta_minus);
    CHECK(g4.relaxed_minus == doctest::Approx(2.0 * g2.relaxed_minus).epsilon(1e-12));
    CHECK(g4.relaxed_plus == doctest::Approx(2.0 * g2.relaxed_plus).epsilon(1e-12));
}

TEST_CASE("calibrate_thresholds: rejects short and degenerate input") {
    std::vector<double> tiny(50, 0.0);
    CHECK_THROWS_AS(calibrate_thresholds(tiny, 0.005, 2.0), ValidationError);

    std::vector<double> constant(1000, 0.0);
    CHECK_THROWS_AS(calibrate_thresholds(constant, 0.005, 2.0), ValidationError);

    std::vector<double> fine(1000, 0.0);
    fine[0] = -1e-3;
    fine[999] = 1e-3;
    CHECK_THROWS_AS(calibrate_thresholds(fine, 0.005, 1.0), ValidationError);
}

TEST_CASE("calibrate_thresholds: exceedance on the calibration data is near 2p") {
    std::mt19937 gen(31);
    std::normal_distribution<double> noise(0.0, 2e-3);
    std::vector<double> deltas;
    const size_t n = 8000;
    for (size_t i = 0; i < n; ++i) deltas.push_back(noise(gen));

    for (double p : {0.005, 0.01, 0.05}) {
        Thresholds th = calibrate_thresholds(deltas, p, 2.0);
        size_t below = 0, above = 0;
        for (double d : deltas) {
            if (d < th.theta_minus) ++below;
            if (d > th.theta_plus) ++above;
        }
        const double fb = static_cast<double>(below) / static_cast<double>(n);
        const double fa = static_cast<double>(above) / static_cast<double>(n);
        CHECK(fb <= p + 1.0 / static_cast<double>(n));
        CHECK(fa <= p + 1.0 / static_cast<double>(n));
        CHECK(fb >= p - 2.0 / static_cast<double>(n));
        CHECK(fa >= p - 2.0 / static_cast<double>(n));
    }
}

TEST_CASE("thresholds JSON round-trip and validation") {
    Thresholds th{.theta_minus = -0.004,
                  .theta_plus = 0.0035,
                  .p = 0.005,
                  .gamma = 2.0,
                  .relaxed_minus = -0.008,
                  .relaxed_plus = 0.007};
    TempFile f("thresholds.json");
    save_thresholds(th, f.path());
    Thresholds back = load_thresholds(f.path());
    CHECK(back.theta_minus == th.theta_minus);
    CHECK(back.theta_plus == th.theta_plus);
    CHECK(back.relaxed_minus == th.relaxed_minus);
    CHECK(back.relaxed_plus == th.relaxed_plus);
    CHECK(back.p == th.p);
    CHECK(back.gamma == th.gamma);

    th.relaxed_plus = 0.009;  // inconsistent with gamma
    CHECK_THROWS_AS(th.validate(), ValidationError);

    th = Thresholds{.theta_minus = 0.001,
                    .theta_plus = 0.002,
                    .p = 0.005,
                    .gamma = 2.0,
                    .relaxed_minus = 0.002,
                    .relaxed_plus = 0.004};
    CHECK_THROWS_AS(th.validate(), ValidationError);
}
