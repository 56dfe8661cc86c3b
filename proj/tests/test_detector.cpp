#include "tmsc/detector.hpp"

#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"

#include "tmsc/errors.hpp"

using namespace tmsc;

namespace {

LookupTable1D flat_r0(double ohm = 0.002) {
    return LookupTable1D({0.0, 1.0}, {ohm, ohm}, TableKind::R0);
}

Thresholds test_thresholds(double theta = 0.005, double gamma = 2.0) {
    return Thresholds{.theta_minus = -theta,
                      .theta_plus = theta,
                      .p = 0.005,
                      .gamma = gamma,
                      .relaxed_minus = -gamma * theta,
                      .relaxed_plus = gamma * theta};
}

// Offline reference: compute every pseudo-OCV and delta in one pass, then
// run the same dual-sided rule over the arrays.
std::vector<FaultEvent> batch_detect(const std::vector<Sample>& samples,
                                     const LookupTable1D& r0_table, double capacity,
                                     double soc_init, const Thresholds& th) {
    std::vector<double> ocvp(samples.size());
    double soc = soc_init;
    for (size_t k = 0; k < samples.size(); ++k) {
        if (k > 0) {
            soc = update_soc(soc, samples[k - 1].i, samples[k].t - samples[k - 1].t, capacity);
        }
        ocvp[k] = pseudo_ocv(samples[k], soc, r0_table);
    }

    std::vector<FaultEvent> events;
    bool in_fault = false;
    FaultEvent open{};
    soc = soc_init;
    for (size_t k = 1; k < samples.size(); ++k) {
        soc = update_soc(soc, samples[k - 1].i, samples[k].t - samples[k - 1].t, capacity);
        const double delta = ocvp[k] - ocvp[k - 1];
        if (!in_fault && delta < th.relaxed_minus) {
            const double r0 = r0_table.interp(soc);
            open = FaultEvent{};
            open.t_onset = samples[k].t;
            open.delta_at_onset = delta;
            open.i_sc_est = estimate_isc(delta, r0);
            open.r_sc_est = estimate_rsc(samples[k].v, r0, delta);
            in_fault = true;
        } else if (in_fault && delta > th.relaxed_plus) {
            open.t_clear = samples[k].t;
            events.push_back(open);
            in_fault = false;
        }
    }
    if (in_fault) events.push_back(open);
    return events;
}

}  // namespace

TEST_CASE("pseudo_ocv: rest, discharge compensation, charge sign convention") {
    LookupTable1D r0 = flat_r0(0.002);
    CHECK(pseudo_ocv({0.0, 0.0, 3.60}, 0.5, r0) == doctest::Approx(3.60));
    CHECK(pseudo_ocv({0.0, 50.0, 3.60}, 0.5, r0) == doctest::Approx(3.70));
    CHECK(pseudo_ocv({0.0, -50.0, 3.80}, 0.5, r0) == doctest::Approx(3.70));
}

TEST_CASE("update_soc: rest, coulomb identity, and clamping") {
    CHECK(update_soc(0.5, 0.0, 1.0, 40.2) == 0.5);

    // 40.2 A over an hour on a 40.2 Ah cell is exactly one SOC unit down
    bool clamped = false;
    CHECK(update_soc(0.5, 40.2, 3600.0, 40.2, &clamped) == 0.0);
    CHECK(clamped);

    CHECK(update_soc(1.0, -1.0, 1.0, 40.2, &clamped) == 1.0);
    CHECK(clamped);

    CHECK(update_soc(0.5, 40.2, 1800.0, 40.2, &clamped) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(clamped);

    CHECK_THROWS_AS(update_soc(0.5, 1.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("estimate_isc / estimate_rsc: inversion identities and guards") {
    CHECK(estimate_isc(-0.1028, 0.002) == doctest::Approx(51.4));
    // exact inversion of the residual law for any current
    for (double i : {1.0, 12.5, 51.39, 100.0}) {
        CHECK(estimate_isc(-0.002 * i, 0.002) == doctest::Approx(i).epsilon(1e-12));
    }
    CHECK_THROWS_AS(estimate_isc(-0.1, 0.0), ValidationError);

    CHECK(estimate_rsc(3.5972, 0.002, -0.1028) == doctest::Approx(0.06998).epsilon(1e-3));
    CHECK_THROWS_AS(estimate_rsc(0.0, 0.002, -0.1), ValidationError);
    CHECK_THROWS_AS(estimate_rsc(3.7, 0.0, -0.1), ValidationError);
}

TEST_CASE("detector: constant stream never fires") {
    LookupTable1D r0 = flat_r0();
    Detector det(r0, 40.2, 0.5, test_thresholds());
    for (int k = 0; k < 1000; ++k) {
        auto ev = det.step({static_cast<double>(k), 0.0, 3.70});
        CHECK_FALSE(ev.has_value());
    }
    CHECK(det.phase() == DetectorPhase::Healthy);
    CHECK(det.last_delta() == 0.0);
    CHECK_FALSE(det.finish().has_value());
}

TEST_CASE("detector: one synthetic fault opens and closes one event") {
    LookupTable1D r0 = flat_r0(0.002);
    Detector det(r0, 40.2, 0.5, test_thresholds(0.005, 2.0));

    std::vector<FaultEvent> events;
    for (int k = 0; k < 300; ++k) {
        const double v = (k >= 100 && k < 150) ? 3.50 : 3.70;
        if (auto ev = det.step({static_cast<double>(k), 0.0, v})) events.push_back(*ev);
    }
    REQUIRE(events.size() == 1);
    const FaultEvent& ev = events[0];
    CHECK(ev.t_onset == 100.0);
    REQUIRE(ev.t_clear.has_value());
    CHECK(*ev.t_clear == 150.0);
    CHECK(ev.delta_at_onset == doctest::Approx(-0.2));
    CHECK(ev.i_sc_est == doctest::Approx(100.0));
    CHECK(ev.r_sc_est == doctest::Approx(3.50 * 0.002 / 0.2));

    // further below-threshold samples while in fault must not reopen
    CHECK(det.stray_clearances() == 0);
}

TEST_CASE("detector: first sample only seeds the recursion") {
    LookupTable1D r0 = flat_r0();
    Detector det(r0, 40.2, 0.5, test_thresholds());
    auto ev = det.step({0.0, 0.0, 2.0});  // far from anything, no previous sample
    CHECK_FALSE(ev.has_value());
    CHECK(det.phase() == DetectorPhase::Healthy);
}

TEST_CASE("detector: positive spike without a fault is a warning, not an event") {
    LookupTable1D r0 = flat_r0();
    Detector det(r0, 40.2, 0.5, test_thresholds());
    det.step({0.0, 0.0, 3.70});
    auto ev = det.step({1.0, 0.0, 3.90});
    CHECK_FALSE(ev.has_value());
    CHECK(det.stray_clearances() == 1);
    CHECK(det.phase() == DetectorPhase::Healthy);
}

TEST_CASE("detector: out-of-order timestamps rejected") {
    LookupTable1D r0 = flat_r0();
    Detector det(r0, 40.2, 0.5, test_thresholds());
    det.step({10.0, 0.0, 3.7});
    CHECK_THROWS_AS(det.step({9.0, 0.0, 3.7}), ValidationError);
}

TEST_CASE("detector: unclosed event is returned by finish") {
    LookupTable1D r0 = flat_r0();
    Detector det(r0, 40.2, 0.5, test_thresholds());
    det.step({0.0, 0.0, 3.70});
    det.step({1.0, 0.0, 3.50});
    auto open = det.finish();
    REQUIRE(open.has_value());
    CHECK(open->t_onset == 1.0);
    CHECK_FALSE(open->t_clear.has_value());
}

TEST_CASE("detector: streaming equals batch and events alternate") {
    LookupTable1D r0 = flat_r0(0.0015);
    const Thresholds th = test_thresholds(0.004, 2.0);

    std::mt19937 gen(97);
    std::normal_distribution<double> noise(0.0, 1.5e-3);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Sample> samples;
        double v = 3.7;
        bool shorted = false;
        for (int k = 0; k < 500; ++k) {
            if (u01(gen) < 0.01) shorted = !shorted;
            const double base = shorted ? 3.66 : 3.70;
            v = base + noise(gen);
            samples.push_back({static_cast<double>(k), 30.0 * std::sin(k * 0.05), v});
        }

        Detector det(r0, 40.2, 0.5, th);
        std::vector<FaultEvent> streamed;
        for (const auto& s : samples) {
            if (auto ev = det.step(s)) streamed.push_back(*ev);
        }
        if (auto open = det.finish()) streamed.push_back(*open);

        std::vector<FaultEvent> batch = batch_detect(samples, r0, 40.2, 0.5, th);

        REQUIRE(streamed.size() == batch.size());
        for (size_t i = 0; i < streamed.size(); ++i) {
            CHECK(streamed[i].t_onset == batch[i].t_onset);
            CHECK(streamed[i].t_clear == batch[i].t_clear);
            CHECK(streamed[i].delta_at_onset == batch[i].delta_at_onset);
            CHECK(streamed[i].i_sc_est == batch[i].i_sc_est);
            CHECK(streamed[i].r_sc_est == batch[i].r_sc_est);
        }

        // strict onset/clearance alternation, each event well-formed
        for (size_t i = 0; i < streamed.size(); ++i) {
            if (streamed[i].t_clear) CHECK(*streamed[i].t_clear > streamed[i].t_onset);
            if (i > 0) {
                REQUIRE(streamed[i - 1].t_clear.has_value());
                CHECK(streamed[i].t_onset > *streamed[i - 1].t_clear);
            }
            CHECK(streamed[i].i_sc_est > 0.0);
            CHECK(streamed[i].r_sc_est > 0.0);
        }
    }
}

TEST_CASE("detector: identical stream and thresholds give identical events") {
    LookupTable1D r0 = flat_r0();
    std::mt19937 gen(5);
    std::normal_distribution<double> noise(0.0, 3e-3);
    std::vector<Sample> samples;
    for (int k = 0; k < 2000; ++k) {
        samples.push_back({static_cast<double>(k), 10.0, 3.7 + noise(gen)});
    }
    auto a = detect_stream(samples, r0, 40.2, 0.5, test_thresholds(0.004));
    auto b = detect_stream(samples, r0, 40.2, 0.5, test_thresholds(0.004));
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].t_onset == b[i].t_onset);
        CHECK(a[i].t_clear == b[i].t_clear);
        CHECK(a[i].delta_at_onset == b[i].delta_at_onset);
    }
}

TEST_CASE("detector: pass-through mode exposes deltas but never fires") {
    LookupTable1D r0 = flat_r0();
    Detector det(r0, 40.2, 0.5, std::nullopt);
    det.step({0.0, 0.0, 3.70});
    auto ev = det.step({1.0, 0.0, 3.20});  // huge drop
    CHECK_FALSE(ev.has_value());
    CHECK(det.last_delta() == doctest::Approx(-0.5));
    CHECK(det.phase() == DetectorPhase::Healthy);
}

TEST_CASE("detector: SOC clamp flag surfaces coulomb-counting saturation") {
    LookupTable1D r0 = flat_r0();
    Detector det(r0, 1.0, 0.01, test_thresholds());  // 1 Ah cell nearly empty
    det.step({0.0, 200.0, 3.0});
    det.step({3600.0, 200.0, 3.0});
    CHECK(det.soc_clamped());
    CHECK(det.soc_est() == 0.0);
}

TEST_CASE("events CSV round-trip") {
    std::vector<FaultEvent> events;
    events.push_back({100.0, 130.0, -0.05, 25.0, 0.148, "ev1"});
    events.push_back({200.0, std::nullopt, -0.07, 35.0, 0.101, "ev2"});

    const std::string path =
        (std::filesystem::temp_directory_path() / "tmsc_events_rt.csv").string();
    save_events(events, path);
    auto back = load_events(path);
    std::filesystem::remove(path);

    REQUIRE(back.size() == 2);
    CHECK(back[0].t_onset == 100.0);
    CHECK(back[0].t_clear.has_value());
    CHECK(*back[0].t_clear == 130.0);
    CHECK_FALSE(back[1].t_clear.has_value());
    CHECK(back[1].label == "ev2");
    CHECK(back[0].r_sc_est == doctest::Approx(0.148));
}
