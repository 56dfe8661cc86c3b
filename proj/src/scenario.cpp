#include "tmsc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

#include "tmsc/csv.hpp"
#include "tmsc/errors.hpp"
#include "tmsc/rng.hpp"

namespace tmsc {

using nlohmann::json;

double CurrentProfile::at_time(double t) const {
    if (samples.empty()) throw ValidationError("empty current profile");
    auto idx = static_cast<size_t>(std::max(0.0, t / dt));
    if (idx >= samples.size()) idx = samples.size() - 1;
    return samples[idx];
}

void FaultSchedule::validate() const {
    double prev_off = -1e300;
    for (const auto& ev : events) {
        if (!(ev.t_off > ev.t_on)) {
            throw ValidationError("fault event '" + ev.label + "' has t_off <= t_on");
        }
        if (ev.kind == FaultKind::ShortResistor && !(ev.value > 0.0)) {
            throw ValidationError("fault event '" + ev.label + "' has non-positive resistance");
        }
        if (!std::isfinite(ev.value) || !std::isfinite(ev.t_on) || !std::isfinite(ev.t_off)) {
            throw ValidationError("fault event '" + ev.label + "' has non-finite fields");
        }
        if (ev.t_on < prev_off) {
            throw ValidationError("fault events overlap near '" + ev.label + "'");
        }
        prev_off = ev.t_off;
    }
}

double FaultSchedule::end_time() const {
    double end = 0.0;
    for (const auto& ev : events) end = std::max(end, ev.t_off);
    return end;
}

double FaultSchedule::short_resistance_at(double t) const {
    for (const auto& ev : events) {
        if (ev.kind == FaultKind::ShortResistor && ev.active_at(t)) return ev.value;
    }
    return 0.0;
}

double FaultSchedule::extra_current_at(double t) const {
    double sum = 0.0;
    for (const auto& ev : events) {
        if (ev.kind == FaultKind::ExtraDischargePulse && ev.active_at(t)) sum += ev.value;
    }
    return sum;
}

FaultSchedule table1_schedule() {
    FaultSchedule s;
    auto shortr = [](double ohm, double on, double off, const char* label) {
        return FaultSpec{FaultKind::ShortResistor, ohm, on, off, label};
    };
    s.events = {
        shortr(0.25, 377.0, 406.0, "#1"),
        shortr(0.10, 1640.0, 1672.0, "#2"),
        shortr(0.07, 2927.0, 2955.0, "#3"),
        shortr(0.25, 4489.0, 4518.0, "#4"),
        shortr(0.10, 6083.0, 6113.0, "#5"),
        shortr(0.07, 7708.0, 7738.0, "#6"),
        shortr(0.10, 9075.0, 9103.0, "#7"),
        shortr(0.07, 10319.0, 10350.0, "#8"),
        shortr(0.10, 12235.0, 12264.0, "#9"),
        FaultSpec{FaultKind::ExtraDischargePulse, 50.0, 13910.0, 13920.0, "#11"},
        shortr(0.07, 15299.0, 15328.0, "#10"),
    };
    s.validate();
    return s;
}

namespace {

// Repeating urban-style pulse pattern (amps, seconds). Slight net charge
// bias offsets the charge leaked through injected short branches.
struct PatternSeg {
    double amp;
    int dur;
};

constexpr PatternSeg kBasePattern[] = {
    {12.0, 10}, {45.0, 6},  {-28.0, 12}, {5.0, 12},  {60.0, 5},
    {-30.0, 14}, {22.0, 8}, {-12.0, 15}, {35.0, 6},  {-25.0, 11},
    {0.0, 10},  {52.0, 5},  {-30.0, 12}, {18.0, 8},  {-20.0, 12},
    {40.0, 6},  {-8.0, 12}, {28.0, 7},   {-30.0, 10}, {8.0, 10},
};

constexpr double kAmpJitter = 3.0;    // A
constexpr int kDurJitter = 2;         // s
constexpr double kAmpMin = -30.0;
constexpr double kAmpMax = 60.0;

// Hold the profile amplitude around scheduled event edges so the drive
// cycle never steps at the sample where a fault branch switches.
constexpr double kGuardBefore = 12.0;  // s
constexpr double kGuardAfter = 3.0;    // s

// Charge pulse spanning each hidden-fault window.
constexpr double kPulseLead = 20.0;   // s before t_on
constexpr double kPulseTail = 5.0;    // s after t_off
constexpr int kPulseRamp = 4;         // s of linear ramp at each pulse edge
constexpr double kHiddenShortOhm = 0.25;

}  // namespace

CurrentProfile synth_drive_cycle(double duration_s, double dt, uint64_t seed) {
    if (!(dt > 0.0)) throw ValidationError("profile dt must be positive");
    if (!(duration_s > 0.0)) throw ValidationError("profile duration must be positive");

    Rng rng(seed);
    const int total_s = static_cast<int>(std::ceil(duration_s)) + 1;

    // Per-second amplitude array from the jittered tiled pattern.
    std::vector<double> amps;
    amps.reserve(static_cast<size_t>(total_s));
    size_t seg = 0;
    while (static_cast<int>(amps.size()) < total_s) {
        const PatternSeg& base = kBasePattern[seg % std::size(kBasePattern)];
        ++seg;
        double amp = base.amp + rng.uniform(-kAmpJitter, kAmpJitter);
        amp = std::clamp(amp, kAmpMin, kAmpMax);
        int dur = base.dur + static_cast<int>(rng.uniform_int(-kDurJitter, kDurJitter));
        dur = std::clamp(dur, 5, 60);
        for (int i = 0; i < dur && static_cast<int>(amps.size()) < total_s; ++i) {
            amps.push_back(amp);
        }
    }

    const FaultSchedule replay = table1_schedule();
    auto second_at = [&](double t) {
        return std::clamp(static_cast<int>(std::floor(t)), 0, total_s - 1);
    };

    // Freeze guard bands around every scheduled event edge.
    for (const auto& ev : replay.events) {
        for (double edge : {ev.t_on, ev.t_off}) {
            if (edge - kGuardBefore >= total_s) continue;
            const int lo = second_at(edge - kGuardBefore);
            const int hi = second_at(edge + kGuardAfter);
            const double held = amps[static_cast<size_t>(lo)];
            for (int t = lo; t <= hi; ++t) amps[static_cast<size_t>(t)] = held;
        }
    }

    // Guaranteed charge pulse over each hidden-fault window, edges ramped
    // so the pulse itself stays well inside the calibrated thresholds.
    for (const auto& ev : replay.events) {
        if (ev.kind != FaultKind::ShortResistor || ev.value != kHiddenShortOhm) continue;
        const double pulse_amp = -(45.0 + rng.uniform(0.0, kAmpJitter));
        const double start = ev.t_on - kPulseLead;
        const double stop = ev.t_off + kPulseTail;
        if (start >= total_s) continue;

        const int ramp_in_lo = second_at(start - kPulseRamp);
        const double v_before = amps[static_cast<size_t>(second_at(start - kPulseRamp - 1))];
        for (int t = ramp_in_lo; t < second_at(start); ++t) {
            const double f = static_cast<double>(t - ramp_in_lo + 1) / (kPulseRamp + 1);
            amps[static_cast<size_t>(t)] = v_before + f * (pulse_amp - v_before);
        }
        for (int t = second_at(start); t < second_at(stop); ++t) {
            amps[static_cast<size_t>(t)] = pulse_amp;
        }
        const int ramp_out_hi = second_at(stop + kPulseRamp);
        const double v_after = amps[static_cast<size_t>(second_at(stop + kPulseRamp + 1))];
        for (int t = second_at(stop); t < ramp_out_hi && t < total_s; ++t) {
            const double f = static_cast<double>(t - second_at(stop) + 1) / (kPulseRamp + 1);
            amps[static_cast<size_t>(t)] = pulse_amp + f * (v_after - pulse_amp);
        }
    }

    CurrentProfile profile;
    profile.dt = dt;
    const auto n = static_cast<size_t>(std::llround(duration_s / dt));
    profile.samples.reserve(n);
    for (size_t k = 0; k < n; ++k) {
        profile.samples.push_back(amps[static_cast<size_t>(second_at(static_cast<double>(k) * dt))]);
    }
    return profile;
}

CurrentProfile load_profile(const std::string& path) {
    csv::Table t = csv::read_numeric(path);
    const int ti = t.column("t_s");
    const int ii = t.column("i_a");
    if (ti < 0 || ii < 0) throw IoError(path + ": expected columns t_s,i_a");
    if (t.rows.size() < 2) throw ValidationError(path + ": profile needs at least 2 samples");

    CurrentProfile p;
    p.dt = t.rows[1][static_cast<size_t>(ti)] - t.rows[0][static_cast<size_t>(ti)];
    if (!(p.dt > 0.0)) throw ValidationError(path + ": non-increasing time column");
    p.samples.reserve(t.rows.size());
    for (const auto& r : t.rows) p.samples.push_back(r[static_cast<size_t>(ii)]);
    return p;
}

void save_profile(const CurrentProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "t_s,i_a\n";
    for (size_t k = 0; k < profile.samples.size(); ++k) {
        out << csv::format_fixed(static_cast<double>(k) * profile.dt, 3) << ','
            << csv::format_fixed(profile.samples[k], 6) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

namespace {

const char* kind_tag(FaultKind kind) {
    return kind == FaultKind::ShortResistor ? "short_resistor" : "extra_discharge_pulse";
}

FaultKind kind_from_tag(const std::string& tag, const std::string& path) {
    if (tag == "short_resistor") return FaultKind::ShortResistor;
    if (tag == "extra_discharge_pulse") return FaultKind::ExtraDischargePulse;
    throw IoError(path + ": unknown fault kind '" + tag + "'");
}

}  // namespace

FaultSchedule load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    FaultSchedule s;
    try {
        for (const auto& e : j.at("events")) {
            FaultSpec spec;
            spec.kind = kind_from_tag(e.at("kind").get<std::string>(), path);
            spec.value = e.at("value").get<double>();
            spec.t_on = e.at("t_on_s").get<double>();
            spec.t_off = e.at("t_off_s").get<double>();
            spec.label = e.value("label", "");
            s.events.push_back(std::move(spec));
        }
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    std::sort(s.events.begin(), s.events.end(),
              [](const FaultSpec& a, const FaultSpec& b) { return a.t_on < b.t_on; });
    s.validate();
    return s;
}

void save_schedule(const FaultSchedule& schedule, const std::string& path) {
    json events = json::array();
    for (const auto& ev : schedule.events) {
        events.push_back({{"kind", kind_tag(ev.kind)},
                          {"value", ev.value},
                          {"t_on_s", ev.t_on},
                          {"t_off_s", ev.t_off},
                          {"label", ev.label}});
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << json{{"events", events}}.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace tmsc
