#ifndef TMSC_SCENARIO_HPP
#define TMSC_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tmsc {

struct CurrentProfile {
    double dt;                    // seconds
    std::vector<double> samples;  // amperes, discharge-positive

    double duration() const { return dt * static_cast<double>(samples.size()); }
    double at_time(double t) const;
};

enum class FaultKind {
    ShortResistor,        // internal short branch engaged
    ExtraDischargePulse,  // extra measured current, no internal path
};

struct FaultSpec {
    FaultKind kind;
    double value;   // ohms for ShortResistor, amperes for ExtraDischargePulse
    double t_on;    // seconds
    double t_off;   // seconds; active on [t_on, t_off)
    std::string label;

    bool active_at(double t) const { return t >= t_on && t < t_off; }
};

struct FaultSchedule {
    std::vector<FaultSpec> events;  // sorted by t_on, non-overlapping

    void validate() const;  // throws ValidationError
    double end_time() const;

    // Engaged short-branch resistance at time t, or 0 if none.
    double short_resistance_at(double t) const;
    // Sum of extra discharge-pulse current at time t.
    double extra_current_at(double t) const;
};

/// Synthetic FUDS-like drive cycle: a jittered repeating pulse pattern
/// (segment lengths 5-60 s, amplitudes within [-30, +60] A), deterministic
/// per seed. Profiles long enough to cover the replay schedule get
///   - a >= 40 A charge pulse spanning each hidden-fault window, and
///   - a held amplitude around every scheduled event edge, so the drive
///     cycle itself never steps at the same sample a fault switches.
CurrentProfile synth_drive_cycle(double duration_s, double dt, uint64_t seed);

/// The eleven-event replay schedule: four 0.07 ohm shorts, four 0.10 ohm
/// shorts, two hidden 0.25 ohm shorts during charge pulses, and one 50 A
/// false-fault discharge pulse.
FaultSchedule table1_schedule();

// Profile CSV `t_s,i_a`.
CurrentProfile load_profile(const std::string& path);
void save_profile(const CurrentProfile& profile, const std::string& path);

// Schedule JSON: {"events":[{"kind":...,"value":...,"t_on_s":...,"t_off_s":...,"label":...}]}
FaultSchedule load_schedule(const std::string& path);
void save_schedule(const FaultSchedule& schedule, const std::string& path);

}  // namespace tmsc

#endif  // TMSC_SCENARIO_HPP
