#ifndef TMSC_SIMULATE_HPP
#define TMSC_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tmsc/cell_model.hpp"
#include "tmsc/scenario.hpp"

namespace tmsc {

struct NoiseSpec {
    double sigma_v = 0.0;  // volts
    double sigma_i = 0.0;  // amperes
    uint64_t seed = 0;

    void validate() const;  // throws ValidationError
};

/// One recorded sample: measured channels carry sensor noise, truth
/// channels are noise-free simulator state.
struct TraceRow {
    double t;            // s
    double i;            // A, measured (noisy)
    double v;            // V, measured (noisy)
    double soc_true;     // at sample time
    double i_sc_true;    // A through the short branch
    bool fault_active;   // any scheduled event window covers t
};

struct Trace {
    double dt = 1.0;
    std::vector<TraceRow> rows;
};

/// Noise-free per-sample truth handed to the observer, for checks that need
/// internal state the trace format does not carry.
struct StepTruth {
    double t;
    double i_t;          // external current incl. scheduled pulses
    double v;            // noise-free terminal voltage
    double i_sc;
    double soc;          // at sample time
    double ocv_real;
    double u_polar_sum;
    double r0;
};

using StepObserver = std::function<void(const StepTruth&)>;

/// Simulates the profile with the given fault schedule. ShortResistor
/// events engage the internal branch; ExtraDischargePulse events add to the
/// external (measured) current. Output is byte-deterministic per seed.
Trace run_scenario(const CellParams& params, const CurrentProfile& profile,
                   const FaultSchedule& schedule, const NoiseSpec& noise,
                   const StepObserver& observer = {});

// Trace CSV: header `t_s,i_a,v_v,soc_true,i_sc_true,fault_active`.
void save_trace(const Trace& trace, const std::string& path);
Trace load_trace(const std::string& path);

}  // namespace tmsc

#endif  // TMSC_SIMULATE_HPP
