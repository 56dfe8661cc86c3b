#ifndef TMSC_DETECTOR_HPP
#define TMSC_DETECTOR_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmsc/cell_model.hpp"
#include "tmsc/errors.hpp"
#include "tmsc/lookup_table.hpp"
#include "tmsc/thresholds.hpp"

namespace tmsc {

struct Sample {
    double t;  // seconds, strictly increasing within a stream
    double i;  // amperes, discharge-positive
    double v;  // volts
};

struct FaultEvent {
    double t_onset;
    std::optional<double> t_clear;  // absent while the event is open
    double delta_at_onset;          // volts, < 0
    double i_sc_est;                // amperes
    double r_sc_est;                // ohms
    std::string label;
};

enum class DetectorPhase { Healthy, InFault };

/// Pseudo open-circuit voltage: terminal voltage with the ohmic drop of the
/// measured current added back, v + R0(soc)*i.
inline double pseudo_ocv(const Sample& sample, double soc, const LookupTable1D& r0_table) {
    return sample.v + r0_table.interp(soc) * sample.i;
}

/// Coulomb-counting SOC propagation from measured current only, clamped to
/// [0,1]; *clamped reports saturation.
inline double update_soc(double soc, double i, double dt, double capacity_ah,
                         bool* clamped = nullptr) {
    if (!(capacity_ah > 0.0)) throw ValidationError("capacity must be positive");
    double next = coulomb_step(soc, i, dt, capacity_ah);
    if (clamped) *clamped = false;
    if (next < 0.0) {
        next = 0.0;
        if (clamped) *clamped = true;
    } else if (next > 1.0) {
        next = 1.0;
        if (clamped) *clamped = true;
    }
    return next;
}

/// Leakage current implied by the onset drop: |delta| / r0. The onset delta
/// is negative; the estimate is reported as a magnitude.
inline double estimate_isc(double delta_at_onset, double r0) {
    if (!(r0 > 0.0)) throw ValidationError("r0 must be positive");
    return std::abs(delta_at_onset) / r0;
}

/// Short-branch resistance from the onset sample: v_meas * r0 / |delta|,
/// using the first terminal voltage measured after the fault onset.
inline double estimate_rsc(double v_meas, double r0, double delta_at_onset) {
    if (!(v_meas > 0.0)) throw ValidationError("v_meas must be positive");
    if (!(r0 > 0.0)) throw ValidationError("r0 must be positive");
    return v_meas * r0 / std::abs(delta_at_onset);
}

/// Streaming fault detector. Per sample it performs one R0 table lookup,
/// one multiply, and two subtractions (pseudo-OCV, its first difference,
/// and the SOC propagation); state is a handful of scalars, so a stream of
/// any length runs in constant memory.
///
/// Thresholds are optional: without them the detector runs in pass-through
/// mode, exposing deltas for calibration but never opening events.
///
/// One instance owns one stream; instances are independent and may move
/// between threads, but a single instance must not be mutated concurrently.
template <class Table = LookupTable1D>
class Detector {
public:
    Detector(const Table& r0_table, double capacity_ah, double soc_init,
             std::optional<Thresholds> thresholds)
        : r0_table_(r0_table),
          capacity_ah_(capacity_ah),
          soc_(soc_init),
          thresholds_(std::move(thresholds)) {
        if (!(capacity_ah_ > 0.0)) throw ValidationError("capacity must be positive");
        if (soc_ < 0.0 || soc_ > 1.0) throw ValidationError("soc_init outside [0,1]");
        if (thresholds_) thresholds_->validate();
    }

    /// Processes one sample; returns the completed event when a clearance
    /// closes it. The first sample only seeds the difference recursion.
    std::optional<FaultEvent> step(const Sample& sample) {
        if (has_prev_ && !(sample.t > prev_t_)) {
            throw ValidationError("samples out of time order");
        }

        if (has_prev_) {
            // Integrate the current that flowed since the previous sample.
            bool clamp = false;
            soc_ = update_soc(soc_, prev_i_, sample.t - prev_t_, capacity_ah_, &clamp);
            soc_clamped_ = soc_clamped_ || clamp;
        }

        const double r0 = r0_table_.interp(soc_);
        const double ocv_pseudo = sample.v + r0 * sample.i;

        std::optional<FaultEvent> emitted;
        if (!has_prev_) {
            delta_ = 0.0;
            has_prev_ = true;
        } else {
            delta_ = ocv_pseudo - prev_ocv_pseudo_;
            if (thresholds_) {
                if (phase_ == DetectorPhase::Healthy) {
                    if (delta_ < thresholds_->relaxed_minus) {
                        open_event_ = FaultEvent{};
                        open_event_->t_onset = sample.t;
                        open_event_->delta_at_onset = delta_;
                        open_event_->i_sc_est = estimate_isc(delta_, r0);
                        open_event_->r_sc_est = estimate_rsc(sample.v, r0, delta_);
                        open_event_->label = "ev" + std::to_string(++event_count_);
                        phase_ = DetectorPhase::InFault;
                    } else if (delta_ > thresholds_->relaxed_plus) {
                        // Clearance-shaped spike with no open fault.
                        ++stray_clearances_;
                    }
                } else if (delta_ > thresholds_->relaxed_plus) {
                    open_event_->t_clear = sample.t;
                    emitted = std::move(open_event_);
                    open_event_.reset();
                    phase_ = DetectorPhase::Healthy;
                }
            }
        }

        prev_ocv_pseudo_ = ocv_pseudo;
        last_ocv_pseudo_ = ocv_pseudo;
        prev_t_ = sample.t;
        prev_i_ = sample.i;
        return emitted;
    }

    /// Hands back the still-open event, if any, at end of stream.
    std::optional<FaultEvent> finish() {
        std::optional<FaultEvent> open = std::move(open_event_);
        open_event_.reset();
        phase_ = DetectorPhase::Healthy;
        return open;
    }

    DetectorPhase phase() const { return phase_; }
    double soc_est() const { return soc_; }
    bool soc_clamped() const { return soc_clamped_; }
    double last_delta() const { return delta_; }
    double last_ocv_pseudo() const { return last_ocv_pseudo_; }
    uint64_t stray_clearances() const { return stray_clearances_; }

private:
    const Table& r0_table_;
    double capacity_ah_;
    double soc_;
    std::optional<Thresholds> thresholds_;

    bool has_prev_ = false;
    double prev_t_ = 0.0;
    double prev_i_ = 0.0;
    double prev_ocv_pseudo_ = 0.0;
    double delta_ = 0.0;
    double last_ocv_pseudo_ = 0.0;
    bool soc_clamped_ = false;

    DetectorPhase phase_ = DetectorPhase::Healthy;
    std::optional<FaultEvent> open_event_;
    uint64_t event_count_ = 0;
    uint64_t stray_clearances_ = 0;
};

/// Runs a whole trace through a fresh detector; the trailing open event, if
/// any, is appended unclosed.
std::vector<FaultEvent> detect_stream(const std::vector<Sample>& samples,
                                      const LookupTable1D& r0_table, double capacity_ah,
                                      double soc_init, const Thresholds& thresholds);

// Events CSV: `t_onset_s,t_clear_s,delta_v,i_sc_a,r_sc_ohm,label`.
void save_events(const std::vector<FaultEvent>& events, const std::string& path);
std::vector<FaultEvent> load_events(const std::string& path);

}  // namespace tmsc

#endif  // TMSC_DETECTOR_HPP
