#ifndef TMSC_EVAL_HPP
#define TMSC_EVAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "tmsc/detector.hpp"
#include "tmsc/scenario.hpp"

namespace tmsc {

struct EventScore {
    std::string label;                  // schedule label of the matched window
    double onset_error;                 // detected minus scheduled, seconds
    std::optional<double> clear_error;  // absent for unclosed events
    std::optional<double> r_sc_true;    // ohms; absent for pulse windows
    double r_sc_est;                    // ohms
    std::optional<double> r_sc_rel_err;
};

struct EvalReport {
    int true_positives = 0;
    int missed = 0;
    int false_alarms = 0;
    std::vector<EventScore> per_event;          // matched events
    std::vector<FaultEvent> unmatched_events;   // the false alarms
    std::vector<std::string> missed_labels;
};

/// Greedy one-to-one matching of detected events to ShortResistor windows
/// by onset proximity within tol seconds. ExtraDischargePulse windows are
/// not real faults and may match nothing; events left unmatched count as
/// false alarms.
EvalReport match_events(const std::vector<FaultEvent>& detected, const FaultSchedule& schedule,
                        double tol);

/// Human-readable fixed-column summary table.
std::string summarize(const EvalReport& report);

// Machine-readable per-event rows.
void save_report(const EvalReport& report, const std::string& path);

}  // namespace tmsc

#endif  // TMSC_EVAL_HPP
