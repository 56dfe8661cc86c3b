#ifndef TMSC_THRESHOLDS_HPP
#define TMSC_THRESHOLDS_HPP

#include <string>
#include <vector>

namespace tmsc {

/// Dual-sided detection bounds on the pseudo-OCV first difference. The
/// working bounds are the calibrated quantiles scaled by gamma.
struct Thresholds {
    double theta_minus;    // volts, < 0
    double theta_plus;     // volts, > 0
    double p;              // tail probability used for calibration
    double gamma;          // relaxation factor, > 1
    double relaxed_minus;  // gamma * theta_minus
    double relaxed_plus;   // gamma * theta_plus

    void validate() const;  // throws ValidationError
};

/// p-quantile by linear interpolation of the order statistics at rank
/// p*(n-1). Values are copied and sorted internally.
double quantile(const std::vector<double>& values, double p);

/// Builds thresholds from a healthy-run delta sequence: theta_minus at the
/// p-quantile, theta_plus at the (1-p)-quantile, both relaxed by gamma.
/// No distributional assumption is made about the deltas.
Thresholds calibrate_thresholds(const std::vector<double>& healthy_deltas, double p,
                                double gamma);

// JSON file with the six Thresholds fields.
void save_thresholds(const Thresholds& th, const std::string& path);
Thresholds load_thresholds(const std::string& path);

}  // namespace tmsc

#endif  // TMSC_THRESHOLDS_HPP
