#include "tmsc/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

#include "tmsc/errors.hpp"

namespace tmsc {

using nlohmann::json;

void Thresholds::validate() const {
    if (!(theta_minus < 0.0) || !(theta_plus > 0.0)) {
        throw ValidationError("thresholds must straddle zero");
    }
    if (!(gamma > 1.0)) throw ValidationError("gamma must be > 1");
    if (!(p > 0.0) || !(p < 0.5)) throw ValidationError("p must lie in (0, 0.5)");
    if (relaxed_minus != gamma * theta_minus || relaxed_plus != gamma * theta_plus) {
        throw ValidationError("relaxed bounds inconsistent with gamma");
    }
}

double quantile(const std::vector<double>& values, double p) {
    if (values.empty()) throw ValidationError("quantile of empty sequence");
    if (p < 0.0 || p > 1.0) throw ValidationError("quantile order outside [0,1]");

    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    const double rank = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<size_t>(rank);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

Thresholds calibrate_thresholds(const std::vector<double>& healthy_deltas, double p,
                                double gamma) {
    if (!(p > 0.0) || !(p < 0.5)) throw ValidationError("p must lie in (0, 0.5)");
    if (!(gamma > 1.0)) throw ValidationError("gamma must be > 1");
    if (static_cast<double>(healthy_deltas.size()) < 1.0 / p) {
        throw ValidationError("calibration sequence too short to populate the p-tail");
    }

    Thresholds th;
    th.p = p;
    th.gamma = gamma;
    th.theta_minus = quantile(healthy_deltas, p);
    th.theta_plus = quantile(healthy_deltas, 1.0 - p);
    if (!(th.theta_minus < 0.0) || !(th.theta_plus > 0.0)) {
        throw ValidationError("degenerate calibration data: quantiles do not straddle zero");
    }
    th.relaxed_minus = gamma * th.theta_minus;
    th.relaxed_plus = gamma * th.theta_plus;
    return th;
}

void save_thresholds(const Thresholds& th, const std::string& path) {
    th.validate();
    json j = {{"theta_minus_v", th.theta_minus}, {"theta_plus_v", th.theta_plus},
              {"p", th.p},                       {"gamma", th.gamma},
              {"relaxed_minus_v", th.relaxed_minus}, {"relaxed_plus_v", th.relaxed_plus}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

Thresholds load_thresholds(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    Thresholds th;
    try {
        th.theta_minus = j.at("theta_minus_v").get<double>();
        th.theta_plus = j.at("theta_plus_v").get<double>();
        th.p = j.at("p").get<double>();
        th.gamma = j.at("gamma").get<double>();
        th.relaxed_minus = j.at("relaxed_minus_v").get<double>();
        th.relaxed_plus = j.at("relaxed_plus_v").get<double>();
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    th.validate();
    return th;
}

}  // namespace tmsc
