#include "tmsc/lookup_table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tmsc/csv.hpp"
#include "tmsc/errors.hpp"

namespace tmsc {

namespace {

const char* kind_name(TableKind kind) {
    return kind == TableKind::Ocv ? "OCV" : "R0";
}

// Linear interpolation on a raw (soc, value) curve, clamped at the ends.
double interp_curve(const std::vector<std::pair<double, double>>& curve, double soc) {
    if (soc <= curve.front().first) return curve.front().second;
    if (soc >= curve.back().first) return curve.back().second;
    auto hi = std::upper_bound(curve.begin(), curve.end(), soc,
                               [](double s, const auto& p) { return s < p.first; });
    auto lo = hi - 1;
    const double frac = (soc - lo->first) / (hi->first - lo->first);
    return lo->second + frac * (hi->second - lo->second);
}

void check_curve(const std::vector<std::pair<double, double>>& curve, const char* name) {
    if (curve.empty()) throw ValidationError(std::string(name) + " curve is empty");
    for (size_t i = 1; i < curve.size(); ++i) {
        if (!(curve[i].first > curve[i - 1].first)) {
            throw ValidationError(std::string(name) + " curve SOC grid is not strictly increasing");
        }
        if (curve[i].second < curve[i - 1].second) {
            throw ValidationError(std::string(name) + " curve voltage is not monotone in SOC");
        }
    }
}

}  // namespace

LookupTable1D::LookupTable1D(std::vector<double> soc_breakpoints, std::vector<double> values,
                             TableKind kind)
    : soc_(std::move(soc_breakpoints)), values_(std::move(values)), kind_(kind) {
    if (soc_.size() != values_.size()) {
        throw ValidationError("table breakpoint/value count mismatch");
    }
    if (soc_.size() < 2) {
        throw ValidationError("table needs at least 2 breakpoints");
    }
    for (size_t i = 0; i < soc_.size(); ++i) {
        if (!std::isfinite(soc_[i]) || !std::isfinite(values_[i])) {
            throw ValidationError("table contains non-finite entries");
        }
        if (soc_[i] < 0.0 || soc_[i] > 1.0) {
            throw ValidationError("SOC breakpoint outside [0,1]");
        }
        if (i > 0 && !(soc_[i] > soc_[i - 1])) {
            throw ValidationError("SOC breakpoints not strictly increasing");
        }
        if (values_[i] <= 0.0) {
            throw ValidationError(std::string(kind_name(kind_)) + " values must be positive");
        }
        if (kind_ == TableKind::Ocv && i > 0 && values_[i] < values_[i - 1]) {
            throw ValidationError("OCV values must be non-decreasing in SOC");
        }
    }
}

double LookupTable1D::interp(double soc, bool* clamped) const {
    if (clamped) *clamped = false;
    if (soc <= soc_.front()) {
        if (clamped && soc < soc_.front()) *clamped = true;
        return values_.front();
    }
    if (soc >= soc_.back()) {
        if (clamped && soc > soc_.back()) *clamped = true;
        return values_.back();
    }
    auto hi = std::upper_bound(soc_.begin(), soc_.end(), soc);
    const size_t i = static_cast<size_t>(hi - soc_.begin());
    const double frac = (soc - soc_[i - 1]) / (soc_[i] - soc_[i - 1]);
    return values_[i - 1] + frac * (values_[i] - values_[i - 1]);
}

LookupTable1D load_table(const std::string& path, TableKind kind) {
    csv::Table t = csv::read_numeric(path);
    if (t.header.size() != 2 || t.header[0] != "soc" || t.header[1] != "value") {
        throw IoError(path + ": expected header 'soc,value'");
    }
    if (t.rows.empty()) throw ValidationError(path + ": table has no rows");

    std::vector<double> soc, val;
    soc.reserve(t.rows.size());
    val.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        soc.push_back(r[0]);
        val.push_back(r[1]);
    }
    try {
        return LookupTable1D(std::move(soc), std::move(val), kind);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void save_table(const LookupTable1D& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "soc,value\n";
    for (size_t i = 0; i < table.size(); ++i) {
        out << csv::format_exact(table.soc_breakpoints()[i]) << ','
            << csv::format_exact(table.values()[i]) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

LookupTable1D build_ocv_table(const std::vector<std::pair<double, double>>& charge_curve,
                              const std::vector<std::pair<double, double>>& discharge_curve) {
    check_curve(charge_curve, "charge");
    check_curve(discharge_curve, "discharge");

    const double lo = std::max(charge_curve.front().first, discharge_curve.front().first);
    const double hi = std::min(charge_curve.back().first, discharge_curve.back().first);
    if (!(lo < hi)) throw ValidationError("charge/discharge curves have disjoint SOC ranges");

    std::vector<double> grid;
    for (const auto& p : charge_curve) {
        if (p.first >= lo && p.first <= hi) grid.push_back(p.first);
    }
    for (const auto& p : discharge_curve) {
        if (p.first >= lo && p.first <= hi) grid.push_back(p.first);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> values;
    values.reserve(grid.size());
    for (double s : grid) {
        values.push_back(0.5 * (interp_curve(charge_curve, s) + interp_curve(discharge_curve, s)));
    }
    return LookupTable1D(std::move(grid), std::move(values), TableKind::Ocv);
}

}  // namespace tmsc
