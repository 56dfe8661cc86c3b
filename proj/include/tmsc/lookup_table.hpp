#ifndef TMSC_LOOKUP_TABLE_HPP
#define TMSC_LOOKUP_TABLE_HPP

#include <string>
#include <utility>
#include <vector>

namespace tmsc {

enum class TableKind { Ocv, R0 };

/// SOC-indexed breakpoint table (R0 in ohms or OCV in volts) with
/// piecewise-linear interpolation. Immutable after construction, so
/// concurrent reads are safe.
class LookupTable1D {
public:
    // Validates breakpoints and values; throws ValidationError.
    LookupTable1D(std::vector<double> soc_breakpoints, std::vector<double> values,
                  TableKind kind);

    /// Piecewise-linear interpolation. SOC outside the breakpoint range is
    /// clamped to the nearest endpoint; *clamped reports when that happened.
    double interp(double soc, bool* clamped = nullptr) const;

    const std::vector<double>& soc_breakpoints() const { return soc_; }
    const std::vector<double>& values() const { return values_; }
    TableKind kind() const { return kind_; }
    size_t size() const { return soc_.size(); }

private:
    std::vector<double> soc_;
    std::vector<double> values_;
    TableKind kind_;
};

// CSV with header `soc,value`, one row per breakpoint, rows ordered by
// SOC. Throws IoError / ValidationError.
LookupTable1D load_table(const std::string& path, TableKind kind);

// Writes a table so load_table reproduces it bit-exactly.
void save_table(const LookupTable1D& table, const std::string& path);

/// Averages a 0.05 C charge curve and a 0.05 C discharge curve into one
/// OCV table. The output grid is the union of the input SOC grids
/// restricted to their common range; each value is the mean of the two
/// curves interpolated there.
LookupTable1D build_ocv_table(const std::vector<std::pair<double, double>>& charge_curve,
                              const std::vector<std::pair<double, double>>& discharge_curve);

}  // namespace tmsc

#endif  // TMSC_LOOKUP_TABLE_HPP
