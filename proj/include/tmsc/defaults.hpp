#ifndef TMSC_DEFAULTS_HPP
#define TMSC_DEFAULTS_HPP

#include "tmsc/cell_model.hpp"
#include "tmsc/simulate.hpp"

namespace tmsc {

// Synthetic stand-in for a 40.2 Ah NCM-class automotive cell. The tables
// and RC values are plausible defaults, not measurements; all of them can
// be overridden through the config file.

LookupTable1D default_r0_table();   // 21 breakpoints at 5% SOC spacing
LookupTable1D default_ocv_table();  // same grid

CellParams default_cell_params();

NoiseSpec default_noise();

inline constexpr double kDefaultP = 0.005;
inline constexpr double kDefaultGamma = 2.0;
inline constexpr double kDefaultDt = 1.0;            // s
inline constexpr double kDefaultDuration = 16000.0;  // s, covers the replay schedule
inline constexpr double kDefaultMatchTol = 3.0;      // s

}  // namespace tmsc

#endif  // TMSC_DEFAULTS_HPP
