#include "tmsc/defaults.hpp"

namespace tmsc {

namespace {

constexpr double kSocGrid[] = {0.00, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50,
                               0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.00};

// DCIR-style ohmic resistance, gently falling toward full charge.
constexpr double kR0Ohm[] = {0.001650, 0.001595, 0.001550, 0.001515, 0.001487, 0.001463,
                             0.001444, 0.001428, 0.001415, 0.001404, 0.001395, 0.001387,
                             0.001380, 0.001374, 0.001368, 0.001363, 0.001358, 0.001353,
                             0.001349, 0.001345, 0.001341};

// NMC-shaped OCV, mean of slow charge/discharge curves.
constexpr double kOcvVolt[] = {3.000, 3.222, 3.387, 3.480, 3.539, 3.576, 3.601,
                               3.622, 3.642, 3.663, 3.686, 3.712, 3.740, 3.771,
                               3.805, 3.843, 3.885, 3.932, 3.985, 4.063, 4.183};

}  // namespace

LookupTable1D default_r0_table() {
    return LookupTable1D(std::vector<double>(std::begin(kSocGrid), std::end(kSocGrid)),
                         std::vector<double>(std::begin(kR0Ohm), std::end(kR0Ohm)),
                         TableKind::R0);
}

LookupTable1D default_ocv_table() {
    return LookupTable1D(std::vector<double>(std::begin(kSocGrid), std::end(kSocGrid)),
                         std::vector<double>(std::begin(kOcvVolt), std::end(kOcvVolt)),
                         TableKind::Ocv);
}

CellParams default_cell_params() {
    CellParams p{
        .capacity_ah = 40.2,
        .ocv_table = default_ocv_table(),
        .r0_table = default_r0_table(),
        // Charge-transfer branch (tau 5 s) and diffusion branch (tau 120 s).
        .rc_pairs = {{0.00040, 12500.0}, {0.00025, 480000.0}},
        .soc_init = 0.60,
        .coulombic_efficiency = 1.0,
    };
    return p;
}

NoiseSpec default_noise() {
    return NoiseSpec{.sigma_v = 0.001, .sigma_i = 0.05, .seed = 101};
}

}  // namespace tmsc
