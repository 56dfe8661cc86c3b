#ifndef TMSC_CELL_MODEL_HPP
#define TMSC_CELL_MODEL_HPP

#include <optional>
#include <vector>

#include "tmsc/lookup_table.hpp"

namespace tmsc {

struct RcPair {
    double r_ohm;
    double c_farad;

    double tau() const { return r_ohm * c_farad; }
};

/// Equivalent-circuit cell: OCV source, ohmic R0, two RC polarization
/// branches, and a switchable short-circuit branch across the terminals.
struct CellParams {
    double capacity_ah;
    LookupTable1D ocv_table;
    LookupTable1D r0_table;
    std::vector<RcPair> rc_pairs;   // charge-transfer first, diffusion second
    double soc_init;
    double coulombic_efficiency = 1.0;

    void validate() const;  // throws ValidationError
};

struct CellState {
    double soc_true;
    std::vector<double> u_polar;          // one voltage per RC pair
    std::optional<double> fault_active;   // R_sc of the engaged branch, ohms

    double u_polar_sum() const {
        double s = 0.0;
        for (double u : u_polar) s += u;
        return s;
    }
};

struct TerminalSolution {
    double v_meas;
    double i_sc;
};

/// Solves the terminal node for one instant. Current is discharge-positive.
/// Without a short branch: v = ocv_eff - r0*i_t, i_sc = 0. With a branch of
/// resistance r_sc, the terminal equation v = ocv_eff - r0*(i_t + i_sc) and
/// the branch law i_sc = v / r_sc are solved simultaneously:
///
///   v    = (ocv_eff - r0*i_t) * r_sc / (r_sc + r0)
///   i_sc = (ocv_eff - r0*i_t) / (r_sc + r0)
///
/// ocv_eff is the open-circuit voltage minus the polarization sum.
TerminalSolution solve_terminal(double ocv_eff, double r0, double i_t,
                                std::optional<double> r_sc);

struct StepResult {
    CellState next;
    double v_meas;   // terminal voltage at the start of the step
    double i_sc;     // short-branch current at the start of the step
};

/// Advances the cell by dt seconds under external current i_t (A,
/// discharge-positive). The short branch in state.fault_active is held for
/// the whole step. SOC integrates the total cell current i_t + i_sc; each RC
/// voltage follows the exact exponential solution toward (i_t + i_sc) * R_i.
/// Throws ValidationError if SOC leaves [0,1].
StepResult step_cell(const CellParams& params, const CellState& state, double i_t, double dt);

/// Coulomb-counting SOC update shared by simulator and detector:
/// soc - i*dt / (3600*capacity), without clamping.
inline double coulomb_step(double soc, double i, double dt, double capacity_ah) {
    return soc - i * dt / (3600.0 * capacity_ah);
}

}  // namespace tmsc

#endif  // TMSC_CELL_MODEL_HPP
