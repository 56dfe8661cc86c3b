#include "tmsc/cell_model.hpp"

#include <cmath>
#include <string>

#include "tmsc/errors.hpp"

namespace tmsc {

namespace {
// Snap tolerance for SOC hitting a bound after long integrations.
constexpr double kSocEps = 1e-9;
}

void CellParams::validate() const {
    if (!(capacity_ah > 0.0)) throw ValidationError("capacity must be positive");
    if (soc_init < 0.0 || soc_init > 1.0) throw ValidationError("soc_init outside [0,1]");
    if (!(coulombic_efficiency > 0.0) || coulombic_efficiency > 1.0) {
        throw ValidationError("coulombic_efficiency outside (0,1]");
    }
    if (rc_pairs.empty()) throw ValidationError("at least one RC pair required");
    for (const auto& rc : rc_pairs) {
        if (!(rc.r_ohm > 0.0) || !(rc.c_farad > 0.0)) {
            throw ValidationError("RC pair values must be positive");
        }
    }
    if (ocv_table.kind() != TableKind::Ocv) throw ValidationError("ocv_table has wrong kind");
    if (r0_table.kind() != TableKind::R0) throw ValidationError("r0_table has wrong kind");
}

TerminalSolution solve_terminal(double ocv_eff, double r0, double i_t,
                                std::optional<double> r_sc) {
    if (!(r0 > 0.0)) throw ValidationError("r0 must be positive");
    if (!r_sc) {
        return {ocv_eff - r0 * i_t, 0.0};
    }
    if (!(*r_sc > 0.0)) throw ValidationError("r_sc must be positive");
    const double source = ocv_eff - r0 * i_t;
    const double i_sc = source / (*r_sc + r0);
    return {i_sc * *r_sc, i_sc};
}

StepResult step_cell(const CellParams& params, const CellState& state, double i_t, double dt) {
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");

    const double ocv_real = params.ocv_table.interp(state.soc_true);
    const double r0 = params.r0_table.interp(state.soc_true);
    const double ocv_eff = ocv_real - state.u_polar_sum();
    const TerminalSolution sol = solve_terminal(ocv_eff, r0, i_t, state.fault_active);

    const double i_total = i_t + sol.i_sc;

    StepResult out;
    out.v_meas = sol.v_meas;
    out.i_sc = sol.i_sc;
    out.next = state;

    // Exact first-order response over dt; Euler would distort the
    // second-scale transients the detector thresholds have to absorb.
    for (size_t k = 0; k < params.rc_pairs.size(); ++k) {
        const RcPair& rc = params.rc_pairs[k];
        const double decay = std::exp(-dt / rc.tau());
        const double target = rc.r_ohm * i_total;
        out.next.u_polar[k] = target + (state.u_polar[k] - target) * decay;
    }

    const double i_counted =
        i_total < 0.0 ? params.coulombic_efficiency * i_total : i_total;
    double soc = coulomb_step(state.soc_true, i_counted, dt, params.capacity_ah);
    if (soc < 0.0 && soc > -kSocEps) soc = 0.0;
    if (soc > 1.0 && soc < 1.0 + kSocEps) soc = 1.0;
    if (soc < 0.0 || soc > 1.0) {
        throw ValidationError("cell " + std::string(soc < 0.0 ? "depleted" : "overcharged") +
                              ": SOC left [0,1]");
    }
    out.next.soc_true = soc;
    return out;
}

}  // namespace tmsc
