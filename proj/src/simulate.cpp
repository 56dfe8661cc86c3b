#include "tmsc/simulate.hpp"

#include <cmath>
#include <fstream>

#include "tmsc/csv.hpp"
#include "tmsc/errors.hpp"
#include "tmsc/rng.hpp"

namespace tmsc {

void NoiseSpec::validate() const {
    if (sigma_v < 0.0 || sigma_i < 0.0) throw ValidationError("noise sigma must be >= 0");
    if (!std::isfinite(sigma_v) || !std::isfinite(sigma_i)) {
        throw ValidationError("noise sigma must be finite");
    }
}

Trace run_scenario(const CellParams& params, const CurrentProfile& profile,
                   const FaultSchedule& schedule, const NoiseSpec& noise,
                   const StepObserver& observer) {
    params.validate();
    schedule.validate();
    noise.validate();
    if (profile.samples.empty()) throw ValidationError("empty current profile");
    if (profile.duration() < schedule.end_time()) {
        throw ValidationError("profile shorter than last scheduled event");
    }

    Rng rng(noise.seed);
    const double dt = profile.dt;

    CellState state;
    state.soc_true = params.soc_init;
    state.u_polar.assign(params.rc_pairs.size(), 0.0);

    Trace trace;
    trace.dt = dt;
    trace.rows.reserve(profile.samples.size());

    for (size_t k = 0; k < profile.samples.size(); ++k) {
        const double t = static_cast<double>(k) * dt;
        const double i_t = profile.samples[k] + schedule.extra_current_at(t);
        const double r_sc = schedule.short_resistance_at(t);
        state.fault_active = r_sc > 0.0 ? std::optional<double>(r_sc) : std::nullopt;

        bool in_window = false;
        for (const auto& ev : schedule.events) in_window |= ev.active_at(t);

        const double soc_at_sample = state.soc_true;
        const StepResult step = step_cell(params, state, i_t, dt);

        if (observer) {
            StepTruth truth;
            truth.t = t;
            truth.i_t = i_t;
            truth.v = step.v_meas;
            truth.i_sc = step.i_sc;
            truth.soc = soc_at_sample;
            truth.ocv_real = params.ocv_table.interp(soc_at_sample);
            truth.u_polar_sum = state.u_polar_sum();
            truth.r0 = params.r0_table.interp(soc_at_sample);
            observer(truth);
        }

        TraceRow row;
        row.t = t;
        row.i = i_t + noise.sigma_i * rng.gaussian();
        row.v = step.v_meas + noise.sigma_v * rng.gaussian();
        row.soc_true = soc_at_sample;
        row.i_sc_true = step.i_sc;
        row.fault_active = in_window;
        trace.rows.push_back(row);

        state = step.next;
    }
    return trace;
}

void save_trace(const Trace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "t_s,i_a,v_v,soc_true,i_sc_true,fault_active\n";
    for (const auto& r : trace.rows) {
        out << csv::format_fixed(r.t, 3) << ',' << csv::format_fixed(r.i, 6) << ','
            << csv::format_fixed(r.v, 6) << ',' << csv::format_fixed(r.soc_true, 8) << ','
            << csv::format_fixed(r.i_sc_true, 6) << ',' << (r.fault_active ? 1 : 0) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

Trace load_trace(const std::string& path) {
    csv::Table t = csv::read_numeric(path);
    const int ti = t.column("t_s");
    const int ii = t.column("i_a");
    const int vi = t.column("v_v");
    if (ti < 0 || ii < 0 || vi < 0) {
        throw IoError(path + ": expected at least columns t_s,i_a,v_v");
    }
    const int si = t.column("soc_true");
    const int sci = t.column("i_sc_true");
    const int fi = t.column("fault_active");

    Trace trace;
    trace.rows.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        TraceRow row{};
        row.t = r[static_cast<size_t>(ti)];
        row.i = r[static_cast<size_t>(ii)];
        row.v = r[static_cast<size_t>(vi)];
        row.soc_true = si >= 0 ? r[static_cast<size_t>(si)] : 0.0;
        row.i_sc_true = sci >= 0 ? r[static_cast<size_t>(sci)] : 0.0;
        row.fault_active = fi >= 0 && r[static_cast<size_t>(fi)] != 0.0;
        trace.rows.push_back(row);
    }
    if (trace.rows.size() >= 2) trace.dt = trace.rows[1].t - trace.rows[0].t;
    return trace;
}

}  // namespace tmsc
