#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tmsc/config.hpp"
#include "tmsc/csv.hpp"
#include "tmsc/defaults.hpp"
#include "tmsc/detector.hpp"
#include "tmsc/errors.hpp"
#include "tmsc/eval.hpp"
#include "tmsc/scenario.hpp"
#include "tmsc/simulate.hpp"
#include "tmsc/thresholds.hpp"

namespace {

using namespace tmsc;

struct CommonOpts {
    std::string config_path;
    std::optional<int64_t> seed;
};

Config make_config(const CommonOpts& opts) {
    Config cfg = opts.config_path.empty() ? Config::defaults() : load_config(opts.config_path);
    if (opts.seed) cfg.noise.seed = static_cast<uint64_t>(*opts.seed);
    return cfg;
}

std::vector<Sample> to_samples(const Trace& trace) {
    std::vector<Sample> out;
    out.reserve(trace.rows.size());
    for (const auto& r : trace.rows) out.push_back({r.t, r.i, r.v});
    return out;
}

int cmd_simulate(const CommonOpts& opts, bool table1, const std::string& schedule_path,
                 const std::string& profile_path, const std::string& out_path) {
    Config cfg = make_config(opts);

    FaultSchedule schedule;
    if (table1 && !schedule_path.empty()) {
        throw ValidationError("--table1 and --schedule are mutually exclusive");
    }
    if (table1) schedule = table1_schedule();
    if (!schedule_path.empty()) schedule = load_schedule(schedule_path);

    CurrentProfile profile = profile_path.empty()
                                 ? synth_drive_cycle(cfg.profile_duration, cfg.sampling_dt,
                                                     cfg.noise.seed)
                                 : load_profile(profile_path);

    Trace trace = run_scenario(cfg.cell, profile, schedule, cfg.noise);
    save_trace(trace, out_path);

    std::cout << "wrote " << out_path << ": " << trace.rows.size() << " samples, "
              << schedule.events.size() << " scheduled events, final SOC "
              << trace.rows.back().soc_true << "\n";
    return 0;
}

int cmd_calibrate(const CommonOpts& opts, const std::string& trace_path,
                  const std::string& out_path) {
    Config cfg = make_config(opts);
    Trace trace = load_trace(trace_path);

    Detector det(cfg.cell.r0_table, cfg.cell.capacity_ah, cfg.cell.soc_init, std::nullopt);
    std::vector<double> deltas;
    deltas.reserve(trace.rows.size());
    bool first = true;
    for (const auto& s : to_samples(trace)) {
        det.step(s);
        if (!first) deltas.push_back(det.last_delta());
        first = false;
    }

    Thresholds th = calibrate_thresholds(deltas, cfg.p, cfg.gamma);
    save_thresholds(th, out_path);

    size_t outside = 0;
    for (double d : deltas) {
        if (d < th.theta_minus || d > th.theta_plus) ++outside;
    }
    std::cout << "wrote " << out_path << ": theta- " << th.theta_minus << " V, theta+ "
              << th.theta_plus << " V, relaxed [" << th.relaxed_minus << ", " << th.relaxed_plus
              << "] V\ncalibration exceedance " << static_cast<double>(outside) / deltas.size()
              << " (target " << 2.0 * cfg.p << ")\n";
    return 0;
}

int cmd_detect(const CommonOpts& opts, const std::string& trace_path,
               const std::string& thresholds_path, const std::string& events_path,
               const std::string& diag_path) {
    Config cfg = make_config(opts);
    Thresholds th = load_thresholds(thresholds_path);
    Trace trace = load_trace(trace_path);

    Detector det(cfg.cell.r0_table, cfg.cell.capacity_ah, cfg.cell.soc_init, th);
    std::vector<FaultEvent> events;

    std::ofstream diag;
    if (!diag_path.empty()) {
        diag.open(diag_path);
        if (!diag) throw IoError("cannot write " + diag_path);
        diag << "t_s,ocv_pseudo_v,delta_v,phase\n";
    }

    for (const auto& s : to_samples(trace)) {
        if (auto ev = det.step(s)) events.push_back(std::move(*ev));
        if (diag.is_open()) {
            diag << csv::format_fixed(s.t, 3) << ','
                 << csv::format_fixed(det.last_ocv_pseudo(), 6) << ','
                 << csv::format_fixed(det.last_delta(), 6) << ','
                 << (det.phase() == DetectorPhase::InFault ? "fault" : "healthy") << '\n';
        }
    }
    if (auto open = det.finish()) {
        std::cerr << "warning: stream ended with an open fault (onset " << open->t_onset
                  << " s)\n";
        events.push_back(std::move(*open));
    }
    if (det.stray_clearances() > 0) {
        std::cerr << "warning: " << det.stray_clearances()
                  << " clearance-shaped spikes outside any fault\n";
    }

    save_events(events, events_path);
    std::cout << "wrote " << events_path << ": " << events.size() << " events\n";
    return 0;
}

int cmd_evaluate(const std::string& events_path, bool table1, const std::string& schedule_path,
                 double tol, const std::string& report_path) {
    if (table1 == !schedule_path.empty()) {
        throw ValidationError("evaluate needs exactly one of --table1 or --schedule");
    }
    FaultSchedule schedule = table1 ? table1_schedule() : load_schedule(schedule_path);
    std::vector<FaultEvent> events = load_events(events_path);

    EvalReport report = match_events(events, schedule, tol);
    std::cout << summarize(report);
    if (!report_path.empty()) save_report(report, report_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Internal-short-circuit detection toolkit: cell simulator, "
                 "threshold calibration, streaming detector, and scoring"};
    app.require_subcommand(1);

    CommonOpts common;
    bool table1 = false;
    std::string schedule_path, profile_path, trace_path, thresholds_path;
    std::string out_path, events_path = "events.csv", diag_path = "diagnostics.csv";
    std::string report_path;
    double tol = kDefaultMatchTol;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "JSON config file");
        cmd->add_option("--seed", common.seed, "override the config RNG seed");
    };

    auto* sim = app.add_subcommand("simulate", "generate a drive-cycle trace");
    add_common(sim);
    sim->add_flag("--table1", table1, "inject the built-in 11-event replay schedule");
    sim->add_option("--schedule", schedule_path, "fault schedule JSON");
    sim->add_option("--profile", profile_path, "current profile CSV (t_s,i_a)");
    out_path = "trace.csv";
    sim->add_option("--out", out_path, "output trace CSV");

    auto* cal = app.add_subcommand("calibrate", "build thresholds from a healthy trace");
    add_common(cal);
    cal->add_option("--trace", trace_path, "healthy trace CSV")->required();
    std::string cal_out = "thresholds.json";
    cal->add_option("--out", cal_out, "output thresholds JSON");

    auto* det = app.add_subcommand("detect", "stream a trace through the detector");
    add_common(det);
    det->add_option("--trace", trace_path, "input trace CSV")->required();
    det->add_option("--thresholds", thresholds_path, "thresholds JSON")->required();
    det->add_option("--events", events_path, "output events CSV");
    det->add_option("--diag", diag_path, "output per-sample diagnostics CSV ('' to skip)");

    auto* ev = app.add_subcommand("evaluate", "score events against a schedule");
    ev->add_option("--events", events_path, "detected events CSV")->required();
    ev->add_flag("--table1", table1, "score against the built-in replay schedule");
    ev->add_option("--schedule", schedule_path, "fault schedule JSON");
    ev->add_option("--tol", tol, "onset matching tolerance, seconds");
    ev->add_option("--report", report_path, "output report CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) {
            return cmd_simulate(common, table1, schedule_path, profile_path, out_path);
        }
        if (cal->parsed()) return cmd_calibrate(common, trace_path, cal_out);
        if (det->parsed()) {
            return cmd_detect(common, trace_path, thresholds_path, events_path, diag_path);
        }
        if (ev->parsed()) return cmd_evaluate(events_path, table1, schedule_path, tol, report_path);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
