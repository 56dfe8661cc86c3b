#include "tmsc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tmsc/csv.hpp"
#include "tmsc/errors.hpp"

namespace tmsc {

EvalReport match_events(const std::vector<FaultEvent>& detected, const FaultSchedule& schedule,
                        double tol) {
    if (!(tol >= 0.0)) throw ValidationError("matching tolerance must be >= 0");

    std::vector<const FaultSpec*> real;
    for (const auto& ev : schedule.events) {
        if (ev.kind == FaultKind::ShortResistor) real.push_back(&ev);
    }

    // All candidate pairings within tolerance, closest onsets first.
    struct Candidate {
        double dist;
        size_t det;
        size_t win;
    };
    std::vector<Candidate> candidates;
    for (size_t d = 0; d < detected.size(); ++d) {
        for (size_t w = 0; w < real.size(); ++w) {
            const double dist = std::abs(detected[d].t_onset - real[w]->t_on);
            if (dist <= tol) candidates.push_back({dist, d, w});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.win != b.win) return a.win < b.win;
        return a.det < b.det;
    });

    std::vector<int> det_match(detected.size(), -1);
    std::vector<int> win_match(real.size(), -1);
    for (const auto& c : candidates) {
        if (det_match[c.det] >= 0 || win_match[c.win] >= 0) continue;
        det_match[c.det] = static_cast<int>(c.win);
        win_match[c.win] = static_cast<int>(c.det);
    }

    EvalReport report;
    for (size_t w = 0; w < real.size(); ++w) {
        if (win_match[w] < 0) {
            ++report.missed;
            report.missed_labels.push_back(real[w]->label);
            continue;
        }
        ++report.true_positives;
        const FaultEvent& ev = detected[static_cast<size_t>(win_match[w])];
        EventScore score;
        score.label = real[w]->label;
        score.onset_error = ev.t_onset - real[w]->t_on;
        if (ev.t_clear) score.clear_error = *ev.t_clear - real[w]->t_off;
        score.r_sc_true = real[w]->value;
        score.r_sc_est = ev.r_sc_est;
        score.r_sc_rel_err = std::abs(ev.r_sc_est - real[w]->value) / real[w]->value;
        report.per_event.push_back(std::move(score));
    }
    std::sort(report.per_event.begin(), report.per_event.end(),
              [](const EventScore& a, const EventScore& b) { return a.label < b.label; });

    for (size_t d = 0; d < detected.size(); ++d) {
        if (det_match[d] < 0) {
            ++report.false_alarms;
            report.unmatched_events.push_back(detected[d]);
        }
    }
    return report;
}

std::string summarize(const EvalReport& report) {
    std::ostringstream out;
    char line[160];

    std::snprintf(line, sizeof(line), "detected %d/%d real faults, %d missed, %d false alarms\n",
                  report.true_positives, report.true_positives + report.missed, report.missed,
                  report.false_alarms);
    out << line;

    if (!report.per_event.empty()) {
        std::snprintf(line, sizeof(line), "%-6s %12s %12s %12s %12s %10s\n", "label",
                      "onset_err_s", "clear_err_s", "r_sc_true", "r_sc_est", "rel_err");
        out << line;
        for (const auto& e : report.per_event) {
            std::snprintf(line, sizeof(line), "%-6s %12.1f %12s %12.4f %12.4f %9.1f%%\n",
                          e.label.c_str(), e.onset_error,
                          e.clear_error ? csv::format_fixed(*e.clear_error, 1).c_str() : "-",
                          e.r_sc_true.value_or(0.0), e.r_sc_est,
                          e.r_sc_rel_err ? 100.0 * *e.r_sc_rel_err : 0.0);
            out << line;
        }
    }
    for (const auto& label : report.missed_labels) {
        out << "missed: " << label << '\n';
    }
    for (const auto& ev : report.unmatched_events) {
        std::snprintf(line, sizeof(line), "false alarm: onset %.1f s, r_sc_est %.4f ohm\n",
                      ev.t_onset, ev.r_sc_est);
        out << line;
    }
    return out.str();
}

void save_report(const EvalReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "label,onset_err_s,clear_err_s,r_sc_true_ohm,r_sc_est_ohm,r_sc_rel_err\n";
    for (const auto& e : report.per_event) {
        out << e.label << ',' << csv::format_fixed(e.onset_error, 3) << ',';
        if (e.clear_error) out << csv::format_fixed(*e.clear_error, 3);
        out << ',';
        if (e.r_sc_true) out << csv::format_fixed(*e.r_sc_true, 6);
        out << ',' << csv::format_fixed(e.r_sc_est, 6) << ',';
        if (e.r_sc_rel_err) out << csv::format_fixed(*e.r_sc_rel_err, 6);
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace tmsc
