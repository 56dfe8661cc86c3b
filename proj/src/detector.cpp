#include "tmsc/detector.hpp"

#include <fstream>

#include "tmsc/csv.hpp"

namespace tmsc {

std::vector<FaultEvent> detect_stream(const std::vector<Sample>& samples,
                                      const LookupTable1D& r0_table, double capacity_ah,
                                      double soc_init, const Thresholds& thresholds) {
    Detector det(r0_table, capacity_ah, soc_init, thresholds);
    std::vector<FaultEvent> events;
    for (const auto& s : samples) {
        if (auto ev = det.step(s)) events.push_back(std::move(*ev));
    }
    if (auto open = det.finish()) events.push_back(std::move(*open));
    return events;
}

void save_events(const std::vector<FaultEvent>& events, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "t_onset_s,t_clear_s,delta_v,i_sc_a,r_sc_ohm,label\n";
    for (const auto& ev : events) {
        out << csv::format_fixed(ev.t_onset, 3) << ',';
        if (ev.t_clear) out << csv::format_fixed(*ev.t_clear, 3);
        out << ',' << csv::format_fixed(ev.delta_at_onset, 6) << ','
            << csv::format_fixed(ev.i_sc_est, 4) << ',' << csv::format_fixed(ev.r_sc_est, 6)
            << ',' << ev.label << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<FaultEvent> load_events(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw IoError(path + " is empty");
    if (csv::split_line(line) !=
        std::vector<std::string>{"t_onset_s", "t_clear_s", "delta_v", "i_sc_a", "r_sc_ohm",
                                 "label"}) {
        throw IoError(path + ": unexpected events header");
    }

    std::vector<FaultEvent> events;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto f = csv::split_line(line);
        if (f.size() != 6) {
            throw IoError(path + ":" + std::to_string(lineno) + ": expected 6 columns");
        }
        const std::string ctx = path + ":" + std::to_string(lineno);
        FaultEvent ev;
        ev.t_onset = csv::parse_double(f[0], ctx);
        if (!f[1].empty()) ev.t_clear = csv::parse_double(f[1], ctx);
        ev.delta_at_onset = csv::parse_double(f[2], ctx);
        ev.i_sc_est = csv::parse_double(f[3], ctx);
        ev.r_sc_est = csv::parse_double(f[4], ctx);
        ev.label = f[5];
        events.push_back(std::move(ev));
    }
    return events;
}

}  // namespace tmsc
