#include "tmsc/config.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "tmsc/defaults.hpp"
#include "tmsc/errors.hpp"

namespace tmsc {

using nlohmann::json;

Config Config::defaults() {
    return Config{
        .cell = default_cell_params(),
        .sampling_dt = kDefaultDt,
        .profile_duration = kDefaultDuration,
        .noise = default_noise(),
        .p = kDefaultP,
        .gamma = kDefaultGamma,
    };
}

void Config::validate() const {
    cell.validate();
    noise.validate();
    if (!(sampling_dt > 0.0)) throw ValidationError("sampling_dt_s must be positive");
    if (!(profile_duration > 0.0)) throw ValidationError("profile_duration_s must be positive");
    if (!(p > 0.0) || !(p < 0.5)) throw ValidationError("p must lie in (0, 0.5)");
    if (!(gamma > 1.0)) throw ValidationError("gamma must be > 1");
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }

    Config cfg = Config::defaults();
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };

    try {
        if (j.contains("cell")) {
            const auto& c = j["cell"];
            if (c.contains("capacity_ah")) cfg.cell.capacity_ah = c["capacity_ah"].get<double>();
            if (c.contains("soc_init")) cfg.cell.soc_init = c["soc_init"].get<double>();
            if (c.contains("coulombic_efficiency")) {
                cfg.cell.coulombic_efficiency = c["coulombic_efficiency"].get<double>();
            }
            if (c.contains("rc_pairs")) {
                cfg.cell.rc_pairs.clear();
                for (const auto& rc : c["rc_pairs"]) {
                    cfg.cell.rc_pairs.push_back(
                        {rc.at("r_ohm").get<double>(), rc.at("c_f").get<double>()});
                }
            }
            if (c.contains("ocv_csv")) {
                cfg.cell.ocv_table = load_table(resolve(c["ocv_csv"].get<std::string>()),
                                                TableKind::Ocv);
            }
            if (c.contains("r0_csv")) {
                cfg.cell.r0_table = load_table(resolve(c["r0_csv"].get<std::string>()),
                                               TableKind::R0);
            }
        }
        if (j.contains("sampling_dt_s")) cfg.sampling_dt = j["sampling_dt_s"].get<double>();
        if (j.contains("profile_duration_s")) {
            cfg.profile_duration = j["profile_duration_s"].get<double>();
        }
        if (j.contains("noise")) {
            const auto& n = j["noise"];
            if (n.contains("sigma_v")) cfg.noise.sigma_v = n["sigma_v"].get<double>();
            if (n.contains("sigma_i")) cfg.noise.sigma_i = n["sigma_i"].get<double>();
            if (n.contains("seed")) cfg.noise.seed = n["seed"].get<uint64_t>();
        }
        if (j.contains("p")) cfg.p = j["p"].get<double>();
        if (j.contains("gamma")) cfg.gamma = j["gamma"].get<double>();
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }

    cfg.validate();
    return cfg;
}

}  // namespace tmsc
