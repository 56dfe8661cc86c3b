#ifndef TMSC_CONFIG_HPP
#define TMSC_CONFIG_HPP

#include <string>

#include "tmsc/cell_model.hpp"
#include "tmsc/simulate.hpp"

namespace tmsc {

/// Run configuration for the pipeline commands. Every knob has a default
/// matching the synthetic reference cell, so a config file only needs the
/// fields it wants to change.
struct Config {
    CellParams cell;
    double sampling_dt;        // s
    double profile_duration;   // s
    NoiseSpec noise;
    double p;
    double gamma;

    static Config defaults();
    void validate() const;  // throws ValidationError
};

/// Reads a JSON config. Table paths are resolved relative to the config
/// file's directory; omitted fields keep their defaults.
Config load_config(const std::string& path);

}  // namespace tmsc

#endif  // TMSC_CONFIG_HPP
