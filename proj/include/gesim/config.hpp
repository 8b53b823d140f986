#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gesim/model.hpp"
#include "gesim/observables.hpp"
#include "gesim/optomech.hpp"
#include "gesim/series.hpp"

namespace gesim {

inline constexpr const char* version_string = "0.1.0";

struct SweepSpec {
    double t_start = 0.0;
    double t_end = 10.0;
    int n_points = 50;
    bool log_scale = false;

    std::vector<double> points() const;
};

struct OracleOptions {
    std::size_t nx = 0, ny = 0;     // 0 = model defaults
    double x_max = 0.0, y_max = 0.0, dt = 0.0;
    std::string snapshot_path;      // empty = no snapshot
};

struct RunConfig {
    std::string mode;
    std::optional<Model> model;
    std::optional<FeasibilityInput> feas;
    std::optional<CavityConfig> cavity;
    SweepSpec sweep;
    bool include_offres = false;
    std::vector<double> k_values{0.5, 1.0, 2.0};  // eigen-mode scattering samples
    OracleOptions oracle;
    std::string config_hash;  // FNV-1a of the canonical config text
};

struct RunOutput {
    std::vector<std::pair<std::string, SeriesTable>> tables;      // stem -> CSV table
    std::vector<std::pair<std::string, std::string>> documents;   // stem -> JSON text
};

// Parse the versioned JSON config; throws ConfigError with field diagnostics.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// Embedded one-command reproductions.
std::vector<std::pair<std::string, RunConfig>> preset(const std::string& name);
std::vector<std::string> preset_names();

// Execute a config; pure function of the config contents.
RunOutput run_config(const RunConfig& cfg);
std::vector<std::pair<std::string, SeriesTable>> run_to_tables(const RunConfig& cfg);

// Execute and write <out_dir>/[<prefix>_]<stem>.csv / .json; returns the paths
// written.
std::vector<std::string> run_to_files(const RunConfig& cfg, const std::string& out_dir,
                                      const std::string& prefix = "");

}  // namespace gesim
