#include "gesim/config.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gesim/errors.hpp"
#include "gesim/oracle.hpp"
#include "gesim/pt.hpp"
#include "gesim/sn.hpp"

namespace gesim {

using nlohmann::json;

std::vector<double> SweepSpec::points() const {
    if (n_points < 2) throw ConfigError("sweep needs n_points >= 2");
    if (t_end <= t_start) throw ConfigError("sweep needs t_end > t_start");
    if (log_scale && t_start <= 0.0) throw ConfigError("log sweep needs t_start > 0");
    std::vector<double> p(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double f = static_cast<double>(i) / (n_points - 1);
        p[i] = log_scale ? t_start * std::pow(t_end / t_start, f)
                         : t_start + (t_end - t_start) * f;
    }
    return p;
}

namespace {

double need(const json& j, const char* field) {
    if (!j.contains(field)) throw ConfigError(std::string("missing field '") + field + "'");
    if (!j[field].is_number()) throw ConfigError(std::string("field '") + field + "' must be numeric");
    return j[field].get<double>();
}

double maybe(const json& j, const char* field, double fallback) {
    if (!j.contains(field)) return fallback;
    return j[field].get<double>();
}

Model parse_model(const json& j) {
    const bool has_dim = j.contains("dimensionless"), has_si = j.contains("si");
    if (has_dim == has_si)
        throw ConfigError("model needs exactly one of 'dimensionless' or 'si'");
    if (has_dim) {
        const json& d = j["dimensionless"];
        return make_model(need(d, "g"), need(d, "Omega0"), need(d, "Omega1"),
                          {need(d, "alpha_re"), maybe(d, "alpha_im", 0.0)},
                          maybe(d, "omega_b_abs", 1.0));
    }
    const json& s = j["si"];
    PhysicalConfig cfg;
    cfg.m = need(s, "m");
    cfg.M = need(s, "M");
    cfg.d = need(s, "d");
    cfg.L = need(s, "L");
    cfg.Omega0 = need(s, "Omega0");
    cfg.Omega1 = need(s, "Omega1");
    cfg.alpha = {need(s, "alpha_re"), maybe(s, "alpha_im", 0.0)};
    cfg.G = maybe(s, "G", si::G_newton);
    cfg.hbar = maybe(s, "hbar", si::hbar);
    cfg.scale_separation_min = maybe(s, "scale_separation_min", 1e3);
    return derive_model(cfg);
}

CavityConfig parse_cavity(const json& j) {
    CavityConfig cav;
    cav.ell = need(j, "ell");
    cav.n_mode = static_cast<long>(need(j, "n_mode"));
    cav.M = need(j, "M");
    cav.Omega0 = need(j, "Omega0");
    cav.alpha = {need(j, "alpha_re"), maybe(j, "alpha_im", 0.0)};
    cav.t_ini = maybe(j, "t_ini", 0.0);
    cav.hbar = maybe(j, "hbar", si::hbar);
    if (j.contains("omega_c"))
        cav.omega_c = j["omega_c"].get<double>();
    else
        cav.omega_c = CavityConfig::from_mode(cav.ell, cav.n_mode, cav.M, cav.Omega0, cav.alpha,
                                              cav.t_ini)
                          .omega_c;
    return cav;
}

FeasibilityInput parse_feasibility(const json& j) {
    FeasibilityInput in;
    in.m_over_M = need(j, "m_over_M");
    in.M_over_d3 = need(j, "M_over_d3");
    in.alpha_abs = need(j, "alpha_abs");
    in.omega_b_abs = need(j, "omega_b_abs");
    in.tau1 = need(j, "tau1");
    in.t_tot = need(j, "t_tot");
    in.G = maybe(j, "G", si::G_newton);
    if (j.contains("optimal_tuning")) in.optimal_tuning = j["optimal_tuning"].get<bool>();
    if (j.contains("k_res")) in.k_res = j["k_res"].get<double>();
    return in;
}

const std::vector<std::string> mode_list = {"eigen",    "pex",      "visibility",
                                            "negativity", "sn",     "optomech",
                                            "oracle",   "feasibility", "validate"};

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        RunConfig cfg;
        if (j.value("schema", "") != std::string("gesim-config/1"))
            throw ConfigError("config schema must be 'gesim-config/1'");
        cfg.mode = j.value("mode", "");
        bool known = false;
        for (const auto& m : mode_list) known = known || m == cfg.mode;
        if (!known) throw ConfigError("unknown mode '" + cfg.mode + "'");

        if (j.contains("model")) cfg.model = parse_model(j["model"]);
        if (j.contains("cavity")) cfg.cavity = parse_cavity(j["cavity"]);
        if (j.contains("feasibility")) cfg.feas = parse_feasibility(j["feasibility"]);
        if (j.contains("sweep")) {
            const json& s = j["sweep"];
            cfg.sweep.t_start = need(s, "t_start");
            cfg.sweep.t_end = need(s, "t_end");
            cfg.sweep.n_points = static_cast<int>(need(s, "n_points"));
            const std::string scale = s.value("scale", "linear");
            if (scale != "linear" && scale != "log")
                throw ConfigError("sweep scale must be 'linear' or 'log'");
            cfg.sweep.log_scale = scale == "log";
            if (cfg.sweep.n_points < 2) throw ConfigError("sweep needs n_points >= 2");
        }
        if (j.contains("options")) {
            const json& o = j["options"];
            if (o.contains("include_offres")) cfg.include_offres = o["include_offres"].get<bool>();
            if (o.contains("k_values")) cfg.k_values = o["k_values"].get<std::vector<double>>();
            if (o.contains("oracle")) {
                const json& g = o["oracle"];
                cfg.oracle.nx = static_cast<std::size_t>(maybe(g, "nx", 0));
                cfg.oracle.ny = static_cast<std::size_t>(maybe(g, "ny", 0));
                cfg.oracle.x_max = maybe(g, "x_max", 0.0);
                cfg.oracle.y_max = maybe(g, "y_max", 0.0);
                cfg.oracle.dt = maybe(g, "dt", 0.0);
                cfg.oracle.snapshot_path = g.value("snapshot", "");
            }
        }
        cfg.config_hash = hash_hex(j.dump());
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

std::vector<std::string> preset_names() { return {"fig2", "fig5", "eq24"}; }

std::vector<std::pair<std::string, RunConfig>> preset(const std::string& name) {
    auto dim_model = [](double g, double O0, double O1, double a) {
        return std::string(R"({"dimensionless": {"g": )") + format_value(g) +
               R"(, "Omega0": )" + format_value(O0) + R"(, "Omega1": )" + format_value(O1) +
               R"(, "alpha_re": )" + format_value(a) + "}}";
    };
    std::vector<std::pair<std::string, RunConfig>> out;
    if (name == "fig2") {
        const std::string cfg = std::string(R"({"schema": "gesim-config/1", "mode": "visibility",
            "model": )") + dim_model(1e-3, 0.8, 1.3, 0.5) +
            R"(, "sweep": {"t_start": 0.0, "t_end": 26.0, "n_points": 261}})";
        out.emplace_back("fig2_visibility", parse_config(cfg));
    } else if (name == "fig5") {
        const std::string a = std::string(R"({"schema": "gesim-config/1", "mode": "pex",
            "model": )") + dim_model(1e-3, 0.9, 1.01, 0.5) +
            R"(, "sweep": {"t_start": 0.6, "t_end": 950.0, "n_points": 40, "scale": "log"}})";
        const std::string b = std::string(R"({"schema": "gesim-config/1", "mode": "pex",
            "model": )") + dim_model(1e-3, 0.9, 1.50, 0.5) +
            R"(, "sweep": {"t_start": 0.09, "t_end": 135.0, "n_points": 40, "scale": "log"}})";
        out.emplace_back("fig5_omega1_1.01", parse_config(a));
        out.emplace_back("fig5_omega1_1.50", parse_config(b));
    } else if (name == "eq24") {
        const std::string cfg = R"({"schema": "gesim-config/1", "mode": "feasibility",
            "feasibility": {"m_over_M": 1.0, "M_over_d3": 20000.0, "alpha_abs": 0.7,
                            "omega_b_abs": 1.0, "tau1": 43200.0, "t_tot": 31557600.0}})";
        out.emplace_back("eq24_feasibility", parse_config(cfg));
    } else {
        throw ConfigError("unknown preset '" + name + "' (have fig2, fig5, eq24)");
    }
    return out;
}

namespace {

std::vector<std::string> table_comments(const RunConfig& cfg) {
    return {std::string("gesim ") + version_string, "config_hash=" + cfg.config_hash,
            "mode=" + cfg.mode};
}

const Model& require_model(const RunConfig& cfg) {
    if (!cfg.model) throw ConfigError("mode '" + cfg.mode + "' needs a model block");
    return *cfg.model;
}

RunOutput run_eigen(const RunConfig& cfg) {
    RunOutput out;
    const int n = cfg.sweep.n_points;
    SeriesTable bound;
    bound.comments = table_comments(cfg);
    bound.columns = {"X", "re", "im", "abs2"};
    for (int i = 0; i < n; ++i) {
        const double X = -10.0 + 20.0 * i / (n - 1);
        const double v = pt::eval_bound(X);
        bound.add_row({X, v, 0.0, v * v});
    }
    out.tables.emplace_back("eigen_bound", std::move(bound));

    SeriesTable scat;
    scat.comments = table_comments(cfg);
    scat.columns = {"k", "X", "re", "im", "abs2"};
    for (double k : cfg.k_values)
        for (int i = 0; i < n; ++i) {
            const double X = -10.0 + 20.0 * i / (n - 1);
            const auto v = pt::eval_scattering(k, X);
            scat.add_row({k, X, v.real(), v.imag(), std::norm(v)});
        }
    out.tables.emplace_back("eigen_scattering", std::move(scat));

    SeriesTable ovl;
    ovl.comments = table_comments(cfg);
    ovl.columns = {"k", "re", "im", "abs2"};
    for (int i = 0; i < n; ++i) {
        const double k = -4.0 + 8.0 * i / (n - 1);
        const auto J = pt::overlap_J(k);
        ovl.add_row({k, J.real(), J.imag(), pt::overlap_J_abs2(k)});
    }
    out.tables.emplace_back("eigen_overlap", std::move(ovl));
    return out;
}

RunOutput run_pex(const RunConfig& cfg) {
    const Model& m = require_model(cfg);
    SeriesTable tab;
    tab.comments = table_comments(cfg);
    tab.columns = {"t", "t_over_t_sat", "pex_numeric", "pex_golden_rule",
                   "pex_saddle_short", "pex_saddle_long", "pex_saddle_long_unit_overlap"};
    for (double t : cfg.sweep.points()) {
        const KGrid grid = build_kgrid(m, t);
        tab.add_row({t, t / m.t_sat, pex(m, t, PexMethod::numeric, grid).value,
                     pex(m, t, PexMethod::golden_rule).value,
                     pex(m, t, PexMethod::saddle_short).value,
                     pex(m, t, PexMethod::saddle_long).value,
                     pex_saddle_long_unit_overlap(m, t)});
    }
    RunOutput out;
    out.tables.emplace_back("pex", std::move(tab));
    return out;
}

RunOutput run_visibility(const RunConfig& cfg) {
    const Model& m = require_model(cfg);
    SeriesTable tab;
    tab.comments = table_comments(cfg);
    tab.columns = {"t", "V_undetected", "V_detected"};
    for (double t : cfg.sweep.points())
        tab.add_row({t, visibility(m, t, false), visibility(m, t, true, cfg.include_offres)});
    RunOutput out;
    out.tables.emplace_back("visibility", std::move(tab));
    return out;
}

RunOutput run_negativity(const RunConfig& cfg) {
    const Model& m = require_model(cfg);
    SeriesTable tab;
    tab.comments = table_comments(cfg);
    tab.columns = {"t", "pex_numeric", "N_closed_form", "N_partial_transpose"};
    for (double t : cfg.sweep.points())
        tab.add_row({t, pex(m, t, PexMethod::numeric).value,
                     negativity(m, t, NegativityMethod::closed_form),
                     negativity(m, t, NegativityMethod::partial_transpose)});
    RunOutput out;
    out.tables.emplace_back("negativity", std::move(tab));
    return out;
}

RunOutput run_sn(const RunConfig& cfg) {
    const Model& m = require_model(cfg);
    SeriesTable tab;
    tab.comments = table_comments(cfg);
    tab.columns = {"t", "V_quantized_pre", "V_quantized_post", "V_SN_pre", "V_SN_post",
                   "Pex_quantized", "Pex_SN"};
    for (double t : cfg.sweep.points()) {
        const KGrid grid = build_kgrid(m, t);
        tab.add_row({t, visibility(m, t, false), visibility(m, t, true, cfg.include_offres),
                     sn_visibility(m, t, false), sn_visibility(m, t, true),
                     pex(m, t, PexMethod::numeric, grid).value,
                     sn_evolve(m, t, grid).excited_norm2()});
    }
    RunOutput out;
    out.tables.emplace_back("sn", std::move(tab));
    return out;
}

RunOutput run_optomech(const RunConfig& cfg) {
    if (!cfg.cavity) throw ConfigError("optomech mode needs a cavity block");
    const CavityConfig& cav = *cfg.cavity;
    const auto d = derive_frequencies(cav);
    SeriesTable tab;
    tab.comments = table_comments(cfg);
    tab.columns = {"t", "re_alpha0", "im_alpha0", "re_alpha1", "im_alpha1",
                   "abs_zeta1", "phi0", "phi1"};
    for (double t : cfg.sweep.points()) {
        const auto p0 = squeezed_trajectory(cav, 0, t);
        const auto p1 = squeezed_trajectory(cav, 1, t);
        tab.add_row({t, p0.alpha_traj.real(), p0.alpha_traj.imag(), p1.alpha_traj.real(),
                     p1.alpha_traj.imag(), std::abs(p1.zeta), p0.phase, p1.phase});
    }
    RunOutput out;
    out.tables.emplace_back("optomech", std::move(tab));

    nlohmann::json doc;
    doc["Omega1"] = d.Omega1;
    doc["lambda0"] = d.lambda0;
    doc["lambda0_sigma_route"] = d.lambda0_sigma_route;
    doc["config_hash"] = cfg.config_hash;
    doc["version"] = version_string;
    out.documents.emplace_back("optomech_summary", doc.dump(2) + "\n");
    return out;
}

RunOutput run_oracle(const RunConfig& cfg) {
    const Model& m = require_model(cfg);
    auto samples = cfg.sweep.points();
    if (samples.front() < 0.0) throw ConfigError("oracle sweep must start at t >= 0");
    const double t_end = samples.back();
    oracle::GridSpec spec = oracle::GridSpec::defaults(m, t_end);
    if (cfg.oracle.nx) spec.nx = cfg.oracle.nx;
    if (cfg.oracle.ny) spec.ny = cfg.oracle.ny;
    if (cfg.oracle.x_max > 0.0) spec.x_max = cfg.oracle.x_max;
    if (cfg.oracle.y_max > 0.0) spec.y_max = cfg.oracle.y_max;
    if (cfg.oracle.dt > 0.0) spec.dt = cfg.oracle.dt;

    oracle::GridWavefunction psi(m, spec, t_end);
    SeriesTable tab;
    tab.comments = table_comments(cfg);
    tab.columns = {"tau", "norm", "P_ex", "V", "N"};
    for (double t : samples) {
        psi.propagate(t);
        const auto meas = psi.measure();
        tab.add_row({meas.tau, meas.norm2, meas.p_ex, meas.visibility, meas.negativity});
    }
    if (!cfg.oracle.snapshot_path.empty()) psi.write_snapshot(cfg.oracle.snapshot_path);
    RunOutput out;
    out.tables.emplace_back("oracle_series", std::move(tab));
    return out;
}

RunOutput run_feasibility(const RunConfig& cfg) {
    if (!cfg.feas) throw ConfigError("feasibility mode needs a feasibility block");
    const auto rep = feasibility(*cfg.feas);
    SeriesTable tab;
    tab.comments = table_comments(cfg);
    tab.columns = {"per_run", "n_runs", "total_linear", "total_any_excitation",
                   "k_res", "t_sat_seconds", "g"};
    tab.add_row({rep.per_run, rep.n_runs, rep.total_linear, rep.total_any_excitation,
                 rep.k_res, rep.t_sat_seconds, rep.g});
    RunOutput out;
    out.tables.emplace_back("feasibility", std::move(tab));

    nlohmann::json doc;
    doc["per_run"] = rep.per_run;
    doc["n_runs"] = rep.n_runs;
    doc["total_linear"] = rep.total_linear;
    doc["total_any_excitation"] = rep.total_any_excitation;
    doc["k_res"] = rep.k_res;
    doc["t_sat_seconds"] = rep.t_sat_seconds;
    doc["g"] = rep.g;
    doc["warnings"] = rep.warnings;
    doc["input"] = {{"m_over_M", rep.input.m_over_M},
                    {"M_over_d3", rep.input.M_over_d3},
                    {"alpha_abs", rep.input.alpha_abs},
                    {"omega_b_abs", rep.input.omega_b_abs},
                    {"tau1", rep.input.tau1},
                    {"t_tot", rep.input.t_tot},
                    {"G", rep.input.G},
                    {"optimal_tuning", rep.input.optimal_tuning}};
    doc["config_hash"] = cfg.config_hash;
    doc["version"] = version_string;
    out.documents.emplace_back("feasibility_report", doc.dump(2) + "\n");
    return out;
}

}  // namespace

RunOutput run_config(const RunConfig& cfg) {
    if (cfg.mode == "eigen") return run_eigen(cfg);
    if (cfg.mode == "pex") return run_pex(cfg);
    if (cfg.mode == "visibility") return run_visibility(cfg);
    if (cfg.mode == "negativity") return run_negativity(cfg);
    if (cfg.mode == "sn") return run_sn(cfg);
    if (cfg.mode == "optomech") return run_optomech(cfg);
    if (cfg.mode == "oracle") return run_oracle(cfg);
    if (cfg.mode == "feasibility") return run_feasibility(cfg);
    throw ConfigError("mode '" + cfg.mode + "' is not runnable here");
}

std::vector<std::pair<std::string, SeriesTable>> run_to_tables(const RunConfig& cfg) {
    return run_config(cfg).tables;
}

std::vector<std::string> run_to_files(const RunConfig& cfg, const std::string& out_dir,
                                      const std::string& prefix) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto out = run_config(cfg);
    auto name = [&prefix](const std::string& stem, const char* ext) {
        return (prefix.empty() ? stem : prefix + "_" + stem) + ext;
    };
    std::vector<std::string> written;
    for (const auto& [stem, tab] : out.tables) {
        const std::string path = (fs::path(out_dir) / name(stem, ".csv")).string();
        tab.write_csv(path);
        written.push_back(path);
    }
    for (const auto& [stem, text] : out.documents) {
        const std::string path = (fs::path(out_dir) / name(stem, ".json")).string();
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file " + path);
        f << text;
        written.push_back(path);
    }
    return written;
}

}  // namespace gesim
