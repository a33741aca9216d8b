#include "spcradar/config_io.hpp"

#include "spcradar/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace spcr {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw config_error(where + ": " + what);
}

double get_num(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) fail(where, "missing field '" + key + "'");
    if (!j[key].is_number()) fail(where, "field '" + key + "' must be a number");
    return j[key].get<double>();
}

double get_num_or(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j[key].get<double>() : fallback;
}

std::size_t get_count(const json& j, const std::string& key, const std::string& where) {
    double v = get_num(j, key, where);
    if (v < 0.0) fail(where, "field '" + key + "' must be >= 0");
    return static_cast<std::size_t>(v);
}

Window parse_window(const std::string& name, const std::string& where) {
    if (name == "hann") return Window::hann;
    if (name == "rect") return Window::rect;
    fail(where, "unknown window '" + name + "' (expected 'hann' or 'rect')");
}

PsdProfile parse_psd(const json& j, const std::string& key,
                     const std::filesystem::path& base_dir, const std::string& where) {
    if (!j.contains(key)) return PsdProfile::default_profile();
    const auto& v = j[key];
    if (!v.is_string()) fail(where, "field '" + key + "' must be a string");
    const auto s = v.get<std::string>();
    if (s == "default") return PsdProfile::default_profile();
    if (s == "silent") return PsdProfile::silent();
    std::filesystem::path p(s);
    if (p.is_relative()) p = base_dir / p;
    return PsdProfile::load_csv(p);
}

double parse_theta(const json& j, const ScenarioConfig& cfg, double tau_t_s,
                   const std::string& where) {
    if (!j.contains("theta_if_rad")) return 0.0;
    const auto& v = j["theta_if_rad"];
    if (v.is_number()) return v.get<double>();
    if (v.is_string() && v.get<std::string>() == "derived") {
        if (!cfg.rf.has_value())
            fail(where, "theta_if_rad is 'derived' but rf_constants are absent");
        return derive_if_constants(cfg.rf->f_rx_hz, cfg.geometry.slope_hz_per_s(),
                                   cfg.leakage.tau_int_s, tau_t_s, cfg.rf->theta_s_rad,
                                   cfg.rf->theta_r_rad)
            .theta_if_rad;
    }
    fail(where, "theta_if_rad must be a number or the string 'derived'");
}

json profile_to_json(const PsdProfile& p) {
    json arr = json::array();
    for (const auto& pt : p.points()) arr.push_back({pt.offset_hz, pt.level_dbc_hz});
    return arr;
}

ProcessingSettings parse_processing(const json& j, const std::string& where) {
    ProcessingSettings ps;
    if (j.contains("nfft_estimate")) ps.estimator.nfft = get_count(j, "nfft_estimate", where);
    if (j.contains("estimate_window"))
        ps.estimator.window = parse_window(j["estimate_window"].get<std::string>(), where);
    ps.estimator.search_lo_hz = get_num_or(j, "search_lo_hz", -1.0);
    ps.estimator.search_hi_hz = get_num_or(j, "search_hi_hz", -1.0);
    if (j.contains("freeze_estimate")) ps.freeze_estimate = j["freeze_estimate"].get<bool>();
    if (j.contains("lpf")) {
        const auto& f = j["lpf"];
        ps.lpf.passband_hz = get_num_or(f, "passband_hz", ps.lpf.passband_hz);
        ps.lpf.stopband_hz = get_num_or(f, "stopband_hz", ps.lpf.stopband_hz);
        ps.lpf.stopband_atten_db = get_num_or(f, "stopband_atten_db", ps.lpf.stopband_atten_db);
        if (f.contains("num_taps")) ps.lpf.num_taps = get_count(f, "num_taps", where);
    }
    if (j.contains("decimate")) ps.decimate = get_count(j, "decimate", where);
    if (j.contains("spectrum_window"))
        ps.spectrum_window = parse_window(j["spectrum_window"].get<std::string>(), where);
    if (j.contains("guard_bins")) ps.improvement.guard_bins = get_count(j, "guard_bins", where);
    if (j.contains("fit_window_bins"))
        ps.improvement.fit_window_bins = get_count(j, "fit_window_bins", where);
    ps.improvement.range_min_m = get_num_or(j, "range_min_m", ps.improvement.range_min_m);
    ps.improvement.range_max_m = get_num_or(j, "range_max_m", ps.improvement.range_max_m);
    if (j.contains("snr_annulus_bins"))
        ps.snr.annulus_bins = get_count(j, "snr_annulus_bins", where);
    if (j.contains("snr_guard_bins")) ps.snr.peak_guard_bins = get_count(j, "snr_guard_bins", where);
    return ps;
}

json processing_to_json(const ProcessingSettings& ps) {
    json j;
    j["nfft_estimate"] = ps.estimator.nfft;
    j["estimate_window"] = ps.estimator.window == Window::hann ? "hann" : "rect";
    if (ps.estimator.search_lo_hz >= 0.0) j["search_lo_hz"] = ps.estimator.search_lo_hz;
    if (ps.estimator.search_hi_hz >= 0.0) j["search_hi_hz"] = ps.estimator.search_hi_hz;
    j["freeze_estimate"] = ps.freeze_estimate;
    j["lpf"] = {{"passband_hz", ps.lpf.passband_hz},
                {"stopband_hz", ps.lpf.stopband_hz},
                {"stopband_atten_db", ps.lpf.stopband_atten_db},
                {"num_taps", ps.lpf.num_taps}};
    j["decimate"] = ps.decimate;
    j["spectrum_window"] = ps.spectrum_window == Window::hann ? "hann" : "rect";
    j["guard_bins"] = ps.improvement.guard_bins;
    j["fit_window_bins"] = ps.improvement.fit_window_bins;
    j["range_min_m"] = ps.improvement.range_min_m;
    j["range_max_m"] = ps.improvement.range_max_m;
    j["snr_annulus_bins"] = ps.snr.annulus_bins;
    j["snr_guard_bins"] = ps.snr.peak_guard_bins;
    return j;
}

json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error(path.string() + ": " + e.what());
    }
}

} // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
    const json j = parse_file(path);
    const auto base_dir = path.parent_path();
    const std::string where = path.string();
    RunConfig rc;
    auto& cfg = rc.scenario;

    if (!j.contains("geometry")) fail(where, "missing 'geometry' object");
    {
        const auto& g = j["geometry"];
        auto& geo = cfg.geometry;
        geo.sweep_bandwidth_hz = get_num(g, "sweep_bandwidth_hz", where);
        geo.sweep_period_s = get_num(g, "sweep_period_s", where);
        geo.f_if_carrier_hz = get_num(g, "f_if_carrier_hz", where);
        geo.base_fs_hz = get_num(g, "base_fs_hz", where);
        geo.oversample_q = get_num(g, "oversample_q", where);
        geo.samples_per_chirp = get_count(g, "samples_per_chirp", where);
        geo.samples_kept = get_count(g, "samples_kept", where);
        if (g.contains("beat_subtracts")) geo.beat_subtracts = g["beat_subtracts"].get<bool>();
    }
    if (j.contains("rf_constants")) {
        const auto& r = j["rf_constants"];
        RfConstants rf;
        rf.f_rx_hz = get_num(r, "f_rx_hz", where);
        rf.theta_s_rad = get_num_or(r, "theta_s_rad", 0.0);
        rf.theta_r_rad = get_num_or(r, "theta_r_rad", 0.0);
        cfg.rf = rf;
    }
    if (!j.contains("leakage")) fail(where, "missing 'leakage' object");
    {
        const auto& l = j["leakage"];
        cfg.leakage.amplitude_v = get_num(l, "amplitude_v", where);
        cfg.leakage.tau_int_s = get_num(l, "tau_int_s", where);
        cfg.leakage.theta_if_rad = parse_theta(l, cfg, 0.0, where);
    }
    if (j.contains("targets")) {
        for (const auto& t : j["targets"]) {
            TargetSpec ts;
            ts.amplitude_v = get_num(t, "amplitude_v", where);
            ts.range_m = get_num(t, "range_m", where);
            ts.theta_if_rad = parse_theta(t, cfg, 2.0 * ts.range_m / kSpeedOfLight, where);
            cfg.targets.push_back(ts);
        }
    }
    if (j.contains("noise")) {
        const auto& n = j["noise"];
        cfg.noise.enabled = n.contains("enabled") ? n["enabled"].get<bool>() : true;
        cfg.noise.lfm = parse_psd(n, "lfm_psd", base_dir, where);
        cfg.noise.tx_lo = parse_psd(n, "tx_lo_psd", base_dir, where);
        cfg.noise.rx_lo = parse_psd(n, "rx_lo_psd", base_dir, where);
        cfg.noise.tx_lo_delay_s = get_num_or(n, "tx_lo_delay_s", -1.0);
        cfg.noise.rx_lo_delay_s = get_num_or(n, "rx_lo_delay_s", -1.0);
        if (n.contains("awgn")) {
            const auto& a = n["awgn"];
            cfg.noise.awgn.enabled = a.contains("enabled") ? a["enabled"].get<bool>() : true;
            cfg.noise.awgn.level_db_hz = get_num_or(a, "level_db_hz", -300.0);
        }
    }
    cfg.n_chirps = j.contains("n_chirps") ? get_count(j, "n_chirps", where) : 1;
    cfg.seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : 0;

    if (j.contains("processing")) rc.processing = parse_processing(j["processing"], where);

    try {
        cfg.validate();
    } catch (const config_error& e) {
        fail(where, e.what());
    }
    return rc;
}

namespace {

json run_config_to_json(const RunConfig& rc) {
    const auto& cfg = rc.scenario;
    json j;
    j["geometry"] = {{"sweep_bandwidth_hz", cfg.geometry.sweep_bandwidth_hz},
                     {"sweep_period_s", cfg.geometry.sweep_period_s},
                     {"f_if_carrier_hz", cfg.geometry.f_if_carrier_hz},
                     {"base_fs_hz", cfg.geometry.base_fs_hz},
                     {"oversample_q", cfg.geometry.oversample_q},
                     {"samples_per_chirp", cfg.geometry.samples_per_chirp},
                     {"samples_kept", cfg.geometry.samples_kept},
                     {"beat_subtracts", cfg.geometry.beat_subtracts}};
    j["leakage"] = {{"amplitude_v", cfg.leakage.amplitude_v},
                    {"tau_int_s", cfg.leakage.tau_int_s},
                    {"theta_if_rad", cfg.leakage.theta_if_rad}};
    j["targets"] = json::array();
    for (const auto& t : cfg.targets)
        j["targets"].push_back({{"amplitude_v", t.amplitude_v},
                                {"range_m", t.range_m},
                                {"theta_if_rad", t.theta_if_rad}});
    j["noise"] = {{"enabled", cfg.noise.enabled},
                  {"lfm_psd_points", profile_to_json(cfg.noise.lfm)},
                  {"tx_lo_psd_points", profile_to_json(cfg.noise.tx_lo)},
                  {"rx_lo_psd_points", profile_to_json(cfg.noise.rx_lo)},
                  {"tx_lo_delay_s", cfg.noise.tx_lo_delay_s},
                  {"rx_lo_delay_s", cfg.noise.rx_lo_delay_s},
                  {"awgn", {{"enabled", cfg.noise.awgn.enabled},
                            {"level_db_hz", cfg.noise.awgn.level_db_hz}}}};
    if (cfg.rf.has_value())
        j["rf_constants"] = {{"f_rx_hz", cfg.rf->f_rx_hz},
                             {"theta_s_rad", cfg.rf->theta_s_rad},
                             {"theta_r_rad", cfg.rf->theta_r_rad}};
    j["n_chirps"] = cfg.n_chirps;
    j["seed"] = cfg.seed;
    j["processing"] = processing_to_json(rc.processing);
    return j;
}

} // namespace

void save_run_config(const RunConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot write config file: " + path.string());
    out << run_config_to_json(config).dump(2) << '\n';
}

ProcessSettings load_process_settings(const std::filesystem::path& path) {
    const json j = parse_file(path);
    const std::string where = path.string();
    ProcessSettings ps;
    ps.f_if_carrier_hz = get_num(j, "f_if_carrier_hz", where);
    ps.alpha_hz_per_s = get_num(j, "alpha_hz_per_s", where);
    ps.f_beat_leakage_hz = get_num_or(j, "f_beat_leakage_hz", -1.0);
    if (j.contains("processing")) ps.processing = parse_processing(j["processing"], where);
    return ps;
}

std::string config_digest(const RunConfig& config) {
    const std::string dump = run_config_to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace spcr
