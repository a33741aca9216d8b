#include "spcradar/csv.hpp"
#include "spcradar/diagnostics.hpp"
#include "spcradar/errors.hpp"
#include "spcradar/noise.hpp"
#include "spcradar/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPlan = 3;
constexpr int kExitCaptureSize = 4;
constexpr int kExitCaptureIo = 5;

spcr::PsdProfile load_profile_arg(const std::string& arg) {
    if (arg.empty() || arg == "default") return spcr::PsdProfile::default_profile();
    if (arg == "silent") return spcr::PsdProfile::silent();
    return spcr::PsdProfile::load_csv(arg);
}

int cmd_simulate(const std::string& config_path, const spcr::SimulateOptions& options) {
    const auto config = spcr::load_run_config(config_path);
    const auto report = spcr::run_simulate(config, options);
    std::printf("simulate: %zu chirp(s), estimate f=%.2f Hz theta=%.6f rad\n", report.n_chirps,
                report.estimates.front().f_hz, report.estimates.front().theta_rad);
    if (report.has_improvement)
        std::printf("improvement fit: max %.2f dB, min %.2f dB\n", report.improvement_max_db,
                    report.improvement_min_db);
    for (const auto& t : report.target_snr)
        std::printf("target @ %.1f m: SNR common %.2f dB, SPC %.2f dB\n", t.range_m,
                    t.snr_common_db, t.snr_spc_db);
    std::printf("report: %s\n", (options.out_dir / "report.json").string().c_str());
    return 0;
}

int cmd_process(const std::string& capture, const std::string& header,
                const std::string& settings_path, const spcr::ProcessOptions& options) {
    const auto settings = spcr::load_process_settings(settings_path);
    const auto report = spcr::run_process(capture, header, settings, options);
    std::printf("process: %zu chirp(s), estimate f=%.2f Hz theta=%.6f rad\n", report.n_chirps,
                report.estimates.front().f_hz, report.estimates.front().theta_rad);
    std::printf("report: %s\n", (options.out_dir / "report.json").string().c_str());
    return 0;
}

int cmd_fig6(const std::string& psd, double f0, double amplitude, double fs, std::size_t n,
             std::size_t trials, std::size_t buckets, std::uint64_t seed,
             const std::string& out) {
    const auto profile = load_profile_arg(psd);
    const auto stats =
        spcr::stationary_point_demo(profile, f0, amplitude, fs, n, trials, seed, buckets);
    if (stats.rms_phase_rad >= 0.1)
        std::fprintf(stderr,
                     "warning: RMS phase %.3f rad exceeds the first-order regime (0.1 rad)\n",
                     stats.rms_phase_rad);
    spcr::write_buckets_csv(stats, out);
    std::printf("wrote %zu buckets to %s (rms phase %.4f rad)\n",
                stats.bucket_centers_rad.size(), out.c_str(), stats.rms_phase_rad);
    return 0;
}

int cmd_plan_check(const std::string& config_path, const spcr::PlanOptions& plan_options) {
    const auto config = spcr::load_run_config(config_path);
    const auto report = spcr::validate_plan(config.scenario.geometry, plan_options);
    for (const auto& c : report.checks)
        std::printf("[%s] %s: %s (margin %.1f Hz)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str(), c.margin_hz);
    return report.pass() ? 0 : kExitPlan;
}

int cmd_psd_check(const std::string& psd, std::size_t n, double fs, std::size_t segment,
                  std::size_t realizations, std::uint64_t seed, double tol_db) {
    const auto profile = load_profile_arg(psd);
    std::vector<double> acc;
    spcr::PsdEstimate est;
    for (std::size_t r = 0; r < realizations; ++r) {
        const auto noise = spcr::synthesize_noise(profile, n, fs, seed + r);
        est = spcr::estimate_psd(noise, segment);
        if (acc.empty()) acc.assign(est.level_dbc_hz.size(), 0.0);
        for (std::size_t b = 0; b < acc.size(); ++b)
            acc[b] += std::pow(10.0, est.level_dbc_hz[b] / 10.0);
    }
    double worst = 0.0;
    std::printf("offset_hz,target_dbc_hz,estimated_dbc_hz,dev_db\n");
    for (const auto& pt : profile.points()) {
        if (pt.offset_hz <= fs / static_cast<double>(segment) || pt.offset_hz >= fs / 2.0)
            continue;
        const auto bin =
            static_cast<std::size_t>(std::llround(pt.offset_hz / (fs / static_cast<double>(segment))));
        if (bin >= acc.size()) continue;
        const double level =
            10.0 * std::log10(acc[bin] / static_cast<double>(realizations));
        const double dev = level - pt.level_dbc_hz;
        worst = std::max(worst, std::fabs(dev));
        std::printf("%g,%g,%.2f,%.2f\n", pt.offset_hz, pt.level_dbc_hz, level, dev);
    }
    std::printf("worst in-band deviation: %.2f dB (tolerance %.2f dB)\n", worst, tol_db);
    return worst <= tol_db ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heterodyne FMCW leakage-mitigation simulator and DSP pipeline"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Synthesize a scenario and process both paths");
    std::string sim_config, sim_out;
    spcr::SimulateOptions sim_opts;
    std::int64_t seed_override = -1;
    bool freeze_flag = false, no_freeze_flag = false;
    sim->add_option("--config", sim_config, "Run configuration JSON")->required();
    sim->add_option("--out", sim_out, "Output directory")->required();
    sim->add_option("--jobs", sim_opts.jobs, "Parallel chirp workers");
    sim->add_option("--seed-override", seed_override, "Replace the config seed");
    sim->add_flag("--freeze-estimate", freeze_flag, "Estimate once and reuse for all chirps");
    sim->add_flag("--per-chirp-estimate", no_freeze_flag, "Re-estimate on every chirp");
    sim->add_flag("--dump-frames", sim_opts.dump_frames,
                  "Write the synthesized IF capture (and process its quantized samples)");
    sim->add_flag("--force", sim_opts.force_plan, "Proceed despite plan-check failures");

    // process
    auto* proc = app.add_subcommand("process", "Process a recorded IF capture");
    std::string proc_capture, proc_header, proc_settings, proc_out;
    spcr::ProcessOptions proc_opts;
    proc->add_option("--capture", proc_capture, "Raw sample file")->required();
    proc->add_option("--header", proc_header, "Capture header JSON")->required();
    proc->add_option("--settings", proc_settings, "Processing settings JSON")->required();
    proc->add_option("--out", proc_out, "Output directory")->required();
    proc->add_option("--jobs", proc_opts.jobs, "Parallel chirp workers");

    // fig6
    auto* fig6 = app.add_subcommand("fig6", "Stationary-point time-domain demonstration");
    std::string f6_psd = "default", f6_out = "fig6.csv";
    double f6_f0 = 10e3, f6_amp = 1.0, f6_fs = 10e6;
    std::size_t f6_n = 8192, f6_trials = 1000, f6_buckets = 64;
    std::uint64_t f6_seed = 1;
    fig6->add_option("--psd", f6_psd, "PSD profile CSV, 'default', or 'silent'");
    fig6->add_option("--f0", f6_f0, "Tone frequency [Hz]");
    fig6->add_option("--amplitude", f6_amp, "Tone amplitude [V]");
    fig6->add_option("--fs", f6_fs, "Sampling rate [Hz]");
    fig6->add_option("--samples", f6_n, "Samples per trial");
    fig6->add_option("--trials", f6_trials, "Number of averaged trials");
    fig6->add_option("--buckets", f6_buckets, "Phase buckets over [0, 2pi)");
    fig6->add_option("--seed", f6_seed, "Base seed");
    fig6->add_option("--out", f6_out, "Output CSV path");

    // plan-check
    auto* plan = app.add_subcommand("plan-check", "Validate the frequency plan of a config");
    std::string plan_config;
    spcr::PlanOptions plan_opts;
    plan->add_option("--config", plan_config, "Run configuration JSON")->required();
    plan->add_option("--max-undersampling", plan_opts.max_undersampling_n,
                     "Largest bandpass-sampling index N for the (4N+1)/4 grid");
    plan->add_option("--tolerance", plan_opts.placement_tol_hz, "Carrier placement tolerance [Hz]");
    plan->add_option("--max-range", plan_opts.max_range_m, "Required maximum range [m]");

    // psd-check
    auto* psdchk = app.add_subcommand("psd-check", "Round-trip a PSD profile through synthesis");
    std::string pc_psd = "default";
    std::size_t pc_n = 1 << 16, pc_segment = 4096, pc_real = 50;
    double pc_fs = 10e6, pc_tol = 2.0;
    std::uint64_t pc_seed = 1;
    psdchk->add_option("--psd", pc_psd, "PSD profile CSV, 'default', or 'silent'");
    psdchk->add_option("--samples", pc_n, "Samples per realization");
    psdchk->add_option("--fs", pc_fs, "Sampling rate [Hz]");
    psdchk->add_option("--segment", pc_segment, "Periodogram segment length");
    psdchk->add_option("--realizations", pc_real, "Realizations to average");
    psdchk->add_option("--seed", pc_seed, "Base seed");
    psdchk->add_option("--tol", pc_tol, "In-band tolerance [dB]");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            sim_opts.out_dir = sim_out;
            if (seed_override >= 0)
                sim_opts.seed_override = static_cast<std::uint64_t>(seed_override);
            if (freeze_flag) sim_opts.freeze_override = true;
            if (no_freeze_flag) sim_opts.freeze_override = false;
            return cmd_simulate(sim_config, sim_opts);
        }
        if (proc->parsed()) {
            proc_opts.out_dir = proc_out;
            return cmd_process(proc_capture, proc_header, proc_settings, proc_opts);
        }
        if (fig6->parsed())
            return cmd_fig6(f6_psd, f6_f0, f6_amp, f6_fs, f6_n, f6_trials, f6_buckets, f6_seed,
                            f6_out);
        if (plan->parsed()) return cmd_plan_check(plan_config, plan_opts);
        if (psdchk->parsed())
            return cmd_psd_check(pc_psd, pc_n, pc_fs, pc_segment, pc_real, pc_seed, pc_tol);
    } catch (const spcr::plan_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPlan;
    } catch (const spcr::capture_size_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCaptureSize;
    } catch (const spcr::capture_io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCaptureIo;
    } catch (const spcr::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
