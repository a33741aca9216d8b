#include "spcradar/runner.hpp"

#include "spcradar/csv.hpp"
#include "spcradar/errors.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

namespace spcr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    const auto count = static_cast<std::size_t>(jobs);
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct ChirpResult {
    LeakageEstimate estimate;
    bool estimate_reused = false;
    SpectrumResult common;
    SpectrumResult spc;
    double estimation_ms = 0.0;
};

struct PipelineInputs {
    double f_if_carrier_hz = 0.0;
    double alpha_hz_per_s = 0.0;
    /// Alignment shift for the improvement curve; negative derives it from
    /// the first chirp's estimate.
    double f_beat_leakage_hz = -1.0;
};

// Per-chirp processing common to simulate and process. frame_of must be
// thread-safe; results are aggregated in chirp order regardless of
// completion order.
std::vector<ChirpResult> process_chirps(std::size_t n_chirps,
                                        const std::function<IFFrame(std::size_t)>& frame_of,
                                        const ProcessingSettings& ps,
                                        const PipelineInputs& inputs, int jobs) {
    const IFFrame frame0 = frame_of(0);
    const FirFilter lpf(ps.lpf, frame0.fs_hz);

    std::vector<ChirpResult> results(n_chirps);
    std::optional<LeakageEstimate> frozen;
    double frozen_ms = 0.0;
    if (ps.freeze_estimate) {
        const auto t0 = Clock::now();
        frozen = estimate_leakage(frame0, ps.estimator);
        frozen_ms = ms_since(t0);
    }

    parallel_for(n_chirps, jobs, [&](std::size_t c) {
        const IFFrame frame = (c == 0) ? frame0 : frame_of(c);
        ChirpResult& r = results[c];
        if (frozen.has_value()) {
            r.estimate = *frozen;
            r.estimate_reused = c != 0;
            if (c == 0) r.estimation_ms = frozen_ms;
        } else {
            const auto t0 = Clock::now();
            r.estimate = estimate_leakage(frame, ps.estimator);
            r.estimation_ms = ms_since(t0);
        }
        const auto spc_bb = spc_downconvert(frame, r.estimate, lpf, ps.decimate);
        const auto common_bb =
            common_downconvert(frame, inputs.f_if_carrier_hz, lpf, ps.decimate);
        r.spc = bins_to_range(power_spectrum(spc_bb, ps.spectrum_window, spc_bb.samples.size()),
                              inputs.alpha_hz_per_s);
        r.common = bins_to_range(
            power_spectrum(common_bb, ps.spectrum_window, common_bb.samples.size()),
            inputs.alpha_hz_per_s);
    });
    return results;
}

struct AggregateOutputs {
    RunReport report;
    SpectrumResult common_single;
    SpectrumResult spc_single;
};

// Writes spectra + improvement CSVs and fills the report's estimate,
// improvement and timing fields.
AggregateOutputs aggregate(const std::vector<ChirpResult>& results, const ProcessingSettings& ps,
                           const PipelineInputs& inputs, const std::filesystem::path& out_dir) {
    AggregateOutputs agg;
    RunReport& report = agg.report;
    report.n_chirps = results.size();
    for (const auto& r : results) {
        report.estimates.push_back({report.estimates.size(), r.estimate.f_if_beat_leakage_hz,
                                    r.estimate.theta_if_leakage_rad, r.estimate.peak_power_db,
                                    r.estimate_reused});
        report.estimation_ms += r.estimation_ms;
    }

    agg.common_single = results.front().common;
    agg.spc_single = results.front().spc;
    write_spectrum_csv(agg.common_single, out_dir / "spectrum_common_chirp0.csv");
    write_spectrum_csv(agg.spc_single, out_dir / "spectrum_spc_chirp0.csv");
    report.outputs.push_back("spectrum_common_chirp0.csv");
    report.outputs.push_back("spectrum_spc_chirp0.csv");

    SpectrumResult common_use = agg.common_single;
    SpectrumResult spc_use = agg.spc_single;
    if (results.size() > 1) {
        std::vector<SpectrumResult> commons, spcs;
        commons.reserve(results.size());
        spcs.reserve(results.size());
        for (const auto& r : results) {
            commons.push_back(r.common);
            spcs.push_back(r.spc);
        }
        common_use = average_spectra(commons);
        spc_use = average_spectra(spcs);
        write_spectrum_csv(common_use, out_dir / "spectrum_common_avg.csv");
        write_spectrum_csv(spc_use, out_dir / "spectrum_spc_avg.csv");
        report.outputs.push_back("spectrum_common_avg.csv");
        report.outputs.push_back("spectrum_spc_avg.csv");
    }

    double f_beat = inputs.f_beat_leakage_hz;
    if (f_beat < 0.0)
        f_beat = results.front().estimate.f_if_beat_leakage_hz - inputs.f_if_carrier_hz;
    ImprovementOptions iopt = ps.improvement;
    iopt.alpha_hz_per_s = inputs.alpha_hz_per_s;
    const auto curve = improvement_curve(common_use, spc_use, f_beat, iopt);
    write_improvement_csv(curve, out_dir / "improvement.csv");
    report.outputs.push_back("improvement.csv");
    report.has_improvement = true;
    report.improvement_max_db = curve.fit_max_db;
    report.improvement_min_db = curve.fit_min_db;
    report.minor_region_mean_db = curve.minor_region_mean_db;
    return agg;
}

} // namespace

RunReport run_simulate(const RunConfig& config, const SimulateOptions& options) {
    const auto t0 = Clock::now();
    RunConfig rc = config;
    auto& cfg = rc.scenario;
    if (options.seed_override.has_value()) cfg.seed = *options.seed_override;
    if (options.freeze_override.has_value()) rc.processing.freeze_estimate = *options.freeze_override;
    cfg.validate();

    PlanOptions plan_opts;
    plan_opts.max_range_m = rc.processing.improvement.range_max_m;
    const auto plan = validate_plan(cfg.geometry, plan_opts);
    if (!plan.pass() && !options.force_plan) {
        std::string msg = "frequency plan validation failed:";
        for (const auto& c : plan.checks)
            if (!c.pass) msg += "\n  " + c.name + ": " + c.detail;
        throw plan_error(msg);
    }

    std::filesystem::create_directories(options.out_dir);

    const auto& g = cfg.geometry;
    std::optional<PhaseNoiseSet> noise;
    if (cfg.noise.enabled)
        noise = make_phase_noise_set(cfg, cfg.n_chirps * g.samples_per_chirp);
    const FrameSynthesizer synth(cfg, noise ? &*noise : nullptr);

    // With frame dumping on, processing runs on the same format-quantized
    // samples the capture file stores, so `process` reproduces this run's
    // CSVs bit-exactly.
    CaptureHeader header;
    header.fs_hz = g.fs_hz();
    header.samples_per_chirp = g.samples_per_chirp;
    header.samples_to_discard = g.samples_discarded();
    header.n_chirps = cfg.n_chirps;
    std::vector<std::vector<double>> dumped(options.dump_frames ? cfg.n_chirps : 0);

    auto frame_of = [&](std::size_t c) {
        if (!options.dump_frames) return synth.frame(c);
        auto raw = synth.raw_chirp(c);
        for (auto& v : raw) v = format_roundtrip(v, header);
        IFFrame frame;
        frame.fs_hz = g.fs_hz();
        frame.chirp_index = c;
        frame.geometry = g;
        frame.samples.assign(raw.begin() + static_cast<std::ptrdiff_t>(g.samples_discarded()),
                             raw.end());
        dumped[c] = std::move(raw);
        return frame;
    };

    PipelineInputs inputs;
    inputs.f_if_carrier_hz = g.f_if_carrier_hz;
    inputs.alpha_hz_per_s = g.slope_hz_per_s();
    inputs.f_beat_leakage_hz = g.slope_hz_per_s() * cfg.leakage.tau_int_s;

    const auto results =
        process_chirps(cfg.n_chirps, frame_of, rc.processing, inputs, options.jobs);
    auto agg = aggregate(results, rc.processing, inputs, options.out_dir);
    RunReport& report = agg.report;
    report.config_digest = config_digest(rc);
    report.seed = cfg.seed;

    // Target SNRs per method from the single-chirp spectra.
    for (const auto& t : cfg.targets) {
        const double f_t = target_beat_hz(g, t.range_m);
        const double f_c = inputs.f_beat_leakage_hz + f_t;
        const double slack = 3.0 * agg.spc_single.bin_hz;
        TargetSnrRecord rec;
        rec.range_m = t.range_m;
        rec.bin_spc = find_peak_bin(agg.spc_single, f_t - slack, f_t + slack);
        rec.bin_common = find_peak_bin(agg.common_single, f_c - slack, f_c + slack);
        rec.snr_spc_db = measure_snr(agg.spc_single, rec.bin_spc, rc.processing.snr);
        rec.snr_common_db = measure_snr(agg.common_single, rec.bin_common, rc.processing.snr);
        report.target_snr.push_back(rec);
    }

    if (options.dump_frames) {
        std::vector<double> all;
        all.reserve(cfg.n_chirps * g.samples_per_chirp);
        for (const auto& chirp : dumped) all.insert(all.end(), chirp.begin(), chirp.end());
        write_capture(options.out_dir / "capture.raw", header, all);
        save_capture_header(header, options.out_dir / "capture_header.json");
        report.outputs.push_back("capture.raw");
        report.outputs.push_back("capture_header.json");
    }

    report.total_ms = ms_since(t0);
    write_report(report, options.out_dir / "report.json");
    report.outputs.push_back("report.json");
    return report;
}

RunReport run_process(const std::filesystem::path& capture_path,
                      const std::filesystem::path& header_path, const ProcessSettings& settings,
                      const ProcessOptions& options) {
    const auto t0 = Clock::now();
    const auto header = load_capture_header(header_path);
    const auto samples = read_capture(capture_path, header);
    std::filesystem::create_directories(options.out_dir);

    const std::size_t kept = header.samples_per_chirp - header.samples_to_discard;
    auto frame_of = [&](std::size_t c) {
        IFFrame frame;
        frame.fs_hz = header.fs_hz;
        frame.chirp_index = c;
        const auto begin = samples.begin() +
                           static_cast<std::ptrdiff_t>(c * header.samples_per_chirp +
                                                       header.samples_to_discard);
        frame.samples.assign(begin, begin + static_cast<std::ptrdiff_t>(kept));
        return frame;
    };

    PipelineInputs inputs;
    inputs.f_if_carrier_hz = settings.f_if_carrier_hz;
    inputs.alpha_hz_per_s = settings.alpha_hz_per_s;
    inputs.f_beat_leakage_hz = settings.f_beat_leakage_hz;

    const auto results =
        process_chirps(header.n_chirps, frame_of, settings.processing, inputs, options.jobs);
    auto agg = aggregate(results, settings.processing, inputs, options.out_dir);
    RunReport& report = agg.report;
    report.config_digest = "capture";
    report.total_ms = ms_since(t0);
    write_report(report, options.out_dir / "report.json");
    report.outputs.push_back("report.json");
    return report;
}

} // namespace spcr
