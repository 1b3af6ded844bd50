#include "adm/sweep.hpp"

#include "adm/encoder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace adm {

namespace {

void validate_grid(const SweepGrid& grid) {
    if (grid.v_th_values.empty() || grid.t_rfr_values_s.empty()) {
        throw Error(Errc::invalid_config, "sweep grids must be non-empty");
    }
    for (std::size_t i = 0; i < grid.v_th_values.size(); ++i) {
        const double v = grid.v_th_values[i];
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(Errc::non_positive_threshold,
                        "swept v_th must be > 0", i);
        }
    }
    for (std::size_t i = 0; i < grid.t_rfr_values_s.size(); ++i) {
        const double t = grid.t_rfr_values_s[i];
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw Error(Errc::invalid_config, "swept t_rfr must be >= 0", i);
        }
    }
    if (!std::is_sorted(grid.v_th_values.begin(), grid.v_th_values.end()) ||
        !std::is_sorted(grid.t_rfr_values_s.begin(),
                        grid.t_rfr_values_s.end())) {
        throw Error(Errc::invalid_config, "sweep grids must be sorted");
    }
}

SweepRecord run_cell(const Signal& signal, double v_th, double t_rfr_s,
                     const ReconstructionConfig& reconstruction) {
    const AdmConfig config(v_th, v_th, t_rfr_s);
    const EventStream stream = encode(signal, config);

    ReconstructionConfig cell = reconstruction;
    cell.v_thu = v_th;
    cell.v_thd = v_th;
    const Signal rebuilt = reconstruct(stream, cell);

    SweepRecord record;
    record.v_th = v_th;
    record.t_rfr_s = t_rfr_s;
    record.rmse = detrended_rmse(signal, rebuilt, cell.highpass_cutoff_hz);
    record.event_count = stream.events.size();
    record.event_rate_hz = stream.event_rate_hz();
    return record;
}

} // namespace

SweepGrid default_sweep_grid() {
    SweepGrid grid;
    grid.v_th_values.resize(16);
    for (std::size_t i = 0; i < grid.v_th_values.size(); ++i) {
        grid.v_th_values[i] =
            std::pow(10.0, -2.0 + 2.0 * static_cast<double>(i) / 15.0);
    }
    grid.t_rfr_values_s = {0.0, 0.1e-3, 0.5e-3, 1.0e-3, 2.0e-3};

    grid.signal_spec.kind = SignalKind::sine;
    grid.signal_spec.amplitude = 1.0;
    grid.signal_spec.frequency_hz = 50.0;
    grid.signal_spec.duration_s = 0.5;
    grid.signal_spec.sample_rate_hz = 100000.0;
    grid.signal_spec.gain_db = 0.0;

    grid.reconstruction.initial_level = 0.0;
    grid.reconstruction.highpass_cutoff_hz =
        grid.signal_spec.frequency_hz / 20.0;
    return grid;
}

std::vector<SweepRecord> rmse_sweep(const SweepGrid& grid) {
    validate_grid(grid);
    const Signal signal = synthesize(grid.signal_spec);

    struct Cell {
        double v_th;
        double t_rfr_s;
    };
    std::vector<Cell> cells;
    cells.reserve(grid.v_th_values.size() * grid.t_rfr_values_s.size());
    for (const double t_rfr_s : grid.t_rfr_values_s) {
        for (const double v_th : grid.v_th_values) {
            cells.push_back({v_th, t_rfr_s});
        }
    }

    std::vector<SweepRecord> records(cells.size());
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers =
        std::min<std::size_t>(cells.size(), hw == 0 ? 1 : hw);

    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) {
                return;
            }
            records[i] = run_cell(signal, cells[i].v_th, cells[i].t_rfr_s,
                                  grid.reconstruction);
        }
    };

    if (workers <= 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(drain);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    return records;
}

SweepRecord find_min_rmse(const std::vector<SweepRecord>& records) {
    if (records.empty()) {
        throw Error(Errc::empty_records, "no sweep records to search");
    }
    const SweepRecord* best = &records.front();
    for (const SweepRecord& record : records) {
        const bool better =
            record.rmse < best->rmse ||
            (record.rmse == best->rmse &&
             (record.v_th < best->v_th ||
              (record.v_th == best->v_th && record.t_rfr_s < best->t_rfr_s)));
        if (better) {
            best = &record;
        }
    }
    return *best;
}

RateModelFit rate_model_fit(const std::vector<double>& amplitudes,
                            const std::vector<double>& frequencies,
                            const std::vector<double>& v_th_values,
                            double t_rfr_s, const SynthSpec& spec_template) {
    if (amplitudes.empty() || frequencies.empty() || v_th_values.empty()) {
        throw Error(Errc::invalid_config, "rate fit grids must be non-empty");
    }
    if (!(t_rfr_s >= 0.0) || !std::isfinite(t_rfr_s)) {
        throw Error(Errc::invalid_config, "t_rfr must be >= 0");
    }

    RateModelFit fit;
    fit.points.reserve(amplitudes.size() * frequencies.size() *
                       v_th_values.size());
    for (const double amplitude : amplitudes) {
        for (const double frequency_hz : frequencies) {
            for (const double v_th : v_th_values) {
                SynthSpec spec = spec_template;
                spec.kind = SignalKind::sine;
                spec.amplitude = amplitude;
                spec.frequency_hz = frequency_hz;
                const Signal signal = synth_sine(spec);
                const EventStream stream =
                    encode(signal, AdmConfig(v_th, v_th, t_rfr_s));

                RatePoint point;
                point.amplitude = amplitude;
                point.frequency_hz = frequency_hz;
                point.v_th = v_th;
                point.predictor = amplitude * frequency_hz / v_th;
                point.measured_rate_hz = stream.event_rate_hz();
                fit.points.push_back(point);
            }
        }
    }

    if (t_rfr_s > 0.0) {
        for (const RatePoint& point : fit.points) {
            if (point.measured_rate_hz >= 0.5 / t_rfr_s) {
                throw Error(Errc::saturated_regime,
                            "measured rate too close to the refractory cap");
            }
        }
    }

    double sum_xy = 0.0;
    double sum_xx = 0.0;
    double sum_y = 0.0;
    for (const RatePoint& point : fit.points) {
        sum_xy += point.predictor * point.measured_rate_hz;
        sum_xx += point.predictor * point.predictor;
        sum_y += point.measured_rate_hz;
    }
    fit.k = sum_xy / sum_xx;

    const double mean_y = sum_y / static_cast<double>(fit.points.size());
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (const RatePoint& point : fit.points) {
        const double predicted = fit.k * point.predictor;
        ss_res += (point.measured_rate_hz - predicted) *
                  (point.measured_rate_hz - predicted);
        ss_tot += (point.measured_rate_hz - mean_y) *
                  (point.measured_rate_hz - mean_y);
    }
    fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

} // namespace adm
