#pragma once

#include "adm/reconstruction.hpp"
#include "adm/synthesis.hpp"
#include "adm/types.hpp"

#include <cstddef>
#include <vector>

namespace adm {

// reconstruction.v_thu / v_thd are overridden per cell by the swept v_th;
// the struct supplies initial_level and the detrend cutoff.
struct SweepGrid {
    std::vector<double> v_th_values;
    std::vector<double> t_rfr_values_s;
    SynthSpec signal_spec;
    ReconstructionConfig reconstruction;
};

struct SweepRecord {
    double v_th = 0.0;
    double t_rfr_s = 0.0;
    double rmse = 0.0;
    std::size_t event_count = 0;
    double event_rate_hz = 0.0;
};

// 16 thresholds log-spaced over two decades, refractory rows from free
// running to strongly binding, one canonical sine shared by every cell.
SweepGrid default_sweep_grid();

// Synthesizes the grid signal once, then encodes and reconstructs per cell.
// Cells run concurrently; records come back in grid order (t_rfr outer,
// v_th inner) regardless of scheduling.
std::vector<SweepRecord> rmse_sweep(const SweepGrid& grid);

SweepRecord find_min_rmse(const std::vector<SweepRecord>& records);

struct RatePoint {
    double amplitude = 0.0;
    double frequency_hz = 0.0;
    double v_th = 0.0;
    double predictor = 0.0;
    double measured_rate_hz = 0.0;
};

struct RateModelFit {
    double k = 0.0;
    double r_squared = 0.0;
    std::vector<RatePoint> points;
};

// Measures event rate for every (amplitude, frequency, v_th) sine and fits
// rate = k * (A * f / v_th) through the origin.
RateModelFit rate_model_fit(const std::vector<double>& amplitudes,
                            const std::vector<double>& frequencies,
                            const std::vector<double>& v_th_values,
                            double t_rfr_s, const SynthSpec& spec_template);

} // namespace adm
