#pragma once

#include "adm/types.hpp"

namespace adm {

/// Step sizes and drift-removal settings for staircase reconstruction.
/// highpass_cutoff_hz = 0 disables detrending.
struct ReconstructionConfig {
    double v_thu = 0.0;
    double v_thd = 0.0;
    double initial_level = 0.0;
    double highpass_cutoff_hz = 0.0;
};

/// Rebuilds the staircase: the level starts at initial_level, steps by
/// +v_thu at each UP index and -v_thd at each DN index, and is held
/// constant between events (zero-order hold). Output matches the source
/// grid of the stream.
Signal reconstruct(const EventStream& events, const ReconstructionConfig& config);

/// First-order high-pass: the complement of the exponential low-pass with
/// tau = 1 / (2*pi*cutoff_hz). Removes the DC/drift component.
Signal highpass_detrend(const Signal& signal, double cutoff_hz);

/// sqrt(mean((a-b)^2)). Both inputs are mean-removed first by default,
/// since the staircase origin is arbitrary and only shape is compared.
double rmse(const Signal& a, const Signal& b, bool remove_mean = true);

/// Shape error between an original trace and its reconstruction: both are
/// passed through the same high-pass (when cutoff_hz > 0) before rmse(), so
/// drift removal does not penalize the reconstruction for the filter's own
/// phase response.
double detrended_rmse(const Signal& original, const Signal& reconstructed,
                      double cutoff_hz);

} // namespace adm
