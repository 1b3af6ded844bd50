#include "adm/reconstruction.hpp"

#include "adm/adaptive.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace adm {

namespace {

void validate_reconstruction_config(const ReconstructionConfig& config,
                                    double sample_rate_hz) {
    if (!(config.v_thu > 0.0) || !(config.v_thd > 0.0)) {
        throw Error(Errc::invalid_config,
                    "reconstruction step sizes must be > 0");
    }
    if (!std::isfinite(config.initial_level)) {
        throw Error(Errc::invalid_config, "initial_level must be finite");
    }
    if (!(config.highpass_cutoff_hz >= 0.0) ||
        config.highpass_cutoff_hz >= sample_rate_hz / 2.0) {
        throw Error(Errc::invalid_cutoff,
                    "highpass cutoff must lie in [0, Nyquist)");
    }
}

} // namespace

Signal reconstruct(const EventStream& events, const ReconstructionConfig& config) {
    if (events.source_length == 0) {
        throw Error(Errc::empty_stream_length,
                    "event stream has zero source length");
    }
    if (!(events.source_sample_rate_hz > 0.0)) {
        throw Error(Errc::invalid_sample_rate,
                    "event stream has non-positive sample rate");
    }
    validate_reconstruction_config(config, events.source_sample_rate_hz);

    Signal out;
    out.sample_rate_hz = events.source_sample_rate_hz;
    out.samples.resize(events.source_length);

    double level = config.initial_level;
    std::size_t next_event = 0;
    for (std::size_t n = 0; n < events.source_length; ++n) {
        if (next_event < events.events.size() &&
            events.events[next_event].index == n) {
            level += events.events[next_event].polarity == Polarity::Up
                         ? config.v_thu
                         : -config.v_thd;
            ++next_event;
        }
        out.samples[n] = level;
    }
    return out;
}

Signal highpass_detrend(const Signal& signal, double cutoff_hz) {
    validate_signal(signal);
    if (!(cutoff_hz > 0.0) || cutoff_hz >= signal.sample_rate_hz / 2.0) {
        throw Error(Errc::invalid_cutoff,
                    "cutoff must lie in (0, Nyquist), got " +
                        std::to_string(cutoff_hz));
    }
    const double tau_s = 1.0 / (2.0 * std::numbers::pi * cutoff_hz);
    const Signal low = lpf_first_order(signal, tau_s, 1.0);

    Signal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.samples.resize(signal.samples.size());
    for (std::size_t n = 0; n < signal.samples.size(); ++n) {
        out.samples[n] = signal.samples[n] - low.samples[n];
    }
    return out;
}

double rmse(const Signal& a, const Signal& b, bool remove_mean) {
    validate_signal(a);
    validate_signal(b);
    if (a.samples.size() != b.samples.size() ||
        a.sample_rate_hz != b.sample_rate_hz) {
        throw Error(Errc::length_mismatch,
                    "rmse inputs must share length and sample rate");
    }
    const auto n = static_cast<double>(a.samples.size());
    double mean_a = 0.0;
    double mean_b = 0.0;
    if (remove_mean) {
        mean_a = std::accumulate(a.samples.begin(), a.samples.end(), 0.0) / n;
        mean_b = std::accumulate(b.samples.begin(), b.samples.end(), 0.0) / n;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const double d = (a.samples[i] - mean_a) - (b.samples[i] - mean_b);
        acc += d * d;
    }
    return std::sqrt(acc / n);
}

double detrended_rmse(const Signal& original, const Signal& reconstructed,
                      double cutoff_hz) {
    if (cutoff_hz == 0.0) {
        return rmse(original, reconstructed);
    }
    return rmse(highpass_detrend(original, cutoff_hz),
                highpass_detrend(reconstructed, cutoff_hz));
}

} // namespace adm
