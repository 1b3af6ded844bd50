#include "adm/synthesis.hpp"

#include "adm/adaptive.hpp"
#include "adm/reconstruction.hpp"

#include <cmath>
#include <numbers>

namespace adm {

namespace {

// First-order band edges are too shallow on their own; four identical
// sections per edge keep the out-of-band leakage small.
constexpr int band_edge_sections = 4;

std::size_t sample_count(const SynthSpec& spec) {
    return static_cast<std::size_t>(
        std::llround(spec.duration_s * spec.sample_rate_hz));
}

void validate_common(const SynthSpec& spec) {
    if (!(spec.sample_rate_hz > 0.0) || !std::isfinite(spec.sample_rate_hz)) {
        throw Error(Errc::invalid_spec, "sample_rate_hz must be > 0");
    }
    if (!(spec.duration_s > 0.0) || !std::isfinite(spec.duration_s)) {
        throw Error(Errc::invalid_spec, "duration_s must be > 0");
    }
    if (sample_count(spec) == 0) {
        throw Error(Errc::invalid_spec,
                    "duration_s too short for one sample at sample_rate_hz");
    }
    if (!(spec.amplitude > 0.0) || !std::isfinite(spec.amplitude)) {
        throw Error(Errc::invalid_spec, "amplitude must be > 0");
    }
    if (!std::isfinite(spec.gain_db)) {
        throw Error(Errc::invalid_spec, "gain_db must be finite");
    }
}

void validate_band(const SynthSpec& spec) {
    const double nyquist = spec.sample_rate_hz / 2.0;
    if (!(spec.band_low_hz > 0.0) || !(spec.band_high_hz > spec.band_low_hz) ||
        !(spec.band_high_hz < nyquist)) {
        throw Error(Errc::invalid_spec,
                    "band must satisfy 0 < low < high < Nyquist");
    }
}

void validate_bursts(const SynthSpec& spec, std::size_t n_samples) {
    for (std::size_t i = 0; i < spec.bursts.size(); ++i) {
        const BurstSpec& burst = spec.bursts[i];
        if (!(burst.start_s >= 0.0) || !(burst.duration_s > 0.0) ||
            !std::isfinite(burst.start_s) || !std::isfinite(burst.duration_s)) {
            throw Error(Errc::invalid_spec, "burst times must be >= 0", i);
        }
        if (!(burst.amplitude > 0.0) || !std::isfinite(burst.amplitude)) {
            throw Error(Errc::invalid_spec, "burst amplitude must be > 0", i);
        }
        if (burst.center_hz < spec.band_low_hz ||
            burst.center_hz > spec.band_high_hz) {
            throw Error(Errc::invalid_spec, "burst center outside the band", i);
        }
        const auto start = static_cast<std::size_t>(
            std::llround(burst.start_s * spec.sample_rate_hz));
        const auto length = static_cast<std::size_t>(
            std::llround(burst.duration_s * spec.sample_rate_hz));
        if (length == 0 || start + length > n_samples) {
            throw Error(Errc::invalid_spec,
                        "burst does not fit within duration_s", i);
        }
    }
}

void apply_gain(Signal& signal, double gain_db) {
    const double gain = db_to_gain(gain_db);
    for (double& sample : signal.samples) {
        sample *= gain;
    }
}

double edge_tau(double cutoff_hz) {
    return 1.0 / (2.0 * std::numbers::pi * cutoff_hz);
}

// Background generator shared by the two noise kinds: seeded Gaussian
// samples, band-pass, then exact scaling to the requested RMS.
Signal raw_band_noise(const SynthSpec& spec) {
    Signal noise;
    noise.sample_rate_hz = spec.sample_rate_hz;
    noise.samples.resize(sample_count(spec));

    GaussianSource source(spec.seed);
    for (double& sample : noise.samples) {
        sample = source.next();
    }
    for (int pass = 0; pass < band_edge_sections; ++pass) {
        noise = highpass_detrend(noise, spec.band_low_hz);
    }
    for (int pass = 0; pass < band_edge_sections; ++pass) {
        noise = lpf_first_order(noise, edge_tau(spec.band_high_hz), 1.0);
    }

    double acc = 0.0;
    for (const double sample : noise.samples) {
        acc += sample * sample;
    }
    const double measured_rms =
        std::sqrt(acc / static_cast<double>(noise.samples.size()));
    const double scale = spec.amplitude / measured_rms;
    for (double& sample : noise.samples) {
        sample *= scale;
    }
    return noise;
}

void add_bursts(Signal& out, const SynthSpec& spec) {
    for (const BurstSpec& burst : spec.bursts) {
        const auto start = static_cast<std::size_t>(
            std::llround(burst.start_s * spec.sample_rate_hz));
        const auto length = static_cast<std::size_t>(
            std::llround(burst.duration_s * spec.sample_rate_hz));
        for (std::size_t k = 0; k < length; ++k) {
            // Half-sample-shifted Hann keeps every sample of the burst
            // window nonzero.
            const double window = std::sin(std::numbers::pi * (k + 0.5) /
                                           static_cast<double>(length));
            const double t = static_cast<double>(k) / spec.sample_rate_hz;
            out.samples[start + k] +=
                burst.amplitude * window * window *
                std::cos(2.0 * std::numbers::pi * burst.center_hz * t);
        }
    }
}

} // namespace

SignalKind signal_kind_from_string(const std::string& name) {
    if (name == "sine") {
        return SignalKind::sine;
    }
    if (name == "band_noise") {
        return SignalKind::band_noise;
    }
    if (name == "hfo_composite") {
        return SignalKind::hfo_composite;
    }
    throw Error(Errc::invalid_spec, "unknown signal kind: " + name);
}

const char* to_string(SignalKind kind) {
    switch (kind) {
    case SignalKind::sine:
        return "sine";
    case SignalKind::band_noise:
        return "band_noise";
    case SignalKind::hfo_composite:
        return "hfo_composite";
    }
    throw Error(Errc::invalid_spec, "unknown signal kind");
}

double db_to_gain(double gain_db) {
    return std::pow(10.0, gain_db / 20.0);
}

double GaussianSource::uniform_open() {
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianSource::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform_open();
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

Signal synth_sine(const SynthSpec& spec) {
    validate_common(spec);
    if (!(spec.frequency_hz > 0.0) ||
        !(spec.frequency_hz < spec.sample_rate_hz / 2.0)) {
        throw Error(Errc::invalid_spec,
                    "frequency_hz must lie in (0, Nyquist)");
    }

    Signal out;
    out.sample_rate_hz = spec.sample_rate_hz;
    out.samples.resize(sample_count(spec));
    for (std::size_t n = 0; n < out.samples.size(); ++n) {
        const double t = static_cast<double>(n) / spec.sample_rate_hz;
        out.samples[n] = spec.amplitude *
                         std::sin(2.0 * std::numbers::pi * spec.frequency_hz * t);
    }
    apply_gain(out, spec.gain_db);
    return out;
}

Signal synth_band_noise(const SynthSpec& spec) {
    validate_common(spec);
    validate_band(spec);
    Signal out = raw_band_noise(spec);
    apply_gain(out, spec.gain_db);
    return out;
}

Signal synth_hfo_composite(const SynthSpec& spec) {
    validate_common(spec);
    validate_band(spec);
    validate_bursts(spec, sample_count(spec));
    Signal out = raw_band_noise(spec);
    add_bursts(out, spec);
    apply_gain(out, spec.gain_db);
    return out;
}

Signal synthesize(const SynthSpec& spec) {
    switch (spec.kind) {
    case SignalKind::sine:
        return synth_sine(spec);
    case SignalKind::band_noise:
        return synth_band_noise(spec);
    case SignalKind::hfo_composite:
        return synth_hfo_composite(spec);
    }
    throw Error(Errc::invalid_spec, "unknown signal kind");
}

SynthSpec default_hfo_composite() {
    SynthSpec spec;
    spec.kind = SignalKind::hfo_composite;
    spec.amplitude = 1.0;
    spec.band_low_hz = 80.0;
    spec.band_high_hz = 250.0;
    spec.duration_s = 10.0;
    spec.sample_rate_hz = 2000.0;
    spec.seed = 41;
    spec.gain_db = 0.0;
    spec.bursts = {
        {2.5, 0.20, 120.0, 12.0}, {3.8, 0.25, 150.0, 12.0},
        {5.2, 0.20, 100.0, 12.0}, {6.5, 0.25, 180.0, 12.0},
        {8.0, 0.20, 130.0, 12.0}, {9.1, 0.25, 160.0, 12.0},
    };
    return spec;
}

} // namespace adm
