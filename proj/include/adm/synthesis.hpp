#pragma once

#include "adm/types.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace adm {

enum class SignalKind { sine, band_noise, hfo_composite };

SignalKind signal_kind_from_string(const std::string& name);
const char* to_string(SignalKind kind);

// One windowed tone added on top of the background, times in seconds
// relative to the start of the trace.
struct BurstSpec {
    double start_s = 0.0;
    double duration_s = 0.0;
    double center_hz = 0.0;
    double amplitude = 0.0;
};

// amplitude means peak amplitude for sine and target RMS for the noise
// kinds; gain_db is applied last to the whole trace.
struct SynthSpec {
    SignalKind kind = SignalKind::sine;
    double amplitude = 1.0;
    double frequency_hz = 100.0;
    double band_low_hz = 80.0;
    double band_high_hz = 250.0;
    double duration_s = 1.0;
    double sample_rate_hz = 2000.0;
    std::uint64_t seed = 1;
    double gain_db = 0.0;
    std::vector<BurstSpec> bursts;
};

double db_to_gain(double gain_db);

// Standard-normal stream built from mt19937_64 bits via Box-Muller;
// std::normal_distribution is implementation-defined, this is not.
class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next();

  private:
    double uniform_open();

    std::mt19937_64 rng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

Signal synth_sine(const SynthSpec& spec);
Signal synth_band_noise(const SynthSpec& spec);
Signal synth_hfo_composite(const SynthSpec& spec);
Signal synthesize(const SynthSpec& spec);

// Burst-over-background trace used by the adaptive-threshold demos.
SynthSpec default_hfo_composite();

} // namespace adm
