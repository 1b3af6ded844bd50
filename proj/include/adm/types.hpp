#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adm {

/// Error codes for every failure the library can report. The CLI maps
/// io_error to exit code 2 and everything else to exit code 1.
enum class Errc {
    empty_signal,
    non_finite_sample,
    invalid_sample_rate,
    invalid_config,
    invalid_gain_code,
    length_mismatch,
    non_positive_threshold,
    invalid_cutoff,
    empty_stream_length,
    empty_records,
    saturated_regime,
    invalid_spec,
    parse_error,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    Error(Errc code, const std::string& message, std::size_t index)
        : std::runtime_error(message), code_(code), index_(index) {}

    Errc code() const noexcept { return code_; }
    /// Offending sample index or input line number, when one exists.
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    Errc code_;
    std::optional<std::size_t> index_;
};

/// Uniformly sampled real-valued trace. Values are dimensionless; any
/// physical scaling (e.g. LNA gain) happens in synthesis.
struct Signal {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
    double duration_s() const noexcept {
        return static_cast<double>(samples.size()) / sample_rate_hz;
    }
};

/// Throws unless all Signal invariants hold: positive sample rate,
/// non-empty, all samples finite.
void validate_signal(const Signal& signal);

enum class Polarity : std::uint8_t { Up, Dn };

/// One threshold-crossing pulse. Timestamps are sample indices; seconds
/// are derived as index / sample_rate_hz at I/O boundaries only.
struct Event {
    std::size_t index = 0;
    Polarity polarity = Polarity::Up;

    friend bool operator==(const Event&, const Event&) = default;
};

/// Encoder output: events strictly sorted by index, at most one per sample.
struct EventStream {
    std::vector<Event> events;
    double source_sample_rate_hz = 0.0;
    std::size_t source_length = 0;

    std::size_t count(Polarity p) const noexcept;
    double duration_s() const noexcept {
        return static_cast<double>(source_length) / source_sample_rate_hz;
    }
    /// Mean event rate over the source duration.
    double event_rate_hz() const noexcept {
        return static_cast<double>(events.size()) / duration_s();
    }
};

/// Fixed-threshold encoder parameters. The constructor rejects every
/// invariant violation, so no operation ever sees an invalid config.
class AdmConfig {
public:
    AdmConfig(double v_thu, double v_thd, double t_rfr_s = 0.0, int gain_code = 0);

    double v_thu() const noexcept { return v_thu_; }
    double v_thd() const noexcept { return v_thd_; }
    double t_rfr_s() const noexcept { return t_rfr_s_; }
    int gain_code() const noexcept { return gain_code_; }

private:
    double v_thu_;
    double v_thd_;
    double t_rfr_s_;
    int gain_code_;
};

/// Knobs of the adaptive threshold chain. Defaults reproduce the
/// background-vs-burst regime at fs = 2 kHz: background tracking two
/// orders of magnitude slower than the 80-250 Hz oscillations of interest.
struct AdaptiveSettings {
    double tau_env_attack_s = 2e-3;
    double tau_env_release_s = 50e-3;
    double tau1_s = 0.2;    // slow filter (DPI 1)
    double tau2_s = 0.02;   // fast filter (DPI 2)
    double g2 = 0.9;        // fast-path steady-state attenuation, in (0,1)
    double tau3_s = 0.5;    // gated hold filter (DPI 3)
    double t_ext_s = 0.1;   // pulse extension window
    double k_th = 2.0;      // threshold scale on the held background level
    double v_th_min = 1e-6; // floor after scaling
};

/// Validated wrapper over AdaptiveSettings. Construction enforces
/// tau1 > tau2, 0 < g2 < 1 and strict positivity of every time constant.
class AdaptiveConfig {
public:
    AdaptiveConfig() : AdaptiveConfig(AdaptiveSettings{}) {}
    explicit AdaptiveConfig(const AdaptiveSettings& settings);

    double tau_env_attack_s() const noexcept { return s_.tau_env_attack_s; }
    double tau_env_release_s() const noexcept { return s_.tau_env_release_s; }
    double tau1_s() const noexcept { return s_.tau1_s; }
    double tau2_s() const noexcept { return s_.tau2_s; }
    double g2() const noexcept { return s_.g2; }
    double tau3_s() const noexcept { return s_.tau3_s; }
    double t_ext_s() const noexcept { return s_.t_ext_s; }
    double k_th() const noexcept { return s_.k_th; }
    double v_th_min() const noexcept { return s_.v_th_min; }
    const AdaptiveSettings& settings() const noexcept { return s_; }

private:
    AdaptiveSettings s_;
};

} // namespace adm
