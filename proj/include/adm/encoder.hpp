#pragma once

#include "adm/types.hpp"

#include <array>
#include <optional>

namespace adm {

/// Front-end gain factors selected by the 2-bit gain code. Entries must be
/// positive and strictly increasing; the default is the {1, 2, 4, 8}
/// power-of-two ladder of a 2-bit capacitive divider.
class GainTable {
public:
    GainTable() : gains_{1.0, 2.0, 4.0, 8.0} {}
    explicit GainTable(const std::array<double, 4>& gains);

    double at(int gain_code) const;
    const std::array<double, 4>& gains() const noexcept { return gains_; }

private:
    std::array<double, 4> gains_;
};

/// Looks up the gain factor for a code in {0,1,2,3}.
double select_gain(int gain_code, const GainTable& table = GainTable());

/// Refractory period quantized to whole samples, rounding up so the hard
/// rate cap is preserved.
std::size_t refractory_samples(double t_rfr_s, double sample_rate_hz);

/// Per-stream encoder state threaded through step(). `baseline` is the
/// tracked reconstruction reference (the reset level of the physical
/// integrator); `sample_cursor` is the index assigned to the next sample.
struct EncoderState {
    double baseline = 0.0;
    std::size_t refractory_remaining = 0;
    std::size_t sample_cursor = 0;
};

/// One-sample encoder transition. While refractory, the baseline is frozen
/// and comparisons are suppressed; otherwise an UP (DN) event fires when the
/// sample exceeds baseline + v_thu (falls below baseline - v_thd), moving
/// the baseline by exactly the threshold and arming the refractory counter.
/// At most one event per sample. Inputs are assumed pre-validated.
std::optional<Event> step(EncoderState& state, double sample, double v_thu,
                          double v_thd, std::size_t refractory_samples);

/// Encodes a signal into UP/DN events under fixed symmetric-per-side
/// thresholds. The baseline starts at the first (post-gain) sample, so the
/// first sample itself never fires. encode() is a fold of step().
EventStream encode(const Signal& signal, const AdmConfig& config,
                   const GainTable& table = GainTable());

/// Same update rule, but at each sample both thresholds equal
/// v_th_trace[n]; the baseline moves by the threshold value in effect at
/// the emitting sample. The trace must match the signal grid and be
/// strictly positive everywhere.
EventStream encode_with_threshold_trace(const Signal& signal,
                                        const Signal& v_th_trace,
                                        const AdmConfig& config,
                                        const GainTable& table = GainTable());

} // namespace adm
