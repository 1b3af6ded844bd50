#include "adm/encoder.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace adm {

GainTable::GainTable(const std::array<double, 4>& gains) : gains_(gains) {
    for (std::size_t i = 0; i < gains_.size(); ++i) {
        if (!(gains_[i] > 0.0) || !std::isfinite(gains_[i])) {
            throw Error(Errc::invalid_config, "gain table entries must be > 0");
        }
        if (i > 0 && !(gains_[i] > gains_[i - 1])) {
            throw Error(Errc::invalid_config, "gain table must be strictly increasing");
        }
    }
}

double GainTable::at(int gain_code) const {
    if (gain_code < 0 || gain_code >= static_cast<int>(gains_.size())) {
        throw Error(Errc::invalid_gain_code,
                    "gain code out of range: " + std::to_string(gain_code));
    }
    return gains_[static_cast<std::size_t>(gain_code)];
}

double select_gain(int gain_code, const GainTable& table) {
    return table.at(gain_code);
}

std::size_t refractory_samples(double t_rfr_s, double sample_rate_hz) {
    return static_cast<std::size_t>(std::ceil(t_rfr_s * sample_rate_hz));
}

std::optional<Event> step(EncoderState& state, double sample, double v_thu,
                          double v_thd, std::size_t refractory_samples) {
    const std::size_t index = state.sample_cursor++;
    if (state.refractory_remaining > 0) {
        --state.refractory_remaining;
        return std::nullopt;
    }
    const bool up = sample - state.baseline >= v_thu;
    const bool dn = state.baseline - sample >= v_thd;
    assert(!(up && dn)); // unreachable with positive thresholds
    if (up) {
        state.baseline += v_thu;
        state.refractory_remaining = refractory_samples;
        return Event{index, Polarity::Up};
    }
    if (dn) {
        state.baseline -= v_thd;
        state.refractory_remaining = refractory_samples;
        return Event{index, Polarity::Dn};
    }
    return std::nullopt;
}

namespace {

// Folds step() over the signal; thresholds_at(n) yields {v_thu, v_thd} for
// sample n.
template <typename ThresholdsAt>
EventStream run_encoder(const Signal& signal, double gain, double t_rfr_s,
                        ThresholdsAt thresholds_at) {
    const std::size_t rfr = refractory_samples(t_rfr_s, signal.sample_rate_hz);
    EventStream stream;
    stream.source_sample_rate_hz = signal.sample_rate_hz;
    stream.source_length = signal.samples.size();

    EncoderState state;
    state.baseline = gain * signal.samples.front();
    for (std::size_t n = 0; n < signal.samples.size(); ++n) {
        const auto [v_thu, v_thd] = thresholds_at(n);
        if (auto event = step(state, gain * signal.samples[n], v_thu, v_thd, rfr)) {
            stream.events.push_back(*event);
        }
    }
    return stream;
}

} // namespace

EventStream encode(const Signal& signal, const AdmConfig& config,
                   const GainTable& table) {
    validate_signal(signal);
    const double gain = table.at(config.gain_code());
    return run_encoder(signal, gain, config.t_rfr_s(), [&](std::size_t) {
        return std::pair{config.v_thu(), config.v_thd()};
    });
}

EventStream encode_with_threshold_trace(const Signal& signal,
                                        const Signal& v_th_trace,
                                        const AdmConfig& config,
                                        const GainTable& table) {
    validate_signal(signal);
    validate_signal(v_th_trace);
    if (v_th_trace.samples.size() != signal.samples.size() ||
        v_th_trace.sample_rate_hz != signal.sample_rate_hz) {
        throw Error(Errc::length_mismatch,
                    "threshold trace must share the signal's grid");
    }
    for (std::size_t i = 0; i < v_th_trace.samples.size(); ++i) {
        if (!(v_th_trace.samples[i] > 0.0)) {
            throw Error(Errc::non_positive_threshold,
                        "threshold trace sample " + std::to_string(i) +
                            " is not positive",
                        i);
        }
    }
    const double gain = table.at(config.gain_code());
    return run_encoder(signal, gain, config.t_rfr_s(), [&](std::size_t n) {
        const double v_th = v_th_trace.samples[n];
        return std::pair{v_th, v_th};
    });
}

} // namespace adm
