#include "adm/adaptive.hpp"

#include <algorithm>
#include <cmath>

namespace adm {

namespace {

double smoothing_alpha(double tau_s, double sample_rate_hz) {
    return 1.0 - std::exp(-1.0 / (tau_s * sample_rate_hz));
}

void require_positive_tau(double tau_s, const char* name) {
    if (!(tau_s > 0.0) || !std::isfinite(tau_s)) {
        throw Error(Errc::invalid_config, std::string(name) + " must be > 0");
    }
}

} // namespace

Signal envelope(const Signal& signal, double tau_attack_s, double tau_release_s) {
    validate_signal(signal);
    require_positive_tau(tau_attack_s, "tau_attack_s");
    require_positive_tau(tau_release_s, "tau_release_s");
    const double alpha_attack = smoothing_alpha(tau_attack_s, signal.sample_rate_hz);
    const double alpha_release = smoothing_alpha(tau_release_s, signal.sample_rate_hz);

    Signal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.samples.resize(signal.samples.size());

    double env = std::abs(signal.samples.front());
    out.samples[0] = env;
    for (std::size_t n = 1; n < signal.samples.size(); ++n) {
        const double rectified = std::abs(signal.samples[n]);
        const double alpha = rectified > env ? alpha_attack : alpha_release;
        env += alpha * (rectified - env);
        out.samples[n] = env;
    }
    return out;
}

Signal lpf_first_order(const Signal& signal, double tau_s, double gain) {
    validate_signal(signal);
    require_positive_tau(tau_s, "tau_s");
    if (!(gain > 0.0) || !std::isfinite(gain)) {
        throw Error(Errc::invalid_config, "gain must be > 0");
    }
    const double alpha = smoothing_alpha(tau_s, signal.sample_rate_hz);

    Signal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.samples.resize(signal.samples.size());

    double y = gain * signal.samples.front();
    out.samples[0] = y;
    for (std::size_t n = 1; n < signal.samples.size(); ++n) {
        y += alpha * (gain * signal.samples[n] - y);
        out.samples[n] = y;
    }
    return out;
}

GateTrace crossover_gate(const Signal& slow, const Signal& fast) {
    validate_signal(slow);
    validate_signal(fast);
    if (slow.samples.size() != fast.samples.size() ||
        slow.sample_rate_hz != fast.sample_rate_hz) {
        throw Error(Errc::length_mismatch,
                    "crossover inputs must share length and sample rate");
    }
    GateTrace gate(slow.samples.size());
    for (std::size_t n = 0; n < gate.size(); ++n) {
        gate[n] = fast.samples[n] > slow.samples[n] ? 1 : 0;
    }
    return gate;
}

GateTrace extend_pulses(const GateTrace& gate, double t_ext_s,
                        double sample_rate_hz) {
    if (!(t_ext_s > 0.0) || !std::isfinite(t_ext_s)) {
        throw Error(Errc::invalid_config, "t_ext_s must be > 0");
    }
    if (!(sample_rate_hz > 0.0)) {
        throw Error(Errc::invalid_sample_rate, "sample rate must be > 0");
    }
    const auto window =
        static_cast<std::size_t>(std::ceil(t_ext_s * sample_rate_hz));

    GateTrace out(gate.size(), 0);
    bool seen = false;
    std::size_t last_true = 0;
    for (std::size_t n = 0; n < gate.size(); ++n) {
        if (gate[n]) {
            seen = true;
            last_true = n;
        }
        out[n] = (seen && n - last_true <= window) ? 1 : 0;
    }
    return out;
}

Signal gated_lpf(const Signal& signal, const GateTrace& gate, double tau_s) {
    validate_signal(signal);
    require_positive_tau(tau_s, "tau_s");
    if (gate.size() != signal.samples.size()) {
        throw Error(Errc::length_mismatch,
                    "gate trace must match the signal length");
    }
    const double alpha = smoothing_alpha(tau_s, signal.sample_rate_hz);

    Signal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.samples.resize(signal.samples.size());

    double y = signal.samples.front();
    for (std::size_t n = 0; n < signal.samples.size(); ++n) {
        if (!gate[n] && n > 0) {
            y += alpha * (signal.samples[n] - y);
        }
        out.samples[n] = y;
    }
    return out;
}

AdaptiveResult adaptive_threshold(const Signal& signal,
                                  const AdaptiveConfig& config) {
    validate_signal(signal);

    AdaptiveResult result;
    auto& d = result.diagnostics;
    d.envelope = envelope(signal, config.tau_env_attack_s(),
                          config.tau_env_release_s());
    d.slow = lpf_first_order(d.envelope, config.tau1_s(), 1.0);
    d.fast = lpf_first_order(d.envelope, config.tau2_s(), config.g2());
    d.gate = extend_pulses(crossover_gate(d.slow, d.fast), config.t_ext_s(),
                           signal.sample_rate_hz);
    d.base = gated_lpf(d.envelope, d.gate, config.tau3_s());

    result.v_th_trace.sample_rate_hz = signal.sample_rate_hz;
    result.v_th_trace.samples.resize(signal.samples.size());
    for (std::size_t n = 0; n < signal.samples.size(); ++n) {
        result.v_th_trace.samples[n] =
            std::max(config.v_th_min(), config.k_th() * d.base.samples[n]);
    }
    return result;
}

AdaptiveStepper::AdaptiveStepper(const AdaptiveConfig& config,
                                 double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
        throw Error(Errc::invalid_sample_rate, "sample rate must be > 0");
    }
    alpha_attack_ = smoothing_alpha(config.tau_env_attack_s(), sample_rate_hz);
    alpha_release_ = smoothing_alpha(config.tau_env_release_s(), sample_rate_hz);
    alpha1_ = smoothing_alpha(config.tau1_s(), sample_rate_hz);
    alpha2_ = smoothing_alpha(config.tau2_s(), sample_rate_hz);
    alpha3_ = smoothing_alpha(config.tau3_s(), sample_rate_hz);
    g2_ = config.g2();
    k_th_ = config.k_th();
    v_th_min_ = config.v_th_min();
    extend_window_ =
        static_cast<std::size_t>(std::ceil(config.t_ext_s() * sample_rate_hz));
}

double AdaptiveStepper::update(double sample) {
    const double rectified = std::abs(sample);
    if (!started_) {
        started_ = true;
        env_ = rectified;
        slow_ = env_;
        fast_ = g2_ * env_;
        base_ = env_;
    } else {
        const double alpha = rectified > env_ ? alpha_attack_ : alpha_release_;
        env_ += alpha * (rectified - env_);
        slow_ += alpha1_ * (env_ - slow_);
        fast_ += alpha2_ * (g2_ * env_ - fast_);
    }
    if (fast_ > slow_) {
        crossover_seen_ = true;
        last_crossover_ = sample_index_;
    }
    const bool hold = crossover_seen_ &&
                      sample_index_ - last_crossover_ <= extend_window_;
    if (!hold && sample_index_ > 0) {
        base_ += alpha3_ * (env_ - base_);
    }
    ++sample_index_;
    return std::max(v_th_min_, k_th_ * base_);
}

} // namespace adm
