#pragma once

#include "adm/types.hpp"

#include <cstdint>

namespace adm {

/// Boolean trace aligned to the input signal grid.
using GateTrace = std::vector<std::uint8_t>;

/// Full-wave rectification followed by asymmetric first-order tracking:
/// fast attack while |x| rises above the envelope, slow release otherwise.
/// e[0] = |x[0]|; output is non-negative everywhere.
Signal envelope(const Signal& signal, double tau_attack_s, double tau_release_s);

/// First-order low-pass, exact exponential-integrator discretization:
/// y[n] = y[n-1] + (1 - exp(-dt/tau)) * (gain*x[n] - y[n-1]), y[0] = gain*x[0].
/// Exact for piecewise-constant input.
Signal lpf_first_order(const Signal& signal, double tau_s, double gain = 1.0);

/// Pointwise comparator: gate[n] = fast[n] > slow[n]. Ties resolve to
/// false so exactly equal steady states never chatter.
GateTrace crossover_gate(const Signal& slow, const Signal& fast);

/// Retriggerable pulse extension: output[n] is true iff any input sample
/// within the trailing window of ceil(t_ext_s * fs) samples was true.
GateTrace extend_pulses(const GateTrace& gate, double t_ext_s,
                        double sample_rate_hz);

/// Low-pass with a hold switch: where the gate is false the lpf_first_order
/// recursion runs (gain 1); where it is true the output holds its previous
/// value bit-exactly.
Signal gated_lpf(const Signal& signal, const GateTrace& gate, double tau_s);

/// Intermediate traces of the adaptive chain, in pipeline order.
struct AdaptiveDiagnostics {
    Signal envelope;
    Signal slow;    // DPI 1: tau1, unit gain
    Signal fast;    // DPI 2: tau2, gain g2
    GateTrace gate; // extended crossover pulses
    Signal base;    // DPI 3: held background level, before scale and clamp
};

struct AdaptiveResult {
    Signal v_th_trace;
    AdaptiveDiagnostics diagnostics;
};

/// Composes the whole chain: envelope -> slow/fast filter pair ->
/// crossover gate -> pulse extension -> gated hold filter ->
/// v_th[n] = max(v_th_min, k_th * base[n]).
AdaptiveResult adaptive_threshold(const Signal& signal,
                                  const AdaptiveConfig& config);

/// Streaming form of adaptive_threshold: folding update() over the samples
/// reproduces the batch v_th trace bit-exactly. Single ownership per
/// stream; distinct streams may run concurrently.
class AdaptiveStepper {
public:
    AdaptiveStepper(const AdaptiveConfig& config, double sample_rate_hz);

    /// Consumes one sample and returns the threshold for it.
    double update(double sample);

private:
    double alpha_attack_;
    double alpha_release_;
    double alpha1_;
    double alpha2_;
    double alpha3_;
    double g2_;
    double k_th_;
    double v_th_min_;
    std::size_t extend_window_;

    bool started_ = false;
    double env_ = 0.0;
    double slow_ = 0.0;
    double fast_ = 0.0;
    double base_ = 0.0;
    std::size_t sample_index_ = 0;
    std::size_t last_crossover_ = 0;
    bool crossover_seen_ = false;
};

} // namespace adm
