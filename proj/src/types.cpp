#include "adm/types.hpp"

#include <algorithm>
#include <cmath>

namespace adm {

void validate_signal(const Signal& signal) {
    if (!(signal.sample_rate_hz > 0.0) || !std::isfinite(signal.sample_rate_hz)) {
        throw Error(Errc::invalid_sample_rate,
                    "sample rate must be a positive finite value, got " +
                        std::to_string(signal.sample_rate_hz));
    }
    if (signal.samples.empty()) {
        throw Error(Errc::empty_signal, "signal has no samples");
    }
    for (std::size_t i = 0; i < signal.samples.size(); ++i) {
        if (!std::isfinite(signal.samples[i])) {
            throw Error(Errc::non_finite_sample,
                        "sample " + std::to_string(i) + " is not finite", i);
        }
    }
}

std::size_t EventStream::count(Polarity p) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(),
                      [p](const Event& e) { return e.polarity == p; }));
}

AdmConfig::AdmConfig(double v_thu, double v_thd, double t_rfr_s, int gain_code)
    : v_thu_(v_thu), v_thd_(v_thd), t_rfr_s_(t_rfr_s), gain_code_(gain_code) {
    if (!(v_thu > 0.0) || !std::isfinite(v_thu)) {
        throw Error(Errc::invalid_config, "v_thu must be > 0");
    }
    if (!(v_thd > 0.0) || !std::isfinite(v_thd)) {
        throw Error(Errc::invalid_config, "v_thd must be > 0");
    }
    if (!(t_rfr_s >= 0.0) || !std::isfinite(t_rfr_s)) {
        throw Error(Errc::invalid_config, "t_rfr_s must be >= 0");
    }
    if (gain_code < 0 || gain_code > 3) {
        throw Error(Errc::invalid_gain_code,
                    "gain_code must be in {0,1,2,3}, got " + std::to_string(gain_code));
    }
}

AdaptiveConfig::AdaptiveConfig(const AdaptiveSettings& settings) : s_(settings) {
    auto require_positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(Errc::invalid_config, std::string(name) + " must be > 0");
        }
    };
    require_positive(s_.tau_env_attack_s, "tau_env_attack_s");
    require_positive(s_.tau_env_release_s, "tau_env_release_s");
    require_positive(s_.tau1_s, "tau1_s");
    require_positive(s_.tau2_s, "tau2_s");
    require_positive(s_.tau3_s, "tau3_s");
    require_positive(s_.t_ext_s, "t_ext_s");
    require_positive(s_.k_th, "k_th");
    require_positive(s_.v_th_min, "v_th_min");
    if (!(s_.tau1_s > s_.tau2_s)) {
        throw Error(Errc::invalid_config, "tau1_s must be greater than tau2_s");
    }
    if (!(s_.g2 > 0.0 && s_.g2 < 1.0)) {
        throw Error(Errc::invalid_config, "g2 must be in (0,1)");
    }
}

} // namespace adm
