#pragma once

#include "adm/reconstruction.hpp"
#include "adm/synthesis.hpp"
#include "adm/sweep.hpp"
#include "adm/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adm {

// Minimal key/value document: [section] headers, key = value pairs,
// '#' comments. Values are numbers, quoted strings, or number lists in
// brackets. Repeated keys are kept in order (used by [signal] burst).
struct ConfigValue {
    enum class Type { number, text, number_list };
    Type type = Type::number;
    double number = 0.0;
    std::string text;
    std::vector<double> list;
    std::size_t line = 0;
};

using ConfigSection = std::vector<std::pair<std::string, ConfigValue>>;

struct ConfigDoc {
    std::map<std::string, ConfigSection> sections;

    bool has(const std::string& section) const;
    const ConfigValue* find(const std::string& section,
                            const std::string& key) const;
};

ConfigDoc parse_config_text(const std::string& text);
ConfigDoc parse_config_file(const std::string& path);

// One parsed run: signal source, encoder and adaptive parameters,
// reconstruction settings, sweep grids, output directory. Unspecified
// keys keep the documented defaults.
struct RunConfig {
    std::optional<SynthSpec> synth;
    std::optional<std::string> input_path;

    double v_thu = 0.1;
    double v_thd = 0.1;
    double t_rfr_s = 0.0;
    int gain_code = 0;

    AdaptiveSettings adaptive;
    bool has_adaptive = false;

    double initial_level = 0.0;
    double highpass_cutoff_hz = 0.0;

    std::vector<double> sweep_v_th;
    std::vector<double> sweep_t_rfr_s;

    std::string output_dir;

    AdmConfig encoder_config() const {
        return AdmConfig(v_thu, v_thd, t_rfr_s, gain_code);
    }
    AdaptiveConfig adaptive_config() const { return AdaptiveConfig(adaptive); }
    ReconstructionConfig reconstruction_config() const {
        return ReconstructionConfig{v_thu, v_thd, initial_level,
                                    highpass_cutoff_hz};
    }
    SweepGrid sweep_grid() const;
};

RunConfig run_config_from(const ConfigDoc& doc);
RunConfig load_run_config(const std::string& path);

} // namespace adm
