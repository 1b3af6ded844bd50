#include "adm/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace adm {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') {
            quoted = !quoted;
        } else if (line[i] == '#' && !quoted) {
            return line.substr(0, i);
        }
    }
    return line;
}

double parse_number(const std::string& text, std::size_t line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw Error(Errc::parse_error, "expected a number, got '" + text + "'",
                    line_no);
    }
    return value;
}

ConfigValue parse_value(const std::string& raw, std::size_t line_no) {
    ConfigValue value;
    value.line = line_no;
    if (raw.empty()) {
        throw Error(Errc::parse_error, "missing value", line_no);
    }
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"') {
            throw Error(Errc::parse_error, "unterminated string", line_no);
        }
        value.type = ConfigValue::Type::text;
        value.text = raw.substr(1, raw.size() - 2);
        return value;
    }
    if (raw.front() == '[') {
        if (raw.back() != ']') {
            throw Error(Errc::parse_error, "unterminated list", line_no);
        }
        value.type = ConfigValue::Type::number_list;
        std::istringstream stream(raw.substr(1, raw.size() - 2));
        std::string item;
        while (std::getline(stream, item, ',')) {
            item = trim(item);
            if (item.empty()) {
                throw Error(Errc::parse_error, "empty list item", line_no);
            }
            value.list.push_back(parse_number(item, line_no));
        }
        return value;
    }
    value.type = ConfigValue::Type::number;
    value.number = parse_number(raw, line_no);
    return value;
}

double get_number(const ConfigValue& value) {
    if (value.type != ConfigValue::Type::number) {
        throw Error(Errc::parse_error, "expected a number", value.line);
    }
    return value.number;
}

std::string get_text(const ConfigValue& value) {
    if (value.type != ConfigValue::Type::text) {
        throw Error(Errc::parse_error, "expected a quoted string", value.line);
    }
    return value.text;
}

std::vector<double> get_list(const ConfigValue& value) {
    if (value.type != ConfigValue::Type::number_list) {
        throw Error(Errc::parse_error, "expected a [list]", value.line);
    }
    return value.list;
}

void read_if_present(const ConfigDoc& doc, const std::string& section,
                     const std::string& key, double& target) {
    if (const ConfigValue* value = doc.find(section, key)) {
        target = get_number(*value);
    }
}

} // namespace

bool ConfigDoc::has(const std::string& section) const {
    return sections.count(section) != 0;
}

const ConfigValue* ConfigDoc::find(const std::string& section,
                                   const std::string& key) const {
    const auto it = sections.find(section);
    if (it == sections.end()) {
        return nullptr;
    }
    const ConfigValue* found = nullptr;
    for (const auto& [k, v] : it->second) {
        if (k == key) {
            found = &v;
        }
    }
    return found;
}

ConfigDoc parse_config_text(const std::string& text) {
    ConfigDoc doc;
    std::istringstream stream(text);
    std::string current;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw Error(Errc::parse_error, "malformed section header",
                            line_no);
            }
            current = trim(line.substr(1, line.size() - 2));
            doc.sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::parse_error, "expected key = value", line_no);
        }
        if (current.empty()) {
            throw Error(Errc::parse_error, "key outside any [section]",
                        line_no);
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw Error(Errc::parse_error, "empty key", line_no);
        }
        doc.sections[current].emplace_back(
            key, parse_value(trim(line.substr(eq + 1)), line_no));
    }
    return doc;
}

ConfigDoc parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::io_error, "cannot open config: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

namespace {

SynthSpec synth_spec_from(const ConfigDoc& doc, const std::string& kind) {
    SynthSpec spec;
    spec.kind = signal_kind_from_string(kind);
    read_if_present(doc, "signal", "amplitude", spec.amplitude);
    read_if_present(doc, "signal", "frequency_hz", spec.frequency_hz);
    read_if_present(doc, "signal", "band_low_hz", spec.band_low_hz);
    read_if_present(doc, "signal", "band_high_hz", spec.band_high_hz);
    read_if_present(doc, "signal", "duration_s", spec.duration_s);
    read_if_present(doc, "signal", "sample_rate_hz", spec.sample_rate_hz);
    read_if_present(doc, "signal", "gain_db", spec.gain_db);
    if (const ConfigValue* value = doc.find("signal", "seed")) {
        spec.seed = static_cast<std::uint64_t>(get_number(*value));
    }
    const auto it = doc.sections.find("signal");
    for (const auto& [key, value] : it->second) {
        if (key != "burst") {
            continue;
        }
        const std::vector<double> fields = get_list(value);
        if (fields.size() != 4) {
            throw Error(Errc::parse_error,
                        "burst needs [start_s, duration_s, center_hz, "
                        "amplitude]",
                        value.line);
        }
        spec.bursts.push_back({fields[0], fields[1], fields[2], fields[3]});
    }
    return spec;
}

} // namespace

SweepGrid RunConfig::sweep_grid() const {
    SweepGrid grid = default_sweep_grid();
    if (!sweep_v_th.empty()) {
        grid.v_th_values = sweep_v_th;
    }
    if (!sweep_t_rfr_s.empty()) {
        grid.t_rfr_values_s = sweep_t_rfr_s;
    }
    if (synth) {
        grid.signal_spec = *synth;
        grid.reconstruction.highpass_cutoff_hz =
            synth->kind == SignalKind::sine ? synth->frequency_hz / 20.0 : 0.0;
    }
    if (highpass_cutoff_hz > 0.0) {
        grid.reconstruction.highpass_cutoff_hz = highpass_cutoff_hz;
    }
    grid.reconstruction.initial_level = initial_level;
    return grid;
}

RunConfig run_config_from(const ConfigDoc& doc) {
    RunConfig config;

    if (doc.has("signal")) {
        std::string kind = "sine";
        if (const ConfigValue* value = doc.find("signal", "kind")) {
            kind = get_text(*value);
        }
        if (kind == "file") {
            const ConfigValue* path = doc.find("signal", "path");
            if (path == nullptr) {
                throw Error(Errc::invalid_config,
                            "signal kind \"file\" needs path");
            }
            config.input_path = get_text(*path);
        } else {
            config.synth = synth_spec_from(doc, kind);
        }
    }

    read_if_present(doc, "encoder", "v_thu", config.v_thu);
    read_if_present(doc, "encoder", "v_thd", config.v_thd);
    read_if_present(doc, "encoder", "t_rfr_s", config.t_rfr_s);
    if (const ConfigValue* value = doc.find("encoder", "gain_code")) {
        config.gain_code = static_cast<int>(get_number(*value));
    }

    config.has_adaptive = doc.has("adaptive");
    AdaptiveSettings& a = config.adaptive;
    read_if_present(doc, "adaptive", "tau_env_attack_s", a.tau_env_attack_s);
    read_if_present(doc, "adaptive", "tau_env_release_s", a.tau_env_release_s);
    read_if_present(doc, "adaptive", "tau1_s", a.tau1_s);
    read_if_present(doc, "adaptive", "tau2_s", a.tau2_s);
    read_if_present(doc, "adaptive", "g2", a.g2);
    read_if_present(doc, "adaptive", "tau3_s", a.tau3_s);
    read_if_present(doc, "adaptive", "t_ext_s", a.t_ext_s);
    read_if_present(doc, "adaptive", "k_th", a.k_th);
    read_if_present(doc, "adaptive", "v_th_min", a.v_th_min);

    read_if_present(doc, "reconstruction", "initial_level",
                    config.initial_level);
    read_if_present(doc, "reconstruction", "highpass_cutoff_hz",
                    config.highpass_cutoff_hz);

    if (const ConfigValue* value = doc.find("sweep", "v_th")) {
        config.sweep_v_th = get_list(*value);
    }
    if (const ConfigValue* value = doc.find("sweep", "t_rfr_s")) {
        config.sweep_t_rfr_s = get_list(*value);
    }

    if (const ConfigValue* value = doc.find("output", "dir")) {
        config.output_dir = get_text(*value);
    }
    return config;
}

RunConfig load_run_config(const std::string& path) {
    return run_config_from(parse_config_file(path));
}

} // namespace adm
