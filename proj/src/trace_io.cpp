#include "adm/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace adm {

namespace {

std::string format_time(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", t);
    return buf;
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(Errc::io_error, "cannot open for writing: " + path);
    }
    return out;
}

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::io_error, "cannot open for reading: " + path);
    }
    return in;
}

void finish_write(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw Error(Errc::io_error, "write failed: " + path);
    }
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(trim(field));
    }
    return fields;
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

// Header comments have the form "# key value".
bool parse_comment(const std::string& line, std::string& key,
                   std::string& value) {
    if (line.empty() || line[0] != '#') {
        return false;
    }
    std::istringstream stream(line.substr(1));
    if (!(stream >> key >> value)) {
        return false;
    }
    return true;
}

} // namespace

void write_columns_csv(const std::string& path, double sample_rate_hz,
                       const TraceColumns& columns) {
    if (columns.empty()) {
        throw Error(Errc::invalid_config, "no columns to write");
    }
    const std::size_t n = columns.front().second.size();
    for (const auto& [name, values] : columns) {
        if (values.size() != n) {
            throw Error(Errc::length_mismatch,
                        "column '" + name + "' length differs");
        }
    }

    std::ofstream out = open_for_write(path);
    out << "# sample_rate_hz " << format_value(sample_rate_hz) << "\n";
    out << "time_s";
    for (const auto& [name, values] : columns) {
        out << ',' << name;
    }
    out << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << format_time(static_cast<double>(i) / sample_rate_hz);
        for (const auto& [name, values] : columns) {
            out << ',' << format_value(values[i]);
        }
        out << "\n";
    }
    finish_write(out, path);
}

void write_trace_csv(const std::string& path, const Signal& signal,
                     const std::string& column_name) {
    validate_signal(signal);
    write_columns_csv(path, signal.sample_rate_hz,
                      {{column_name, signal.samples}});
}

Signal read_trace_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);

    Signal signal;
    signal.sample_rate_hz = 0.0;
    bool header_seen = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        std::string key;
        std::string value;
        if (parse_comment(line, key, value)) {
            if (key == "sample_rate_hz") {
                signal.sample_rate_hz = parse_number(value, line_no);
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            if (split_fields(line).size() < 2) {
                throw Error(Errc::parse_error,
                            "trace header needs time_s and a value column",
                            line_no);
            }
            continue;
        }
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() < 2) {
            throw Error(Errc::parse_error, "trace row needs two fields",
                        line_no);
        }
        signal.samples.push_back(parse_number(fields[1], line_no));
    }
    if (signal.sample_rate_hz <= 0.0) {
        throw Error(Errc::parse_error,
                    "missing '# sample_rate_hz' header in " + path);
    }
    validate_signal(signal);
    return signal;
}

void write_events_csv(const std::string& path, const EventStream& stream) {
    std::ofstream out = open_for_write(path);
    out << "# source_length " << stream.source_length << "\n";
    out << "# sample_rate_hz " << format_value(stream.source_sample_rate_hz)
        << "\n";
    out << "time_s,polarity\n";
    for (const Event& event : stream.events) {
        out << format_time(static_cast<double>(event.index) /
                           stream.source_sample_rate_hz)
            << ',' << (event.polarity == Polarity::Up ? "UP" : "DN") << "\n";
    }
    finish_write(out, path);
}

EventStream read_events_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);

    EventStream stream;
    stream.source_sample_rate_hz = 0.0;
    stream.source_length = 0;
    bool header_seen = false;
    bool have_length = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        std::string key;
        std::string value;
        if (parse_comment(line, key, value)) {
            if (key == "source_length") {
                stream.source_length = static_cast<std::size_t>(
                    parse_number(value, line_no));
                have_length = true;
            } else if (key == "sample_rate_hz") {
                stream.source_sample_rate_hz = parse_number(value, line_no);
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        if (stream.source_sample_rate_hz <= 0.0 || !have_length) {
            throw Error(Errc::parse_error,
                        "event rows before source_length/sample_rate_hz "
                        "headers",
                        line_no);
        }
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 2) {
            throw Error(Errc::parse_error, "event row needs time_s,polarity",
                        line_no);
        }
        Event event;
        const double t = parse_number(fields[0], line_no);
        event.index = static_cast<std::size_t>(
            std::llround(t * stream.source_sample_rate_hz));
        if (fields[1] == "UP") {
            event.polarity = Polarity::Up;
        } else if (fields[1] == "DN") {
            event.polarity = Polarity::Dn;
        } else {
            throw Error(Errc::parse_error,
                        "polarity must be UP or DN, got '" + fields[1] + "'",
                        line_no);
        }
        if (event.index >= stream.source_length) {
            throw Error(Errc::parse_error, "event time beyond source length",
                        line_no);
        }
        if (!stream.events.empty() &&
            event.index <= stream.events.back().index) {
            throw Error(Errc::parse_error, "event times must strictly increase",
                        line_no);
        }
        stream.events.push_back(event);
    }
    if (stream.source_sample_rate_hz <= 0.0 || !have_length) {
        throw Error(Errc::parse_error,
                    "missing source_length/sample_rate_hz headers in " + path);
    }
    return stream;
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRecord>& records) {
    std::ofstream out = open_for_write(path);
    out << "v_th,t_rfr_s,rmse,event_count,event_rate_hz\n";
    for (const SweepRecord& record : records) {
        out << format_value(record.v_th) << ',' << format_value(record.t_rfr_s)
            << ',' << format_value(record.rmse) << ',' << record.event_count
            << ',' << format_value(record.event_rate_hz) << "\n";
    }
    finish_write(out, path);
}

std::vector<SweepRecord> read_sweep_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);

    std::vector<SweepRecord> records;
    bool header_seen = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 5) {
            throw Error(Errc::parse_error, "sweep row needs five fields",
                        line_no);
        }
        SweepRecord record;
        record.v_th = parse_number(fields[0], line_no);
        record.t_rfr_s = parse_number(fields[1], line_no);
        record.rmse = parse_number(fields[2], line_no);
        record.event_count =
            static_cast<std::size_t>(parse_number(fields[3], line_no));
        record.event_rate_hz = parse_number(fields[4], line_no);
        records.push_back(record);
    }
    return records;
}

} // namespace adm
