#pragma once

#include "adm/sweep.hpp"
#include "adm/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace adm {

// CSV layout shared by every writer: optional "# key value" header
// comments, one header row, column 1 = time_s at 9 decimal places.
// Data values are written with %.17g so doubles round-trip bit-exactly.

using TraceColumns = std::vector<std::pair<std::string, std::vector<double>>>;

void write_columns_csv(const std::string& path, double sample_rate_hz,
                       const TraceColumns& columns);

void write_trace_csv(const std::string& path, const Signal& signal,
                     const std::string& column_name = "value");

// Reads the first data column; the sample rate comes from the
// "# sample_rate_hz" header comment.
Signal read_trace_csv(const std::string& path);

void write_events_csv(const std::string& path, const EventStream& stream);

// Enforces strictly increasing indices and in-range times; parse failures
// carry the 1-based line number.
EventStream read_events_csv(const std::string& path);

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRecord>& records);

std::vector<SweepRecord> read_sweep_csv(const std::string& path);

} // namespace adm
