#pragma once

#include "adm/adaptive.hpp"
#include "adm/sweep.hpp"
#include "adm/types.hpp"

#include <string>
#include <vector>

namespace adm {

// Standalone deterministic SVG strings: fixed layout, fixed formatting,
// no timestamps, data embedded as polyline points.

// One curve per t_rfr over the v_th axis, both axes log-scaled.
std::string sweep_plot_svg(const std::vector<SweepRecord>& records);

// Three rows: input trace, envelope/slow/fast/v_th, event raster.
std::string adaptive_plot_svg(const Signal& input,
                              const AdaptiveDiagnostics& diagnostics,
                              const Signal& v_th_trace,
                              const EventStream& events);

void write_text_file(const std::string& path, const std::string& content);

} // namespace adm
