#include "adm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace adm {

namespace {

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                               "#9467bd", "#ff7f0e", "#8c564b"};
constexpr std::size_t palette_size = sizeof(palette) / sizeof(palette[0]);

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

struct Frame {
    double x0;
    double y0;
    double width;
    double height;

    double map_x(double t, double t_min, double t_max) const {
        return x0 + (t - t_min) / (t_max - t_min) * width;
    }
    double map_y(double v, double v_min, double v_max) const {
        return y0 + height - (v - v_min) / (v_max - v_min) * height;
    }
};

void axis_box(std::ostringstream& out, const Frame& f) {
    out << "<rect x=\"" << px(f.x0) << "\" y=\"" << px(f.y0) << "\" width=\""
        << px(f.width) << "\" height=\"" << px(f.height)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
}

void text_at(std::ostringstream& out, double x, double y,
             const std::string& content, const char* anchor = "middle",
             const char* fill = "#333333") {
    out << "<text x=\"" << px(x) << "\" y=\"" << px(y)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\""
        << anchor << "\" fill=\"" << fill << "\">" << content << "</text>\n";
}

void polyline(std::ostringstream& out, const std::vector<double>& xs,
              const std::vector<double>& ys, const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) {
            out << ' ';
        }
        out << px(xs[i]) << ',' << px(ys[i]);
    }
    out << "\"/>\n";
}

// Per-bucket min and max keeps extremes visible after decimation.
std::vector<std::pair<std::size_t, double>> decimate_minmax(
    const std::vector<double>& values, std::size_t max_buckets) {
    std::vector<std::pair<std::size_t, double>> kept;
    if (values.size() <= 2 * max_buckets) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            kept.emplace_back(i, values[i]);
        }
        return kept;
    }
    for (std::size_t b = 0; b < max_buckets; ++b) {
        const std::size_t begin = b * values.size() / max_buckets;
        const std::size_t end = (b + 1) * values.size() / max_buckets;
        std::size_t i_min = begin;
        std::size_t i_max = begin;
        for (std::size_t i = begin; i < end; ++i) {
            if (values[i] < values[i_min]) {
                i_min = i;
            }
            if (values[i] > values[i_max]) {
                i_max = i;
            }
        }
        kept.emplace_back(std::min(i_min, i_max),
                          values[std::min(i_min, i_max)]);
        if (i_min != i_max) {
            kept.emplace_back(std::max(i_min, i_max),
                              values[std::max(i_min, i_max)]);
        }
    }
    return kept;
}

void series_row(std::ostringstream& out, const Frame& f,
                const std::vector<const Signal*>& traces,
                const std::vector<const char*>& names, double duration_s) {
    double v_min = 0.0;
    double v_max = 0.0;
    bool first = true;
    for (const Signal* trace : traces) {
        for (const double v : trace->samples) {
            if (first) {
                v_min = v_max = v;
                first = false;
            }
            v_min = std::min(v_min, v);
            v_max = std::max(v_max, v);
        }
    }
    if (v_max == v_min) {
        v_max = v_min + 1.0;
    }
    const double pad = 0.05 * (v_max - v_min);
    v_min -= pad;
    v_max += pad;

    axis_box(out, f);
    for (std::size_t s = 0; s < traces.size(); ++s) {
        const Signal& trace = *traces[s];
        const auto kept = decimate_minmax(trace.samples, 2000);
        std::vector<double> xs;
        std::vector<double> ys;
        xs.reserve(kept.size());
        ys.reserve(kept.size());
        for (const auto& [index, value] : kept) {
            const double t =
                static_cast<double>(index) / trace.sample_rate_hz;
            xs.push_back(f.map_x(t, 0.0, duration_s));
            ys.push_back(f.map_y(value, v_min, v_max));
        }
        polyline(out, xs, ys, palette[s % palette_size]);
        text_at(out, f.x0 + f.width - 6.0,
                f.y0 + 16.0 + 14.0 * static_cast<double>(s), names[s], "end",
                palette[s % palette_size]);
    }
    text_at(out, f.x0 - 8.0, f.y0 + 12.0, label(v_max), "end");
    text_at(out, f.x0 - 8.0, f.y0 + f.height, label(v_min), "end");
}

} // namespace

std::string sweep_plot_svg(const std::vector<SweepRecord>& records) {
    std::map<double, std::vector<const SweepRecord*>> curves;
    for (const SweepRecord& record : records) {
        curves[record.t_rfr_s].push_back(&record);
    }

    double lx_min = 0.0;
    double lx_max = 0.0;
    double ly_min = 0.0;
    double ly_max = 0.0;
    bool first = true;
    auto log_clamped = [](double v) {
        return std::log10(std::max(v, 1e-12));
    };
    for (const SweepRecord& record : records) {
        const double lx = log_clamped(record.v_th);
        const double ly = log_clamped(record.rmse);
        if (first) {
            lx_min = lx_max = lx;
            ly_min = ly_max = ly;
            first = false;
        }
        lx_min = std::min(lx_min, lx);
        lx_max = std::max(lx_max, lx);
        ly_min = std::min(ly_min, ly);
        ly_max = std::max(ly_max, ly);
    }
    if (lx_max == lx_min) {
        lx_max = lx_min + 1.0;
    }
    if (ly_max == ly_min) {
        ly_max = ly_min + 1.0;
    }
    ly_min -= 0.05 * (ly_max - ly_min);
    ly_max += 0.05 * (ly_max - ly_min);

    const Frame f{70.0, 30.0, 660.0, 420.0};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
           "height=\"520\" viewBox=\"0 0 800 520\">\n";
    out << "<rect width=\"800\" height=\"520\" fill=\"#ffffff\"/>\n";
    axis_box(out, f);

    for (double d = std::ceil(lx_min); d <= std::floor(lx_max) + 1e-9;
         d += 1.0) {
        const double x = f.map_x(d, lx_min, lx_max);
        out << "<line x1=\"" << px(x) << "\" y1=\"" << px(f.y0) << "\" x2=\""
            << px(x) << "\" y2=\"" << px(f.y0 + f.height)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        text_at(out, x, f.y0 + f.height + 16.0, label(std::pow(10.0, d)));
    }
    for (double d = std::ceil(ly_min); d <= std::floor(ly_max) + 1e-9;
         d += 1.0) {
        const double y = f.map_y(d, ly_min, ly_max);
        out << "<line x1=\"" << px(f.x0) << "\" y1=\"" << px(y) << "\" x2=\""
            << px(f.x0 + f.width) << "\" y2=\"" << px(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        text_at(out, f.x0 - 8.0, y + 4.0, label(std::pow(10.0, d)), "end");
    }

    std::size_t curve_index = 0;
    for (const auto& [t_rfr_s, points] : curves) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (const SweepRecord* record : points) {
            xs.push_back(f.map_x(log_clamped(record->v_th), lx_min, lx_max));
            ys.push_back(f.map_y(log_clamped(record->rmse), ly_min, ly_max));
        }
        const char* color = palette[curve_index % palette_size];
        polyline(out, xs, ys, color);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << px(ys[i])
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        text_at(out, f.x0 + f.width - 6.0,
                f.y0 + 16.0 + 14.0 * static_cast<double>(curve_index),
                "t_rfr = " + label(t_rfr_s * 1000.0) + " ms", "end", color);
        ++curve_index;
    }

    text_at(out, f.x0 + f.width / 2.0, 505.0, "v_th");
    text_at(out, 18.0, f.y0 + f.height / 2.0, "rmse", "middle");
    out << "</svg>\n";
    return out.str();
}

std::string adaptive_plot_svg(const Signal& input,
                              const AdaptiveDiagnostics& diagnostics,
                              const Signal& v_th_trace,
                              const EventStream& events) {
    const double duration_s = input.duration_s();
    const Frame rows[3] = {{70.0, 30.0, 760.0, 190.0},
                           {70.0, 250.0, 760.0, 190.0},
                           {70.0, 470.0, 760.0, 190.0}};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"880\" "
           "height=\"720\" viewBox=\"0 0 880 720\">\n";
    out << "<rect width=\"880\" height=\"720\" fill=\"#ffffff\"/>\n";

    series_row(out, rows[0], {&input}, {"input"}, duration_s);
    series_row(out, rows[1],
               {&diagnostics.envelope, &diagnostics.slow, &diagnostics.fast,
                &v_th_trace},
               {"envelope", "slow", "fast", "v_th"}, duration_s);

    axis_box(out, rows[2]);
    const double mid = rows[2].y0 + rows[2].height / 2.0;
    out << "<line x1=\"" << px(rows[2].x0) << "\" y1=\"" << px(mid)
        << "\" x2=\"" << px(rows[2].x0 + rows[2].width) << "\" y2=\""
        << px(mid) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    for (const Event& event : events.events) {
        const double t =
            static_cast<double>(event.index) / events.source_sample_rate_hz;
        const double x = rows[2].map_x(t, 0.0, duration_s);
        const bool up = event.polarity == Polarity::Up;
        out << "<line x1=\"" << px(x) << "\" y1=\"" << px(mid) << "\" x2=\""
            << px(x) << "\" y2=\""
            << px(up ? mid - rows[2].height * 0.4 : mid + rows[2].height * 0.4)
            << "\" stroke=\"" << (up ? palette[0] : palette[1])
            << "\" stroke-width=\"1\"/>\n";
    }
    text_at(out, rows[2].x0 + rows[2].width - 6.0, rows[2].y0 + 16.0,
            "UP", "end", palette[0]);
    text_at(out, rows[2].x0 + rows[2].width - 6.0, rows[2].y0 + 30.0,
            "DN", "end", palette[1]);

    for (int tick = 0; tick <= 5; ++tick) {
        const double t = duration_s * tick / 5.0;
        const double x = rows[2].map_x(t, 0.0, duration_s);
        text_at(out, x, rows[2].y0 + rows[2].height + 16.0,
                label(t) + " s");
    }
    out << "</svg>\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw Error(Errc::io_error, "cannot open for writing: " + path);
    }
    out << content;
    out.flush();
    if (!out) {
        throw Error(Errc::io_error, "write failed: " + path);
    }
}

} // namespace adm
