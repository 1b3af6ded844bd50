#include "adm/adaptive.hpp"
#include "adm/config.hpp"
#include "adm/encoder.hpp"
#include "adm/reconstruction.hpp"
#include "adm/svg.hpp"
#include "adm/sweep.hpp"
#include "adm/synthesis.hpp"
#include "adm/trace_io.hpp"
#include "adm/types.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration file")
        ->required();
    cmd->add_option("--out", args.out_dir,
                    "output directory (overrides config and ADMSIM_OUT)");
    args.seed_opt =
        cmd->add_option("--seed", args.seed, "override the synthesis seed");
    cmd->add_flag("--quiet", args.quiet, "suppress summary lines");
}

bool seed_given(const CommonArgs& args) {
    return args.seed_opt != nullptr && args.seed_opt->count() > 0;
}

adm::RunConfig load_config(const CommonArgs& args) {
    adm::RunConfig config = adm::load_run_config(args.config_path);
    if (seed_given(args) && config.synth) {
        config.synth->seed = args.seed;
    }
    return config;
}

std::filesystem::path resolve_out_dir(const CommonArgs& args,
                                      const adm::RunConfig& config) {
    std::string dir = args.out_dir;
    if (dir.empty()) {
        dir = config.output_dir;
    }
    if (dir.empty()) {
        if (const char* env = std::getenv("ADMSIM_OUT")) {
            dir = env;
        }
    }
    if (dir.empty()) {
        dir = ".";
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw adm::Error(adm::Errc::io_error,
                         "cannot create output directory: " + dir);
    }
    return dir;
}

adm::Signal load_signal(const adm::RunConfig& config) {
    if (config.input_path) {
        return adm::read_trace_csv(*config.input_path);
    }
    if (config.synth) {
        return adm::synthesize(*config.synth);
    }
    throw adm::Error(adm::Errc::invalid_config,
                     "config needs a [signal] section");
}

void print_event_summary(const adm::EventStream& stream) {
    std::printf("events: %zu (UP %zu, DN %zu)\n", stream.events.size(),
                stream.count(adm::Polarity::Up),
                stream.count(adm::Polarity::Dn));
    std::printf("rate_hz: %.17g\n", stream.event_rate_hz());
}

int cmd_synth(const CommonArgs& args) {
    const adm::RunConfig config = load_config(args);
    if (!config.synth) {
        throw adm::Error(adm::Errc::invalid_config,
                         "synth needs a generated [signal] kind, not a file");
    }
    const adm::Signal signal = adm::synthesize(*config.synth);
    const std::string path =
        (resolve_out_dir(args, config) / "signal.csv").string();
    adm::write_trace_csv(path, signal);
    if (!args.quiet) {
        double acc = 0.0;
        for (const double s : signal.samples) {
            acc += s * s;
        }
        std::printf("samples: %zu @ %g Hz\n", signal.size(),
                    signal.sample_rate_hz);
        std::printf("rms: %.17g\n",
                    std::sqrt(acc / static_cast<double>(signal.size())));
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

int cmd_encode(const CommonArgs& args) {
    const adm::RunConfig config = load_config(args);
    const adm::Signal signal = load_signal(config);
    const adm::EventStream stream =
        adm::encode(signal, config.encoder_config());
    const std::string path =
        (resolve_out_dir(args, config) / "events.csv").string();
    adm::write_events_csv(path, stream);
    if (!args.quiet) {
        print_event_summary(stream);
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

struct DecodeArgs : CommonArgs {
    std::string events_path;
    std::string original_path;
};

int cmd_decode(const DecodeArgs& args) {
    const adm::RunConfig config = load_config(args);
    const adm::EventStream stream = adm::read_events_csv(args.events_path);
    const adm::Signal rebuilt =
        adm::reconstruct(stream, config.reconstruction_config());
    const std::string path =
        (resolve_out_dir(args, config) / "reconstruction.csv").string();
    adm::write_trace_csv(path, rebuilt);
    if (!args.original_path.empty()) {
        const adm::Signal original = adm::read_trace_csv(args.original_path);
        const double error =
            adm::detrended_rmse(original, rebuilt, config.highpass_cutoff_hz);
        std::printf("rmse: %.17g\n", error);
    }
    if (!args.quiet) {
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

int cmd_sweep(const CommonArgs& args) {
    const adm::RunConfig config = load_config(args);
    adm::SweepGrid grid = config.sweep_grid();
    if (seed_given(args)) {
        grid.signal_spec.seed = args.seed;
    }
    const std::vector<adm::SweepRecord> records = adm::rmse_sweep(grid);
    const std::filesystem::path out = resolve_out_dir(args, config);
    const std::string csv_path = (out / "sweep.csv").string();
    const std::string svg_path = (out / "sweep.svg").string();
    adm::write_sweep_csv(csv_path, records);
    adm::write_text_file(svg_path, adm::sweep_plot_svg(records));
    if (!args.quiet) {
        const adm::SweepRecord best = adm::find_min_rmse(records);
        std::printf("cells: %zu\n", records.size());
        std::printf("min rmse %.17g at v_th %g, t_rfr_s %g\n", best.rmse,
                    best.v_th, best.t_rfr_s);
        std::printf("wrote %s\n", csv_path.c_str());
        std::printf("wrote %s\n", svg_path.c_str());
    }
    return 0;
}

int cmd_adaptive(const CommonArgs& args) {
    const adm::RunConfig config = load_config(args);
    if (!config.has_adaptive) {
        throw adm::Error(adm::Errc::invalid_config,
                         "adaptive needs an [adaptive] section");
    }
    adm::Signal signal = load_signal(config);
    const double gain = adm::select_gain(config.gain_code);
    for (double& sample : signal.samples) {
        sample *= gain;
    }
    const adm::AdaptiveResult result =
        adm::adaptive_threshold(signal, config.adaptive_config());
    const adm::EventStream stream = adm::encode_with_threshold_trace(
        signal, result.v_th_trace,
        adm::AdmConfig(config.v_thu, config.v_thd, config.t_rfr_s, 0));

    const adm::AdaptiveDiagnostics& d = result.diagnostics;
    std::vector<double> gate(d.gate.begin(), d.gate.end());
    const adm::TraceColumns columns = {
        {"input", signal.samples},
        {"envelope", d.envelope.samples},
        {"slow", d.slow.samples},
        {"fast", d.fast.samples},
        {"gate", gate},
        {"v_th", result.v_th_trace.samples},
    };

    const std::filesystem::path out = resolve_out_dir(args, config);
    const std::string trace_path = (out / "adaptive_trace.csv").string();
    const std::string events_path = (out / "adaptive_events.csv").string();
    const std::string svg_path = (out / "adaptive.svg").string();
    adm::write_columns_csv(trace_path, signal.sample_rate_hz, columns);
    adm::write_events_csv(events_path, stream);
    adm::write_text_file(
        svg_path,
        adm::adaptive_plot_svg(signal, d, result.v_th_trace, stream));

    if (!args.quiet) {
        print_event_summary(stream);
        double duty = 0.0;
        for (const double g : gate) {
            duty += g;
        }
        std::printf("gate_duty: %.17g\n",
                    duty / static_cast<double>(gate.size()));
        std::printf("wrote %s\n", trace_path.c_str());
        std::printf("wrote %s\n", events_path.c_str());
        std::printf("wrote %s\n", svg_path.c_str());
    }
    return 0;
}

std::string describe(const adm::Error& error) {
    std::string text = error.what();
    if (error.index()) {
        text += error.code() == adm::Errc::parse_error
                    ? " (line " + std::to_string(*error.index()) + ")"
                    : " (index " + std::to_string(*error.index()) + ")";
    }
    return text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"delta-modulation event encoder toolkit"};
    app.require_subcommand(1);

    CommonArgs synth_args;
    CommonArgs encode_args;
    CommonArgs sweep_args;
    CommonArgs adaptive_args;
    DecodeArgs decode_args;

    CLI::App* synth =
        app.add_subcommand("synth", "generate a test signal as CSV");
    add_common(synth, synth_args);
    CLI::App* encode =
        app.add_subcommand("encode", "encode a signal into UP/DN events");
    add_common(encode, encode_args);
    CLI::App* decode =
        app.add_subcommand("decode", "reconstruct a trace from an event file");
    add_common(decode, decode_args);
    decode->add_option("--events", decode_args.events_path, "event file")
        ->required();
    decode->add_option("--original", decode_args.original_path,
                       "trace to compare against (prints detrended rmse)");
    CLI::App* sweep = app.add_subcommand(
        "sweep", "run the threshold/refractory error sweep");
    add_common(sweep, sweep_args);
    CLI::App* adaptive = app.add_subcommand(
        "adaptive", "run the adaptive-threshold chain and encode");
    add_common(adaptive, adaptive_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(synth)) {
            return cmd_synth(synth_args);
        }
        if (app.got_subcommand(encode)) {
            return cmd_encode(encode_args);
        }
        if (app.got_subcommand(decode)) {
            return cmd_decode(decode_args);
        }
        if (app.got_subcommand(sweep)) {
            return cmd_sweep(sweep_args);
        }
        if (app.got_subcommand(adaptive)) {
            return cmd_adaptive(adaptive_args);
        }
    } catch (const adm::Error& error) {
        std::cerr << "error: " << describe(error) << "\n";
        return error.code() == adm::Errc::io_error ? 2 : 1;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
