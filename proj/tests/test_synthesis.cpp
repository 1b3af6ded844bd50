#include "adm/synthesis.hpp"

#include "adm/types.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstddef>

using namespace adm;

TEST_CASE("signal kind names round-trip") {
    for (SignalKind kind :
         {SignalKind::sine, SignalKind::band_noise, SignalKind::hfo_composite})
        CHECK(signal_kind_from_string(to_string(kind)) == kind);
    oracle::capture_error(Errc::invalid_spec,
                          [] { signal_kind_from_string("triangle"); });
}

TEST_CASE("decibel conversion") {
    CHECK(db_to_gain(0.0) == doctest::Approx(1.0));
    CHECK(db_to_gain(20.0) == doctest::Approx(10.0));
    CHECK(db_to_gain(-20.0) == doctest::Approx(0.1));
    CHECK(db_to_gain(38.0) == doctest::Approx(79.432823472428).epsilon(1e-9));
}

TEST_CASE("sine parameters are recoverable from the trace") {
    SynthSpec spec;
    spec.kind = SignalKind::sine;
    spec.amplitude = 0.7;
    spec.frequency_hz = 50.0;
    spec.duration_s = 2.0;
    spec.sample_rate_hz = 10000.0;
    Signal s = synth_sine(spec);
    CHECK(s.size() == 20000);
    CHECK(s.sample_rate_hz == 10000.0);
    CHECK(oracle::zero_crossing_frequency(s) == doctest::Approx(50.0).epsilon(0.01));
    CHECK(oracle::peak_abs(s) == doctest::Approx(0.7).epsilon(0.01));
}

TEST_CASE("sine honors the gain scalar") {
    SynthSpec spec;
    spec.kind = SignalKind::sine;
    spec.amplitude = 50e-6;
    spec.frequency_hz = 10.0;
    spec.duration_s = 0.5;
    spec.sample_rate_hz = 20000.0;
    spec.gain_db = 38.0;
    Signal s = synth_sine(spec);
    CHECK(oracle::peak_abs(s) ==
          doctest::Approx(50e-6 * db_to_gain(38.0)).epsilon(0.01));
}

TEST_CASE("gaussian source moments") {
    GaussianSource g(12345);
    double mean = 0.0, second = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double v = g.next();
        mean += v;
        second += v * v;
    }
    mean /= n;
    second /= n;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(second - mean * mean - 1.0) < 0.015);
}

TEST_CASE("gaussian source is deterministic per seed") {
    GaussianSource a(7), b(7), c(8);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const double va = a.next();
        if (va != b.next()) all_equal = false;
        if (va != c.next()) any_diff = true;
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("band noise hits the target RMS exactly and stays in band") {
    SynthSpec spec;
    spec.kind = SignalKind::band_noise;
    spec.amplitude = 1.0;
    spec.band_low_hz = 80.0;
    spec.band_high_hz = 250.0;
    spec.duration_s = 4.0;
    spec.sample_rate_hz = 2000.0;
    spec.seed = 7;
    Signal s = synth_band_noise(spec);
    CHECK_NOTHROW(validate_signal(s));

    double acc = 0.0;
    for (double v : s.samples) acc += v * v;
    const double rms = std::sqrt(acc / static_cast<double>(s.size()));
    CHECK(rms == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(oracle::band_power_fraction(s, 60.0, 300.0) >= 0.8);
}

TEST_CASE("band noise scales linearly with the target RMS") {
    SynthSpec spec;
    spec.kind = SignalKind::band_noise;
    spec.amplitude = 1.0;
    spec.duration_s = 1.0;
    spec.seed = 5;
    Signal unit = synth_band_noise(spec);
    spec.amplitude = 2.5;
    Signal scaled = synth_band_noise(spec);
    REQUIRE(unit.size() == scaled.size());
    for (std::size_t i = 0; i < unit.size(); ++i)
        CHECK(scaled.samples[i] == doctest::Approx(2.5 * unit.samples[i]));
}

TEST_CASE("composite without bursts is the plain band noise") {
    SynthSpec spec;
    spec.kind = SignalKind::hfo_composite;
    spec.amplitude = 1.0;
    spec.duration_s = 2.0;
    spec.seed = 3;
    Signal composite = synth_hfo_composite(spec);
    spec.kind = SignalKind::band_noise;
    Signal noise = synth_band_noise(spec);
    REQUIRE(composite.size() == noise.size());
    for (std::size_t i = 0; i < composite.size(); ++i)
        CHECK(composite.samples[i] == noise.samples[i]);
}

TEST_CASE("a burst modifies exactly its own samples") {
    SynthSpec spec;
    spec.kind = SignalKind::hfo_composite;
    spec.amplitude = 1.0;
    spec.duration_s = 1.0;
    spec.sample_rate_hz = 2000.0;
    spec.seed = 3;
    spec.bursts = {{0.3, 0.1, 150.0, 5.0}};
    Signal with_burst = synth_hfo_composite(spec);
    spec.bursts.clear();
    Signal without = synth_hfo_composite(spec);

    std::size_t changed = 0, lo = with_burst.size(), hi = 0;
    for (std::size_t i = 0; i < with_burst.size(); ++i)
        if (with_burst.samples[i] != without.samples[i]) {
            ++changed;
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }
    CHECK(changed == 200);
    CHECK(lo == 600);
    CHECK(hi == 799);
}

TEST_CASE("a 5x burst lifts the short-window RMS at least 3x") {
    SynthSpec spec;
    spec.kind = SignalKind::hfo_composite;
    spec.amplitude = 1.0;
    spec.duration_s = 1.0;
    spec.sample_rate_hz = 2000.0;
    spec.seed = 3;
    spec.bursts = {{0.3, 0.1, 150.0, 5.0}};
    Signal s = synth_hfo_composite(spec);
    // central half of the burst, where the window taper is near unity
    const double inside = oracle::windowed_rms(s, 0.325, 0.375);
    const double outside = oracle::windowed_rms(s, 0.5, 0.9);
    CHECK(inside >= 3.0 * outside);
}

TEST_CASE("composite applies gain after burst placement") {
    SynthSpec spec;
    spec.kind = SignalKind::hfo_composite;
    spec.amplitude = 1.0;
    spec.duration_s = 1.0;
    spec.seed = 9;
    spec.bursts = {{0.4, 0.1, 120.0, 4.0}};
    Signal plain = synth_hfo_composite(spec);
    spec.gain_db = 20.0;
    Signal amplified = synth_hfo_composite(spec);
    const double g = db_to_gain(20.0);
    for (std::size_t i = 0; i < plain.size(); ++i)
        CHECK(amplified.samples[i] == plain.samples[i] * g);
}

TEST_CASE("synthesize dispatches on kind") {
    SynthSpec spec;
    spec.kind = SignalKind::sine;
    spec.duration_s = 0.25;
    Signal a = synthesize(spec);
    Signal b = synth_sine(spec);
    CHECK(a.samples == b.samples);

    spec.kind = SignalKind::band_noise;
    CHECK(synthesize(spec).samples == synth_band_noise(spec).samples);

    spec.kind = SignalKind::hfo_composite;
    CHECK(synthesize(spec).samples == synth_hfo_composite(spec).samples);
}

TEST_CASE("generation is deterministic and seed-sensitive") {
    SynthSpec spec;
    spec.kind = SignalKind::band_noise;
    spec.duration_s = 0.5;
    spec.seed = 100;
    Signal a = synth_band_noise(spec);
    Signal b = synth_band_noise(spec);
    CHECK(a.samples == b.samples);
    spec.seed = 101;
    Signal c = synth_band_noise(spec);
    CHECK(a.samples != c.samples);
}

TEST_CASE("spec validation rejects malformed requests") {
    SynthSpec spec;
    spec.duration_s = 0.0;
    oracle::capture_error(Errc::invalid_spec, [&] { synthesize(spec); });

    spec = SynthSpec{};
    spec.sample_rate_hz = 0.0;
    oracle::capture_error(Errc::invalid_spec, [&] { synthesize(spec); });

    spec = SynthSpec{};
    spec.amplitude = -1.0;
    oracle::capture_error(Errc::invalid_spec, [&] { synthesize(spec); });

    spec = SynthSpec{};
    spec.kind = SignalKind::sine;
    spec.frequency_hz = 0.0;
    oracle::capture_error(Errc::invalid_spec, [&] { synthesize(spec); });

    spec = SynthSpec{};
    spec.kind = SignalKind::band_noise;
    spec.band_low_hz = 300.0;
    spec.band_high_hz = 200.0;
    oracle::capture_error(Errc::invalid_spec, [&] { synthesize(spec); });

    spec = SynthSpec{};
    spec.kind = SignalKind::band_noise;
    spec.band_high_hz = 1500.0; // past Nyquist of the 2 kHz default
    oracle::capture_error(Errc::invalid_spec, [&] { synthesize(spec); });
}

TEST_CASE("burst validation points at the offending entry") {
    SynthSpec spec;
    spec.kind = SignalKind::hfo_composite;
    spec.duration_s = 1.0;
    spec.bursts = {{0.1, 0.1, 150.0, 4.0}, {0.9, 0.5, 150.0, 4.0}};
    auto err = oracle::capture_error(Errc::invalid_spec, [&] { synthesize(spec); });
    REQUIRE(err.index().has_value());
    CHECK(*err.index() == 1);

    spec.bursts = {{-0.1, 0.1, 150.0, 4.0}};
    err = oracle::capture_error(Errc::invalid_spec, [&] { synthesize(spec); });
    CHECK(*err.index() == 0);

    spec.bursts = {{0.1, 0.1, 0.0, 4.0}};
    err = oracle::capture_error(Errc::invalid_spec, [&] { synthesize(spec); });
    CHECK(*err.index() == 0);
}

TEST_CASE("the stock composite is well-formed for the sparsity experiments") {
    SynthSpec spec = default_hfo_composite();
    CHECK(spec.kind == SignalKind::hfo_composite);
    CHECK(spec.sample_rate_hz == 2000.0);
    CHECK(spec.band_low_hz == 80.0);
    CHECK(spec.band_high_hz == 250.0);
    CHECK(spec.duration_s == 10.0);
    REQUIRE(spec.bursts.size() == 6);
    for (const BurstSpec& b : spec.bursts) {
        CHECK(b.start_s >= 2.0);
        CHECK(b.start_s + b.duration_s <= spec.duration_s);
        CHECK(b.center_hz >= spec.band_low_hz);
        CHECK(b.center_hz <= spec.band_high_hz);
        CHECK(b.amplitude > 1.0);
    }
    Signal s = synthesize(spec);
    CHECK(s.size() == 20000);
    CHECK_NOTHROW(validate_signal(s));
}
