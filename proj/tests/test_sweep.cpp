#include "adm/sweep.hpp"

#include "adm/encoder.hpp"
#include "adm/reconstruction.hpp"
#include "adm/synthesis.hpp"
#include "adm/types.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

using namespace adm;

namespace {

const std::vector<SweepRecord>& default_records() {
    static const std::vector<SweepRecord> records = rmse_sweep(default_sweep_grid());
    return records;
}

std::vector<double> row_rmse(const std::vector<SweepRecord>& records,
                             const SweepGrid& grid, std::size_t row) {
    const std::size_t nv = grid.v_th_values.size();
    std::vector<double> out(nv);
    for (std::size_t i = 0; i < nv; ++i) out[i] = records[row * nv + i].rmse;
    return out;
}

} // namespace

TEST_CASE("default grid shape") {
    SweepGrid grid = default_sweep_grid();
    REQUIRE(grid.v_th_values.size() == 16);
    CHECK(grid.v_th_values.front() == doctest::Approx(0.01));
    CHECK(grid.v_th_values.back() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < grid.v_th_values.size(); ++i)
        CHECK(grid.v_th_values[i] > grid.v_th_values[i - 1]);
    REQUIRE(grid.t_rfr_values_s.size() == 5);
    CHECK(grid.t_rfr_values_s[0] == 0.0);
    CHECK(grid.t_rfr_values_s[4] == doctest::Approx(2e-3));
    CHECK(grid.signal_spec.kind == SignalKind::sine);
}

TEST_CASE("grid validation") {
    SweepGrid grid = default_sweep_grid();
    grid.v_th_values.clear();
    oracle::capture_error(Errc::invalid_config, [&] { rmse_sweep(grid); });

    grid = default_sweep_grid();
    grid.v_th_values[3] = 0.0;
    auto err = oracle::capture_error(Errc::non_positive_threshold,
                                     [&] { rmse_sweep(grid); });
    REQUIRE(err.index().has_value());
    CHECK(*err.index() == 3);

    grid = default_sweep_grid();
    grid.t_rfr_values_s = {1e-3, 0.0};
    oracle::capture_error(Errc::invalid_config, [&] { rmse_sweep(grid); });
}

TEST_CASE("a one-cell grid reduces to the direct pipeline") {
    SweepGrid grid = default_sweep_grid();
    grid.v_th_values = {0.05};
    grid.t_rfr_values_s = {5e-4};
    std::vector<SweepRecord> records = rmse_sweep(grid);
    REQUIRE(records.size() == 1);

    Signal s = synthesize(grid.signal_spec);
    AdmConfig cfg(0.05, 0.05, 5e-4);
    EventStream st = encode(s, cfg);
    ReconstructionConfig rc = grid.reconstruction;
    rc.v_thu = rc.v_thd = 0.05;
    Signal rec = reconstruct(st, rc);
    const double direct = detrended_rmse(s, rec, rc.highpass_cutoff_hz);

    CHECK(records[0].rmse == direct);
    CHECK(records[0].event_count == st.events.size());
    CHECK(records[0].event_rate_hz == st.event_rate_hz());
}

TEST_CASE("records come back in grid order") {
    const SweepGrid grid = default_sweep_grid();
    const auto& records = default_records();
    REQUIRE(records.size() == 80);
    const std::size_t nv = grid.v_th_values.size();
    for (std::size_t r = 0; r < grid.t_rfr_values_s.size(); ++r)
        for (std::size_t i = 0; i < nv; ++i) {
            CHECK(records[r * nv + i].v_th == grid.v_th_values[i]);
            CHECK(records[r * nv + i].t_rfr_s == grid.t_rfr_values_s[r]);
        }
}

TEST_CASE("cells are independent of the grid they sit in") {
    const SweepGrid grid = default_sweep_grid();
    const auto& records = default_records();
    const std::size_t nv = grid.v_th_values.size();
    for (auto [row, col] : {std::pair<std::size_t, std::size_t>{0, 0},
                            {1, 4},
                            {3, 11},
                            {4, 15}}) {
        SweepGrid single = grid;
        single.v_th_values = {grid.v_th_values[col]};
        single.t_rfr_values_s = {grid.t_rfr_values_s[row]};
        std::vector<SweepRecord> one = rmse_sweep(single);
        REQUIRE(one.size() == 1);
        CHECK(one[0].rmse == records[row * nv + col].rmse);
        CHECK(one[0].event_count == records[row * nv + col].event_count);
    }
}

TEST_CASE("sweep rerun is deterministic") {
    SweepGrid grid = default_sweep_grid();
    grid.v_th_values = {0.02, 0.1, 0.5};
    std::vector<SweepRecord> a = rmse_sweep(grid);
    std::vector<SweepRecord> b = rmse_sweep(grid);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].rmse == b[i].rmse);
        CHECK(a[i].event_count == b[i].event_count);
    }
}

TEST_CASE("every record respects the refractory cap") {
    const auto& records = default_records();
    for (const SweepRecord& r : records)
        if (r.t_rfr_s > 0.0)
            CHECK(r.event_rate_hz <= 1.0 / r.t_rfr_s * (1.0 + 1e-12));
}

TEST_CASE("free-running row improves monotonically with finer thresholds") {
    const SweepGrid grid = default_sweep_grid();
    std::vector<double> row = row_rmse(default_records(), grid, 0);
    for (std::size_t i = 0; i + 1 < row.size(); ++i)
        CHECK(row[i] <= row[i + 1] + 1e-12);
}

TEST_CASE("binding rows have an interior quasi-convex minimum above zero") {
    const SweepGrid grid = default_sweep_grid();
    const std::size_t nv = grid.v_th_values.size();
    for (std::size_t r = 1; r < grid.t_rfr_values_s.size(); ++r) {
        std::vector<double> row = row_rmse(default_records(), grid, r);
        std::size_t argmin = 0;
        for (std::size_t i = 1; i < nv; ++i)
            if (row[i] < row[argmin]) argmin = i;
        CHECK(argmin > 0);
        CHECK(argmin < nv - 1);
        CHECK(row[argmin] > 0.0);
        CHECK(oracle::significant_sign_changes(row, 0.02) <= 1);
    }
}

TEST_CASE("per-row minima grow with the refractory period") {
    const SweepGrid grid = default_sweep_grid();
    double previous = -1.0;
    for (std::size_t r = 0; r < grid.t_rfr_values_s.size(); ++r) {
        std::vector<double> row = row_rmse(default_records(), grid, r);
        double best = row[0];
        for (double v : row) best = std::min(best, v);
        CHECK(best > previous);
        previous = best;
    }
}

TEST_CASE("curves are ordered at the largest rate-bound threshold") {
    const SweepGrid grid = default_sweep_grid();
    const auto& records = default_records();
    const std::size_t nv = grid.v_th_values.size();
    const double fs = grid.signal_spec.sample_rate_hz;
    for (std::size_t r = 1; r < grid.t_rfr_values_s.size(); ++r) {
        const double t = grid.t_rfr_values_s[r];
        const double cap =
            fs / static_cast<double>(refractory_samples(t, fs) + 1);
        std::size_t bound = nv;
        for (std::size_t i = 0; i < nv; ++i)
            if (records[r * nv + i].event_rate_hz >= 0.98 * cap) bound = i;
        REQUIRE(bound < nv);
        CHECK(records[r * nv + bound].rmse >= records[(r - 1) * nv + bound].rmse);
    }
}

TEST_CASE("find_min_rmse selection and tie-breaking") {
    SweepRecord only{0.3, 1e-3, 0.42, 100, 200.0};
    SweepRecord best = find_min_rmse({only});
    CHECK(best.v_th == 0.3);

    std::vector<SweepRecord> tie = {{0.2, 0.0, 0.5, 10, 10.0},
                                    {0.1, 0.0, 0.5, 11, 11.0},
                                    {0.4, 0.0, 0.9, 12, 12.0}};
    best = find_min_rmse(tie);
    CHECK(best.v_th == 0.1);

    std::vector<SweepRecord> t_tie = {{0.1, 2e-3, 0.5, 10, 10.0},
                                      {0.1, 1e-3, 0.5, 11, 11.0}};
    best = find_min_rmse(t_tie);
    CHECK(best.t_rfr_s == 1e-3);

    oracle::capture_error(Errc::empty_records, [] { find_min_rmse({}); });
}

TEST_CASE("the stock sweep minimum is free-running at the finest threshold") {
    const SweepGrid grid = default_sweep_grid();
    SweepRecord best = find_min_rmse(default_records());
    CHECK(best.rmse > 0.0);
    CHECK(best.t_rfr_s == 0.0);
    CHECK(best.v_th == grid.v_th_values.front());
}

TEST_CASE("rate model fit is linear with unit-elastic doubling") {
    SynthSpec tmpl;
    tmpl.kind = SignalKind::sine;
    tmpl.duration_s = 1.0;
    tmpl.sample_rate_hz = 200000.0;
    const std::vector<double> amplitudes = {0.5, 1.0, 2.0};
    const std::vector<double> frequencies = {5.0, 10.0, 20.0};
    const std::vector<double> v_ths = {0.02, 0.04, 0.08};
    RateModelFit fit = rate_model_fit(amplitudes, frequencies, v_ths, 0.0, tmpl);

    REQUIRE(fit.points.size() == 27);
    CHECK(fit.r_squared >= 0.99);
    CHECK(fit.k > 3.5);
    CHECK(fit.k < 4.3);

    std::vector<double> xs, ys;
    for (const RatePoint& p : fit.points) {
        CHECK(p.predictor ==
              doctest::Approx(p.amplitude * p.frequency_hz / p.v_th));
        xs.push_back(p.predictor);
        ys.push_back(p.measured_rate_hz);
    }
    oracle::OriginFit check = oracle::origin_fit(xs, ys);
    CHECK(fit.k == doctest::Approx(check.k).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(check.r_squared).epsilon(1e-12));

    auto rate_at = [&](double a, double f, double v) {
        for (const RatePoint& p : fit.points)
            if (p.amplitude == a && p.frequency_hz == f && p.v_th == v)
                return p.measured_rate_hz;
        REQUIRE(false);
        return 0.0;
    };
    for (double f : frequencies)
        for (double v : v_ths) {
            CHECK(rate_at(1.0, f, v) / rate_at(0.5, f, v) ==
                  doctest::Approx(2.0).epsilon(0.05));
            CHECK(rate_at(2.0, f, v) / rate_at(1.0, f, v) ==
                  doctest::Approx(2.0).epsilon(0.05));
        }
    for (double a : amplitudes)
        for (double f : frequencies) {
            CHECK(rate_at(a, f, 0.02) / rate_at(a, f, 0.04) ==
                  doctest::Approx(2.0).epsilon(0.05));
            CHECK(rate_at(a, f, 0.04) / rate_at(a, f, 0.08) ==
                  doctest::Approx(2.0).epsilon(0.05));
        }
}

TEST_CASE("per-axis five-point decade sweeps are linear") {
    SynthSpec tmpl;
    tmpl.kind = SignalKind::sine;
    tmpl.duration_s = 1.0;
    tmpl.sample_rate_hz = 100000.0;

    auto fit_axis = [&](const std::vector<double>& amplitudes,
                        const std::vector<double>& frequencies,
                        const std::vector<double>& v_ths) {
        RateModelFit fit = rate_model_fit(amplitudes, frequencies, v_ths, 0.0, tmpl);
        std::vector<double> xs, ys;
        for (const RatePoint& p : fit.points) {
            xs.push_back(p.predictor);
            ys.push_back(p.measured_rate_hz);
        }
        return oracle::origin_fit(xs, ys).r_squared;
    };

    CHECK(fit_axis({0.3, 0.55, 1.0, 1.8, 3.0}, {10.0}, {0.04}) > 0.99);
    CHECK(fit_axis({1.0}, {4.0, 7.0, 13.0, 22.0, 40.0}, {0.04}) > 0.99);
    CHECK(fit_axis({1.0}, {10.0}, {0.01, 0.018, 0.032, 0.056, 0.1}) > 0.99);
}

TEST_CASE("saturated regimes are refused, not fitted") {
    SynthSpec tmpl;
    tmpl.kind = SignalKind::sine;
    tmpl.duration_s = 0.5;
    tmpl.sample_rate_hz = 50000.0;
    oracle::capture_error(Errc::saturated_regime, [&] {
        rate_model_fit({10.0}, {100.0}, {0.01}, 1e-3, tmpl);
    });
}
