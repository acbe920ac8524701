#include "cfgn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "cfgn/cyclic.hpp"
#include "cfgn/estimation.hpp"
#include "cfgn/format.hpp"
#include "cfgn/sampler.hpp"
#include "cfgn/svg.hpp"

namespace cfgn {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr double pi = std::numbers::pi;

using Row = std::vector<double>;

void write_text(const fs::path& file, const std::string& text, RunOutcome& out) {
    std::ofstream f(file, std::ios::binary);
    if (!f) throw Error(ErrorKind::io_error, "cannot write " + file.string());
    f << text;
    if (!f) throw Error(ErrorKind::io_error, "write failed for " + file.string());
    out.artifacts.push_back(file);
}

fs::path prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Error(ErrorKind::io_error, "cannot create directory " + dir.string());
    return dir;
}

std::string csv(const std::string& header, const std::vector<std::string>& columns, const std::vector<Row>& rows) {
    std::string s = header;
    for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
    s += '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + format_double(r[i]);
        s += '\n';
    }
    return s;
}

// Header lines for embedding in a report CSV (report_csv adds the '#').
std::string bare_header(const ExperimentConfig& cfg, std::string_view artifact) {
    return std::string("artifact=") + std::string(artifact) + "\nconfig_hash=" + hex64(config_hash(cfg)) + " seed="
         + std::to_string(cfg.seed) + " tool=" + std::string(tool_version);
}

std::vector<double> lag_grid(long h_max) {
    std::vector<double> g(static_cast<std::size_t>(h_max + 1));
    for (std::size_t h = 0; h < g.size(); ++h) g[h] = static_cast<double>(h);
    return g;
}

std::vector<double> away_from_carrier(const std::vector<double>& freqs, double lambda0) {
    std::vector<double> out;
    for (double f : freqs) {
        if (std::abs(f - lambda0) > 0.2 && std::abs(f + lambda0) > 0.2) out.push_back(f);
    }
    return out;
}

// Offsets omega of lambda = lambda0 + omega used for the cyclic-spectrum asymptote.
std::vector<double> asymptote_offsets() {
    std::vector<double> w(48);
    const double lo = std::log10(0.005), hi = std::log10(0.19);
    for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(w.size() - 1));
    }
    return w;
}

std::vector<long> envelope_lags() {
    std::vector<long> h;
    for (int k = 0; k < 40; ++k) {
        const long v = std::lround(10.0 * std::pow(100.0, k / 39.0));
        if (h.empty() || v != h.back()) h.push_back(v);
    }
    return h;
}

// RMS of f(n, h') over n in one modulation period and h' in [h, h + 2 pi / lambda0).
template <class F>
double envelope(F f, long h, double lambda0) {
    const long lags = std::max(1L, std::lround(2.0 * pi / lambda0));
    const long times = modulation_period(lambda0).value_or(lags);
    double s = 0.0;
    for (long n = 0; n < times; ++n) {
        for (long k = 0; k < lags; ++k) {
            const double v = f(n, h + k);
            s += v * v;
        }
    }
    return std::sqrt(s / static_cast<double>(lags * times));
}

std::vector<complex> caf_values(const std::vector<ComplexEstimate>& v) {
    std::vector<complex> out;
    for (const auto& e : v) out.push_back(e.value);
    return out;
}

std::vector<double> se_re(const std::vector<ComplexEstimate>& v) {
    std::vector<double> out;
    for (const auto& e : v) out.push_back(e.se_re);
    return out;
}

std::vector<double> se_im(const std::vector<ComplexEstimate>& v) {
    std::vector<double> out;
    for (const auto& e : v) out.push_back(e.se_im);
    return out;
}

Ensemble build_ensemble(const ExperimentConfig& cfg, long n, long reps, std::uint64_t seed) {
    return make_ensemble(cfg.cfgn_params(), static_cast<std::size_t>(n), static_cast<std::size_t>(reps), seed,
                         static_cast<unsigned>(cfg.threads));
}

EstimationOptions estimation_options(const ExperimentConfig& cfg) {
    return {static_cast<unsigned>(cfg.threads)};
}

// ---------------------------------------------------------------- simulate

void run_simulate(const ExperimentConfig& cfg, const fs::path& dir, RunOutcome& out) {
    const auto e = build_ensemble(cfg, cfg.n_points, cfg.reps, cfg.seed);
    const fs::path file = dir / "ensemble.csv";
    write_ensemble_csv(e, file, artifact_header(cfg, "ensemble"));
    out.artifacts.push_back(file);
    json s;
    s["subcommand"] = "simulate";
    s["ensemble_key"] = hex64(e.key());
    s["replications"] = e.replications();
    s["length"] = e.length();
    s["jitter"] = e.jitter();
    out.summary = s.dump();
}

// ---------------------------------------------------------------- theory

void run_theory(const ExperimentConfig& cfg, const fs::path& dir, RunOutcome& out) {
    const CyclicModel model(cfg.cfgn_params());
    const double l0 = model.params().lambda0();
    if (cfg.wants("acvf")) {
        std::vector<Row> rows;
        for (long h = 0; h <= cfg.h_max; ++h) rows.push_back({double(h), model.acvf(cfg.acvf_n, h).total});
        write_text(dir / "theory_acvf.csv", csv(artifact_header(cfg, "theory_acvf"), {"h", "gamma_theory"}, rows), out);
    }
    if (cfg.wants("caf")) {
        std::vector<Row> rows;
        for (long h = 0; h <= cfg.h_max; ++h) {
            const complex r0 = model.caf(CyclicFrequency::zero, h);
            const complex r2 = model.caf(CyclicFrequency::plus, h);
            rows.push_back({double(h), r0.real(), r0.imag(), r2.real(), r2.imag()});
        }
        write_text(dir / "theory_caf.csv",
                   csv(artifact_header(cfg, "theory_caf"), {"h", "caf0_re", "caf0_im", "caf2_re", "caf2_im"}, rows),
                   out);
    }
    if (cfg.wants("spectrum")) {
        std::vector<Row> rows;
        for (double f : cfg.freq_grid()) {
            const complex s0 = model.cyclic_spectrum(CyclicFrequency::zero, f);
            const complex s2 = model.cyclic_spectrum(CyclicFrequency::plus, f);
            rows.push_back({f, s0.real(), s0.imag(), s2.real(), s2.imag()});
        }
        write_text(dir / "theory_spectrum.csv",
                   csv(artifact_header(cfg, "theory_spectrum"), {"lambda", "s0_re", "s0_im", "s2_re", "s2_im"}, rows),
                   out);
    }
    if (cfg.wants("asymptote")) {
        std::vector<Row> rows;
        for (long h = 1; h <= 1000; ++h) {
            rows.push_back({double(h), model.acvf(cfg.acvf_n, h).total, model.acvf_asymptote(cfg.acvf_n, h)});
        }
        write_text(dir / "theory_acvf_asymptote.csv",
                   csv(artifact_header(cfg, "theory_acvf_asymptote"), {"h", "gamma_theory", "gamma_asymptote"}, rows),
                   out);
        rows.clear();
        for (double w : asymptote_offsets()) {
            const complex s = model.cyclic_spectrum(CyclicFrequency::plus, l0 + w);
            const complex a = model.cyclic_spectrum_asymptote(l0 + w);
            rows.push_back({w, s.real(), s.imag(), a.real(), a.imag()});
        }
        write_text(dir / "theory_spectrum_asymptote.csv",
                   csv(artifact_header(cfg, "theory_spectrum_asymptote"),
                       {"omega", "s2_re", "s2_im", "s2_asymptote_re", "s2_asymptote_im"}, rows),
                   out);
    }
    json s;
    s["subcommand"] = "theory";
    s["artifacts"] = out.artifacts.size();
    out.summary = s.dump();
}

// ---------------------------------------------------------------- estimate

void run_estimate(const ExperimentConfig& cfg, const fs::path& dir, RunOutcome& out) {
    const auto e = build_ensemble(cfg, cfg.n_points, cfg.reps, cfg.seed);
    const auto opt = estimation_options(cfg);
    if (cfg.wants("acvf")) {
        const auto a = empirical_acvf(e, cfg.acvf_n, cfg.h_max, opt);
        std::vector<Row> rows;
        for (long h = 0; h <= cfg.h_max; ++h) {
            rows.push_back({double(h), a.estimate.at(h), a.std_error[static_cast<std::size_t>(h)]});
        }
        write_text(dir / "estimate_acvf.csv", csv(artifact_header(cfg, "estimate_acvf"), {"h", "gamma_emp", "se"}, rows),
                   out);
    }
    if (cfg.wants("caf")) {
        const long nw = snap_window(e.params(), e.length(), cfg.h_max);
        const auto r0 = empirical_caf_series(e, CyclicFrequency::zero, cfg.h_max, nw, opt);
        const auto r2 = empirical_caf_series(e, CyclicFrequency::plus, cfg.h_max, nw, opt);
        std::vector<Row> rows;
        for (std::size_t h = 0; h < r0.size(); ++h) {
            rows.push_back({double(h), r0[h].value.real(), r0[h].value.imag(), r0[h].se_re, r0[h].se_im,
                            r2[h].value.real(), r2[h].value.imag(), r2[h].se_re, r2[h].se_im});
        }
        write_text(dir / "estimate_caf.csv",
                   csv(artifact_header(cfg, "estimate_caf"),
                       {"h", "caf0_re", "caf0_im", "caf0_se_re", "caf0_se_im", "caf2_re", "caf2_im", "caf2_se_re",
                        "caf2_se_im"},
                       rows),
                   out);
    }
    if (cfg.wants("spectrum")) {
        const auto grid = cfg.freq_grid();
        const auto s0 = empirical_cyclic_spectrum(e, CyclicFrequency::zero, grid, cfg.spectrum_h_max, cfg.window, 0, opt);
        const auto s2 = empirical_cyclic_spectrum(e, CyclicFrequency::plus, grid, cfg.spectrum_h_max, cfg.window, 0, opt);
        std::vector<Row> rows;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            rows.push_back({grid[i], s0.estimate.values[i].real(), s0.estimate.values[i].imag(), s0.se_re[i],
                            s0.se_im[i], s2.estimate.values[i].real(), s2.estimate.values[i].imag(), s2.se_re[i],
                            s2.se_im[i]});
        }
        write_text(dir / "estimate_spectrum.csv",
                   csv(artifact_header(cfg, "estimate_spectrum"),
                       {"lambda", "s0_re", "s0_im", "s0_se_re", "s0_se_im", "s2_re", "s2_im", "s2_se_re", "s2_se_im"},
                       rows),
                   out);
    }
    json s;
    s["subcommand"] = "estimate";
    s["ensemble_key"] = hex64(e.key());
    s["artifacts"] = out.artifacts.size();
    out.summary = s.dump();
}

// ---------------------------------------------------------------- compare

struct NamedReport {
    ComparisonReport report;
    bool gating = true;
};

std::vector<NamedReport> comparison_reports(const ExperimentConfig& cfg, const Ensemble& e, bool closed_form_spectra) {
    const CyclicModel model(e.params());
    const auto opt = estimation_options(cfg);
    const double l0 = e.params().lambda0();
    std::vector<NamedReport> reports;
    if (cfg.wants("acvf")) {
        const auto a = empirical_acvf(e, cfg.acvf_n, cfg.h_max, opt);
        std::vector<double> theory;
        for (long h = 0; h <= cfg.h_max; ++h) theory.push_back(model.acvf(cfg.acvf_n, h).total);
        reports.push_back({compare("acvf", lag_grid(cfg.h_max), theory, a.estimate.values, a.std_error, cfg.tol)});
    }
    if (cfg.wants("caf")) {
        const long nw = snap_window(e.params(), e.length(), cfg.h_max);
        for (auto [alpha, name] : {std::pair{CyclicFrequency::zero, "caf0"}, std::pair{CyclicFrequency::plus, "caf2"}}) {
            const auto r = empirical_caf_series(e, alpha, cfg.h_max, nw, opt);
            std::vector<complex> theory;
            for (long h = 0; h <= cfg.h_max; ++h) theory.push_back(model.caf(alpha, h));
            reports.push_back({compare(name, lag_grid(cfg.h_max), theory, caf_values(r), se_re(r), se_im(r), cfg.tol)});
        }
    }
    if (cfg.wants("spectrum")) {
        const auto grid = away_from_carrier(cfg.freq_grid(), l0);
        for (auto [alpha, name] :
             {std::pair{CyclicFrequency::zero, std::string("spectrum0")}, std::pair{CyclicFrequency::plus, std::string("spectrum2")}}) {
            const auto s = empirical_cyclic_spectrum(e, alpha, grid, cfg.spectrum_h_max, cfg.window, 0, opt);
            const auto expected = truncated_cyclic_spectrum(model, alpha, grid, cfg.spectrum_h_max, cfg.window);
            reports.push_back(
                {compare(name, grid, expected.values, s.estimate.values, s.se_re, s.se_im, cfg.tol)});
            if (closed_form_spectra) {
                std::vector<complex> theory;
                for (double f : grid) theory.push_back(model.cyclic_spectrum(alpha, f));
                reports.push_back({compare(name + "_closed_form", grid, theory, s.estimate.values, s.se_re, s.se_im,
                                           cfg.tol),
                                   false});
            }
        }
    }
    return reports;
}

void run_compare(const ExperimentConfig& cfg, const fs::path& dir, RunOutcome& out) {
    const auto e = build_ensemble(cfg, cfg.n_points, cfg.reps, cfg.seed);
    const auto reports = comparison_reports(cfg, e, true);
    json s;
    s["subcommand"] = "compare";
    s["config_hash"] = hex64(config_hash(cfg));
    s["seed"] = cfg.seed;
    s["tool"] = std::string(tool_version);
    s["ensemble_key"] = hex64(e.key());
    bool pass = true;
    json list = json::array();
    for (const auto& nr : reports) {
        const auto& r = nr.report;
        write_text(dir / ("compare_" + r.statistic_name + ".csv"),
                   report_csv(r, bare_header(cfg, "compare_" + r.statistic_name)), out);
        json j = json::parse(report_json(r));
        j["gating"] = nr.gating;
        list.push_back(j);
        if (nr.gating) pass = pass && r.pass;
    }
    s["reports"] = list;
    s["pass"] = pass;
    out.summary = s.dump();
    write_text(dir / "compare_summary.json", s.dump(2) + "\n", out);
    out.exit_code = pass ? exit_success : exit_comparison_failed;
}

// ---------------------------------------------------------------- figures

struct Cell {
    Variant variant;
    double rho;
};

std::string cell_tag(const Cell& c) {
    return std::string(to_string(c.variant)) + "_rho" + format_double(c.rho);
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t cell, std::string_view family) {
    return Fnv1a().u64(seed).u64(cell).text(family).value();
}

struct CellResult {
    RunOutcome out;
    json reports = json::array();
};

ExperimentConfig with_cell(const ExperimentConfig& cfg, const Cell& c) {
    ExperimentConfig x = cfg;
    x.variant = c.variant;
    x.rho = c.rho;
    return x;
}

PlotSeries line(std::string label, std::vector<double> x, std::vector<double> y, std::string color, bool dashed = false,
                bool markers = false) {
    PlotSeries s;
    s.label = std::move(label);
    s.x = std::move(x);
    s.y = std::move(y);
    s.color = std::move(color);
    s.dashed = dashed;
    s.markers = markers;
    return s;
}

void report_figure(const ComparisonReport& r, bool imaginary, const std::string& name, const std::string& title,
                   const std::string& x_label, const ExperimentConfig& cfg, const fs::path& dir, CellResult& res) {
    std::vector<double> th, em;
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        th.push_back(imaginary ? r.theoretical[i].imag() : r.theoretical[i].real());
        em.push_back(imaginary ? r.empirical[i].imag() : r.empirical[i].real());
    }
    write_text(dir / (name + ".csv"), report_csv(r, bare_header(cfg, name)), res.out);
    const PlotSeries series[] = {line("theory", r.grid, th, "#1f77b4"),
                                 line("Monte Carlo", r.grid, em, "#d62728", true, r.grid.size() <= 64)};
    PlotSpec spec{title, x_label, imaginary ? "imaginary part" : "value"};
    write_text(dir / (name + ".svg"), render_svg(spec, series, "config_hash=" + hex64(config_hash(cfg)) + " seed="
                                                                      + std::to_string(cfg.seed) + " tool="
                                                                      + std::string(tool_version)),
               res.out);
    json j = json::parse(report_json(r));
    j["figure"] = name;
    res.reports.push_back(j);
}

const std::array<std::pair<double, double>, 3> asymptote_hurst{{{0.85, 0.4}, {0.4, 0.85}, {0.75, 0.75}}};
const std::array<const char*, 3> palette{"#1f77b4", "#2ca02c", "#9467bd"};

std::string hurst_label(const std::pair<double, double>& h) {
    return "H=(" + format_double(h.first) + "," + format_double(h.second) + ")";
}

void figures_cell(const ExperimentConfig& base, const Cell& cell, std::size_t index, const fs::path& dir,
                  CellResult& res) {
    const ExperimentConfig cfg = with_cell(base, cell);
    const std::string tag = cell_tag(cell);
    const std::string cell_title = std::string(to_string(cell.variant)) + ", rho=" + format_double(cell.rho);
    const auto opt = EstimationOptions{1};

    // Families 1-6: ACVF, CAF at 2 lambda0, cyclic spectra at 0 and 2 lambda0.
    {
        const auto e = make_ensemble(cfg.cfgn_params(), static_cast<std::size_t>(cfg.n_points),
                                     static_cast<std::size_t>(cfg.reps), cell_seed(cfg.seed, index, "main"));
        const CyclicModel model(e.params());
        const auto acvf_est = empirical_acvf(e, cfg.acvf_n, cfg.h_max, opt);
        std::vector<double> acvf_th;
        for (long h = 0; h <= cfg.h_max; ++h) acvf_th.push_back(model.acvf(cfg.acvf_n, h).total);
        report_figure(compare("acvf", lag_grid(cfg.h_max), acvf_th, acvf_est.estimate.values, acvf_est.std_error, cfg.tol),
                      false, "acvf_" + tag, "ACVF gamma(" + std::to_string(cfg.acvf_n) + ", h), " + cell_title, "h",
                      cfg, dir, res);

        const long nw = snap_window(e.params(), e.length(), cfg.h_max);
        const auto r2 = empirical_caf_series(e, CyclicFrequency::plus, cfg.h_max, nw, opt);
        std::vector<complex> caf_th;
        for (long h = 0; h <= cfg.h_max; ++h) caf_th.push_back(model.caf(CyclicFrequency::plus, h));
        const auto caf_rep = compare("caf2", lag_grid(cfg.h_max), caf_th, caf_values(r2), se_re(r2), se_im(r2), cfg.tol);
        report_figure(caf_rep, false, "caf2_re_" + tag, "Re R^{2 lambda0}(h), " + cell_title, "h", cfg, dir, res);
        report_figure(caf_rep, true, "caf2_im_" + tag, "Im R^{2 lambda0}(h), " + cell_title, "h", cfg, dir, res);

        const auto grid = cfg.freq_grid();
        for (auto [alpha, label] : {std::pair{CyclicFrequency::zero, "spectrum0"}, std::pair{CyclicFrequency::plus, "spectrum2"}}) {
            const auto s = empirical_cyclic_spectrum(e, alpha, grid, cfg.spectrum_h_max, cfg.window, 0, opt);
            std::vector<complex> th;
            for (double f : grid) th.push_back(model.cyclic_spectrum(alpha, f));
            const auto rep = compare(label, grid, th, s.estimate.values, s.se_re, s.se_im, cfg.tol);
            if (alpha == CyclicFrequency::zero) {
                report_figure(rep, false, "spectrum0_" + tag, "S^0(lambda), " + cell_title, "lambda", cfg, dir, res);
            } else {
                report_figure(rep, false, "spectrum2_re_" + tag, "Re S^{2 lambda0}(lambda), " + cell_title, "lambda",
                              cfg, dir, res);
                report_figure(rep, true, "spectrum2_im_" + tag, "Im S^{2 lambda0}(lambda), " + cell_title, "lambda",
                              cfg, dir, res);
            }
        }
    }

    const std::string comment = "config_hash=" + hex64(config_hash(cfg)) + " seed=" + std::to_string(cfg.seed)
                              + " tool=" + std::string(tool_version);

    // Family 7: ACVF envelope against its power-law asymptote.
    {
        const auto lags = envelope_lags();
        std::vector<std::string> cols{"h"};
        std::vector<Row> rows(lags.size());
        for (std::size_t i = 0; i < lags.size(); ++i) rows[i].push_back(double(lags[i]));
        std::vector<PlotSeries> series;
        for (std::size_t c = 0; c < asymptote_hurst.size(); ++c) {
            ExperimentConfig hc = cfg;
            hc.h1 = asymptote_hurst[c].first;
            hc.h2 = asymptote_hurst[c].second;
            const CyclicModel model(hc.cfgn_params());
            const double l0 = model.params().lambda0();
            std::vector<double> x, yt, ya;
            for (std::size_t i = 0; i < lags.size(); ++i) {
                const double et = envelope([&](long n, long h) { return model.acvf(n, h).total; }, lags[i], l0);
                const double ea = envelope([&](long n, long h) { return model.acvf_asymptote(n, h); }, lags[i], l0);
                rows[i].push_back(et);
                rows[i].push_back(ea);
                x.push_back(double(lags[i]));
                yt.push_back(et);
                ya.push_back(ea);
            }
            const std::string lbl = hurst_label(asymptote_hurst[c]);
            cols.push_back("env_theory_" + std::to_string(c + 1));
            cols.push_back("env_asymptote_" + std::to_string(c + 1));
            series.push_back(line(lbl, x, yt, palette[c]));
            series.push_back(line(lbl + " asymptote", std::move(x), std::move(ya), palette[c], true));
        }
        const std::string name = "acvf_asymptote_" + tag;
        write_text(dir / (name + ".csv"), csv(artifact_header(cfg, name), cols, rows), res.out);
        PlotSpec spec{"ACVF envelope vs asymptote, " + cell_title, "h", "RMS over one period", true};
        write_text(dir / (name + ".svg"), render_svg(spec, series, comment), res.out);
    }

    // Family 8: |S^{2 lambda0}| near lambda0 against its power-law asymptote, with Monte Carlo.
    {
        const auto offsets = asymptote_offsets();
        std::vector<std::string> cols{"omega"};
        std::vector<Row> rows(offsets.size());
        for (std::size_t i = 0; i < offsets.size(); ++i) rows[i].push_back(offsets[i]);
        std::vector<PlotSeries> series;
        for (std::size_t c = 0; c < asymptote_hurst.size(); ++c) {
            ExperimentConfig hc = cfg;
            hc.h1 = asymptote_hurst[c].first;
            hc.h2 = asymptote_hurst[c].second;
            const auto cp = hc.cfgn_params();
            const CyclicModel model(cp);
            const double l0 = cp.lambda0();
            const auto e = make_ensemble(cp, static_cast<std::size_t>(cfg.n_points),
                                         static_cast<std::size_t>(cfg.asymptote_reps),
                                         cell_seed(cfg.seed, index, "asymptote" + std::to_string(c)));
            std::vector<double> freqs;
            for (double w : offsets) freqs.push_back(l0 + w);
            const auto s = empirical_cyclic_spectrum(e, CyclicFrequency::plus, freqs, cfg.spectrum_h_max, cfg.window, 0,
                                                     opt);
            std::vector<double> yt, ya, ye;
            for (std::size_t i = 0; i < offsets.size(); ++i) {
                const double t = std::abs(model.cyclic_spectrum(CyclicFrequency::plus, freqs[i]));
                const double a = std::abs(model.cyclic_spectrum_asymptote(freqs[i]));
                const complex v = s.estimate.values[i];
                const double m = std::abs(v);
                // Delta-method SE of the magnitude.
                const double se = m > 0.0 ? std::hypot(v.real() * s.se_re[i], v.imag() * s.se_im[i]) / m
                                           : std::hypot(s.se_re[i], s.se_im[i]);
                rows[i].insert(rows[i].end(), {t, a, m, se});
                yt.push_back(t);
                ya.push_back(a);
                ye.push_back(m);
            }
            const std::string lbl = hurst_label(asymptote_hurst[c]);
            for (const char* k : {"theory_abs_", "asymptote_abs_", "emp_abs_", "emp_se_"}) {
                cols.push_back(k + std::to_string(c + 1));
            }
            series.push_back(line(lbl, offsets, yt, palette[c]));
            series.push_back(line(lbl + " asymptote", offsets, ya, palette[c], true));
            series.push_back(line(lbl + " Monte Carlo", offsets, ye, palette[c], false, true));
        }
        const std::string name = "spectrum_asymptote_" + tag;
        write_text(dir / (name + ".csv"), csv(artifact_header(cfg, name), cols, rows), res.out);
        PlotSpec spec{"|S^{2 lambda0}(lambda0 + omega)|, " + cell_title, "omega", "magnitude", true};
        write_text(dir / (name + ".svg"), render_svg(spec, series, comment), res.out);
    }
}

void run_figures(const ExperimentConfig& cfg, const fs::path& dir, RunOutcome& out) {
    std::vector<Cell> cells;
    for (Variant v : {Variant::causal, Variant::well_balanced}) {
        for (double rho : {-0.15, 0.0, 0.15}) cells.push_back({v, rho});
    }
    std::vector<CellResult> results(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    auto work = [&](std::size_t i) {
        try {
            figures_cell(cfg, cells[i], i, dir, results[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(cfg.threads), 1, cells.size());
    for (std::size_t first = 0; first < cells.size(); first += threads) {
        std::vector<std::jthread> pool;
        for (std::size_t i = first; i < std::min(cells.size(), first + threads); ++i) pool.emplace_back(work, i);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    json s;
    s["subcommand"] = "figures";
    s["config_hash"] = hex64(config_hash(cfg));
    s["seed"] = cfg.seed;
    s["tool"] = std::string(tool_version);
    json list = json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out.artifacts.insert(out.artifacts.end(), results[i].out.artifacts.begin(), results[i].out.artifacts.end());
        json c;
        c["cell"] = cell_tag(cells[i]);
        c["reports"] = results[i].reports;
        list.push_back(c);
    }
    s["cells"] = list;
    out.summary = s.dump();
    write_text(dir / "figures_summary.json", s.dump(2) + "\n", out);
}

} // namespace

std::string artifact_header(const ExperimentConfig& cfg, std::string_view artifact) {
    return "# artifact=" + std::string(artifact) + "\n# config_hash=" + hex64(config_hash(cfg))
         + " seed=" + std::to_string(cfg.seed) + " tool=" + std::string(tool_version) + "\n";
}

RunOutcome run(std::string_view subcommand, const ExperimentConfig& cfg) {
    validate(cfg);
    RunOutcome out;
    const fs::path root(cfg.out_dir);
    if (subcommand == "simulate") {
        run_simulate(cfg, prepare_dir(root), out);
    } else if (subcommand == "theory") {
        run_theory(cfg, prepare_dir(root), out);
    } else if (subcommand == "estimate") {
        run_estimate(cfg, prepare_dir(root), out);
    } else if (subcommand == "compare") {
        run_compare(cfg, prepare_dir(root), out);
    } else if (subcommand == "figures") {
        run_figures(cfg, prepare_dir(root / "figures"), out);
    } else {
        throw Error(ErrorKind::config_error, "unknown subcommand '" + std::string(subcommand) + "'");
    }
    return out;
}

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::config_error:
    case ErrorKind::domain_error:
    case ErrorKind::singular_parameter:
    case ErrorKind::io_error:
        return exit_config_error;
    default:
        return exit_numerical_error;
    }
}

std::string error_json(const Error& e) {
    json j;
    j["error"] = std::string(to_string(e.kind()));
    j["message"] = e.what();
    j["exit_code"] = exit_code_for(e.kind());
    return j.dump();
}

} // namespace cfgn
