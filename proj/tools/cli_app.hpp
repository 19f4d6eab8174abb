// cli_app.hpp
// Command line front end. run() is the whole program; main() only forwards
// argv, which keeps every command testable in-process against string
// streams.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "chiroptica/chiroptica.hpp"

namespace chiroptica::cli {

// Problem in the request itself (flag values, malformed --samples spec).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem in the data being processed (unreadable files, bad CSV, degenerate
// fits).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return std::move(buffer).str();
}

// Empty path means the provided stream (normally stdout).
inline void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot write output file: " + path);
    file << content;
    if (!file) throw DataError("failed while writing output file: " + path);
}

inline bool styling_enabled(const std::ostream& stream) {
    if (std::getenv("CHIROPTICA_NO_COLOR") != nullptr) return false;
    return &stream == &std::cout && ::isatty(::fileno(stdout)) != 0;
}

// Angles in reports carry four decimal places; other values keep six
// significant digits. Full precision is reserved for CSV output.
inline std::string fmt_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline std::string fmt_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string fmt_complex(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
    return buf;
}

inline std::string quote_csv(const std::string& text) {
    std::string out = "\"";
    for (const char ch : text) {
        if (ch == '"') out += "\"\"";
        out += ch;
    }
    out += '"';
    return out;
}

inline SeriesKind parse_series_kind(const std::string& name) {
    if (name == "absorbed") return SeriesKind::AbsorbedPower;
    if (name == "gamma-left") return SeriesKind::GammaLeft;
    if (name == "gamma-right") return SeriesKind::GammaRight;
    if (name == "rotation") return SeriesKind::Rotation;
    return SeriesKind::SpecificRotation;
}

// "Name=S[,Name=S...]": one synthetic sample per entry, negative S means a
// levorotatory sample.
inline std::vector<std::pair<std::string, double>> parse_sample_specs(const std::string& spec) {
    std::vector<std::pair<std::string, double>> samples;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = spec.find(',', start);
        const std::string entry =
            spec.substr(start, (comma == std::string::npos ? spec.size() : comma) - start);
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw UsageError("--samples entries must look like Name=SpecificRotation, got '" +
                             entry + "'");
        const std::string name(chiroptica::detail::trim(std::string_view(entry).substr(0, eq)));
        double value = 0.0;
        if (name.empty() ||
            !chiroptica::detail::parse_number(std::string_view(entry).substr(eq + 1), value))
            throw UsageError("cannot parse --samples entry '" + entry + "'");
        samples.emplace_back(name, value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (samples.empty()) throw UsageError("--samples must name at least one sample");
    return samples;
}

} // namespace detail

struct SimulateParams {
    double specific_rotation = 0.0;
    double concentration_percent = 0.0;
    double path_length_dm = 1.0;
    double wavelength_nm = 589.0;
    double analyzer_angle = 0.0;
    double power_mw = 0.55;
    std::string handedness = "dextro";
    std::string angle_unit = "deg";
    std::string output;
};

inline void run_simulate(const SimulateParams& p, std::ostream& out) {
    ChiralSample sample;
    sample.specific_rotation = p.specific_rotation;
    sample.concentration = p.concentration_percent / 100.0;
    sample.path_length_dm = p.path_length_dm;
    sample.wavelength_m = p.wavelength_nm * 1e-9;
    sample.handedness = p.handedness == "levo" ? Handedness::Levo : Handedness::Dextro;

    const double rotation_deg = rotation_biot(sample);
    const double theta = deg_to_rad(rotation_deg);
    const double alpha =
        p.angle_unit == "rad" ? p.analyzer_angle : deg_to_rad(p.analyzer_angle);
    const double net_angle = theta - alpha;

    const std::vector<OpticalElement> bench = {rotator(theta), analyzer(alpha)};
    const PolarizationState emergent = propagate(bench, horizontal_state());
    const PolarizationState rotated = propagate({bench.data(), 1}, horizontal_state());

    const Intensity source(p.power_mw);
    const Intensity transmitted = transmitted_intensity(source, net_angle);
    const Intensity absorbed = absorbed_intensity(source, net_angle);
    const ChiralPhasePair phases = chiral_phases(theta);
    const cplx axis_overlap = overlap(linear_state(alpha), rotated);

    std::ostringstream report;
    report << "# chiroptica simulate\n";
    report << "handedness: " << p.handedness << '\n';
    report << "specific_rotation: " << detail::fmt_value(p.specific_rotation) << '\n';
    report << "concentration_percent: " << detail::fmt_value(p.concentration_percent) << '\n';
    report << "path_length_dm: " << detail::fmt_value(p.path_length_dm) << '\n';
    report << "wavelength_nm: " << detail::fmt_value(p.wavelength_nm) << '\n';
    report << "source_power_mw: " << detail::fmt_value(p.power_mw) << '\n';
    report << "rotation_deg: " << detail::fmt_angle(rotation_deg) << '\n';
    report << "analyzer_deg: " << detail::fmt_angle(rad_to_deg(alpha)) << '\n';
    report << "net_angle_deg: " << detail::fmt_angle(rad_to_deg(net_angle)) << '\n';
    report << "emergent_h: " << detail::fmt_complex(emergent.amplitudes.x) << '\n';
    report << "emergent_v: " << detail::fmt_complex(emergent.amplitudes.y) << '\n';
    report << "transmitted_mw: " << detail::fmt_value(transmitted.milliwatts) << '\n';
    report << "absorbed_mw: " << detail::fmt_value(absorbed.milliwatts) << '\n';
    report << "gamma_left_rad: " << detail::fmt_angle(phases.gamma_left) << '\n';
    report << "gamma_right_rad: " << detail::fmt_angle(phases.gamma_right) << '\n';
    report << "overlap_magnitude: " << detail::fmt_value(std::abs(axis_overlap)) << '\n';
    if (std::abs(axis_overlap) > 1e-12)
        report << "overlap_phase_rad: " << detail::fmt_angle(wrap_pi(std::arg(axis_overlap)))
               << '\n';
    else
        report << "overlap_phase_rad: undefined\n";

    std::string text = std::move(report).str();
    if (p.output.empty() && detail::styling_enabled(out)) {
        const std::size_t eol = text.find('\n');
        text = "\x1b[1m" + text.substr(0, eol) + "\x1b[0m" + text.substr(eol);
    }
    detail::write_output(p.output, text, out);
}

struct DeriveParams {
    std::string input;
    std::string output;
    double power_mw = 0.55;
    bool power_set = false;
};

inline void run_derive(const DeriveParams& p, std::ostream& out) {
    std::vector<MeasurementRecord> records = parse_measurements(detail::read_file(p.input));
    if (p.power_set)
        for (MeasurementRecord& r : records) r.source_power_mw = p.power_mw;
    try {
        detail::write_output(p.output, to_derived_csv(derive_records(records)), out);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
}

struct FitParams {
    std::string input;
    std::string output;
    bool through_origin = false;
};

inline void run_fit(const FitParams& p, std::ostream& out) {
    const std::vector<MeasurementRecord> records = parse_measurements(detail::read_file(p.input));
    std::map<std::string, std::vector<MeasurementRecord>> groups;
    for (const MeasurementRecord& r : records) groups[r.sample].push_back(r);

    std::string csv = "sample,n_points,specific_rotation,intercept,r_squared,slope_stderr\n";
    for (const auto& [name, group] : groups) {
        FitResult fit;
        try {
            fit = fit_biot(group, p.through_origin);
        } catch (const std::invalid_argument& e) {
            throw DataError("sample '" + name + "': " + e.what());
        }
        csv += chiroptica::detail::csv_safe(name);
        csv += ',';
        csv += std::to_string(fit.n_points);
        csv += ',';
        csv += chiroptica::detail::fmt_full(fit.specific_rotation_estimate());
        csv += ',';
        csv += chiroptica::detail::fmt_full(fit.intercept);
        csv += ',';
        csv += chiroptica::detail::fmt_full(fit.r_squared);
        csv += ',';
        csv += chiroptica::detail::fmt_full(fit.slope_stderr);
        csv += '\n';
    }
    detail::write_output(p.output, csv, out);
}

struct SweepParams {
    std::string samples_spec;
    std::vector<double> concentrations;
    double noise_deg = 0.0;
    std::uint64_t seed = 0;
    double path_length_dm = 1.0;
    double wavelength_nm = 650.0;
    double power_mw = 0.55;
    double temperature_c = 18.0;
    std::string output;
};

inline void run_sweep(const SweepParams& p, std::ostream& out) {
    const auto specs = detail::parse_sample_specs(p.samples_spec);
    std::vector<double> concentrations = p.concentrations;
    if (concentrations.empty())
        concentrations = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};

    std::vector<MeasurementRecord> all;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        ChiralSample sample;
        sample.specific_rotation = specs[i].second;
        sample.handedness = specs[i].second < 0.0 ? Handedness::Levo : Handedness::Dextro;
        sample.path_length_dm = p.path_length_dm;
        sample.wavelength_m = p.wavelength_nm * 1e-9;
        const std::vector<MeasurementRecord> records =
            synth_sweep(specs[i].first, sample, concentrations, p.noise_deg, p.seed + i,
                        p.power_mw, p.temperature_c);
        all.insert(all.end(), records.begin(), records.end());
    }
    detail::write_output(p.output, to_measurement_csv(all), out);
}

struct PlotParams {
    std::string input;
    std::string output;
    std::string y_kind = "absorbed";
    std::string format = "svg";
    std::string title;
    int width = 880;
    int height = 560;
    double power_mw = 0.55;
    bool power_set = false;
};

inline void run_plot(const PlotParams& p, std::ostream& out) {
    std::vector<MeasurementRecord> records = parse_measurements(detail::read_file(p.input));
    if (p.power_set)
        for (MeasurementRecord& r : records) r.source_power_mw = p.power_mw;
    std::string content;
    try {
        const std::vector<DerivedRecord> derived = derive_records(records);
        const std::vector<PlotSeries> series =
            build_series(derived, detail::parse_series_kind(p.y_kind));
        PlotOptions options;
        options.width = p.width;
        options.height = p.height;
        options.title = p.title;
        content = emit_plot(series, p.format == "csv" ? PlotFormat::Csv : PlotFormat::Svg, options);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
    detail::write_output(p.output, content, out);
}

struct ValidateParams {
    std::string input;
};

// Returns the exit code: 0 on a clean file, 2 with a machine-readable issue
// list otherwise.
inline int run_validate(const ValidateParams& p, std::ostream& out) {
    const std::vector<ParseIssue> issues = validate_measurements(detail::read_file(p.input));
    if (issues.empty()) return 0;
    out << "line,message\n";
    for (const ParseIssue& issue : issues)
        out << issue.line << ',' << detail::quote_csv(issue.message) << '\n';
    return 2;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polarized light through chiral media: simulate, derive, fit, sweep, plot"};
    app.name("chiroptica");
    app.require_subcommand(1);
    int exit_code = 0;

    SimulateParams sim;
    auto* simulate = app.add_subcommand("simulate", "One pass through polarizer, cell, analyzer");
    simulate->add_option("--specific-rotation", sim.specific_rotation,
                         "specific rotation, deg dm^-1 (g/mL)^-1")
        ->required();
    simulate->add_option("--concentration", sim.concentration_percent,
                         "concentration in percent (g per 100 mL)")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--path-length-dm", sim.path_length_dm, "tube length in dm")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--wavelength-nm", sim.wavelength_nm, "vacuum wavelength in nm")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--analyzer", sim.analyzer_angle, "analyzer axis angle, in --angle-unit");
    simulate->add_option("--power-mw", sim.power_mw, "source power in mW")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--handedness", sim.handedness, "levo or dextro")
        ->check(CLI::IsMember({"levo", "dextro"}));
    simulate->add_option("--angle-unit", sim.angle_unit, "unit for --analyzer: deg or rad")
        ->check(CLI::IsMember({"deg", "rad"}));
    simulate->add_option("--output", sim.output, "write the report to a file instead of stdout");
    simulate->callback([&] { run_simulate(sim, out); });

    DeriveParams der;
    auto* derive = app.add_subcommand("derive", "Derived optical quantities per measurement row");
    derive->add_option("--input", der.input, "measurement CSV")->required();
    derive->add_option("--output", der.output, "derived CSV path (default stdout)");
    auto* der_power = derive->add_option("--power-mw", der.power_mw,
                                         "override the source_power_mw column")
                          ->check(CLI::NonNegativeNumber);
    derive->callback([&] {
        der.power_set = der_power->count() > 0;
        run_derive(der, out);
    });

    FitParams fitp;
    auto* fit = app.add_subcommand("fit", "Recover specific rotation per sample by least squares");
    fit->add_option("--input", fitp.input, "measurement CSV")->required();
    fit->add_option("--output", fitp.output, "fit summary CSV path (default stdout)");
    fit->add_flag("--through-origin", fitp.through_origin, "force a zero intercept");
    fit->callback([&] { run_fit(fitp, out); });

    SweepParams swp;
    auto* sweep = app.add_subcommand("sweep", "Generate a synthetic concentration sweep");
    sweep->add_option("--samples", swp.samples_spec, "Name=S[,Name=S...] sample list")->required();
    sweep->add_option("--concentrations", swp.concentrations,
                      "concentrations in percent (default 0.25..2 in steps of 0.25)")
        ->delimiter(',');
    sweep->add_option("--noise-deg", swp.noise_deg, "rotation noise stddev in degrees")
        ->check(CLI::NonNegativeNumber);
    sweep->add_option("--seed", swp.seed, "noise seed");
    sweep->add_option("--path-length-dm", swp.path_length_dm, "tube length in dm")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--wavelength-nm", swp.wavelength_nm, "vacuum wavelength in nm")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--power-mw", swp.power_mw, "source power in mW")
        ->check(CLI::NonNegativeNumber);
    sweep->add_option("--temperature-c", swp.temperature_c, "bath temperature in Celsius");
    sweep->add_option("--output", swp.output, "measurement CSV path (default stdout)");
    sweep->callback([&] { run_sweep(swp, out); });

    PlotParams plp;
    auto* plot = app.add_subcommand("plot", "Plot a derived quantity against concentration");
    plot->add_option("--input", plp.input, "measurement CSV")->required();
    plot->add_option("--output", plp.output, "plot path (default stdout)");
    plot->add_option("--y-kind", plp.y_kind, "quantity to plot")
        ->check(CLI::IsMember(
            {"absorbed", "gamma-left", "gamma-right", "rotation", "specific-rotation"}));
    plot->add_option("--format", plp.format, "svg or csv")
        ->check(CLI::IsMember({"svg", "csv"}));
    plot->add_option("--title", plp.title, "plot title");
    plot->add_option("--width", plp.width, "canvas width in px")->check(CLI::Range(320, 4096));
    plot->add_option("--height", plp.height, "canvas height in px")->check(CLI::Range(240, 4096));
    auto* plot_power = plot->add_option("--power-mw", plp.power_mw,
                                        "override the source_power_mw column")
                           ->check(CLI::NonNegativeNumber);
    plot->callback([&] {
        plp.power_set = plot_power->count() > 0;
        run_plot(plp, out);
    });

    ValidateParams val;
    auto* validate = app.add_subcommand("validate", "Check a measurement CSV and list problems");
    validate->add_option("--input", val.input, "measurement CSV")->required();
    validate->callback([&] { exit_code = run_validate(val, out); });

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("chiroptica");
    for (const std::string& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const CsvError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}

} // namespace chiroptica::cli
