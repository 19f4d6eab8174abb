// polarimetry.hpp
// Concentration-sweep data handling: CSV measurement files, derived optical
// quantities per record, least-squares recovery of the specific rotation,
// and synthetic sweep generation with deterministic noise.
//
// Measurement CSV schema (header required, '#' starts a comment line):
//   sample,concentration_percent,rotation_deg,path_length_dm,temperature_c,wavelength_nm,source_power_mw
// Derived CSV schema:
//   sample,concentration_percent,specific_rotation,absorbed_mw,transmitted_mw,gamma_left_rad,gamma_right_rad,cos_theta
// Concentrations are percent (g per 100 mL); specific rotation uses
// deg dm^-1 (g/mL)^-1 and is undefined (written as nan) at zero concentration.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chiroptica/angles.hpp"
#include "chiroptica/elements.hpp"
#include "chiroptica/geometric_phase.hpp"

namespace chiroptica {

struct MeasurementRecord {
    std::string sample;
    double concentration_percent = 0.0;
    double rotation_deg = 0.0;
    double path_length_dm = 1.0;
    double temperature_c = 18.0;
    double wavelength_nm = 589.0;
    double source_power_mw = 0.55;

    double concentration_g_per_ml() const { return concentration_percent / 100.0; }
};

struct DerivedRecord {
    std::string sample;
    double concentration_percent = 0.0;
    double rotation_deg = 0.0; // kept for plotting; not part of the derived CSV
    std::optional<double> specific_rotation{};
    double absorbed_mw = 0.0;
    double transmitted_mw = 0.0;
    double gamma_left_rad = 0.0;
    double gamma_right_rad = 0.0;
    double cos_theta = 1.0;
};

class CsvError : public std::runtime_error {
  public:
    CsvError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

struct ParseIssue {
    int line = 0;
    std::string message;
};

inline constexpr std::string_view measurement_csv_header =
    "sample,concentration_percent,rotation_deg,path_length_dm,temperature_c,wavelength_nm,"
    "source_power_mw";
inline constexpr std::string_view derived_csv_header =
    "sample,concentration_percent,specific_rotation,absorbed_mw,transmitted_mw,gamma_left_rad,"
    "gamma_right_rad,cos_theta";

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline bool parse_number(std::string_view field, double& out) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    if (field.empty()) return false;
    double value = 0.0;
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), last, value);
    if (ec != std::errc() || ptr != last) return false;
    out = value;
    return true;
}

// Shortest round-trippable decimal form.
inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct MeasurementScan {
    std::vector<MeasurementRecord> records;
    std::vector<int> record_lines;
    std::vector<ParseIssue> issues;
};

inline MeasurementScan scan_measurements(std::string_view text, bool stop_on_first_issue) {
    static constexpr std::array<std::string_view, 7> columns = {
        "sample",        "concentration_percent", "rotation_deg", "path_length_dm",
        "temperature_c", "wavelength_nm",         "source_power_mw"};

    MeasurementScan scan;
    bool header_seen = false;
    bool stopped = false;
    int line_no = 0;

    const auto add_issue = [&](int line, std::string message) {
        scan.issues.push_back({line, std::move(message)});
        if (stop_on_first_issue) stopped = true;
    };

    std::size_t start = 0;
    while (start <= text.size() && !stopped) {
        const std::size_t newline = text.find('\n', start);
        std::string_view line =
            text.substr(start, (newline == std::string_view::npos ? text.size() : newline) - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const std::string_view stripped = trim(line);
        if (!stripped.empty() && stripped.front() != '#') {
            const std::vector<std::string_view> fields = split_fields(line);
            if (!header_seen) {
                header_seen = true;
                if (fields.size() != columns.size()) {
                    add_issue(line_no, "header must have " + std::to_string(columns.size()) +
                                           " columns, got " + std::to_string(fields.size()));
                } else {
                    for (std::size_t i = 0; i < columns.size(); ++i) {
                        if (trim(fields[i]) != columns[i]) {
                            add_issue(line_no, "header column " + std::to_string(i + 1) +
                                                   " must be '" + std::string(columns[i]) +
                                                   "', got '" + std::string(trim(fields[i])) + "'");
                            break;
                        }
                    }
                }
            } else if (fields.size() != columns.size()) {
                add_issue(line_no, "expected " + std::to_string(columns.size()) + " fields, got " +
                                       std::to_string(fields.size()));
            } else {
                MeasurementRecord rec;
                bool ok = true;
                rec.sample = std::string(trim(fields[0]));
                if (rec.sample.empty()) {
                    add_issue(line_no, "empty sample name");
                    ok = false;
                }
                const std::array<double*, 6> slots = {
                    &rec.concentration_percent, &rec.rotation_deg,  &rec.path_length_dm,
                    &rec.temperature_c,         &rec.wavelength_nm, &rec.source_power_mw};
                for (std::size_t i = 0; i < slots.size() && ok; ++i) {
                    if (!parse_number(fields[i + 1], *slots[i])) {
                        add_issue(line_no, "column '" + std::string(columns[i + 1]) +
                                               "': cannot parse '" +
                                               std::string(trim(fields[i + 1])) + "' as a number");
                        ok = false;
                    } else if (!std::isfinite(*slots[i])) {
                        add_issue(line_no, "column '" + std::string(columns[i + 1]) +
                                               "': value must be finite");
                        ok = false;
                    }
                }
                if (ok && rec.concentration_percent < 0.0) {
                    add_issue(line_no, "concentration_percent must be non-negative");
                    ok = false;
                }
                if (ok && rec.path_length_dm <= 0.0) {
                    add_issue(line_no, "path_length_dm must be positive");
                    ok = false;
                }
                if (ok && rec.source_power_mw < 0.0) {
                    add_issue(line_no, "source_power_mw must be non-negative");
                    ok = false;
                }
                if (ok) {
                    scan.records.push_back(std::move(rec));
                    scan.record_lines.push_back(line_no);
                }
            }
        }

        if (newline == std::string_view::npos) break;
        start = newline + 1;
    }

    if (!header_seen && !stopped) scan.issues.push_back({1, "missing header row"});
    return scan;
}

} // namespace detail

// Strict parse: throws CsvError on the first problem.
inline std::vector<MeasurementRecord> parse_measurements(std::string_view text) {
    detail::MeasurementScan scan = detail::scan_measurements(text, true);
    if (!scan.issues.empty()) throw CsvError(scan.issues.front().line, scan.issues.front().message);
    return std::move(scan.records);
}

// Lenient walk: collects every problem, including duplicated concentrations
// within one sample, and reports them sorted by line.
inline std::vector<ParseIssue> validate_measurements(std::string_view text) {
    detail::MeasurementScan scan = detail::scan_measurements(text, false);
    std::map<std::pair<std::string, double>, int> first_seen;
    for (std::size_t i = 0; i < scan.records.size(); ++i) {
        const MeasurementRecord& rec = scan.records[i];
        const auto [it, inserted] =
            first_seen.insert({{rec.sample, rec.concentration_percent}, scan.record_lines[i]});
        if (!inserted) {
            scan.issues.push_back({scan.record_lines[i],
                                   "duplicate concentration " +
                                       detail::fmt_full(rec.concentration_percent) +
                                       " for sample '" + rec.sample + "' (first seen at line " +
                                       std::to_string(it->second) + ")"});
        }
    }
    std::sort(scan.issues.begin(), scan.issues.end(), [](const ParseIssue& a, const ParseIssue& b) {
        return a.line != b.line ? a.line < b.line : a.message < b.message;
    });
    return std::move(scan.issues);
}

// Optical quantities implied by one measurement row.
inline DerivedRecord derive_record(const MeasurementRecord& m) {
    if (m.path_length_dm <= 0.0) throw std::invalid_argument("path length must be positive");
    const double theta = deg_to_rad(m.rotation_deg);
    const Intensity source(m.source_power_mw);
    const ChiralPhasePair phases = chiral_phases(theta);

    DerivedRecord d;
    d.sample = m.sample;
    d.concentration_percent = m.concentration_percent;
    d.rotation_deg = m.rotation_deg;
    const double c = m.concentration_g_per_ml();
    if (c > 0.0) d.specific_rotation = m.rotation_deg / (m.path_length_dm * c);
    d.absorbed_mw = absorbed_intensity(source, theta).milliwatts;
    d.transmitted_mw = transmitted_intensity(source, theta).milliwatts;
    d.gamma_left_rad = phases.gamma_left;
    d.gamma_right_rad = phases.gamma_right;
    d.cos_theta = std::cos(theta);
    return d;
}

inline std::vector<DerivedRecord> derive_records(std::span<const MeasurementRecord> records) {
    std::vector<DerivedRecord> out;
    out.reserve(records.size());
    for (const MeasurementRecord& m : records) out.push_back(derive_record(m));
    return out;
}

namespace detail {

// Sample names land in CSV fields; keep the row grammar intact.
inline std::string csv_safe(std::string_view name) {
    std::string out(name);
    std::replace(out.begin(), out.end(), ',', ';');
    return out;
}

} // namespace detail

inline std::string to_measurement_csv(std::span<const MeasurementRecord> records) {
    std::string out(measurement_csv_header);
    out += '\n';
    for (const MeasurementRecord& r : records) {
        out += detail::csv_safe(r.sample);
        out += ',';
        out += detail::fmt_full(r.concentration_percent);
        out += ',';
        out += detail::fmt_full(r.rotation_deg);
        out += ',';
        out += detail::fmt_full(r.path_length_dm);
        out += ',';
        out += detail::fmt_full(r.temperature_c);
        out += ',';
        out += detail::fmt_full(r.wavelength_nm);
        out += ',';
        out += detail::fmt_full(r.source_power_mw);
        out += '\n';
    }
    return out;
}

inline std::string to_derived_csv(std::span<const DerivedRecord> records) {
    std::string out(derived_csv_header);
    out += '\n';
    for (const DerivedRecord& d : records) {
        out += detail::csv_safe(d.sample);
        out += ',';
        out += detail::fmt_full(d.concentration_percent);
        out += ',';
        out += d.specific_rotation ? detail::fmt_full(*d.specific_rotation) : std::string("nan");
        out += ',';
        out += detail::fmt_full(d.absorbed_mw);
        out += ',';
        out += detail::fmt_full(d.transmitted_mw);
        out += ',';
        out += detail::fmt_full(d.gamma_left_rad);
        out += ',';
        out += detail::fmt_full(d.gamma_right_rad);
        out += ',';
        out += detail::fmt_full(d.cos_theta);
        out += '\n';
    }
    return out;
}

// Least-squares line through (l*c, rotation_deg). The slope is the specific
// rotation estimate in deg dm^-1 (g/mL)^-1.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    double slope_stderr = 0.0;
    std::size_t n_points = 0;
    bool through_origin = false;

    double specific_rotation_estimate() const { return slope; }
};

inline FitResult fit_biot(std::span<const MeasurementRecord> records, bool through_origin = false) {
    if (records.size() < 2) throw std::invalid_argument("fit needs at least 2 measurements");
    const std::string& sample = records.front().sample;
    const double path = records.front().path_length_dm;
    for (const MeasurementRecord& r : records) {
        if (r.sample != sample)
            throw std::invalid_argument("fit expects measurements of a single sample");
        if (r.path_length_dm != path)
            throw std::invalid_argument("fit expects a single path length");
    }

    std::vector<double> xs(records.size());
    std::vector<double> ys(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        xs[i] = records[i].path_length_dm * records[i].concentration_g_per_ml();
        ys[i] = records[i].rotation_deg;
    }
    const double n = static_cast<double>(records.size());

    FitResult fit;
    fit.n_points = records.size();
    fit.through_origin = through_origin;

    double ss_res = 0.0;
    double ss_ref = 0.0; // total variation the fit is scored against
    double sxx = 0.0;    // spread of the predictor around its fit center

    if (through_origin) {
        double sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        if (sxx <= 0.0) throw std::invalid_argument("fit needs at least one nonzero concentration");
        fit.slope = sxy / sxx;
        fit.intercept = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - fit.slope * xs[i];
            ss_res += r * r;
            ss_ref += ys[i] * ys[i];
        }
        const double dof = n - 1.0;
        fit.slope_stderr = ss_res > 0.0 ? std::sqrt(ss_res / dof / sxx) : 0.0;
    } else {
        double mean_x = 0.0;
        double mean_y = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mean_x += xs[i];
            mean_y += ys[i];
        }
        mean_x /= n;
        mean_y /= n;
        double sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
            sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
        }
        if (sxx <= 0.0)
            throw std::invalid_argument("fit needs at least two distinct concentrations");
        fit.slope = sxy / sxx;
        fit.intercept = mean_y - fit.slope * mean_x;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
            ss_res += r * r;
            ss_ref += (ys[i] - mean_y) * (ys[i] - mean_y);
        }
        fit.slope_stderr =
            records.size() > 2 && ss_res > 0.0 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
    }

    fit.r_squared = ss_ref > 0.0 ? std::clamp(1.0 - ss_res / ss_ref, 0.0, 1.0) : 1.0;
    return fit;
}

// Deterministic standard normal source: Box-Muller over the fixed mt19937_64
// stream, so a seed pins the exact sample sequence on every platform. The seed
// is pre-mixed with a splitmix64 step because raw mt19937_64 produces
// correlated early output for small consecutive seeds.
class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : rng_(scramble(seed)) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(two_pi * u2);
        have_spare_ = true;
        return radius * std::cos(two_pi * u2);
    }

  private:
    static std::uint64_t scramble(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Synthetic concentration sweep for one sample: rotations follow the
// concentration law, optionally blurred by Gaussian noise of the given
// standard deviation (degrees). noise_stddev_deg == 0 keeps the law exact.
inline std::vector<MeasurementRecord> synth_sweep(const std::string& sample_name,
                                                  const ChiralSample& sample,
                                                  std::span<const double> concentrations_percent,
                                                  double noise_stddev_deg, std::uint64_t seed,
                                                  double source_power_mw = 0.55,
                                                  double temperature_c = 18.0) {
    if (noise_stddev_deg < 0.0)
        throw std::invalid_argument("noise standard deviation must be non-negative");
    for (const double pct : concentrations_percent)
        if (pct < 0.0) throw std::invalid_argument("concentrations must be non-negative");
    if (source_power_mw < 0.0) throw std::invalid_argument("source power must be non-negative");

    GaussianSource noise(seed);
    std::vector<MeasurementRecord> records;
    records.reserve(concentrations_percent.size());
    for (const double pct : concentrations_percent) {
        ChiralSample at_concentration = sample;
        at_concentration.concentration = pct / 100.0;
        double rotation = rotation_biot(at_concentration);
        if (noise_stddev_deg > 0.0) rotation += noise_stddev_deg * noise.next();
        records.push_back({sample_name, pct, rotation, sample.path_length_dm, temperature_c,
                           sample.wavelength_m * 1e9, source_power_mw});
    }
    return records;
}

enum class SeriesKind { AbsorbedPower, GammaLeft, GammaRight, Rotation, SpecificRotation };

inline std::optional<double> series_value(const DerivedRecord& d, SeriesKind kind) {
    switch (kind) {
        case SeriesKind::AbsorbedPower: return d.absorbed_mw;
        case SeriesKind::GammaLeft: return d.gamma_left_rad;
        case SeriesKind::GammaRight: return d.gamma_right_rad;
        case SeriesKind::Rotation: return d.rotation_deg;
        case SeriesKind::SpecificRotation: return d.specific_rotation;
    }
    return std::nullopt;
}

// One plottable curve: y over concentration (percent), x strictly increasing.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    SeriesKind kind = SeriesKind::AbsorbedPower;
};

// Groups records by sample (one series each, ordered by name) and sorts each
// series by concentration. Records whose value is undefined for the kind are
// skipped; duplicate concentrations within a sample are an error.
inline std::vector<PlotSeries> build_series(std::span<const DerivedRecord> records,
                                            SeriesKind kind) {
    if (records.empty()) throw std::invalid_argument("no records to build series from");
    std::map<std::string, std::vector<std::pair<double, double>>> groups;
    for (const DerivedRecord& d : records) {
        const std::optional<double> value = series_value(d, kind);
        if (!value) continue;
        groups[d.sample].push_back({d.concentration_percent, *value});
    }
    std::vector<PlotSeries> series;
    for (auto& [name, points] : groups) {
        std::sort(points.begin(), points.end());
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (points[i].first == points[i - 1].first)
                throw std::invalid_argument("duplicate concentration " +
                                            detail::fmt_full(points[i].first) + " for sample '" +
                                            name + "'");
        }
        PlotSeries s;
        s.label = name;
        s.kind = kind;
        s.x.reserve(points.size());
        s.y.reserve(points.size());
        for (const auto& [x, y] : points) {
            s.x.push_back(x);
            s.y.push_back(y);
        }
        series.push_back(std::move(s));
    }
    if (series.empty()) throw std::invalid_argument("no plottable values in the records");
    return series;
}

} // namespace chiroptica
