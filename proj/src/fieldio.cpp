#include "irsim/fieldio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace irsim {

namespace {

constexpr double kFloorDb = -300.0; // stands in for -inf on zero samples

double peak_magnitude(const std::vector<Complex>& values) {
    double peak = 0.0;
    for (const Complex& v : values) peak = std::max(peak, std::abs(v));
    return peak;
}

double reference_of(const Normalization& norm, const std::vector<Complex>& values) {
    switch (norm.mode) {
        case Normalization::Mode::SelfPeak: {
            const double p = peak_magnitude(values);
            return p > 0.0 ? p : 1.0;
        }
        case Normalization::Mode::Reference:
            return norm.reference;
        case Normalization::Mode::Absolute:
            return 1.0;
    }
    return 1.0;
}

double mag_db(const Complex& v, double reference) {
    const double m = std::abs(v);
    if (m <= 0.0) return kFloorDb;
    return std::max(kFloorDb, 20.0 * std::log10(m / reference));
}

const char* mode_name(Normalization::Mode mode) {
    switch (mode) {
        case Normalization::Mode::SelfPeak: return "self_peak";
        case Normalization::Mode::Reference: return "reference";
        case Normalization::Mode::Absolute: return "absolute";
    }
    return "?";
}

void append_header(std::string& text, const Normalization& norm, double reference,
                   const char* columns, std::size_t rows) {
    char buf[160];
    text += "# format=irsim-field-map-v1\n";
    std::snprintf(buf, sizeof buf, "# normalization=%s\n", mode_name(norm.mode));
    text += buf;
    std::snprintf(buf, sizeof buf, "# reference_magnitude=%.9e\n", reference);
    text += buf;
    std::snprintf(buf, sizeof buf, "# columns=%s\n", columns);
    text += buf;
    std::snprintf(buf, sizeof buf, "# rows=%zu\n", rows);
    text += buf;
}

} // namespace

Normalization Normalization::against(double linear_reference) {
    if (!(linear_reference > 0.0))
        throw std::invalid_argument("normalization reference must be > 0");
    return {Mode::Reference, linear_reference};
}

std::string field_map_to_text(const ComplexField& field, const Normalization& norm) {
    field.validate();
    const double ref = reference_of(norm, field.values);
    std::string text;
    text.reserve(64 * field.size());
    append_header(text, norm, ref, "x_m,y_m,z_m,magnitude_db", field.size());
    char buf[160];
    for (std::size_t i = 0; i < field.size(); ++i) {
        const Point3& p = field.positions[i];
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f\n", p.x, p.y, p.z,
                      mag_db(field.values[i], ref));
        text += buf;
    }
    return text;
}

std::string field_map_to_text(const AngularPattern& pattern, const Normalization& norm) {
    if (pattern.values.empty()) throw std::invalid_argument("pattern has no samples");
    const double ref = reference_of(norm, pattern.values);
    std::string text;
    text.reserve(40 * pattern.size());
    append_header(text, norm, ref, "theta_deg,phi_deg,magnitude_db", pattern.size());
    char buf[120];
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f\n",
                      pattern.directions[i].theta * 180.0 / kPi,
                      pattern.directions[i].phi * 180.0 / kPi, mag_db(pattern.values[i], ref));
        text += buf;
    }
    return text;
}

std::string field_map_to_text(const HarmonicPattern& pattern, const Normalization& norm) {
    if (pattern.values.empty()) throw std::invalid_argument("pattern has no samples");
    const double ref = reference_of(norm, pattern.values);
    std::string text;
    text.reserve(64 * pattern.size());
    append_header(text, norm, ref, "k,frequency_hz,theta_deg,phi_deg,magnitude_db,phase_rad",
                  pattern.size());
    char buf[200];
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f,%.6f,%.6f\n", pattern.harmonic,
                      pattern.frequency, pattern.directions[i].theta * 180.0 / kPi,
                      pattern.directions[i].phi * 180.0 / kPi, mag_db(pattern.values[i], ref),
                      std::arg(pattern.values[i]));
        text += buf;
    }
    return text;
}

std::string spectrum_to_text(const std::vector<SpectralLine>& lines, const Normalization& norm) {
    if (lines.empty()) throw std::invalid_argument("spectrum has no lines");
    std::vector<Complex> values;
    values.reserve(lines.size());
    for (const SpectralLine& l : lines) values.push_back(l.value);
    const double ref = reference_of(norm, values);
    std::string text;
    append_header(text, norm, ref, "k,frequency_hz,magnitude_db,phase_rad", lines.size());
    char buf[160];
    for (const SpectralLine& l : lines) {
        std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f\n", l.harmonic, l.frequency,
                      mag_db(l.value, ref), std::arg(l.value));
        text += buf;
    }
    return text;
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace irsim
