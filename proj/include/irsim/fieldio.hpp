#ifndef IRSIM_FIELDIO_HPP
#define IRSIM_FIELDIO_HPP

#include <string>
#include <vector>

#include "irsim/propagation.hpp"
#include "irsim/timevarying.hpp"

namespace irsim {

/// How emitted magnitudes are referenced. SelfPeak divides by the field's
/// own maximum (rows are then <= 0 dB); Reference divides by a caller
/// supplied linear magnitude; Absolute writes raw dB-volts.
struct Normalization {
    enum class Mode { SelfPeak, Reference, Absolute };
    Mode mode = Mode::SelfPeak;
    double reference = 1.0; // linear, used by Mode::Reference

    static Normalization self_peak() { return {}; }
    static Normalization absolute() { return {Mode::Absolute, 1.0}; }
    static Normalization against(double linear_reference);
};

/// Renders a field map: '#' key=value header lines, then comma-delimited
/// rows (x,y,z or theta_deg,phi_deg coordinates plus magnitude in dB) with
/// six decimal places. Output is byte-stable for golden-file comparison.
std::string field_map_to_text(const ComplexField& field, const Normalization& norm);
std::string field_map_to_text(const AngularPattern& pattern, const Normalization& norm);

/// Harmonic rows carry k, absolute frequency, direction, magnitude, phase.
std::string field_map_to_text(const HarmonicPattern& pattern, const Normalization& norm);

/// Spectrum rows: k, frequency Hz, magnitude dB, phase rad.
std::string spectrum_to_text(const std::vector<SpectralLine>& lines, const Normalization& norm);

/// Writes text to path, creating parent directories. Throws on failure.
void write_text_file(const std::string& path, const std::string& text);

} // namespace irsim

#endif
