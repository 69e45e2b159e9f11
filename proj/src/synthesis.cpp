#include "irsim/synthesis.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace irsim {

void PhaseProfile::validate() const {
    for (double p : phases) {
        if (!std::isfinite(p)) throw std::invalid_argument("phase profile contains a non-finite value");
        if (p < -kPi || p >= kPi) throw std::invalid_argument("phase outside [-pi, pi)");
    }
    if (quantization_bits && *quantization_bits < 1)
        throw std::invalid_argument("quantization_bits must be >= 1");
}

void FocalSpec::validate() const {
    direction.validate();
    if (!(distance > 0.0)) throw std::invalid_argument("focal distance must be > 0");
}

std::optional<std::string> fresnel_warning(const FocalSpec& spec, const ApertureGrid& aperture,
                                           const PropagationContext& ctx) {
    spec.validate();
    if (aperture.size() <= 1)
        return "single-element aperture has no radiative near-field region";
    const auto [lower, upper] = fresnel_bounds(aperture, ctx);
    char buf[160];
    if (spec.distance < lower) {
        std::snprintf(buf, sizeof buf,
                      "focal distance %.6g m is below the radiative near-field bound %.6g m",
                      spec.distance, lower);
        return std::string(buf);
    }
    if (spec.distance > upper) {
        std::snprintf(buf, sizeof buf,
                      "focal distance %.6g m is beyond the far-field bound %.6g m", spec.distance,
                      upper);
        return std::string(buf);
    }
    return std::nullopt;
}

PhaseProfile steering_profile(const ApertureGrid& aperture, const ComplexField& reference,
                              const SteeringSpec& spec, const PropagationContext& ctx) {
    ctx.validate();
    spec.direction.validate();
    require_on_elements(aperture, reference);
    const std::vector<Point3> elems = element_positions(aperture);
    const Point3 u = direction_to_unit_vector(spec.direction);
    const double k0 = ctx.wavenumber();
    PhaseProfile out;
    out.phases.resize(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const double steer = k0 * (elems[i].x * u.x + elems[i].y * u.y);
        out.phases[i] = wrap_phase(-std::arg(reference.values[i] * std::polar(1.0, steer)));
    }
    return out;
}

PhaseProfile focusing_profile(const ApertureGrid& aperture, const ComplexField& reference,
                              const FocalSpec& spec, const PropagationContext& ctx) {
    ctx.validate();
    spec.validate();
    require_on_elements(aperture, reference);
    const std::vector<Point3> elems = element_positions(aperture);
    const Point3 focus = spec.focal_point();
    const double k0 = ctx.wavenumber();
    PhaseProfile out;
    out.phases.resize(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const double r = distance(elems[i], focus);
        if (r <= 0.0) throw std::invalid_argument("focal point lies on an aperture element");
        // back-propagated virtual point source e^{+j k r} / (4 pi r)
        const Complex aperture_wave = std::polar(1.0 / (4.0 * kPi * r), k0 * r);
        out.phases[i] = wrap_phase(std::arg(std::conj(reference.values[i]) * aperture_wave));
    }
    return out;
}

namespace {

// Counter-based generator: one 64-bit mix per element, so phases do not
// depend on evaluation order.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

PhaseProfile randomized_profile(const ApertureGrid& aperture, std::uint64_t seed) {
    aperture.validate();
    PhaseProfile out;
    out.phases.resize(aperture.size());
    const std::uint64_t base = splitmix64(seed);
    for (std::size_t i = 0; i < out.phases.size(); ++i) {
        const std::uint64_t h = splitmix64(base ^ (static_cast<std::uint64_t>(i) + 1));
        const double unit = static_cast<double>(h >> 11) * 0x1.0p-53; // [0, 1)
        out.phases[i] = -kPi + 2.0 * kPi * unit;
    }
    return out;
}

PhaseProfile quantize_profile(const PhaseProfile& profile, int bits) {
    if (bits < 1) throw std::invalid_argument("quantization bits must be >= 1");
    if (bits > 62) throw std::invalid_argument("quantization bits too large");
    profile.validate();
    const double levels = static_cast<double>(std::uint64_t{1} << bits);
    const double step = 2.0 * kPi / levels;
    PhaseProfile out;
    out.phases.resize(profile.size());
    out.quantization_bits = bits;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        // nearest level, exact midpoints toward the lower one
        double idx = std::ceil((profile.phases[i] + kPi) / step - 0.5);
        if (idx >= levels) idx -= levels; // top midpoint wraps to -pi
        out.phases[i] = wrap_phase(-kPi + idx * step);
    }
    return out;
}

std::string profile_to_text(const PhaseProfile& profile, const ApertureGrid& aperture) {
    if (profile.size() != aperture.size())
        throw std::invalid_argument("phase profile does not match the aperture element count");
    std::string text;
    text.reserve(profile.size() * 18);
    char buf[40];
    for (std::size_t iy = 0; iy < aperture.count_y; ++iy) {
        for (std::size_t ix = 0; ix < aperture.count_x; ++ix) {
            std::snprintf(buf, sizeof buf, "%.9g", profile.phases[iy * aperture.count_x + ix]);
            if (ix) text += ' ';
            text += buf;
        }
        text += '\n';
    }
    return text;
}

} // namespace irsim
