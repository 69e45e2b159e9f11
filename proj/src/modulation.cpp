#include "irsim/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace irsim {

namespace {

double to_db(double linear, double reference) {
    return 20.0 * std::log10(linear / reference);
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

void ReceiverSpec::validate() const {
    if (!(threshold_db < 0.0)) throw std::invalid_argument("threshold_db must be negative");
    if (!(position.norm() > 0.0))
        throw std::invalid_argument("receiver cannot sit at the aperture center");
    if (!(position.z > 0.0))
        throw std::invalid_argument("receiver must lie in the forward half-space (z > 0)");
}

FocalSpec ReceiverSpec::focal_spec() const {
    validate();
    const double d = position.norm();
    return FocalSpec{DirectionAngles{std::acos(position.z / d), std::atan2(position.y, position.x)},
                     d};
}

FramePlan FramePlan::from_string(const std::string& bits, std::uint64_t master_seed) {
    FramePlan plan;
    plan.master_seed = master_seed;
    plan.bits.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("bit string may contain only 0/1");
        plan.bits.push_back(c - '0');
    }
    plan.validate();
    return plan;
}

std::uint64_t FramePlan::frame_seed(std::size_t frame_index) const {
    return mix64(master_seed ^ (0x5851f42d4c957f2dULL + frame_index));
}

void FramePlan::validate() const {
    if (bits.empty()) throw std::invalid_argument("frame plan has no bits");
    for (int b : bits)
        if (b != 0 && b != 1) throw std::invalid_argument("frame plan bits must be 0 or 1");
}

LinkReport run_link(const ApertureGrid& aperture, const SourceModel& tag,
                    const ReceiverSpec& receiver, const FramePlan& plan,
                    const PropagationContext& ctx) {
    plan.validate();
    receiver.validate();
    ctx.validate();

    LinkReport report;
    const FocalSpec focus = receiver.focal_spec();
    if (auto warn = fresnel_warning(focus, aperture, ctx)) report.warnings.push_back(*warn);

    const std::vector<Point3> elems = element_positions(aperture);
    const ComplexField reference = radiate(tag, elems, ctx);
    const Point3 target[1] = {receiver.position};

    const PhaseProfile focused = focusing_profile(aperture, reference, focus, ctx);
    const double focused_mag =
        std::abs(reflect_and_radiate(aperture, reference, focused, target, ctx).values[0]);
    report.reference_magnitude = focused_mag;

    report.frames.resize(plan.bits.size());
    for (std::size_t f = 0; f < plan.bits.size(); ++f) {
        double mag = focused_mag;
        if (plan.bits[f] == 0) {
            const PhaseProfile chaotic = randomized_profile(aperture, plan.frame_seed(f));
            mag = std::abs(reflect_and_radiate(aperture, reference, chaotic, target, ctx).values[0]);
        }
        LinkFrame& frame = report.frames[f];
        frame.bit_sent = plan.bits[f];
        frame.magnitude_db = to_db(mag, focused_mag);
        frame.bit_decoded = frame.magnitude_db >= receiver.threshold_db ? 1 : 0;
        if (frame.bit_decoded != frame.bit_sent) ++report.bit_errors;
    }

    bool has_focused = false, has_defocused = false;
    for (const LinkFrame& fr : report.frames) {
        has_focused = has_focused || fr.bit_sent == 1;
        has_defocused = has_defocused || fr.bit_sent == 0;
    }
    report.contrast_db = (has_focused && has_defocused) ? contrast(report) : 0.0;
    return report;
}

double contrast(const LinkReport& report) {
    bool has_focused = false, has_defocused = false;
    double min_focused = 0.0, max_defocused = 0.0;
    for (const LinkFrame& fr : report.frames) {
        if (fr.bit_sent == 1) {
            min_focused = has_focused ? std::min(min_focused, fr.magnitude_db) : fr.magnitude_db;
            has_focused = true;
        } else {
            max_defocused =
                has_defocused ? std::max(max_defocused, fr.magnitude_db) : fr.magnitude_db;
            has_defocused = true;
        }
    }
    if (!has_focused || !has_defocused)
        throw std::invalid_argument("contrast needs at least one focused and one defocused frame");
    return min_focused - max_defocused;
}

std::vector<DepthSample> depth_profile(const ApertureGrid& aperture, const SourceModel& tag,
                                       const PhaseProfile& profile,
                                       std::span<const double> axis_samples,
                                       const PropagationContext& ctx,
                                       const DirectionAngles& axis) {
    if (axis_samples.empty()) throw std::invalid_argument("depth axis has no samples");
    for (double r : axis_samples)
        if (!(r > 0.0)) throw std::invalid_argument("depth samples must be > 0");

    const std::vector<Point3> elems = element_positions(aperture);
    const ComplexField reference = radiate(tag, elems, ctx);
    const Point3 u = direction_to_unit_vector(axis);
    std::vector<Point3> pts;
    pts.reserve(axis_samples.size());
    for (double r : axis_samples) pts.push_back(u * r);

    const ComplexField field = reflect_and_radiate(aperture, reference, profile, pts, ctx);
    double peak = 0.0;
    for (const Complex& v : field.values) peak = std::max(peak, std::abs(v));

    std::vector<DepthSample> out(axis_samples.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = {axis_samples[i], to_db(std::abs(field.values[i]), peak)};
    return out;
}

std::string link_report_to_text(const LinkReport& report) {
    std::string text = "# frame,bit_sent,magnitude_db,bit_decoded\n";
    char buf[96];
    for (std::size_t i = 0; i < report.frames.size(); ++i) {
        const LinkFrame& fr = report.frames[i];
        std::snprintf(buf, sizeof buf, "%zu,%d,%.6f,%d\n", i, fr.bit_sent, fr.magnitude_db,
                      fr.bit_decoded);
        text += buf;
    }
    return text;
}

} // namespace irsim
