#ifndef IRSIM_MODULATION_HPP
#define IRSIM_MODULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irsim/geometry.hpp"
#include "irsim/propagation.hpp"
#include "irsim/synthesis.hpp"

namespace irsim {

/// Receiver position and detection threshold relative to the focused-frame
/// peak (default -10 dB).
struct ReceiverSpec {
    Point3 position{};
    double threshold_db = -10.0;

    void validate() const; // threshold must be negative
    FocalSpec focal_spec() const;
};

/// Bit sequence and the seeding rule for its frames: bit 1 re-uses the
/// focused profile, bit 0 gets a fresh randomized profile drawn from a
/// deterministic per-frame seed sequence.
struct FramePlan {
    std::vector<int> bits;            // 0/1 symbols
    std::uint64_t master_seed = 0;

    static FramePlan from_string(const std::string& bits, std::uint64_t master_seed);
    std::uint64_t frame_seed(std::size_t frame_index) const;
    void validate() const;
};

/// Per-frame outcome of the focus/defocus link.
struct LinkFrame {
    int bit_sent = 0;
    double magnitude_db = 0.0; // relative to the focused-frame peak
    int bit_decoded = 0;
};

struct LinkReport {
    std::vector<LinkFrame> frames;
    double reference_magnitude = 0.0; // linear focused-frame peak
    double contrast_db = 0.0;         // min focused minus max defocused
    std::size_t bit_errors = 0;
    std::vector<std::string> warnings;
};

/// Runs the spatial-modulation link: builds each frame's profile, evaluates
/// the reflected field at the receiver, normalizes to the focused-frame
/// peak, thresholds, decodes.
LinkReport run_link(const ApertureGrid& aperture, const SourceModel& tag,
                    const ReceiverSpec& receiver, const FramePlan& plan,
                    const PropagationContext& ctx);

/// Contrast between the symbol classes: minimum focused-frame magnitude
/// minus maximum defocused-frame magnitude, dB. Throws when the report
/// lacks one symbol class.
double contrast(const LinkReport& report);

/// |E| along a ray from the aperture center (default broadside, the depth
/// axis), dB-normalized to the profile's own maximum.
struct DepthSample {
    double range = 0.0; // meters along the axis
    double magnitude_db = 0.0;
};

std::vector<DepthSample> depth_profile(const ApertureGrid& aperture, const SourceModel& tag,
                                       const PhaseProfile& profile,
                                       std::span<const double> axis_samples,
                                       const PropagationContext& ctx,
                                       const DirectionAngles& axis = DirectionAngles{});

/// Delimited text serialization: frame index, bit sent, magnitude dB,
/// bit decoded.
std::string link_report_to_text(const LinkReport& report);

} // namespace irsim

#endif
