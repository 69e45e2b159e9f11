#ifndef IRSIM_SYNTHESIS_HPP
#define IRSIM_SYNTHESIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irsim/geometry.hpp"
#include "irsim/propagation.hpp"

namespace irsim {

/// Per-element reflection phase xi(x_i, y_i), aligned to the aperture's
/// row-major element order. All phases live in [-pi, pi).
struct PhaseProfile {
    std::vector<double> phases;
    std::optional<int> quantization_bits;

    std::size_t size() const { return phases.size(); }
    void validate() const;
};

/// Far-field steering target.
struct SteeringSpec {
    DirectionAngles direction;
};

/// Near-field focal target: a point at `distance` along `direction` from the
/// aperture center (the virtual point source the hologram back-propagates).
struct FocalSpec {
    DirectionAngles direction;
    double distance = 0.0; // meters, > 0

    Point3 focal_point() const { return direction_to_unit_vector(direction) * distance; }
    void validate() const;
};

/// Non-fatal advisory when the focal distance falls outside the aperture's
/// radiative near-field interval (or the aperture has none).
std::optional<std::string> fresnel_warning(const FocalSpec& spec, const ApertureGrid& aperture,
                                           const PropagationContext& ctx);

/// Conjugate-phase steering hologram: the reflection phase that co-phases
/// every element's re-radiated contribution in the target direction,
/// xi_i = -angle(E_i * exp(+j k (x_i sin t cos p + y_i sin t sin p))).
PhaseProfile steering_profile(const ApertureGrid& aperture, const ComplexField& reference,
                              const SteeringSpec& spec, const PropagationContext& ctx);

/// Focusing hologram: interferes the reference wave with the virtual point
/// source back-propagated onto the aperture plane, applied so contributions
/// co-phase at the focal point: xi_i = angle(conj(E_i) * E_aperture_i) with
/// E_aperture_i = exp(+j k |r_i - r''|) / (4 pi |r_i - r''|).
PhaseProfile focusing_profile(const ApertureGrid& aperture, const ComplexField& reference,
                              const FocalSpec& spec, const PropagationContext& ctx);

/// Defocused (chaotic) profile: phases drawn independently and uniformly
/// from [-pi, pi), keyed on (seed, element index) so the result does not
/// depend on evaluation order. Same seed, same profile.
PhaseProfile randomized_profile(const ApertureGrid& aperture, std::uint64_t seed);

/// Snap each phase to the nearest of 2^bits uniform levels over [-pi, pi);
/// exact midpoints break toward the lower level.
PhaseProfile quantize_profile(const PhaseProfile& profile, int bits);

/// Text matrix serialization: one line per grid row, 9 significant digits.
std::string profile_to_text(const PhaseProfile& profile, const ApertureGrid& aperture);

} // namespace irsim

#endif
