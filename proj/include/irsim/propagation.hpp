#ifndef IRSIM_PROPAGATION_HPP
#define IRSIM_PROPAGATION_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "irsim/geometry.hpp"

namespace irsim {

using Complex = std::complex<double>;

/// Complex amplitudes sampled at a set of 3D points.
struct ComplexField {
    std::vector<Point3> positions;
    std::vector<Complex> values;

    std::size_t size() const { return values.size(); }
    void validate() const; // aligned sizes, finite values
};

/// Complex pattern sampled over a set of directions.
struct AngularPattern {
    std::vector<DirectionAngles> directions;
    std::vector<Complex> values;

    std::size_t size() const { return values.size(); }
};

/// Discretized surface current of the illuminating tag: a weighted
/// collection of point sources.
struct SourceModel {
    struct Element {
        Point3 position;
        Complex weight{1.0, 0.0};
    };
    std::vector<Element> elements;

    /// Single unit-weight point source.
    static SourceModel point_source(const Point3& position);
    /// Point source at `distance` along `incidence` from the origin.
    static SourceModel from_incidence(const DirectionAngles& incidence, double distance);

    void validate() const;
};

/// Real, non-negative gain versus direction for a single radiating element.
/// Default is isotropic (gain 1 everywhere).
struct ElementPattern {
    std::function<double(const DirectionAngles&)> gain = nullptr;

    static ElementPattern isotropic() { return {}; }
    double operator()(const DirectionAngles& dir) const;
};

/// Free-space scalar Green's function exp(-j k R) / (4 pi R).
/// Throws on coincident points (R = 0).
Complex greens_kernel(const Point3& src, const Point3& obs, const PropagationContext& ctx);

/// Field radiated by a source model at each target: the weighted sum of
/// Green's kernels. Linear in the source weights.
ComplexField radiate(const SourceModel& source, std::span<const Point3> targets,
                     const PropagationContext& ctx);

/// Per-element reflection phases; see synthesis.hpp for constructors.
struct PhaseProfile;

/// Each aperture element re-radiates incident_i * exp(j xi_i) (unit
/// reflection magnitude) through the Green's kernel to every target point.
ComplexField reflect_and_radiate(const ApertureGrid& aperture, const ComplexField& incident,
                                 const PhaseProfile& phases, std::span<const Point3> targets,
                                 const PropagationContext& ctx,
                                 const ElementPattern& pattern = ElementPattern::isotropic());

/// Far-field limit of reflect_and_radiate over an angular grid: the array
/// factor of the re-radiated excitations, scaled by the element pattern.
AngularPattern reflect_far_field(const ApertureGrid& aperture, const ComplexField& incident,
                                 const PhaseProfile& phases,
                                 std::span<const DirectionAngles> dirs,
                                 const PropagationContext& ctx,
                                 const ElementPattern& pattern = ElementPattern::isotropic());

/// Dispatch on the observation grid kind: cartesian grids evaluate the
/// kernel sum at each point, angular grids evaluate the far-field pattern.
/// Exactly one of the outputs is filled.
void reflect_onto_grid(const ApertureGrid& aperture, const ComplexField& incident,
                       const PhaseProfile& phases, const ObservationGrid& grid,
                       const PropagationContext& ctx, const ElementPattern& pattern,
                       ComplexField* cartesian_out, AngularPattern* angular_out);

/// AF(theta, phi) = sum_i excitation_i * exp(+j k (x_i sin t cos p + y_i sin t sin p)).
/// The +j sign pairs with the e^{-j k R} kernel so that the far-field limit of
/// the physical superposition and the array factor agree.
std::vector<Complex> array_factor(const ApertureGrid& aperture,
                                  std::span<const Complex> excitations,
                                  std::span<const DirectionAngles> dirs,
                                  const PropagationContext& ctx);

/// Scale all values so the largest magnitude becomes 1. No-op on an
/// all-zero field.
void normalize_to_peak(std::vector<Complex>& values);

/// Checks that field samples sit exactly on the aperture's element grid;
/// throws std::invalid_argument naming the first offending index.
void require_on_elements(const ApertureGrid& aperture, const ComplexField& field);

} // namespace irsim

#endif
