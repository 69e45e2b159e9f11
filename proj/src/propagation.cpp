#include "irsim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "irsim/synthesis.hpp"

namespace irsim {

void ComplexField::validate() const {
    if (positions.size() != values.size())
        throw std::invalid_argument("field positions/values size mismatch");
    if (values.empty()) throw std::invalid_argument("field has no samples");
    for (const Complex& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("field contains a non-finite value");
    }
}

SourceModel SourceModel::point_source(const Point3& position) {
    return SourceModel{{{position, Complex{1.0, 0.0}}}};
}

SourceModel SourceModel::from_incidence(const DirectionAngles& incidence, double distance) {
    incidence.validate();
    if (!(distance > 0.0)) throw std::invalid_argument("source distance must be > 0");
    return point_source(direction_to_unit_vector(incidence) * distance);
}

void SourceModel::validate() const {
    if (elements.empty()) throw std::invalid_argument("source model has no elements");
    bool any = false;
    for (const Element& e : elements) any = any || std::abs(e.weight) > 0.0;
    if (!any) throw std::invalid_argument("source model has no nonzero weight");
}

double ElementPattern::operator()(const DirectionAngles& dir) const {
    if (!gain) return 1.0;
    const double g = gain(dir);
    if (!(g >= 0.0)) throw std::domain_error("element pattern gain must be >= 0");
    return g;
}

Complex greens_kernel(const Point3& src, const Point3& obs, const PropagationContext& ctx) {
    const double r = distance(src, obs);
    if (r <= 0.0) throw std::domain_error("greens_kernel singularity: coincident points");
    return std::polar(1.0 / (4.0 * kPi * r), -ctx.wavenumber() * r);
}

ComplexField radiate(const SourceModel& source, std::span<const Point3> targets,
                     const PropagationContext& ctx) {
    source.validate();
    ctx.validate();
    const double k0 = ctx.wavenumber();
    ComplexField out;
    out.positions.assign(targets.begin(), targets.end());
    out.values.resize(targets.size());
    const std::int64_t n = static_cast<std::int64_t>(targets.size());
    std::int64_t bad_src = -1, bad_tgt = -1;
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
        Complex acc{0.0, 0.0};
        for (std::size_t s = 0; s < source.elements.size(); ++s) {
            const double r = distance(source.elements[s].position, targets[t]);
            if (r <= 0.0) {
#pragma omp critical
                {
                    bad_src = static_cast<std::int64_t>(s);
                    bad_tgt = t;
                }
                continue;
            }
            acc += source.elements[s].weight * std::polar(1.0 / (4.0 * kPi * r), -k0 * r);
        }
        out.values[static_cast<std::size_t>(t)] = acc;
    }
    if (bad_src >= 0)
        throw std::domain_error("radiate singularity: source element " + std::to_string(bad_src) +
                                " coincides with target " + std::to_string(bad_tgt));
    return out;
}

namespace {

std::vector<Complex> reflected_excitations(const ApertureGrid& aperture,
                                           const ComplexField& incident,
                                           const PhaseProfile& phases) {
    require_on_elements(aperture, incident);
    if (phases.size() != aperture.size())
        throw std::invalid_argument("phase profile does not match the aperture element count");
    std::vector<Complex> exc(aperture.size());
    for (std::size_t i = 0; i < exc.size(); ++i)
        exc[i] = incident.values[i] * std::polar(1.0, phases.phases[i]);
    return exc;
}

} // namespace

ComplexField reflect_and_radiate(const ApertureGrid& aperture, const ComplexField& incident,
                                 const PhaseProfile& phases, std::span<const Point3> targets,
                                 const PropagationContext& ctx, const ElementPattern& pattern) {
    ctx.validate();
    const std::vector<Complex> exc = reflected_excitations(aperture, incident, phases);
    const std::vector<Point3> elems = element_positions(aperture);
    const double k0 = ctx.wavenumber();
    const bool isotropic = !pattern.gain;

    ComplexField out;
    out.positions.assign(targets.begin(), targets.end());
    out.values.resize(targets.size());
    const std::int64_t n = static_cast<std::int64_t>(targets.size());
    std::int64_t bad_elem = -1, bad_tgt = -1;
    bool bad_gain = false;
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
        const Point3& p = targets[t];
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < elems.size(); ++i) {
            const Point3 d = p - elems[i];
            const double r = d.norm();
            if (r <= 0.0) {
#pragma omp critical
                {
                    bad_elem = static_cast<std::int64_t>(i);
                    bad_tgt = t;
                }
                continue;
            }
            double g = 1.0;
            if (!isotropic) {
                const DirectionAngles dir{std::acos(std::clamp(d.z / r, -1.0, 1.0)),
                                          std::atan2(d.y, d.x)};
                g = pattern.gain(dir);
                if (!(g >= 0.0)) {
#pragma omp critical
                    bad_gain = true;
                    continue;
                }
            }
            acc += exc[i] * std::polar(g / (4.0 * kPi * r), -k0 * r);
        }
        out.values[static_cast<std::size_t>(t)] = acc;
    }
    if (bad_gain) throw std::domain_error("element pattern gain must be >= 0");
    if (bad_elem >= 0)
        throw std::domain_error("reflect_and_radiate singularity: element " +
                                std::to_string(bad_elem) + " coincides with target " +
                                std::to_string(bad_tgt));
    return out;
}

AngularPattern reflect_far_field(const ApertureGrid& aperture, const ComplexField& incident,
                                 const PhaseProfile& phases,
                                 std::span<const DirectionAngles> dirs,
                                 const PropagationContext& ctx, const ElementPattern& pattern) {
    const std::vector<Complex> exc = reflected_excitations(aperture, incident, phases);
    AngularPattern out;
    out.directions.assign(dirs.begin(), dirs.end());
    out.values = array_factor(aperture, exc, dirs, ctx);
    if (pattern.gain) {
        for (std::size_t d = 0; d < dirs.size(); ++d) out.values[d] *= pattern(dirs[d]);
    }
    return out;
}

void reflect_onto_grid(const ApertureGrid& aperture, const ComplexField& incident,
                       const PhaseProfile& phases, const ObservationGrid& grid,
                       const PropagationContext& ctx, const ElementPattern& pattern,
                       ComplexField* cartesian_out, AngularPattern* angular_out) {
    if (grid.kind() == ObservationGrid::Kind::Cartesian) {
        if (!cartesian_out) throw std::invalid_argument("cartesian output required");
        const std::vector<Point3> pts = grid.points();
        *cartesian_out = reflect_and_radiate(aperture, incident, phases, pts, ctx, pattern);
    } else {
        if (!angular_out) throw std::invalid_argument("angular output required");
        const std::vector<DirectionAngles> dirs = grid.directions();
        *angular_out = reflect_far_field(aperture, incident, phases, dirs, ctx, pattern);
    }
}

std::vector<Complex> array_factor(const ApertureGrid& aperture,
                                  std::span<const Complex> excitations,
                                  std::span<const DirectionAngles> dirs,
                                  const PropagationContext& ctx) {
    ctx.validate();
    if (excitations.size() != aperture.size())
        throw std::invalid_argument("excitation count does not match the aperture element count");
    const std::vector<Point3> elems = element_positions(aperture);
    const double k0 = ctx.wavenumber();
    std::vector<Complex> af(dirs.size());
    const std::int64_t n = static_cast<std::int64_t>(dirs.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t d = 0; d < n; ++d) {
        const Point3 u = direction_to_unit_vector(dirs[d]);
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < elems.size(); ++i)
            acc += excitations[i] * std::polar(1.0, k0 * (elems[i].x * u.x + elems[i].y * u.y));
        af[static_cast<std::size_t>(d)] = acc;
    }
    return af;
}

void normalize_to_peak(std::vector<Complex>& values) {
    double peak = 0.0;
    for (const Complex& v : values) peak = std::max(peak, std::abs(v));
    if (peak <= 0.0) return;
    for (Complex& v : values) v /= peak;
}

void require_on_elements(const ApertureGrid& aperture, const ComplexField& field) {
    field.validate();
    if (field.size() != aperture.size())
        throw std::invalid_argument("field sample count does not match the aperture element count");
    const std::vector<Point3> elems = element_positions(aperture);
    const double tol = 1e-9 * (aperture.spacing_x + aperture.spacing_y);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (distance(elems[i], field.positions[i]) > tol)
            throw std::invalid_argument("field sample " + std::to_string(i) +
                                        " is not at the aperture element position");
    }
}

} // namespace irsim
