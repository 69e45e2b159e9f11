#include "irsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace irsim {

double wrap_phase(double radians) {
    double w = std::remainder(radians, 2.0 * kPi);
    if (w >= kPi) w -= 2.0 * kPi; // remainder can return exactly +pi
    return w;
}

DirectionAngles DirectionAngles::from_degrees(double theta_deg, double phi_deg) {
    DirectionAngles d{theta_deg * kPi / 180.0, phi_deg * kPi / 180.0};
    d.validate();
    return d;
}

void DirectionAngles::validate() const {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw std::invalid_argument("direction angles must be finite");
    if (std::abs(theta) > kPi / 2.0 + 1e-12)
        throw std::invalid_argument("theta outside the forward half-space [-pi/2, pi/2]");
    if (phi <= -kPi - 1e-12 || phi > kPi + 1e-12)
        throw std::invalid_argument("phi outside (-pi, pi]");
}

Point3 direction_to_unit_vector(const DirectionAngles& dir) {
    const double st = std::sin(dir.theta);
    return {st * std::cos(dir.phi), st * std::sin(dir.phi), std::cos(dir.theta)};
}

double angle_between(const DirectionAngles& a, const DirectionAngles& b) {
    const double c = direction_to_unit_vector(a).dot(direction_to_unit_vector(b));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

void PropagationContext::validate() const {
    if (!(frequency > 0.0)) throw std::invalid_argument("frequency must be > 0");
    if (!(wave_speed > 0.0)) throw std::invalid_argument("wave_speed must be > 0");
}

void ApertureGrid::validate() const {
    if (count_x < 1 || count_y < 1)
        throw std::invalid_argument("aperture counts must be >= 1");
    if (!(spacing_x > 0.0) || !(spacing_y > 0.0))
        throw std::invalid_argument("aperture spacings must be > 0");
}

double ApertureGrid::aperture_size() const {
    if (size() <= 1) return 0.0;
    return std::hypot(static_cast<double>(count_x) * spacing_x,
                      static_cast<double>(count_y) * spacing_y);
}

std::vector<Point3> element_positions(const ApertureGrid& aperture) {
    aperture.validate();
    std::vector<Point3> pts;
    pts.reserve(aperture.size());
    const double cx = (static_cast<double>(aperture.count_x) - 1.0) / 2.0;
    const double cy = (static_cast<double>(aperture.count_y) - 1.0) / 2.0;
    for (std::size_t iy = 0; iy < aperture.count_y; ++iy) {
        for (std::size_t ix = 0; ix < aperture.count_x; ++ix) {
            pts.push_back({aperture.origin.x + (static_cast<double>(ix) - cx) * aperture.spacing_x,
                           aperture.origin.y + (static_cast<double>(iy) - cy) * aperture.spacing_y,
                           aperture.origin.z});
        }
    }
    return pts;
}

std::pair<double, double> fresnel_bounds(const ApertureGrid& aperture,
                                         const PropagationContext& ctx) {
    aperture.validate();
    ctx.validate();
    const double d = aperture.aperture_size();
    if (d <= 0.0)
        throw std::invalid_argument("single-element aperture has no Fresnel region (D = 0)");
    const double lambda = ctx.wavelength();
    return {0.62 * std::sqrt(d * d * d / lambda), 2.0 * d * d / lambda};
}

namespace {

void check_axis(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw std::invalid_argument(std::string(name) + " axis has no samples");
    for (std::size_t i = 0; i + 1 < axis.size(); ++i) {
        if (!(axis[i] < axis[i + 1]))
            throw std::invalid_argument(std::string(name) + " axis must be strictly increasing");
    }
}

} // namespace

ObservationGrid::ObservationGrid(Kind kind, std::vector<double> a0, std::vector<double> a1,
                                 std::vector<double> a2)
    : kind_(kind), ax0_(std::move(a0)), ax1_(std::move(a1)), ax2_(std::move(a2)) {}

ObservationGrid ObservationGrid::cartesian(std::vector<double> xs, std::vector<double> ys,
                                           std::vector<double> zs) {
    check_axis(xs, "x");
    check_axis(ys, "y");
    check_axis(zs, "z");
    return ObservationGrid(Kind::Cartesian, std::move(xs), std::move(ys), std::move(zs));
}

ObservationGrid ObservationGrid::angular(std::vector<double> thetas, std::vector<double> phis) {
    check_axis(thetas, "theta");
    check_axis(phis, "phi");
    for (double t : thetas) {
        if (std::abs(t) > kPi / 2.0 + 1e-12)
            throw std::invalid_argument("theta axis outside the forward half-space");
    }
    return ObservationGrid(Kind::Angular, std::move(thetas), std::move(phis), {});
}

std::vector<double> ObservationGrid::axis(double first, double last, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("axis step must be > 0");
    if (last < first) throw std::invalid_argument("axis end precedes start");
    const double q = (last - first) / step;
    const std::size_t n = static_cast<std::size_t>(std::floor(q * (1.0 + 1e-12) + 1e-9)) + 1;
    std::vector<double> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(first + static_cast<double>(i) * step);
    return v;
}

std::size_t ObservationGrid::size() const {
    if (kind_ == Kind::Cartesian) return ax0_.size() * ax1_.size() * ax2_.size();
    return ax0_.size() * ax1_.size();
}

std::vector<Point3> ObservationGrid::points() const {
    if (kind_ != Kind::Cartesian)
        throw std::logic_error("points() requires a cartesian observation grid");
    std::vector<Point3> pts;
    pts.reserve(size());
    for (double z : ax2_)
        for (double y : ax1_)
            for (double x : ax0_) pts.push_back({x, y, z});
    return pts;
}

std::vector<DirectionAngles> ObservationGrid::directions() const {
    if (kind_ != Kind::Angular)
        throw std::logic_error("directions() requires an angular observation grid");
    std::vector<DirectionAngles> dirs;
    dirs.reserve(size());
    for (double t : ax0_)
        for (double p : ax1_) dirs.push_back({t, p});
    return dirs;
}

} // namespace irsim
