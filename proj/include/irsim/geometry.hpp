#ifndef IRSIM_GEOMETRY_HPP
#define IRSIM_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace irsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Wrap an angle to [-pi, pi).
double wrap_phase(double radians);

/// Cartesian point/vector in meters.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Point3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const Point3& a, const Point3& b) { return (a - b).norm(); }

/// Direction in the aperture's forward half-space. theta is the polar angle
/// from broadside (+z), phi the azimuth in the xy-plane from +x.
struct DirectionAngles {
    double theta = 0.0; // radians, |theta| <= pi/2
    double phi = 0.0;   // radians, (-pi, pi]

    static DirectionAngles from_degrees(double theta_deg, double phi_deg);
    void validate() const; // throws std::invalid_argument outside the ranges above
};

/// Unit vector (sin t cos p, sin t sin p, cos t).
Point3 direction_to_unit_vector(const DirectionAngles& dir);

/// Great-circle angle between two directions, radians.
double angle_between(const DirectionAngles& a, const DirectionAngles& b);

/// Carrier frequency and medium wave speed; wavelength and wavenumber derive
/// from them.
struct PropagationContext {
    double frequency = 0.0;             // Hz
    double wave_speed = kSpeedOfLight;  // m/s

    double wavelength() const { return wave_speed / frequency; }
    double wavenumber() const { return 2.0 * kPi * frequency / wave_speed; }
    void validate() const;
};

/// Planar rectangular grid of reflecting elements centered on `origin`,
/// lying in the plane z = origin.z.
struct ApertureGrid {
    std::size_t count_x = 1;  // M
    std::size_t count_y = 1;  // N
    double spacing_x = 0.0;   // meters
    double spacing_y = 0.0;   // meters
    Point3 origin{};

    std::size_t size() const { return count_x * count_y; }
    void validate() const;

    /// Physical extent of the panel: the diagonal of the M*dx x N*dy
    /// footprint (element span plus one cell pitch per axis). Zero for a
    /// single element, which has no meaningful aperture size.
    double aperture_size() const;
};

/// Element centers in row-major order (y-index outer, x-index inner),
/// centered on the grid origin.
std::vector<Point3> element_positions(const ApertureGrid& aperture);

/// Radiative near-field (Fresnel) interval (0.62*sqrt(D^3/lambda), 2*D^2/lambda).
/// Throws for a degenerate (single-element) aperture, which has no Fresnel region.
std::pair<double, double> fresnel_bounds(const ApertureGrid& aperture,
                                         const PropagationContext& ctx);

/// Observation sample set: either a cartesian box of points or a (theta, phi)
/// angular lattice. Axes must be strictly increasing and non-empty.
class ObservationGrid {
  public:
    enum class Kind { Cartesian, Angular };

    static ObservationGrid cartesian(std::vector<double> xs, std::vector<double> ys,
                                     std::vector<double> zs);
    static ObservationGrid angular(std::vector<double> thetas, std::vector<double> phis);

    /// Uniformly spaced axis helper: first, last (inclusive within step/2), step.
    static std::vector<double> axis(double first, double last, double step);

    Kind kind() const { return kind_; }
    std::size_t size() const;

    /// Cartesian sample points; only valid for Kind::Cartesian.
    std::vector<Point3> points() const;
    /// Angular samples in row-major (theta outer, phi inner) order; only
    /// valid for Kind::Angular.
    std::vector<DirectionAngles> directions() const;

    const std::vector<double>& axis_x() const { return ax0_; }
    const std::vector<double>& axis_y() const { return ax1_; }
    const std::vector<double>& axis_z() const { return ax2_; }
    const std::vector<double>& thetas() const { return ax0_; }
    const std::vector<double>& phis() const { return ax1_; }

  private:
    ObservationGrid(Kind kind, std::vector<double> a0, std::vector<double> a1,
                    std::vector<double> a2);

    Kind kind_;
    std::vector<double> ax0_, ax1_, ax2_;
};

} // namespace irsim

#endif
