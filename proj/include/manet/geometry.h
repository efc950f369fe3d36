#ifndef MANET_GEOMETRY_H
#define MANET_GEOMETRY_H

#include <compare>
#include <numbers>
#include <stdexcept>

namespace manet {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Position
{
    double x{0.0};
    double y{0.0};

    friend bool operator==(const Position&, const Position&) = default;
};

/// 1-based sector index in [1, k].
struct AreaId
{
    int index{1};

    friend auto operator<=>(const AreaId&, const AreaId&) = default;
};

/// Axis-aligned rectangle, closed on all sides.
struct Rect
{
    double x_min{0.0};
    double x_max{0.0};
    double y_min{0.0};
    double y_max{0.0};

    bool contains(Position p) const
    {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    friend bool operator==(const Rect&, const Rect&) = default;
};

class UndefinedBearing : public std::domain_error
{
  public:
    UndefinedBearing()
        : std::domain_error("bearing undefined for coincident points")
    {
    }
};

double distance(Position a, Position b);

/// Quadrant-aware angle of p seen from origin, in [0, 2*pi).
/// Throws UndefinedBearing when p == origin.
double bearing(Position origin, Position p);

/// Lower bound of sector `i` (0-based) out of k, as 2*pi*i/k with the
/// fraction reduced first so that k = 6 reproduces pi/3, 2pi/3, pi, ...
double sector_lower_bound(int i, int k);

/// Sector containing theta; sectors are [lower, upper) half-open.
/// Throws std::domain_error for theta outside [0, 2*pi) or k < 1.
AreaId area_of(double theta, int k);

/// Sector of p around centre. A point on the centre gets AreaId 1.
AreaId area_of_position(Position centre, Position p, int k);

} // namespace manet

#endif
