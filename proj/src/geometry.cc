#include "manet/geometry.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace manet {

double
distance(Position a, Position b)
{
    return std::hypot(b.x - a.x, b.y - a.y);
}

double
bearing(Position origin, Position p)
{
    const double dx = p.x - origin.x;
    const double dy = p.y - origin.y;
    if (dx == 0.0 && dy == 0.0)
    {
        throw UndefinedBearing();
    }
    double theta = std::atan2(dy, dx);
    if (theta < 0.0)
    {
        theta += kTwoPi;
        // a tiny negative angle can round up to exactly 2*pi
        if (theta >= kTwoPi)
        {
            theta = std::nextafter(kTwoPi, 0.0);
        }
    }
    return theta;
}

double
sector_lower_bound(int i, int k)
{
    if (i == 0)
    {
        return 0.0;
    }
    const int g = std::gcd(i, k);
    return (kTwoPi * (i / g)) / (k / g);
}

AreaId
area_of(double theta, int k)
{
    if (k < 1)
    {
        throw std::domain_error("sector count must be >= 1");
    }
    if (!(theta >= 0.0 && theta < kTwoPi))
    {
        throw std::domain_error("angle outside [0, 2pi)");
    }
    int idx = static_cast<int>(std::floor(theta * k / kTwoPi));
    idx = std::clamp(idx, 0, k - 1);
    // the floor can land one sector off near a boundary
    while (idx > 0 && theta < sector_lower_bound(idx, k))
    {
        --idx;
    }
    while (idx < k - 1 && theta >= sector_lower_bound(idx + 1, k))
    {
        ++idx;
    }
    return AreaId{idx + 1};
}

AreaId
area_of_position(Position centre, Position p, int k)
{
    if (p == centre)
    {
        return AreaId{1};
    }
    return area_of(bearing(centre, p), k);
}

} // namespace manet
