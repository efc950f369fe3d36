// Reference models used by the tests. Nothing here calls into the library's
// routing or geometry code, so agreement is meaningful.

#ifndef MANET_TESTS_ORACLES_H
#define MANET_TESTS_ORACLES_H

#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

struct Pt
{
    double x;
    double y;
};

inline double
dist(Pt a, Pt b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

// Six sectors written out branch by branch.
inline int
six_sector_area(double theta)
{
    const double pi = std::numbers::pi;
    if (theta >= 0 && theta < pi / 3)
        return 1;
    if (theta >= pi / 3 && theta < 2 * pi / 3)
        return 2;
    if (theta >= 2 * pi / 3 && theta < pi)
        return 3;
    if (theta >= pi && theta < 4 * pi / 3)
        return 4;
    if (theta >= 4 * pi / 3 && theta < 5 * pi / 3)
        return 5;
    if (theta >= 5 * pi / 3 && theta < 2 * pi)
        return 6;
    return -1;
}

// Angle of p seen from c in [0, 2pi), computed through acos so it shares no
// code path with atan2.
inline double
angle_from(Pt c, Pt p)
{
    const double dx = p.x - c.x;
    const double dy = p.y - c.y;
    const double r = std::sqrt(dx * dx + dy * dy);
    const double a = std::acos(std::max(-1.0, std::min(1.0, dx / r)));
    return dy >= 0 ? a : 2 * std::numbers::pi - a;
}

// BFS from s to d over nodes allowed[i], edges when distance <= range.
inline bool
reachable(const std::vector<Pt>& pts, const std::vector<bool>& allowed, int s, int d,
          double range)
{
    std::vector<bool> seen(pts.size(), false);
    std::deque<int> q{s};
    seen[s] = true;
    while (!q.empty())
    {
        const int u = q.front();
        q.pop_front();
        if (u == d)
            return true;
        for (int v = 0; v < static_cast<int>(pts.size()); ++v)
        {
            if (!seen[v] && allowed[v] && dist(pts[u], pts[v]) <= range)
            {
                seen[v] = true;
                q.push_back(v);
            }
        }
    }
    return false;
}

inline bool
reachable(const std::vector<Pt>& pts, int s, int d, double range)
{
    return reachable(pts, std::vector<bool>(pts.size(), true), s, d, range);
}

// Small deterministic generator for the hand-rolled property tests.
class Gen
{
  public:
    explicit Gen(std::uint64_t seed)
        : m_state(seed * 0x9E3779B97F4A7C15ULL + 1)
    {
    }
    std::uint64_t next()
    {
        // splitmix64
        std::uint64_t z = (m_state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  private:
    std::uint64_t m_state;
};

} // namespace oracle

#endif
