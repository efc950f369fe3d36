#ifndef MANET_MOBILITY_H
#define MANET_MOBILITY_H

#include "manet/geometry.h"
#include "manet/rng.h"

#include <cstddef>
#include <variant>
#include <vector>

namespace manet {

struct MobilityParams
{
    double width{1500.0};
    double height{1500.0};
    double speed_min{15.0};
    double speed_max{15.0};
    double pause_min{0.0};
    double pause_max{3.0};
};

/// One random-waypoint leg: travel from `current` (at leg_start_time)
/// towards `waypoint` at `speed`, then rest there until pause_until.
struct WaypointState
{
    Position current;
    Position waypoint;
    double speed{1.0};
    double pause_until{0.0};
    double leg_start_time{0.0};

    double arrival_time() const;
    friend bool operator==(const WaypointState&, const WaypointState&) = default;
};

std::vector<WaypointState> init_positions(const MobilityParams& params, std::size_t n_nodes,
                                          Rng& rng);

/// Throws std::domain_error if t precedes the leg start.
Position position_at(const WaypointState& state, double t);

/// Next leg starting at time t from the current waypoint.
WaypointState advance(const WaypointState& state, double t, const MobilityParams& params,
                      Rng& rng);

/// Piecewise-linear path through timed keyframes; constant before the
/// first and after the last. Used for static and scripted topologies.
struct ScriptedPath
{
    struct Keyframe
    {
        double time;
        Position position;
    };
    std::vector<Keyframe> keyframes;

    static ScriptedPath fixed(Position p) { return ScriptedPath{{{0.0, p}}}; }
    Position at(double t) const;
};

/// Per-node trajectory sampled lazily at event times. Queries must be
/// non-decreasing in time for the random-waypoint variant.
class NodeMobility
{
  public:
    NodeMobility(WaypointState state, MobilityParams params, Rng rng);
    explicit NodeMobility(ScriptedPath path);

    Position at(double t);
    double max_speed() const;

  private:
    struct RandomWaypoint
    {
        WaypointState state;
        MobilityParams params;
        Rng rng;
    };
    std::variant<RandomWaypoint, ScriptedPath> m_model;
};

/// Random-waypoint trajectories for every node; node i advances with its
/// own stream so sampling order never changes a trajectory.
std::vector<NodeMobility> make_random_waypoint(const MobilityParams& params, std::size_t n_nodes,
                                               std::uint64_t seed);

} // namespace manet

#endif
