#include "manet/mobility.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace manet {

namespace {

Position
uniform_point(const MobilityParams& params, Rng& rng)
{
    const double x = rng.uniform(0.0, params.width);
    const double y = rng.uniform(0.0, params.height);
    return Position{x, y};
}

double
draw_speed(const MobilityParams& params, Rng& rng)
{
    if (params.speed_min == params.speed_max)
    {
        return params.speed_min;
    }
    return rng.uniform(params.speed_min, params.speed_max);
}

double
draw_pause(const MobilityParams& params, Rng& rng)
{
    if (params.pause_min == params.pause_max)
    {
        return params.pause_min;
    }
    return rng.uniform(params.pause_min, params.pause_max);
}

WaypointState
new_leg(Position from, double t, const MobilityParams& params, Rng& rng)
{
    WaypointState s;
    s.current = from;
    s.waypoint = uniform_point(params, rng);
    s.speed = draw_speed(params, rng);
    s.leg_start_time = t;
    const double pause = draw_pause(params, rng);
    s.pause_until = s.arrival_time() + pause;
    return s;
}

} // namespace

double
WaypointState::arrival_time() const
{
    const double length = distance(current, waypoint);
    if (length == 0.0)
    {
        return leg_start_time;
    }
    if (speed <= 0.0)
    {
        return std::numeric_limits<double>::infinity();
    }
    return leg_start_time + length / speed;
}

std::vector<WaypointState>
init_positions(const MobilityParams& params, std::size_t n_nodes, Rng& rng)
{
    std::vector<WaypointState> states;
    states.reserve(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i)
    {
        const Position start = uniform_point(params, rng);
        states.push_back(new_leg(start, 0.0, params, rng));
    }
    return states;
}

Position
position_at(const WaypointState& state, double t)
{
    if (t < state.leg_start_time)
    {
        throw std::domain_error("position requested before leg start");
    }
    const double length = distance(state.current, state.waypoint);
    const double travelled = (t - state.leg_start_time) * state.speed;
    if (length == 0.0 || travelled >= length)
    {
        return state.waypoint;
    }
    const double f = travelled / length;
    return Position{state.current.x + f * (state.waypoint.x - state.current.x),
                    state.current.y + f * (state.waypoint.y - state.current.y)};
}

WaypointState
advance(const WaypointState& state, double t, const MobilityParams& params, Rng& rng)
{
    return new_leg(state.waypoint, t, params, rng);
}

Position
ScriptedPath::at(double t) const
{
    if (keyframes.empty())
    {
        return Position{};
    }
    if (t <= keyframes.front().time)
    {
        return keyframes.front().position;
    }
    for (std::size_t i = 1; i < keyframes.size(); ++i)
    {
        const Keyframe& b = keyframes[i];
        if (t <= b.time)
        {
            const Keyframe& a = keyframes[i - 1];
            const double f = (t - a.time) / (b.time - a.time);
            return Position{a.position.x + f * (b.position.x - a.position.x),
                            a.position.y + f * (b.position.y - a.position.y)};
        }
    }
    return keyframes.back().position;
}

NodeMobility::NodeMobility(WaypointState state, MobilityParams params, Rng rng)
    : m_model(RandomWaypoint{state, params, rng})
{
}

NodeMobility::NodeMobility(ScriptedPath path)
    : m_model(std::move(path))
{
}

Position
NodeMobility::at(double t)
{
    if (auto* rw = std::get_if<RandomWaypoint>(&m_model))
    {
        while (t >= rw->state.pause_until)
        {
            rw->state = advance(rw->state, rw->state.pause_until, rw->params, rw->rng);
        }
        return position_at(rw->state, t);
    }
    return std::get<ScriptedPath>(m_model).at(t);
}

double
NodeMobility::max_speed() const
{
    if (const auto* rw = std::get_if<RandomWaypoint>(&m_model))
    {
        return rw->params.speed_max;
    }
    const auto& path = std::get<ScriptedPath>(m_model);
    double v = 0.0;
    for (std::size_t i = 1; i < path.keyframes.size(); ++i)
    {
        const auto& a = path.keyframes[i - 1];
        const auto& b = path.keyframes[i];
        if (b.time > a.time)
        {
            v = std::max(v, distance(a.position, b.position) / (b.time - a.time));
        }
    }
    return v;
}

std::vector<NodeMobility>
make_random_waypoint(const MobilityParams& params, std::size_t n_nodes, std::uint64_t seed)
{
    Rng placement = make_stream(seed, 1);
    const auto states = init_positions(params, n_nodes, placement);
    std::vector<NodeMobility> nodes;
    nodes.reserve(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i)
    {
        nodes.emplace_back(states[i], params, make_stream(seed, 2, static_cast<std::uint32_t>(i)));
    }
    return nodes;
}

} // namespace manet
