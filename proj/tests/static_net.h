// Builders for small hand-placed networks.

#ifndef MANET_TESTS_STATIC_NET_H
#define MANET_TESTS_STATIC_NET_H

#include "manet/config.h"
#include "manet/scenario.h"

#include <vector>

namespace testnet {

inline manet::ScenarioConfig
static_config(manet::ProtocolId protocol, double w = 600.0, double h = 600.0)
{
    manet::ScenarioConfig c;
    c.protocol = protocol;
    c.area_w_m = w;
    c.area_h_m = h;
    c.duration_s = 10.0;
    c.speed_mps = 1.0; // unused: positions are scripted
    c.pause_min_s = 0.0;
    c.pause_max_s = 0.0;
    c.loss_probability = 0.0;
    c.seed = 7;
    return c;
}

inline std::vector<manet::NodeMobility>
fixed_nodes(const std::vector<manet::Position>& pts)
{
    std::vector<manet::NodeMobility> nodes;
    nodes.reserve(pts.size());
    for (const auto& p : pts)
    {
        nodes.emplace_back(manet::ScriptedPath::fixed(p));
    }
    return nodes;
}

// One packet from src to dst at time t.
inline manet::CbrFlow
single_packet(manet::NodeId src, manet::NodeId dst, double t = 0.5)
{
    manet::CbrFlow f;
    f.source = src;
    f.destination = dst;
    f.rate = 2.0;
    f.start = t;
    f.end = t + 0.25;
    return f;
}

} // namespace testnet

#endif
