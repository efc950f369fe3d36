#include "manet/lar.h"

#include <algorithm>

namespace manet {

Rect
lar1_request_zone(Position src_pos, Position dst_expected, double dst_radius)
{
    return Rect{std::min(src_pos.x, dst_expected.x - dst_radius),
                std::max(src_pos.x, dst_expected.x + dst_radius),
                std::min(src_pos.y, dst_expected.y - dst_radius),
                std::max(src_pos.y, dst_expected.y + dst_radius)};
}

ForwardDecision
lar2_forward(double d_j, double d_i, double delta)
{
    return d_j <= d_i + delta ? ForwardDecision::Forward : ForwardDecision::Drop;
}

double
expected_zone_radius(double v_max, double now, double last_known)
{
    return v_max * std::max(0.0, now - last_known);
}

Lar::Lar(Simulator& sim, LarParams params)
    : SourceRoutingProtocol(sim, params.discovery, PacketKind::LarRreq, PacketKind::LarRrep, 1,
                            false),
      m_params(params),
      m_locations(sim.node_count())
{
}

std::optional<LocationEntry>
Lar::locate_destination(NodeId src, NodeId dst) const
{
    const auto& cache = m_locations.at(src);
    auto it = cache.find(dst);
    if (it == cache.end())
    {
        return std::nullopt;
    }
    return it->second;
}

void
Lar::learn_location(NodeId node, NodeId about, Position position, double t)
{
    auto& entry = m_locations.at(node)[about];
    if (t >= entry.time)
    {
        entry = LocationEntry{position, t};
    }
}

void
Lar::observe(NodeId at, const Packet& packet)
{
    if (packet.origin >= 0 && packet.origin != at)
    {
        learn_location(at, packet.origin, packet.origin_position, packet.origin_time);
    }
}

void
Lar::begin_discovery(NodeId src, NodeId dst, int attempt)
{
    Packet request = make_packet(PacketKind::LarRreq, src, dst);
    request.route = {src};
    const auto known = locate_destination(src, dst);
    if (attempt == 1 && known)
    {
        if (m_params.scheme == LarScheme::Scheme1)
        {
            const double radius =
                expected_zone_radius(m_params.v_max, sim().now(), known->time);
            request.request_zone = lar1_request_zone(sim().position(src), known->position, radius);
        }
        else
        {
            request.dest_position = known->position;
        }
    }
    mark_request_seen(src, request.id);
    sim().broadcast(src, std::move(request));
}

bool
Lar::should_forward_request(NodeId at, const Packet& request)
{
    const Position self = sim().position(at);
    if (request.request_zone)
    {
        return request.request_zone->contains(self);
    }
    if (request.dest_position)
    {
        const double d_j = distance(self, *request.dest_position);
        const double d_i = distance(request.prev_hop_position, *request.dest_position);
        return lar2_forward(d_j, d_i, m_params.delta) == ForwardDecision::Forward;
    }
    return true;
}

} // namespace manet
