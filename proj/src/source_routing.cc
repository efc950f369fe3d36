#include "manet/source_routing.h"

#include <algorithm>
#include <set>

namespace manet {

bool
is_loop_free(const SourceRoute& route)
{
    std::set<NodeId> seen(route.begin(), route.end());
    return seen.size() == route.size();
}

SourceRoutingProtocol::SourceRoutingProtocol(Simulator& sim, DiscoveryParams params,
                                             PacketKind request_kind, PacketKind reply_kind,
                                             std::size_t max_routes_per_dest,
                                             bool reply_to_every_copy)
    : RoutingProtocol(sim),
      m_params(params),
      m_request_kind(request_kind),
      m_reply_kind(reply_kind),
      m_max_routes(max_routes_per_dest),
      m_reply_to_every_copy(reply_to_every_copy),
      m_nodes(sim.node_count())
{
}

Packet
SourceRoutingProtocol::make_packet(PacketKind kind, NodeId origin, NodeId destination)
{
    Packet p;
    p.kind = kind;
    p.origin = origin;
    p.destination = destination;
    p.id = sim().next_packet_id(origin);
    p.size_bytes = m_params.control_bytes;
    p.payload_created_at = sim().now();
    stamp_origin(origin, p);
    return p;
}

void
SourceRoutingProtocol::stamp_origin(NodeId node, Packet& p)
{
    p.origin_position = sim().position(node);
    p.origin_time = sim().now();
    p.prev_hop_position = p.origin_position;
}

void
SourceRoutingProtocol::mark_request_seen(NodeId node, const PacketId& id)
{
    m_nodes.at(node).seen_requests.insert(id);
}

const std::vector<SourceRoute>&
SourceRoutingProtocol::cached_routes(NodeId node, NodeId dst) const
{
    static const std::vector<SourceRoute> empty;
    const auto& routes = m_nodes.at(node).routes;
    auto it = routes.find(dst);
    return it == routes.end() ? empty : it->second;
}

const SourceRoute*
SourceRoutingProtocol::best_route(NodeId node, NodeId dst) const
{
    const auto& routes = cached_routes(node, dst);
    const SourceRoute* best = nullptr;
    for (const auto& r : routes)
    {
        if (!best || r.size() < best->size())
        {
            best = &r;
        }
    }
    return best;
}

void
SourceRoutingProtocol::add_route(NodeId node, NodeId dst, const SourceRoute& route)
{
    if (!is_loop_free(route))
    {
        return;
    }
    auto& routes = m_nodes.at(node).routes[dst];
    if (std::find(routes.begin(), routes.end(), route) != routes.end())
    {
        return;
    }
    if (routes.size() >= m_max_routes)
    {
        // the newest reply describes the freshest topology
        routes.erase(routes.begin());
    }
    routes.push_back(route);
}

void
SourceRoutingProtocol::purge_link(NodeId node, NodeId a, NodeId b)
{
    auto& all = m_nodes.at(node).routes;
    for (auto it = all.begin(); it != all.end();)
    {
        auto& routes = it->second;
        std::erase_if(routes, [a, b](const SourceRoute& r) {
            for (std::size_t i = 0; i + 1 < r.size(); ++i)
            {
                if ((r[i] == a && r[i + 1] == b) || (r[i] == b && r[i + 1] == a))
                {
                    return true;
                }
            }
            return false;
        });
        it = routes.empty() ? all.erase(it) : std::next(it);
    }
}

void
SourceRoutingProtocol::send_data(Packet data)
{
    const NodeId src = data.origin;
    const NodeId dst = data.destination;
    if (const SourceRoute* route = best_route(src, dst))
    {
        send_along(src, std::move(data), *route);
        return;
    }
    m_nodes.at(src).pending[dst].push_back(std::move(data));
    if (!m_nodes.at(src).discoveries.contains(dst))
    {
        start_discovery(src, dst);
    }
}

void
SourceRoutingProtocol::send_along(NodeId src, Packet data, const SourceRoute& route)
{
    data.route = route;
    data.route_index = 1;
    stamp_origin(src, data);
    sim().unicast(src, route[1], std::move(data));
}

void
SourceRoutingProtocol::start_discovery(NodeId src, NodeId dst)
{
    Discovery& d = m_nodes.at(src).discoveries[dst];
    ++d.attempts;
    ++d.generation;
    ++m_discoveries;
    begin_discovery(src, dst, d.attempts);
    sim().schedule_timer(sim().now() + m_params.timeout, src,
                         TimerTag{kDiscoveryTimeout, dst, d.generation});
}

void
SourceRoutingProtocol::on_timer(NodeId at, const TimerTag& tag)
{
    if (tag.kind != kDiscoveryTimeout)
    {
        return;
    }
    const auto dst = static_cast<NodeId>(tag.a);
    NodeState& node = m_nodes.at(at);
    auto it = node.discoveries.find(dst);
    if (it == node.discoveries.end() || it->second.generation != tag.b)
    {
        return;
    }
    if (it->second.attempts <= m_params.retries)
    {
        start_discovery(at, dst);
        return;
    }
    ++m_abandoned;
    node.discoveries.erase(it);
    node.pending.erase(dst);
}

void
SourceRoutingProtocol::on_packet(NodeId at, NodeId, const Packet& packet)
{
    if (at == kBaseStation)
    {
        return;
    }
    observe(at, packet);
    if (packet.kind == m_request_kind)
    {
        handle_request(at, packet);
    }
    else if (packet.kind == m_reply_kind)
    {
        handle_reply(at, packet);
    }
    else if (packet.kind == PacketKind::Rerr)
    {
        handle_error(at, packet);
    }
    else if (packet.kind == PacketKind::Data)
    {
        handle_data(at, packet);
    }
}

void
SourceRoutingProtocol::handle_request(NodeId at, const Packet& request)
{
    NodeState& node = m_nodes.at(at);
    if (at == request.origin)
    {
        return;
    }
    if (at == request.destination)
    {
        if (!node.seen_requests.insert(request.id) && !m_reply_to_every_copy)
        {
            return;
        }
        Packet reply = make_packet(m_reply_kind, at, request.origin);
        reply.route = request.route;
        reply.route.push_back(at);
        reply.route_index = reply.route.size() - 2;
        const NodeId next = reply.route[reply.route_index];
        sim().unicast(at, next, std::move(reply));
        return;
    }
    if (!node.seen_requests.insert(request.id))
    {
        return;
    }
    if (std::find(request.route.begin(), request.route.end(), at) != request.route.end())
    {
        return;
    }
    if (!should_forward_request(at, request))
    {
        return;
    }
    Packet copy = request;
    copy.route.push_back(at);
    copy.hop_count += 1;
    copy.prev_hop_position = sim().position(at);
    prepare_forwarded_request(at, copy);
    sim().broadcast(at, std::move(copy));
}

void
SourceRoutingProtocol::handle_reply(NodeId at, const Packet& reply)
{
    if (reply.route_index >= reply.route.size() || reply.route[reply.route_index] != at)
    {
        return;
    }
    if (reply.route_index == 0)
    {
        const NodeId dst = reply.route.back();
        add_route(at, dst, reply.route);
        m_nodes.at(at).discoveries.erase(dst);
        flush_pending(at, dst);
        return;
    }
    Packet copy = reply;
    copy.route_index -= 1;
    copy.hop_count += 1;
    const NodeId next = copy.route[copy.route_index];
    sim().unicast(at, next, std::move(copy));
}

void
SourceRoutingProtocol::flush_pending(NodeId src, NodeId dst)
{
    auto& pending = m_nodes.at(src).pending;
    auto it = pending.find(dst);
    if (it == pending.end())
    {
        return;
    }
    auto queued = std::move(it->second);
    pending.erase(it);
    for (auto& p : queued)
    {
        send_data(std::move(p));
    }
}

void
SourceRoutingProtocol::handle_error(NodeId at, const Packet& error)
{
    if (error.route_index >= error.route.size() || error.route[error.route_index] != at)
    {
        return;
    }
    purge_link(at, error.broken_link.first, error.broken_link.second);
    if (error.route_index == 0)
    {
        return;
    }
    Packet copy = error;
    copy.route_index -= 1;
    copy.hop_count += 1;
    const NodeId next = copy.route[copy.route_index];
    sim().unicast(at, next, std::move(copy));
}

void
SourceRoutingProtocol::handle_data(NodeId at, const Packet& data)
{
    if (data.route_index >= data.route.size() || data.route[data.route_index] != at)
    {
        return;
    }
    if (at == data.destination)
    {
        sim().note_data_delivered(at, data);
        return;
    }
    Packet copy = data;
    copy.route_index += 1;
    copy.hop_count += 1;
    const NodeId next = copy.route[copy.route_index];
    sim().unicast(at, next, std::move(copy));
}

void
SourceRoutingProtocol::on_link_failure(NodeId sender, NodeId receiver, const Packet& packet)
{
    if (sender == kBaseStation || packet.kind != PacketKind::Data)
    {
        return;
    }
    purge_link(sender, sender, receiver);
    const std::size_t idx = packet.route_index - 1; // sender's position on the route
    if (idx == 0)
    {
        return;
    }
    Packet error = make_packet(PacketKind::Rerr, sender, packet.route.front());
    error.route = packet.route;
    error.route_index = idx - 1;
    error.broken_link = {sender, receiver};
    const NodeId next = error.route[error.route_index];
    sim().unicast(sender, next, std::move(error));
}

Dsr::Dsr(Simulator& sim, DiscoveryParams params)
    : SourceRoutingProtocol(sim, params, PacketKind::Rreq, PacketKind::Rrep, 8, true)
{
}

void
Dsr::begin_discovery(NodeId src, NodeId dst, int)
{
    Packet request = make_packet(PacketKind::Rreq, src, dst);
    request.route = {src};
    mark_request_seen(src, request.id);
    sim().broadcast(src, std::move(request));
}

} // namespace manet
