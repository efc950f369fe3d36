#include "manet/aodv.h"

#include <algorithm>

namespace manet {

bool
aodv_should_replace(const RouteTableEntry& current, std::uint32_t seq_no, int hop_count,
                    double now)
{
    if (!current.valid || current.expiry < now)
    {
        return true;
    }
    if (seq_no != current.seq_no)
    {
        return seq_no > current.seq_no;
    }
    return hop_count < current.hop_count;
}

Aodv::Aodv(Simulator& sim, AodvParams params)
    : RoutingProtocol(sim),
      m_params(params),
      m_nodes(sim.node_count())
{
}

Packet
Aodv::make_packet(PacketKind kind, NodeId origin, NodeId destination)
{
    Packet p;
    p.kind = kind;
    p.origin = origin;
    p.destination = destination;
    p.id = sim().next_packet_id(origin);
    p.size_bytes = m_params.control_bytes;
    p.payload_created_at = sim().now();
    return p;
}

void
Aodv::start()
{
    if (!m_params.hello_enabled)
    {
        return;
    }
    const auto n = m_nodes.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        // spread the first HELLOs across one interval
        const double offset = m_params.hello_interval * static_cast<double>(i) / n;
        sim().schedule_timer(offset, static_cast<NodeId>(i), TimerTag{kHello, 0, 0});
    }
}

RouteTableEntry*
Aodv::live_route(NodeId node, NodeId dst)
{
    auto& routes = m_nodes.at(node).routes;
    auto it = routes.find(dst);
    if (it == routes.end() || !it->second.valid)
    {
        return nullptr;
    }
    if (it->second.expiry < sim().now())
    {
        it->second.valid = false;
        return nullptr;
    }
    return &it->second;
}

const RouteTableEntry*
Aodv::route(NodeId node, NodeId dst) const
{
    const auto& routes = m_nodes.at(node).routes;
    auto it = routes.find(dst);
    if (it == routes.end() || !it->second.valid || it->second.expiry < sim().now())
    {
        return nullptr;
    }
    return &it->second;
}

void
Aodv::update_route(NodeId at, NodeId dst, NodeId next_hop, int hop_count, std::uint32_t seq_no)
{
    RouteTableEntry& e = m_nodes.at(at).routes[dst];
    const double now = sim().now();
    if (e.destination == kNoNode || aodv_should_replace(e, seq_no, hop_count, now))
    {
        if (e.next_hop != next_hop)
        {
            e.precursors.clear();
        }
        e.destination = dst;
        e.next_hop = next_hop;
        e.hop_count = hop_count;
        e.seq_no = seq_no;
        e.valid = true;
    }
    if (e.next_hop == next_hop)
    {
        e.expiry = std::max(e.expiry, now + m_params.active_route_timeout);
    }
}

void
Aodv::send_data(Packet data)
{
    const NodeId src = data.origin;
    const NodeId dst = data.destination;
    if (live_route(src, dst))
    {
        forward_data(src, std::move(data));
        return;
    }
    NodeState& node = m_nodes.at(src);
    node.pending[dst].push_back(std::move(data));
    if (!node.discoveries.contains(dst))
    {
        start_discovery(src, dst);
    }
}

void
Aodv::start_discovery(NodeId src, NodeId dst)
{
    NodeState& node = m_nodes.at(src);
    Discovery& d = node.discoveries[dst];
    ++d.attempts;
    ++d.generation;
    ++m_discoveries;
    ++node.seq_no;

    Packet rreq = make_packet(PacketKind::Rreq, src, dst);
    rreq.seq_no = node.seq_no;
    auto it = node.routes.find(dst);
    rreq.dest_seq_no = it == node.routes.end() ? 0 : it->second.seq_no;
    node.seen_requests.insert(rreq.id);
    sim().broadcast(src, std::move(rreq));
    sim().schedule_timer(sim().now() + m_params.discovery_timeout, src,
                         TimerTag{kDiscoveryTimeout, dst, d.generation});
}

void
Aodv::on_timer(NodeId at, const TimerTag& tag)
{
    NodeState& node = m_nodes.at(at);
    if (tag.kind == kHello)
    {
        const double now = sim().now();
        Packet hello = make_packet(PacketKind::Hello, at, kBroadcast);
        sim().broadcast(at, std::move(hello));
        // next hops silent for too long count as broken links
        const double limit = m_params.allowed_hello_loss * m_params.hello_interval;
        std::set<NodeId> lost;
        for (const auto& [dst, e] : node.routes)
        {
            if (!e.valid)
            {
                continue;
            }
            auto heard = node.last_heard.find(e.next_hop);
            if (heard != node.last_heard.end() && now - heard->second > limit)
            {
                lost.insert(e.next_hop);
            }
        }
        for (NodeId n : lost)
        {
            link_broken(at, n);
        }
        sim().schedule_timer(now + m_params.hello_interval, at, TimerTag{kHello, 0, 0});
        return;
    }
    if (tag.kind != kDiscoveryTimeout)
    {
        return;
    }
    const auto dst = static_cast<NodeId>(tag.a);
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
Aodv::on_packet(NodeId at, NodeId from, const Packet& packet)
{
    if (at == kBaseStation)
    {
        return;
    }
    m_nodes.at(at).last_heard[from] = sim().now();
    switch (packet.kind)
    {
    case PacketKind::Rreq:
        handle_rreq(at, from, packet);
        break;
    case PacketKind::Rrep:
        handle_rrep(at, from, packet);
        break;
    case PacketKind::Rerr:
        handle_rerr(at, from, packet);
        break;
    case PacketKind::Data:
        handle_data(at, from, packet);
        break;
    default:
        break;
    }
}

void
Aodv::handle_rreq(NodeId at, NodeId from, const Packet& rreq)
{
    NodeState& node = m_nodes.at(at);
    if (!node.seen_requests.insert(rreq.id))
    {
        return;
    }
    // reverse route towards the originator
    update_route(at, rreq.origin, from, rreq.hop_count + 1, rreq.seq_no);

    if (at == rreq.destination)
    {
        node.seq_no = std::max(node.seq_no, rreq.dest_seq_no);
        Packet rrep = make_packet(PacketKind::Rrep, at, rreq.origin);
        rrep.subject = at;
        rrep.seq_no = node.seq_no;
        rrep.hop_count = 0;
        sim().unicast(at, from, std::move(rrep));
        return;
    }
    RouteTableEntry* known = live_route(at, rreq.destination);
    if (known && rreq.dest_seq_no != 0 && known->seq_no >= rreq.dest_seq_no)
    {
        // answer from a fresh enough route of our own
        Packet rrep = make_packet(PacketKind::Rrep, at, rreq.origin);
        rrep.subject = rreq.destination;
        rrep.seq_no = known->seq_no;
        rrep.hop_count = known->hop_count;
        known->precursors.insert(from);
        if (RouteTableEntry* reverse = live_route(at, rreq.origin))
        {
            reverse->precursors.insert(known->next_hop);
        }
        sim().unicast(at, from, std::move(rrep));
        return;
    }
    Packet copy = rreq;
    copy.hop_count += 1;
    sim().broadcast(at, std::move(copy));
}

void
Aodv::handle_rrep(NodeId at, NodeId from, const Packet& rrep)
{
    const NodeId dst = rrep.subject;
    update_route(at, dst, from, rrep.hop_count + 1, rrep.seq_no);
    if (at == rrep.destination)
    {
        m_nodes.at(at).discoveries.erase(dst);
        flush_pending(at, dst);
        return;
    }
    RouteTableEntry* reverse = live_route(at, rrep.destination);
    if (!reverse)
    {
        return;
    }
    if (RouteTableEntry* forward = live_route(at, dst))
    {
        forward->precursors.insert(reverse->next_hop);
    }
    Packet copy = rrep;
    copy.hop_count += 1;
    sim().unicast(at, reverse->next_hop, std::move(copy));
}

void
Aodv::flush_pending(NodeId src, NodeId dst)
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
Aodv::handle_data(NodeId at, NodeId from, const Packet& data)
{
    if (at == data.destination)
    {
        sim().note_data_delivered(at, data);
        return;
    }
    RouteTableEntry* r = live_route(at, data.destination);
    if (!r)
    {
        // no route here: tell whoever is still sending through us
        Packet rerr = make_packet(PacketKind::Rerr, at, kBroadcast);
        auto it = m_nodes.at(at).routes.find(data.destination);
        const std::uint32_t seq = it == m_nodes.at(at).routes.end() ? 0 : it->second.seq_no;
        rerr.unreachable_dests.emplace_back(data.destination, seq);
        ++m_rerr_sent;
        sim().broadcast(at, std::move(rerr));
        return;
    }
    r->precursors.insert(from);
    forward_data(at, data);
}

void
Aodv::forward_data(NodeId at, Packet data)
{
    RouteTableEntry* r = live_route(at, data.destination);
    r->expiry = std::max(r->expiry, sim().now() + m_params.active_route_timeout);
    const NodeId next = r->next_hop;
    if (at != data.origin)
    {
        data.hop_count += 1;
    }
    sim().unicast(at, next, std::move(data));
}

void
Aodv::on_link_failure(NodeId sender, NodeId receiver, const Packet& packet)
{
    if (sender == kBaseStation)
    {
        return;
    }
    if (packet.kind == PacketKind::Data)
    {
        link_broken(sender, receiver);
    }
}

void
Aodv::link_broken(NodeId at, NodeId neighbor)
{
    NodeState& node = m_nodes.at(at);
    std::vector<std::pair<NodeId, std::uint32_t>> lost;
    bool has_precursors = false;
    for (auto& [dst, e] : node.routes)
    {
        if (e.valid && e.next_hop == neighbor)
        {
            e.valid = false;
            e.seq_no += 1;
            lost.emplace_back(dst, e.seq_no);
            has_precursors = has_precursors || !e.precursors.empty();
        }
    }
    node.last_heard.erase(neighbor);
    if (lost.empty() || !has_precursors)
    {
        return;
    }
    Packet rerr = make_packet(PacketKind::Rerr, at, kBroadcast);
    rerr.unreachable_dests = std::move(lost);
    ++m_rerr_sent;
    sim().broadcast(at, std::move(rerr));
}

void
Aodv::handle_rerr(NodeId at, NodeId from, const Packet& rerr)
{
    NodeState& node = m_nodes.at(at);
    std::vector<std::pair<NodeId, std::uint32_t>> lost;
    bool has_precursors = false;
    for (const auto& [dst, seq] : rerr.unreachable_dests)
    {
        auto it = node.routes.find(dst);
        if (it == node.routes.end())
        {
            continue;
        }
        RouteTableEntry& e = it->second;
        if (e.valid && e.next_hop == from)
        {
            e.valid = false;
            e.seq_no = std::max(e.seq_no, seq);
            lost.emplace_back(dst, e.seq_no);
            has_precursors = has_precursors || !e.precursors.empty();
        }
    }
    if (lost.empty() || !has_precursors)
    {
        return;
    }
    Packet copy = make_packet(PacketKind::Rerr, at, kBroadcast);
    copy.unreachable_dests = std::move(lost);
    ++m_rerr_sent;
    sim().broadcast(at, std::move(copy));
}

} // namespace manet
