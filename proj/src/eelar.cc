#include "manet/eelar.h"

#include <cmath>
#include <limits>

namespace manet {

PositionTable::PositionTable(Position base_station, int n_areas)
    : m_bs(base_station),
      m_areas(n_areas)
{
}

bool
PositionTable::update(NodeId node, Position position, double t)
{
    const AreaId area = area_of_position(m_bs, position, m_areas);
    auto [it, inserted] = m_entries.try_emplace(node);
    PositionTableEntry& e = it->second;
    const bool notify = inserted || !e.reachable || e.area != area;
    e.node = node;
    e.position = position;
    e.area = area;
    e.last_update = t;
    e.reachable = true;
    return notify;
}

void
PositionTable::expire(double t, double timeout)
{
    for (auto& [id, e] : m_entries)
    {
        if (t - e.last_update > timeout)
        {
            e.reachable = false;
        }
    }
}

const PositionTableEntry*
PositionTable::find(NodeId node) const
{
    auto it = m_entries.find(node);
    return it == m_entries.end() ? nullptr : &it->second;
}

ForwardDecision
forward_decision(const ForwarderView& node, const Packet& data, ForwardRule rule)
{
    if (data.to_bs_flag || node.already_seen || !data.dest_position)
    {
        return ForwardDecision::Drop;
    }
    if (data.area && (!node.my_area || *node.my_area != *data.area))
    {
        return ForwardDecision::Drop;
    }
    const Position reference =
        rule == ForwardRule::SourceDistance ? data.origin_position : data.prev_hop_position;
    const Position dest = *data.dest_position;
    return distance(node.self, dest) < distance(reference, dest) ? ForwardDecision::Forward
                                                                 : ForwardDecision::Drop;
}

Eelar::Eelar(Simulator& sim, EelarParams params)
    : RoutingProtocol(sim),
      m_params(params),
      m_table(sim.base_station_position(), params.n_areas),
      m_nodes(sim.node_count())
{
}

Packet
Eelar::control(PacketKind kind, NodeId origin, NodeId destination)
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
Eelar::start()
{
    // every node joins at t = 0 by reporting its position
    for (std::size_t i = 0; i < m_nodes.size(); ++i)
    {
        const auto node = static_cast<NodeId>(i);
        Packet req = control(PacketKind::PosReq, node, kBaseStation);
        req.origin_position = sim().position(node);
        req.origin_time = sim().now();
        sim().unicast(node, kBaseStation, std::move(req));
    }
    sim().schedule_timer(m_params.beacon_period, kBaseStation, TimerTag{kBeaconTick, 1, 0});
}

void
Eelar::on_timer(NodeId at, const TimerTag& tag)
{
    switch (tag.kind)
    {
    case kBeaconTick:
        bs_beacon_tick(tag.a);
        break;
    case kRefreshTimeout: {
        auto it = m_pending_refresh.find(static_cast<NodeId>(tag.a));
        if (it != m_pending_refresh.end())
        {
            const auto requesters = std::move(it->second);
            m_pending_refresh.erase(it);
            for (NodeId r : requesters)
            {
                bs_answer(r, static_cast<NodeId>(tag.a));
            }
        }
        break;
    }
    case kQueryTimeout: {
        auto& queries = m_nodes.at(at).queries;
        const auto dst = static_cast<NodeId>(tag.a);
        auto it = queries.find(dst);
        if (it == queries.end() || it->second.generation != tag.b)
        {
            break;
        }
        if (it->second.attempts <= m_params.query_retries)
        {
            mn_send_query(at, dst);
        }
        else
        {
            queries.erase(it);
            m_nodes.at(at).pending_sends.erase(dst);
        }
        break;
    }
    default:
        break;
    }
}

void
Eelar::bs_beacon_tick(std::int64_t index)
{
    ++m_beacon_ticks;
    const double t = sim().now();
    m_table.expire(t, m_params.unreachable_timeout);
    sim().broadcast(kBaseStation, control(PacketKind::Beacon, kBaseStation, kBroadcast));
    sim().schedule_timer(static_cast<double>(index + 1) * m_params.beacon_period, kBaseStation,
                         TimerTag{kBeaconTick, index + 1, 0});
}

void
Eelar::bs_handle_pos_req(NodeId from, const Packet& req)
{
    const bool notify = m_table.update(from, req.origin_position, sim().now());
    if (notify && !req.targeted)
    {
        Packet idrp = control(PacketKind::IDRp, kBaseStation, from);
        idrp.area = m_table.find(from)->area;
        sim().unicast(kBaseStation, from, std::move(idrp));
    }
    auto it = m_pending_refresh.find(from);
    if (it != m_pending_refresh.end())
    {
        const auto requesters = std::move(it->second);
        m_pending_refresh.erase(it);
        for (NodeId r : requesters)
        {
            bs_answer(r, from);
        }
    }
}

void
Eelar::bs_handle_dst_pos_req(NodeId from, const Packet& req)
{
    const double t = sim().now();
    m_table.update(from, req.origin_position, t);
    const NodeId dst = req.subject;
    const PositionTableEntry* entry = m_table.find(dst);
    if (!entry)
    {
        bs_answer(from, dst);
        return;
    }
    if (t - entry->last_update > m_params.staleness || !entry->reachable)
    {
        auto [it, first] = m_pending_refresh.try_emplace(dst);
        it->second.push_back(from);
        if (first)
        {
            Packet beacon = control(PacketKind::Beacon, kBaseStation, dst);
            beacon.targeted = true;
            sim().unicast(kBaseStation, dst, std::move(beacon));
            sim().schedule_timer(t + m_params.refresh_timeout, kBaseStation,
                                 TimerTag{kRefreshTimeout, dst, 0});
        }
        return;
    }
    bs_answer(from, dst);
}

void
Eelar::bs_answer(NodeId requester, NodeId dst)
{
    Packet reply = control(PacketKind::DstIDRp, kBaseStation, requester);
    reply.subject = dst;
    const PositionTableEntry* d = m_table.find(dst);
    const PositionTableEntry* s = m_table.find(requester);
    if (!d || !d->reachable || !s)
    {
        reply.unreachable = true;
    }
    else
    {
        reply.area = d->area;
        reply.dest_position = d->position;
        reply.source_area = s->area;
        reply.same_area = s->area == d->area;
    }
    sim().unicast(kBaseStation, requester, std::move(reply));
}

void
Eelar::bs_relay_data(const Packet& data)
{
    ++m_bs_data_relayed;
    const PositionTableEntry* d = m_table.find(data.destination);
    if (!d || !d->reachable)
    {
        return;
    }
    Packet relayed = data;
    relayed.to_bs_flag = false;
    relayed.hop_count += 1;
    if (m_params.bs_relay == BsRelay::Direct)
    {
        sim().unicast(kBaseStation, data.destination, std::move(relayed));
        return;
    }
    // inject at the registered node of D's area nearest the BS
    NodeId entry_node = kNoNode;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [id, e] : m_table.entries())
    {
        if (!e.reachable || e.area != d->area)
        {
            continue;
        }
        const double r = distance(m_table.base_station(), e.position);
        if (r < best)
        {
            best = r;
            entry_node = id;
        }
    }
    if (entry_node == kNoNode)
    {
        return;
    }
    relayed.origin_position = m_table.find(entry_node)->position;
    relayed.prev_hop_position = relayed.origin_position;
    relayed.dest_position = d->position;
    relayed.area = d->area;
    sim().unicast(kBaseStation, entry_node, std::move(relayed));
}

void
Eelar::mn_handle_beacon(NodeId at, const Packet& beacon)
{
    Packet req = control(PacketKind::PosReq, at, kBaseStation);
    req.origin_position = sim().position(at);
    req.origin_time = sim().now();
    req.targeted = beacon.targeted;
    sim().unicast(at, kBaseStation, std::move(req));
}

void
Eelar::mn_handle_idrp(NodeId at, const Packet& idrp)
{
    NodeState& node = m_nodes.at(at);
    if (!idrp.area)
    {
        return;
    }
    if (node.my_area && *node.my_area != *idrp.area)
    {
        // sector decisions taken from the old area no longer hold
        node.destinations.clear();
    }
    node.my_area = idrp.area;
}

void
Eelar::mn_send_query(NodeId src, NodeId dst)
{
    NodeState& node = m_nodes.at(src);
    Query& q = node.queries[dst];
    ++q.attempts;
    ++q.generation;
    Packet req = control(PacketKind::DstPosReq, src, kBaseStation);
    req.subject = dst;
    req.origin_position = sim().position(src);
    req.origin_time = sim().now();
    sim().unicast(src, kBaseStation, std::move(req));
    sim().schedule_timer(sim().now() + m_params.query_timeout, src,
                         TimerTag{kQueryTimeout, dst, q.generation});
}

void
Eelar::mn_handle_dst_idrp(NodeId at, const Packet& reply)
{
    NodeState& node = m_nodes.at(at);
    const NodeId dst = reply.subject;
    node.queries.erase(dst);
    auto pending = std::move(node.pending_sends[dst]);
    node.pending_sends.erase(dst);
    if (reply.unreachable)
    {
        node.destinations.erase(dst);
        return;
    }
    node.my_area = reply.source_area;
    DestinationInfo info;
    info.dest_area = *reply.area;
    info.dest_position = *reply.dest_position;
    info.source_area = *reply.source_area;
    info.same_area = reply.same_area;
    info.obtained_at = sim().now();
    node.destinations[dst] = info;
    for (auto& p : pending)
    {
        mn_transmit(at, std::move(p), info);
    }
}

bool
Eelar::destination_valid(NodeId src, NodeId dst)
{
    NodeState& node = m_nodes.at(src);
    auto it = node.destinations.find(dst);
    if (it == node.destinations.end())
    {
        return false;
    }
    if (sim().now() - it->second.obtained_at > m_params.staleness)
    {
        node.destinations.erase(it);
        return false;
    }
    return true;
}

void
Eelar::send_data(Packet data)
{
    const NodeId src = data.origin;
    const NodeId dst = data.destination;
    NodeState& node = m_nodes.at(src);
    if (destination_valid(src, dst))
    {
        mn_transmit(src, std::move(data), node.destinations.at(dst));
        return;
    }
    node.pending_sends[dst].push_back(std::move(data));
    if (!node.queries.contains(dst))
    {
        mn_send_query(src, dst);
    }
}

void
Eelar::mn_transmit(NodeId src, Packet data, const DestinationInfo& info)
{
    if (!info.same_area)
    {
        data.to_bs_flag = true;
        sim().unicast(src, kBaseStation, std::move(data));
        return;
    }
    data.to_bs_flag = false;
    data.dest_position = info.dest_position;
    data.origin_position = sim().position(src);
    data.prev_hop_position = data.origin_position;
    data.area = info.source_area;
    m_nodes.at(src).seen.insert(data.id);
    sim().broadcast(src, std::move(data));
}

void
Eelar::mn_handle_data(NodeId at, NodeId from, const Packet& data)
{
    if (at == data.destination)
    {
        sim().note_data_delivered(at, data);
        return;
    }
    NodeState& node = m_nodes.at(at);
    if (from == kBaseStation)
    {
        // this node is the entry point of a BS injection into its area
        if (node.seen.insert(data.id))
        {
            Packet copy = data;
            copy.hop_count += 1;
            copy.prev_hop_position = sim().position(at);
            sim().broadcast(at, std::move(copy));
        }
        return;
    }
    ForwarderView view{sim().position(at), node.my_area, node.seen.contains(data.id)};
    const ForwardDecision decision = forward_decision(view, data, m_params.forward_rule);
    node.seen.insert(data.id);
    if (decision == ForwardDecision::Forward)
    {
        Packet copy = data;
        copy.hop_count += 1;
        copy.prev_hop_position = view.self;
        sim().broadcast(at, std::move(copy));
    }
}

void
Eelar::on_packet(NodeId at, NodeId from, const Packet& packet)
{
    if (at == kBaseStation)
    {
        switch (packet.kind)
        {
        case PacketKind::PosReq:
            bs_handle_pos_req(from, packet);
            break;
        case PacketKind::DstPosReq:
            bs_handle_dst_pos_req(from, packet);
            break;
        case PacketKind::Data:
            if (packet.to_bs_flag)
            {
                bs_relay_data(packet);
            }
            break;
        default:
            break;
        }
        return;
    }
    switch (packet.kind)
    {
    case PacketKind::Beacon:
        mn_handle_beacon(at, packet);
        break;
    case PacketKind::IDRp:
        mn_handle_idrp(at, packet);
        break;
    case PacketKind::DstIDRp:
        mn_handle_dst_idrp(at, packet);
        break;
    case PacketKind::Data:
        mn_handle_data(at, from, packet);
        break;
    default:
        break;
    }
}

} // namespace manet
