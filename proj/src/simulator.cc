#include "manet/simulator.h"

#include <fmt/format.h>

#include <algorithm>

namespace manet {

namespace {

std::string
entity_label(NodeId id)
{
    switch (id)
    {
    case kBroadcast:
        return "*";
    case kBaseStation:
        return "BS";
    case kNoNode:
        return "-";
    default:
        return std::to_string(id);
    }
}

} // namespace

std::string_view
to_string(EventKind kind)
{
    switch (kind)
    {
    case EventKind::PacketArrival:
        return "arrive";
    case EventKind::TimerExpiry:
        return "timer";
    case EventKind::TrafficTick:
        return "traffic";
    }
    return "?";
}

Simulator::Simulator(RadioModel radio, std::vector<NodeMobility> nodes, Position base_station,
                     std::uint64_t seed, std::size_t n_flows)
    : m_radio(radio),
      m_nodes(std::move(nodes)),
      m_bs_position(base_station),
      m_loss_rng(make_stream(seed, 3)),
      m_metrics(m_nodes.size(), n_flows),
      m_packet_seq(m_nodes.size(), 0)
{
}

double
Simulator::max_node_speed() const
{
    double v = 0.0;
    for (const auto& n : m_nodes)
    {
        v = std::max(v, n.max_speed());
    }
    return v;
}

Position
Simulator::position(NodeId node)
{
    if (node == kBaseStation)
    {
        return m_bs_position;
    }
    return m_nodes.at(static_cast<std::size_t>(node)).at(m_now);
}

std::vector<NodeId>
Simulator::neighbors(NodeId node, double t)
{
    std::vector<NodeId> out;
    const Position self = m_nodes.at(static_cast<std::size_t>(node)).at(t);
    for (std::size_t i = 0; i < m_nodes.size(); ++i)
    {
        const auto other = static_cast<NodeId>(i);
        if (other != node && distance(self, m_nodes[i].at(t)) <= m_radio.tx_range)
        {
            out.push_back(other);
        }
    }
    return out;
}

bool
Simulator::in_range(NodeId a, NodeId b)
{
    if (a == kBaseStation || b == kBaseStation)
    {
        return true;
    }
    return distance(position(a), position(b)) <= m_radio.tx_range;
}

void
Simulator::schedule(Event event)
{
    if (event.time < m_now)
    {
        throw SchedulingError(
            fmt::format("event at t={} scheduled in the past (now={})", event.time, m_now));
    }
    event.sequence = m_next_sequence++;
    m_queue.push(std::move(event));
}

void
Simulator::schedule_timer(double at, NodeId target, TimerTag tag)
{
    Event e;
    e.time = at;
    e.kind = EventKind::TimerExpiry;
    e.target = target;
    e.timer = tag;
    schedule(std::move(e));
}

void
Simulator::schedule_traffic(double at, int flow)
{
    Event e;
    e.time = at;
    e.kind = EventKind::TrafficTick;
    e.flow = flow;
    schedule(std::move(e));
}

void
Simulator::account_transmission(NodeId sender, const Packet& packet)
{
    m_metrics.record_tx(sender);
    trace_line("send", &packet, sender);
    if (is_control(packet.kind))
    {
        m_metrics.record_control(packet.kind);
    }
}

std::vector<NodeId>
Simulator::broadcast(NodeId sender, Packet packet)
{
    account_transmission(sender, packet);
    auto shared = std::make_shared<const Packet>(std::move(packet));
    const double arrival = m_now + m_radio.per_hop_latency;

    std::vector<NodeId> receivers;
    const bool from_bs = sender == kBaseStation;
    const Position origin = position(sender);
    for (std::size_t i = 0; i < m_nodes.size(); ++i)
    {
        const auto node = static_cast<NodeId>(i);
        if (node == sender)
        {
            continue;
        }
        if (!from_bs && distance(origin, m_nodes[i].at(m_now)) > m_radio.tx_range)
        {
            continue;
        }
        if (m_loss_rng.bernoulli(m_radio.loss_probability))
        {
            continue;
        }
        Event e;
        e.time = arrival;
        e.kind = EventKind::PacketArrival;
        e.target = node;
        e.sender = sender;
        e.packet = shared;
        schedule(std::move(e));
        receivers.push_back(node);
    }
    return receivers;
}

void
Simulator::unicast(NodeId sender, NodeId receiver, Packet packet)
{
    account_transmission(sender, packet);
    Event e;
    e.time = m_now + m_radio.per_hop_latency;
    e.kind = EventKind::PacketArrival;
    e.target = receiver;
    e.sender = sender;
    e.unicast = true;
    e.lost = m_loss_rng.bernoulli(m_radio.loss_probability);
    e.packet = std::make_shared<const Packet>(std::move(packet));
    schedule(std::move(e));
}

PacketId
Simulator::next_packet_id(NodeId origin)
{
    if (origin == kBaseStation)
    {
        return PacketId{origin, m_bs_packet_seq++};
    }
    return PacketId{origin, m_packet_seq.at(static_cast<std::size_t>(origin))++};
}

void
Simulator::note_data_sent(const Packet& packet)
{
    m_metrics.record_data_sent(packet.id, packet.flow);
    trace_line("originate", &packet, packet.origin);
}

bool
Simulator::note_data_delivered(NodeId at, const Packet& packet)
{
    if (!m_metrics.record_data_delivered(packet.id, packet.flow, m_now))
    {
        return false;
    }
    trace_line("deliver", &packet, at);
    return true;
}

void
Simulator::run_until(double t_end)
{
    while (!m_queue.empty() && m_queue.top().time <= t_end)
    {
        Event e = m_queue.top();
        m_queue.pop();
        m_now = e.time;
        ++m_processed;
        dispatch(e);
    }
    m_now = std::max(m_now, t_end);
}

void
Simulator::dispatch(const Event& e)
{
    switch (e.kind)
    {
    case EventKind::PacketArrival: {
        const Packet& p = *e.packet;
        if (e.unicast && (e.lost || !in_range(e.sender, e.target)))
        {
            trace_line("linkfail", &p, e.target);
            if (m_sink)
            {
                m_sink->on_link_failure(e.sender, e.target, p);
            }
            return;
        }
        m_metrics.record_rx(e.target);
        trace_line("arrive", &p, e.target);
        if (m_sink)
        {
            m_sink->on_packet(e.target, e.sender, p);
        }
        return;
    }
    case EventKind::TimerExpiry:
        trace_line("timer", nullptr, e.target);
        if (m_sink)
        {
            m_sink->on_timer(e.target, e.timer);
        }
        return;
    case EventKind::TrafficTick:
        if (m_sink)
        {
            m_sink->on_traffic_tick(e.flow);
        }
        return;
    }
}

void
Simulator::trace_line(std::string_view event, const Packet* p, NodeId at)
{
    if (!m_trace)
    {
        return;
    }
    if (p)
    {
        *m_trace << fmt::format("{:.6f}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", m_now, event,
                                to_string(p->kind), entity_label(p->origin),
                                entity_label(p->destination), entity_label(at), p->hop_count,
                                p->id.seq);
    }
    else
    {
        *m_trace << fmt::format("{:.6f}\t{}\t-\t-\t-\t{}\t-\t-\n", m_now, event,
                                entity_label(at));
    }
}

} // namespace manet
