#include "manet/scenario.h"

#include "manet/aodv.h"
#include "manet/eelar.h"
#include "manet/lar.h"
#include "manet/source_routing.h"

namespace manet {

namespace {

RadioModel
radio_model(const ScenarioConfig& c)
{
    return RadioModel{c.tx_range_m, c.per_hop_latency_s, c.loss_probability};
}

Position
area_centre(const ScenarioConfig& c)
{
    return Position{c.area_w_m / 2.0, c.area_h_m / 2.0};
}

std::vector<CbrFlow>
flows_for(const ScenarioConfig& c)
{
    Rng rng = make_stream(c.seed, 4);
    TrafficParams t;
    t.n_nodes = static_cast<std::size_t>(c.n_nodes);
    t.cbr_fraction = c.cbr_fraction;
    t.rate = c.cbr_rate_pps;
    t.packet_size = c.data_bytes;
    t.duration = c.duration_s;
    return generate_flows(t, rng);
}

} // namespace

std::unique_ptr<RoutingProtocol>
make_protocol(const ScenarioConfig& c, Simulator& sim)
{
    switch (c.protocol)
    {
    case ProtocolId::Eelar:
        return std::make_unique<Eelar>(sim, eelar_params(c));
    case ProtocolId::Lar1:
        return std::make_unique<Lar>(sim, lar_params(c, LarScheme::Scheme1));
    case ProtocolId::Lar2:
        return std::make_unique<Lar>(sim, lar_params(c, LarScheme::Scheme2));
    case ProtocolId::Aodv: {
        AodvParams p;
        p.discovery_timeout = c.aodv_discovery_timeout_s;
        p.retries = c.aodv_retries;
        p.active_route_timeout = c.aodv_active_route_timeout_s;
        p.hello_enabled = c.hello_enabled;
        p.hello_interval = c.hello_interval_s;
        p.control_bytes = c.control_bytes;
        return std::make_unique<Aodv>(sim, p);
    }
    case ProtocolId::Dsr:
        return std::make_unique<Dsr>(
            sim, DiscoveryParams{c.aodv_discovery_timeout_s, c.aodv_retries, c.control_bytes});
    }
    return nullptr;
}

Scenario::Scenario(const ScenarioConfig& cfg)
    : Scenario(cfg,
               make_random_waypoint(mobility_params(cfg), static_cast<std::size_t>(cfg.n_nodes),
                                    cfg.seed),
               flows_for(cfg))
{
}

Scenario::Scenario(const ScenarioConfig& cfg, std::vector<NodeMobility> nodes,
                   std::vector<CbrFlow> flows)
    : m_cfg(cfg),
      m_flows(std::move(flows)),
      m_flow_ticks(m_flows.size(), 0),
      m_sim(radio_model(cfg), std::move(nodes), area_centre(cfg), cfg.seed, m_flows.size()),
      m_protocol(make_protocol(cfg, m_sim))
{
    m_sim.set_sink(this);
}

MetricsReport
Scenario::run()
{
    const EnergyModel energy{m_cfg.energy_tx, m_cfg.energy_rx};
    if (m_cfg.duration_s <= 0.0)
    {
        return m_sim.metrics().finalize(energy);
    }
    m_protocol->start();
    for (std::size_t i = 0; i < m_flows.size(); ++i)
    {
        if (m_flows[i].start < m_flows[i].end)
        {
            m_sim.schedule_traffic(m_flows[i].start, static_cast<int>(i));
        }
    }
    m_sim.run_until(m_cfg.duration_s);
    return m_sim.metrics().finalize(energy);
}

void
Scenario::on_packet(NodeId at, NodeId from, const Packet& packet)
{
    m_protocol->on_packet(at, from, packet);
}

void
Scenario::on_timer(NodeId at, const TimerTag& tag)
{
    m_protocol->on_timer(at, tag);
}

void
Scenario::on_link_failure(NodeId sender, NodeId receiver, const Packet& packet)
{
    m_protocol->on_link_failure(sender, receiver, packet);
}

void
Scenario::on_traffic_tick(int flow)
{
    const CbrFlow& f = m_flows.at(flow);
    Packet data;
    data.kind = PacketKind::Data;
    data.origin = f.source;
    data.destination = f.destination;
    data.id = m_sim.next_packet_id(f.source);
    data.size_bytes = f.packet_size;
    data.payload_created_at = m_sim.now();
    data.flow = flow;
    m_sim.note_data_sent(data);
    m_protocol->send_data(std::move(data));

    const std::uint64_t next = ++m_flow_ticks[flow];
    const double t = f.start + static_cast<double>(next) / f.rate;
    if (t < f.end)
    {
        m_sim.schedule_traffic(t, flow);
    }
}

MetricsReport
run_scenario(const ScenarioConfig& cfg, std::ostream* trace)
{
    validate(cfg);
    Scenario scenario(cfg);
    scenario.set_trace(trace);
    return scenario.run();
}

} // namespace manet
