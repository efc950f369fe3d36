#include "manet/metrics.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace manet {

std::vector<double>
CbrFlow::tick_times() const
{
    std::vector<double> ticks;
    for (std::uint64_t i = 0;; ++i)
    {
        const double t = start + static_cast<double>(i) / rate;
        if (t >= end)
        {
            break;
        }
        ticks.push_back(t);
    }
    return ticks;
}

std::vector<CbrFlow>
generate_flows(const TrafficParams& params, Rng& rng)
{
    if (params.n_nodes < 2)
    {
        throw std::invalid_argument("CBR traffic needs at least two nodes");
    }
    const auto n = params.n_nodes;
    const auto n_flows = static_cast<std::size_t>(std::lround(params.cbr_fraction * n));

    std::vector<NodeId> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::vector<CbrFlow> flows;
    for (std::size_t i = 0; i < n_flows && i < n; ++i)
    {
        // partial Fisher-Yates: nodes[0..i] are the chosen sources
        const auto j = i + rng.below(n - i);
        std::swap(nodes[i], nodes[j]);
        CbrFlow f;
        f.source = nodes[i];
        auto dst = static_cast<NodeId>(rng.below(n - 1));
        if (dst >= f.source)
        {
            ++dst;
        }
        f.destination = dst;
        f.rate = params.rate;
        f.packet_size = params.packet_size;
        f.start = rng.uniform(0.0, 1.0 / params.rate);
        f.end = params.duration;
        flows.push_back(f);
    }
    return flows;
}

Metrics::Metrics(std::size_t n_nodes, std::size_t n_flows)
    : m_flow_sent(n_flows, 0),
      m_flow_delivered(n_flows, 0),
      m_tx(n_nodes, 0),
      m_rx(n_nodes, 0)
{
}

void
Metrics::record_data_sent(const PacketId&, int flow)
{
    ++m_data_sent;
    if (flow >= 0 && static_cast<std::size_t>(flow) < m_flow_sent.size())
    {
        ++m_flow_sent[flow];
    }
}

bool
Metrics::record_data_delivered(const PacketId& id, int flow, double t)
{
    if (!m_delivered_at.emplace(id, t).second)
    {
        return false;
    }
    ++m_data_delivered;
    if (flow >= 0 && static_cast<std::size_t>(flow) < m_flow_delivered.size())
    {
        ++m_flow_delivered[flow];
    }
    return true;
}

void
Metrics::record_control(PacketKind kind)
{
    ++m_control[static_cast<std::size_t>(kind)];
}

void
Metrics::record_tx(NodeId node)
{
    if (node >= 0 && static_cast<std::size_t>(node) < m_tx.size())
    {
        ++m_tx[node];
    }
}

void
Metrics::record_rx(NodeId node)
{
    if (node >= 0 && static_cast<std::size_t>(node) < m_rx.size())
    {
        ++m_rx[node];
    }
}

std::uint64_t
Metrics::control_total() const
{
    return std::accumulate(m_control.begin(), m_control.end(), std::uint64_t{0});
}

std::optional<double>
Metrics::delivery_time(const PacketId& id) const
{
    auto it = m_delivered_at.find(id);
    if (it == m_delivered_at.end())
    {
        return std::nullopt;
    }
    return it->second;
}

MetricsReport
Metrics::finalize(const EnergyModel& energy) const
{
    MetricsReport r;
    r.data_sent = m_data_sent;
    r.data_delivered = m_data_delivered;
    r.control_sent = m_control;
    r.control_total = control_total();
    if (m_data_delivered > 0)
    {
        r.control_overhead =
            static_cast<double>(r.control_total) / static_cast<double>(m_data_delivered);
    }
    if (m_data_sent > 0)
    {
        r.delivery_ratio =
            static_cast<double>(m_data_delivered) / static_cast<double>(m_data_sent);
    }
    r.tx_count = m_tx;
    r.rx_count = m_rx;
    r.energy.resize(m_tx.size());
    for (std::size_t i = 0; i < m_tx.size(); ++i)
    {
        r.energy[i] = static_cast<double>(m_tx[i]) * energy.tx_cost +
                      static_cast<double>(m_rx[i]) * energy.rx_cost;
    }
    return r;
}

} // namespace manet
