#ifndef MANET_METRICS_H
#define MANET_METRICS_H

#include "manet/packet.h"
#include "manet/rng.h"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace manet {

struct CbrFlow
{
    NodeId source{0};
    NodeId destination{1};
    double rate{2.0};
    int packet_size{512};
    double start{0.0};
    double end{0.0};

    /// Send instants start + i/rate strictly before end.
    std::vector<double> tick_times() const;
};

struct TrafficParams
{
    std::size_t n_nodes{0};
    double cbr_fraction{0.20};
    double rate{2.0};
    int packet_size{512};
    double duration{500.0};
};

/// round(cbr_fraction * n) flows from distinct uniformly chosen sources,
/// each to a uniform other node. Throws std::invalid_argument if n < 2.
std::vector<CbrFlow> generate_flows(const TrafficParams& params, Rng& rng);

struct EnergyModel
{
    double tx_cost{1.0};
    double rx_cost{0.5};
};

struct MetricsReport
{
    std::uint64_t data_sent{0};
    std::uint64_t data_delivered{0};
    std::array<std::uint64_t, kPacketKindCount> control_sent{};
    std::uint64_t control_total{0};
    /// Undefined when nothing was delivered.
    std::optional<double> control_overhead;
    /// Undefined when nothing was sent.
    std::optional<double> delivery_ratio;
    std::vector<std::uint64_t> tx_count;
    std::vector<std::uint64_t> rx_count;
    std::vector<double> energy;

    std::uint64_t control(PacketKind kind) const
    {
        return control_sent[static_cast<std::size_t>(kind)];
    }
    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Run-level counters. DATA counts once at origination and once at first
/// arrival at its destination; control counts once per transmission.
class Metrics
{
  public:
    Metrics(std::size_t n_nodes, std::size_t n_flows);

    void record_data_sent(const PacketId& id, int flow);
    /// Returns false for a duplicate arrival, which is not counted.
    bool record_data_delivered(const PacketId& id, int flow, double t);
    void record_control(PacketKind kind);
    void record_tx(NodeId node);
    void record_rx(NodeId node);

    std::uint64_t data_sent() const { return m_data_sent; }
    std::uint64_t data_delivered() const { return m_data_delivered; }
    std::uint64_t control_total() const;
    const std::vector<std::uint64_t>& flow_sent() const { return m_flow_sent; }
    const std::vector<std::uint64_t>& flow_delivered() const { return m_flow_delivered; }
    std::optional<double> delivery_time(const PacketId& id) const;

    MetricsReport finalize(const EnergyModel& energy = {}) const;

  private:
    std::uint64_t m_data_sent{0};
    std::uint64_t m_data_delivered{0};
    std::array<std::uint64_t, kPacketKindCount> m_control{};
    std::vector<std::uint64_t> m_flow_sent;
    std::vector<std::uint64_t> m_flow_delivered;
    std::vector<std::uint64_t> m_tx;
    std::vector<std::uint64_t> m_rx;
    std::unordered_map<PacketId, double, PacketIdHash> m_delivered_at;
};

} // namespace manet

#endif
