#ifndef MANET_AODV_H
#define MANET_AODV_H

#include "manet/protocol.h"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace manet {

struct AodvParams
{
    double discovery_timeout{2.0};
    int retries{2};
    double active_route_timeout{3.0};
    bool hello_enabled{false};
    double hello_interval{1.0};
    int allowed_hello_loss{2};
    int control_bytes{64};
};

struct RouteTableEntry
{
    NodeId destination{kNoNode};
    NodeId next_hop{kNoNode};
    int hop_count{0};
    std::uint32_t seq_no{0};
    double expiry{0.0};
    bool valid{false};
    std::set<NodeId> precursors;
};

/// Whether an advertised (seq, hops) should replace the current entry:
/// fresher sequence numbers win, equal ones keep the shorter route.
bool aodv_should_replace(const RouteTableEntry& current, std::uint32_t seq_no, int hop_count,
                         double now);

/// On-demand distance-vector routing: flooded RREQ, RREP unicast back on
/// the reverse path, RERR to precursors on link breaks.
class Aodv : public RoutingProtocol
{
  public:
    Aodv(Simulator& sim, AodvParams params);

    std::string_view name() const override { return "AODV"; }
    void start() override;
    void send_data(Packet data) override;
    void on_packet(NodeId at, NodeId from, const Packet& packet) override;
    void on_timer(NodeId at, const TimerTag& tag) override;
    void on_link_failure(NodeId sender, NodeId receiver, const Packet& packet) override;

    /// Valid, unexpired route or nullptr.
    const RouteTableEntry* route(NodeId node, NodeId dst) const;
    const std::map<NodeId, RouteTableEntry>& table(NodeId node) const
    {
        return m_nodes.at(node).routes;
    }
    std::uint64_t discoveries_started() const { return m_discoveries; }
    std::uint64_t discoveries_abandoned() const { return m_abandoned; }
    std::uint64_t rerr_sent() const { return m_rerr_sent; }

  private:
    struct Discovery
    {
        int attempts{0};
        std::int64_t generation{0};
    };

    struct NodeState
    {
        std::uint32_t seq_no{0};
        std::map<NodeId, RouteTableEntry> routes;
        BoundedSeenSet<PacketId, PacketIdHash> seen_requests;
        std::map<NodeId, std::deque<Packet>> pending;
        std::map<NodeId, Discovery> discoveries;
        std::map<NodeId, double> last_heard;
    };

    enum TimerKind
    {
        kDiscoveryTimeout,
        kHello,
    };

    Packet make_packet(PacketKind kind, NodeId origin, NodeId destination);
    void start_discovery(NodeId src, NodeId dst);
    void handle_rreq(NodeId at, NodeId from, const Packet& rreq);
    void handle_rrep(NodeId at, NodeId from, const Packet& rrep);
    void handle_rerr(NodeId at, NodeId from, const Packet& rerr);
    void handle_data(NodeId at, NodeId from, const Packet& data);
    void forward_data(NodeId at, Packet data);
    void update_route(NodeId at, NodeId dst, NodeId next_hop, int hop_count,
                      std::uint32_t seq_no);
    /// Invalidates routes through `neighbor` and sends a RERR if any of
    /// them had precursors.
    void link_broken(NodeId at, NodeId neighbor);
    void flush_pending(NodeId src, NodeId dst);
    RouteTableEntry* live_route(NodeId node, NodeId dst);

    AodvParams m_params;
    std::vector<NodeState> m_nodes;
    std::uint64_t m_discoveries{0};
    std::uint64_t m_abandoned{0};
    std::uint64_t m_rerr_sent{0};
};

} // namespace manet

#endif
