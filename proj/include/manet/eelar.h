#ifndef MANET_EELAR_H
#define MANET_EELAR_H

#include "manet/geometry.h"
#include "manet/protocol.h"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

namespace manet {

enum class ForwardRule
{
    SourceDistance,  ///< compare against the originator's stamped distance
    PrevHopDistance, ///< classic greedy: compare against the last transmitter
};

enum class BsRelay
{
    Direct,        ///< BS hands the packet straight to the destination
    FloodDestArea, ///< BS injects it into the destination's area
};

struct EelarParams
{
    int n_areas{6};
    double beacon_period{1.0};
    double staleness{2.0};
    double unreachable_timeout{3.0};
    /// How long the BS waits for the answer to an on-demand BEACON.
    double refresh_timeout{0.05};
    /// How long a source waits for DstIDRp before asking again.
    double query_timeout{1.0};
    int query_retries{2};
    ForwardRule forward_rule{ForwardRule::SourceDistance};
    BsRelay bs_relay{BsRelay::Direct};
    int control_bytes{64};
};

struct PositionTableEntry
{
    NodeId node{kNoNode};
    Position position;
    AreaId area;
    double last_update{0.0};
    bool reachable{true};
};

/// The base station's view of every registered node.
class PositionTable
{
  public:
    PositionTable(Position base_station, int n_areas);

    /// Inserts or refreshes a node. Returns true when the node is new,
    /// comes back from unreachable, or has changed area, i.e. whenever it
    /// needs to be told its area again.
    bool update(NodeId node, Position position, double t);
    /// Marks entries silent for longer than `timeout` unreachable.
    void expire(double t, double timeout);

    const PositionTableEntry* find(NodeId node) const;
    std::size_t size() const { return m_entries.size(); }
    const std::map<NodeId, PositionTableEntry>& entries() const { return m_entries; }
    Position base_station() const { return m_bs; }
    int n_areas() const { return m_areas; }

  private:
    Position m_bs;
    int m_areas;
    std::map<NodeId, PositionTableEntry> m_entries;
};

enum class ForwardDecision
{
    Forward,
    Drop,
};

struct ForwarderView
{
    Position self;
    std::optional<AreaId> my_area;
    bool already_seen{false};
};

/// Intra-area DATA filter applied by a node that is not the destination.
ForwardDecision forward_decision(const ForwarderView& node, const Packet& data,
                                 ForwardRule rule);

/// Location-assisted routing through a base station that keeps every
/// node's position and sector. Same-sector traffic floods towards the
/// destination inside the source's sector; other traffic goes through the
/// base station.
class Eelar : public RoutingProtocol
{
  public:
    Eelar(Simulator& sim, EelarParams params);

    std::string_view name() const override { return "EELAR"; }
    void start() override;
    void send_data(Packet data) override;
    void on_packet(NodeId at, NodeId from, const Packet& packet) override;
    void on_timer(NodeId at, const TimerTag& tag) override;

    const PositionTable& position_table() const { return m_table; }
    std::optional<AreaId> node_area(NodeId node) const { return m_nodes.at(node).my_area; }
    std::uint64_t bs_data_relayed() const { return m_bs_data_relayed; }
    std::uint64_t beacon_ticks() const { return m_beacon_ticks; }
    const EelarParams& params() const { return m_params; }

  private:
    struct DestinationInfo
    {
        AreaId dest_area;
        Position dest_position;
        AreaId source_area;
        bool same_area{false};
        double obtained_at{0.0};
    };

    struct Query
    {
        int attempts{0};
        std::int64_t generation{0};
    };

    struct NodeState
    {
        std::optional<AreaId> my_area;
        BoundedSeenSet<PacketId, PacketIdHash> seen;
        std::map<NodeId, std::deque<Packet>> pending_sends;
        std::map<NodeId, DestinationInfo> destinations;
        std::map<NodeId, Query> queries;
    };

    enum TimerKind
    {
        kBeaconTick,
        kRefreshTimeout,
        kQueryTimeout,
    };

    Packet control(PacketKind kind, NodeId origin, NodeId destination);

    // base station
    void bs_beacon_tick(std::int64_t index);
    void bs_handle_pos_req(NodeId from, const Packet& req);
    void bs_handle_dst_pos_req(NodeId from, const Packet& req);
    void bs_answer(NodeId requester, NodeId dst);
    void bs_relay_data(const Packet& data);

    // mobile nodes
    void mn_handle_beacon(NodeId at, const Packet& beacon);
    void mn_handle_idrp(NodeId at, const Packet& idrp);
    void mn_handle_dst_idrp(NodeId at, const Packet& reply);
    void mn_send_query(NodeId src, NodeId dst);
    void mn_transmit(NodeId src, Packet data, const DestinationInfo& info);
    void mn_handle_data(NodeId at, NodeId from, const Packet& data);
    bool destination_valid(NodeId src, NodeId dst);

    EelarParams m_params;
    PositionTable m_table;
    std::vector<NodeState> m_nodes;
    std::map<NodeId, std::vector<NodeId>> m_pending_refresh;
    std::uint64_t m_bs_data_relayed{0};
    std::uint64_t m_beacon_ticks{0};
};

} // namespace manet

#endif
