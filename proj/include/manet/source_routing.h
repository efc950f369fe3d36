#ifndef MANET_SOURCE_ROUTING_H
#define MANET_SOURCE_ROUTING_H

#include "manet/protocol.h"

#include <cstdint>
#include <deque>
#include <map>
#include <vector>

namespace manet {

/// Ordered hop list, source first and destination last.
using SourceRoute = std::vector<NodeId>;

bool is_loop_free(const SourceRoute& route);

struct DiscoveryParams
{
    double timeout{2.0};
    int retries{2};
    int control_bytes{64};
};

/// Route discovery with accumulated hop lists, per-source route caches,
/// hop-by-hop DATA along the cached route, and route errors travelling
/// back to the source when a hop fails. Subclasses decide how requests
/// spread and how many replies a target sends.
class SourceRoutingProtocol : public RoutingProtocol
{
  public:
    SourceRoutingProtocol(Simulator& sim, DiscoveryParams params, PacketKind request_kind,
                          PacketKind reply_kind, std::size_t max_routes_per_dest,
                          bool reply_to_every_copy);

    void send_data(Packet data) override;
    void on_packet(NodeId at, NodeId from, const Packet& packet) override;
    void on_timer(NodeId at, const TimerTag& tag) override;
    void on_link_failure(NodeId sender, NodeId receiver, const Packet& packet) override;

    const std::vector<SourceRoute>& cached_routes(NodeId node, NodeId dst) const;
    std::uint64_t discoveries_started() const { return m_discoveries; }
    std::uint64_t discoveries_abandoned() const { return m_abandoned; }

  protected:
    /// Builds and broadcasts a request for attempt 1, 2, ...
    virtual void begin_discovery(NodeId src, NodeId dst, int attempt) = 0;
    /// Whether a non-target node rebroadcasts a request it has not seen.
    virtual bool should_forward_request(NodeId at, const Packet& request) = 0;
    /// Lets a subclass stamp fields onto a request it rebroadcasts.
    virtual void prepare_forwarded_request(NodeId, Packet&) {}
    /// Called for every packet arriving at a node.
    virtual void observe(NodeId, const Packet&) {}

    Packet make_packet(PacketKind kind, NodeId origin, NodeId destination);
    void stamp_origin(NodeId node, Packet& p);
    void mark_request_seen(NodeId node, const PacketId& id);

  private:
    struct Discovery
    {
        int attempts{0};
        std::int64_t generation{0};
    };

    struct NodeState
    {
        std::map<NodeId, std::vector<SourceRoute>> routes;
        BoundedSeenSet<PacketId, PacketIdHash> seen_requests;
        std::map<NodeId, std::deque<Packet>> pending;
        std::map<NodeId, Discovery> discoveries;
    };

    enum TimerKind
    {
        kDiscoveryTimeout,
    };

    void start_discovery(NodeId src, NodeId dst);
    void handle_request(NodeId at, const Packet& request);
    void handle_reply(NodeId at, const Packet& reply);
    void handle_error(NodeId at, const Packet& error);
    void handle_data(NodeId at, const Packet& data);
    void send_along(NodeId src, Packet data, const SourceRoute& route);
    void add_route(NodeId node, NodeId dst, const SourceRoute& route);
    void purge_link(NodeId node, NodeId a, NodeId b);
    const SourceRoute* best_route(NodeId node, NodeId dst) const;
    void flush_pending(NodeId src, NodeId dst);

    DiscoveryParams m_params;
    PacketKind m_request_kind;
    PacketKind m_reply_kind;
    std::size_t m_max_routes;
    bool m_reply_to_every_copy;
    std::vector<NodeState> m_nodes;
    std::uint64_t m_discoveries{0};
    std::uint64_t m_abandoned{0};
};

/// Network-wide flooded route discovery; the target answers every copy of
/// a request and the source keeps the alternates.
class Dsr : public SourceRoutingProtocol
{
  public:
    Dsr(Simulator& sim, DiscoveryParams params);
    std::string_view name() const override { return "DSR"; }

  protected:
    void begin_discovery(NodeId src, NodeId dst, int attempt) override;
    bool should_forward_request(NodeId, const Packet&) override { return true; }
};

} // namespace manet

#endif
