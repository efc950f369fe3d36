#ifndef MANET_SIMULATOR_H
#define MANET_SIMULATOR_H

#include "manet/metrics.h"
#include "manet/mobility.h"
#include "manet/packet.h"
#include "manet/rng.h"

#include <cstdint>
#include <memory>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace manet {

struct RadioModel
{
    double tx_range{250.0};
    double per_hop_latency{0.002};
    double loss_probability{0.0};
};

enum class EventKind : std::uint8_t
{
    PacketArrival,
    TimerExpiry,
    TrafficTick,
};

std::string_view to_string(EventKind kind);

/// Opaque timer payload owned by whichever protocol scheduled it.
struct TimerTag
{
    int kind{0};
    std::int64_t a{0};
    std::int64_t b{0};
};

struct Event
{
    double time{0.0};
    std::uint64_t sequence{0}; ///< assigned by schedule()
    EventKind kind{EventKind::TimerExpiry};
    NodeId target{kNoNode};
    NodeId sender{kNoNode};
    bool unicast{false};
    bool lost{false};
    std::shared_ptr<const Packet> packet;
    TimerTag timer;
    int flow{-1};
};

class SchedulingError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

/// Receives dispatched events. A unicast that fails the range check or
/// the loss draw comes back as on_link_failure at its arrival time.
class EventSink
{
  public:
    virtual ~EventSink() = default;
    virtual void on_packet(NodeId at, NodeId from, const Packet& packet) = 0;
    virtual void on_timer(NodeId at, const TimerTag& tag) = 0;
    virtual void on_link_failure(NodeId sender, NodeId receiver, const Packet& packet) = 0;
    virtual void on_traffic_tick(int flow) = 0;
};

/// Single-threaded event engine over a unit-disk radio with one base
/// station at a fixed position that reaches every node.
class Simulator
{
  public:
    Simulator(RadioModel radio, std::vector<NodeMobility> nodes, Position base_station,
              std::uint64_t seed, std::size_t n_flows = 0);

    void set_sink(EventSink* sink) { m_sink = sink; }
    void set_trace(std::ostream* out) { m_trace = out; }

    double now() const { return m_now; }
    std::size_t node_count() const { return m_nodes.size(); }
    const RadioModel& radio() const { return m_radio; }
    Position base_station_position() const { return m_bs_position; }
    double max_node_speed() const;

    /// Position of a node (or the base station) at the current time.
    Position position(NodeId node);
    /// Mobile nodes other than `node` within range at time t (t >= now).
    std::vector<NodeId> neighbors(NodeId node, double t);
    bool in_range(NodeId a, NodeId b);

    void schedule(Event event);
    void schedule_timer(double at, NodeId target, TimerTag tag);
    void schedule_traffic(double at, int flow);

    /// Radio broadcast. From a node: every other node within range. From
    /// the base station: every node. Returns the receivers that survived
    /// the loss draw.
    std::vector<NodeId> broadcast(NodeId sender, Packet packet);
    void unicast(NodeId sender, NodeId receiver, Packet packet);

    PacketId next_packet_id(NodeId origin);
    /// Registers an originated DATA packet with the metrics.
    void note_data_sent(const Packet& packet);
    /// First arrival of a DATA packet at its destination. Returns false
    /// for duplicates.
    bool note_data_delivered(NodeId at, const Packet& packet);

    void run_until(double t_end);
    std::uint64_t events_processed() const { return m_processed; }

    Metrics& metrics() { return m_metrics; }
    const Metrics& metrics() const { return m_metrics; }

  private:
    struct Later
    {
        bool operator()(const Event& a, const Event& b) const
        {
            if (a.time != b.time)
            {
                return a.time > b.time;
            }
            return a.sequence > b.sequence;
        }
    };

    void account_transmission(NodeId sender, const Packet& packet);
    void dispatch(const Event& event);
    void trace_line(std::string_view event, const Packet* packet, NodeId at);

    RadioModel m_radio;
    std::vector<NodeMobility> m_nodes;
    Position m_bs_position;
    Rng m_loss_rng;
    Metrics m_metrics;
    std::priority_queue<Event, std::vector<Event>, Later> m_queue;
    std::vector<std::uint64_t> m_packet_seq;
    std::uint64_t m_bs_packet_seq{0};
    std::uint64_t m_next_sequence{0};
    std::uint64_t m_processed{0};
    double m_now{0.0};
    EventSink* m_sink{nullptr};
    std::ostream* m_trace{nullptr};
};

} // namespace manet

#endif
