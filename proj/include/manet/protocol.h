#ifndef MANET_PROTOCOL_H
#define MANET_PROTOCOL_H

#include "manet/packet.h"
#include "manet/simulator.h"

#include <cstddef>
#include <deque>
#include <string_view>
#include <unordered_set>

namespace manet {

/// A routing protocol bound to one simulator instance. The scenario
/// runner hands it originated DATA through send_data and forwards every
/// engine callback.
class RoutingProtocol
{
  public:
    explicit RoutingProtocol(Simulator& sim)
        : m_sim(sim)
    {
    }
    virtual ~RoutingProtocol() = default;
    RoutingProtocol(const RoutingProtocol&) = delete;
    RoutingProtocol& operator=(const RoutingProtocol&) = delete;

    virtual std::string_view name() const = 0;
    virtual void start() {}
    virtual void send_data(Packet data) = 0;
    virtual void on_packet(NodeId at, NodeId from, const Packet& packet) = 0;
    virtual void on_timer(NodeId, const TimerTag&) {}
    virtual void on_link_failure(NodeId, NodeId, const Packet&) {}

  protected:
    Simulator& sim() { return m_sim; }
    const Simulator& sim() const { return m_sim; }

  private:
    Simulator& m_sim;
};

/// Insertion-ordered set that forgets its oldest members past a capacity.
template <typename T, typename Hash = std::hash<T>>
class BoundedSeenSet
{
  public:
    explicit BoundedSeenSet(std::size_t capacity = 4096)
        : m_capacity(capacity)
    {
    }

    bool contains(const T& v) const { return m_set.contains(v); }

    /// Returns false if already present.
    bool insert(const T& v)
    {
        if (!m_set.insert(v).second)
        {
            return false;
        }
        m_order.push_back(v);
        if (m_order.size() > m_capacity)
        {
            m_set.erase(m_order.front());
            m_order.pop_front();
        }
        return true;
    }

  private:
    std::size_t m_capacity;
    std::unordered_set<T, Hash> m_set;
    std::deque<T> m_order;
};

} // namespace manet

#endif
