#ifndef MANET_LAR_H
#define MANET_LAR_H

#include "manet/eelar.h"
#include "manet/source_routing.h"

#include <map>
#include <optional>
#include <vector>

namespace manet {

/// Bounding box of the source and the expected-zone disk around the
/// destination's last known position.
Rect lar1_request_zone(Position src_pos, Position dst_expected, double dst_radius);

/// Scheme 2: receiver j (distance d_j to the destination's last known
/// position) forwards a request from i (distance d_i) iff d_j <= d_i + delta.
ForwardDecision lar2_forward(double d_j, double d_i, double delta);

/// v_max * (now - last_known), the expected-zone radius.
double expected_zone_radius(double v_max, double now, double last_known);

enum class LarScheme
{
    Scheme1,
    Scheme2,
};

struct LarParams
{
    DiscoveryParams discovery;
    LarScheme scheme{LarScheme::Scheme1};
    double delta{0.0};
    double v_max{30.0};
    Rect area;
};

struct LocationEntry
{
    Position position;
    double time{0.0};
};

/// Location-aided route discovery: the first attempt is confined to a
/// request zone built from the destination's last known location; retries
/// and unknown destinations fall back to flooding.
class Lar : public SourceRoutingProtocol
{
  public:
    Lar(Simulator& sim, LarParams params);

    std::string_view name() const override
    {
        return m_params.scheme == LarScheme::Scheme1 ? "LAR1" : "LAR2";
    }

    std::optional<LocationEntry> locate_destination(NodeId src, NodeId dst) const;
    /// Plants a location-cache entry, as if a packet from `about` had been heard.
    void learn_location(NodeId node, NodeId about, Position position, double t);
    const LarParams& params() const { return m_params; }

  protected:
    void begin_discovery(NodeId src, NodeId dst, int attempt) override;
    bool should_forward_request(NodeId at, const Packet& request) override;
    void observe(NodeId at, const Packet& packet) override;

  private:
    LarParams m_params;
    std::vector<std::map<NodeId, LocationEntry>> m_locations;
};

} // namespace manet

#endif
