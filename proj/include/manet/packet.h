#ifndef MANET_PACKET_H
#define MANET_PACKET_H

#include "manet/geometry.h"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace manet {

using NodeId = std::int32_t;

inline constexpr NodeId kBroadcast = -1;
inline constexpr NodeId kBaseStation = -2;
inline constexpr NodeId kNoNode = -3;

enum class PacketKind : std::uint8_t
{
    Data,
    Beacon,
    PosReq,
    IDRp,
    DstPosReq,
    DstIDRp,
    Rreq,
    Rrep,
    Rerr,
    LarRreq,
    LarRrep,
    Hello,
};

inline constexpr std::size_t kPacketKindCount = 12;

std::string_view to_string(PacketKind kind);
bool is_control(PacketKind kind);

struct PacketId
{
    NodeId origin{kNoNode};
    std::uint64_t seq{0};

    friend auto operator<=>(const PacketId&, const PacketId&) = default;
};

struct PacketIdHash
{
    std::size_t operator()(const PacketId& id) const noexcept
    {
        return std::hash<std::uint64_t>{}(id.seq * 0x9E3779B97F4A7C15ULL ^
                                          static_cast<std::uint32_t>(id.origin));
    }
};

/// Every packet type shares one header layout; fields a kind does not use
/// keep their defaults.
struct Packet
{
    PacketKind kind{PacketKind::Data};
    NodeId origin{kNoNode};
    NodeId destination{kBroadcast};
    PacketId id;
    int hop_count{0};
    int size_bytes{0};
    double payload_created_at{0.0};
    int flow{-1};

    // location stamps: originator position/time and the last transmitter
    Position origin_position;
    double origin_time{0.0};
    Position prev_hop_position;

    // EELAR
    bool to_bs_flag{false};
    std::optional<Position> dest_position;
    std::optional<AreaId> area;       ///< IDRp/DstIDRp payload; flood scope on DATA
    std::optional<AreaId> source_area; ///< DstIDRp: the BS's view of the requester
    bool same_area{false};
    bool unreachable{false};
    bool targeted{false}; ///< BEACON/PosReq of an on-demand refresh
    NodeId subject{kNoNode}; ///< node a request or reply is about

    // LAR
    std::optional<Rect> request_zone;

    // AODV
    std::uint32_t seq_no{0};
    std::uint32_t dest_seq_no{0};
    std::vector<std::pair<NodeId, std::uint32_t>> unreachable_dests;

    // DSR / LAR source routes
    std::vector<NodeId> route;
    std::size_t route_index{0};
    std::pair<NodeId, NodeId> broken_link{kNoNode, kNoNode};
};

} // namespace manet

#endif
