#include "manet/packet.h"

namespace manet {

std::string_view
to_string(PacketKind kind)
{
    switch (kind)
    {
    case PacketKind::Data:
        return "DATA";
    case PacketKind::Beacon:
        return "BEACON";
    case PacketKind::PosReq:
        return "PosReq";
    case PacketKind::IDRp:
        return "IDRp";
    case PacketKind::DstPosReq:
        return "DstPosReq";
    case PacketKind::DstIDRp:
        return "DstIDRp";
    case PacketKind::Rreq:
        return "RREQ";
    case PacketKind::Rrep:
        return "RREP";
    case PacketKind::Rerr:
        return "RERR";
    case PacketKind::LarRreq:
        return "LAR_RREQ";
    case PacketKind::LarRrep:
        return "LAR_RREP";
    case PacketKind::Hello:
        return "HELLO";
    }
    return "?";
}

bool
is_control(PacketKind kind)
{
    return kind != PacketKind::Data;
}

} // namespace manet
