#ifndef MANET_TRACE_CHECK_H
#define MANET_TRACE_CHECK_H

#include "manet/metrics.h"

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace manet {

struct TraceSummary
{
    std::uint64_t lines{0};
    std::uint64_t originated{0};
    std::uint64_t delivered{0};
    std::uint64_t duplicate_deliveries{0};
    std::uint64_t repeated_forwards{0};
    std::uint64_t out_of_order{0};
    std::map<std::string, std::uint64_t> originated_by_source;
    std::vector<std::string> problems;

    bool ok() const { return problems.empty(); }
};

/// Reads a packet trace and checks its conservation laws: time never
/// runs backwards, no DATA is delivered twice, no node transmits the same
/// DATA twice, and deliveries never exceed originations. When `report`
/// is given the trace totals must also match it.
TraceSummary check_trace(std::istream& in, const MetricsReport* report = nullptr);

} // namespace manet

#endif
