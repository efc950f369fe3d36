#include "manet/trace_check.h"

#include <fmt/format.h>

#include <set>
#include <sstream>
#include <tuple>

namespace manet {

TraceSummary
check_trace(std::istream& in, const MetricsReport* report)
{
    TraceSummary s;
    std::set<std::pair<std::string, std::string>> delivered;
    std::set<std::tuple<std::string, std::string, std::string>> forwarded;
    double last_time = 0.0;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty())
        {
            continue;
        }
        ++s.lines;
        std::istringstream fields(line);
        std::string time, event, kind, origin, dest, node, hops, seq;
        std::getline(fields, time, '\t');
        std::getline(fields, event, '\t');
        std::getline(fields, kind, '\t');
        std::getline(fields, origin, '\t');
        std::getline(fields, dest, '\t');
        std::getline(fields, node, '\t');
        std::getline(fields, hops, '\t');
        std::getline(fields, seq, '\t');
        const double t = std::stod(time);
        if (t < last_time)
        {
            ++s.out_of_order;
        }
        last_time = t;
        if (kind != "DATA")
        {
            continue;
        }
        if (event == "originate")
        {
            ++s.originated;
            ++s.originated_by_source[origin];
        }
        else if (event == "deliver")
        {
            if (delivered.emplace(origin, seq).second)
            {
                ++s.delivered;
            }
            else
            {
                ++s.duplicate_deliveries;
            }
        }
        else if (event == "send" && node != "BS")
        {
            if (!forwarded.emplace(node, origin, seq).second)
            {
                ++s.repeated_forwards;
            }
        }
    }

    if (s.out_of_order)
    {
        s.problems.push_back(fmt::format("{} lines go back in time", s.out_of_order));
    }
    if (s.duplicate_deliveries)
    {
        s.problems.push_back(fmt::format("{} duplicate deliveries", s.duplicate_deliveries));
    }
    if (s.repeated_forwards)
    {
        s.problems.push_back(fmt::format("{} repeated DATA transmissions", s.repeated_forwards));
    }
    if (s.delivered > s.originated)
    {
        s.problems.push_back("more deliveries than originations");
    }
    std::uint64_t per_source = 0;
    for (const auto& [src, n] : s.originated_by_source)
    {
        per_source += n;
    }
    if (per_source != s.originated)
    {
        s.problems.push_back("per-source originations do not sum to the total");
    }
    if (report)
    {
        if (report->data_sent != s.originated)
        {
            s.problems.push_back(fmt::format("report data_sent {} != trace {}", report->data_sent,
                                             s.originated));
        }
        if (report->data_delivered != s.delivered)
        {
            s.problems.push_back(fmt::format("report data_delivered {} != trace {}",
                                             report->data_delivered, s.delivered));
        }
    }
    return s;
}

} // namespace manet
