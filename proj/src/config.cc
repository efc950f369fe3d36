#include "manet/config.h"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <map>

namespace manet {

namespace {

const std::map<std::string, ProtocolId> kProtocols{
    {"EELAR", ProtocolId::Eelar}, {"LAR1", ProtocolId::Lar1}, {"LAR2", ProtocolId::Lar2},
    {"AODV", ProtocolId::Aodv},   {"DSR", ProtocolId::Dsr},
};

const std::map<std::string, ForwardRule> kForwardRules{
    {"source-distance", ForwardRule::SourceDistance},
    {"prev-hop-distance", ForwardRule::PrevHopDistance},
};

const std::map<std::string, BsRelay> kRelays{
    {"direct", BsRelay::Direct},
    {"flood-dest-area", BsRelay::FloodDestArea},
};

std::string
join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& s : items)
    {
        out += out.empty() ? s : ", " + s;
    }
    return out;
}

template <typename E>
void
add_enum_option(CLI::App& app, const std::string& flag, E& target,
                const std::map<std::string, E>& names, const std::string& help)
{
    app.add_option_function<std::string>(
           flag,
           [&target, &names](const std::string& value) {
               for (const auto& [name, e] : names)
               {
                   if (CLI::detail::to_lower(name) == CLI::detail::to_lower(value))
                   {
                       target = e;
                       return;
                   }
               }
               throw CLI::ValidationError(value + " is not one of the accepted values");
           },
           help)
        ->type_name("TEXT");
}

} // namespace

std::string_view
to_string(ProtocolId id)
{
    switch (id)
    {
    case ProtocolId::Eelar:
        return "EELAR";
    case ProtocolId::Lar1:
        return "LAR1";
    case ProtocolId::Lar2:
        return "LAR2";
    case ProtocolId::Aodv:
        return "AODV";
    case ProtocolId::Dsr:
        return "DSR";
    }
    return "?";
}

std::optional<ProtocolId>
parse_protocol(std::string_view name)
{
    auto it = kProtocols.find(std::string(name));
    if (it == kProtocols.end())
    {
        return std::nullopt;
    }
    return it->second;
}

std::string_view
to_string(ForwardRule rule)
{
    return rule == ForwardRule::SourceDistance ? "source-distance" : "prev-hop-distance";
}

std::string_view
to_string(BsRelay relay)
{
    return relay == BsRelay::Direct ? "direct" : "flood-dest-area";
}

ConfigError::ConfigError(std::vector<std::string> fields)
    : std::invalid_argument("invalid scenario config: " + join(fields)),
      m_fields(std::move(fields))
{
}

std::vector<std::string>
validation_errors(const ScenarioConfig& c)
{
    std::vector<std::string> bad;
    auto check = [&bad](bool ok, const char* field) {
        if (!ok)
        {
            bad.emplace_back(field);
        }
    };
    auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };

    check(finite_nonneg(c.duration_s), "duration_s");
    check(finite_pos(c.area_w_m), "area_w_m");
    check(finite_pos(c.area_h_m), "area_h_m");
    check(c.n_nodes >= 2, "n_nodes");
    check(finite_pos(c.tx_range_m), "tx_range_m");
    check(c.data_bytes > 0, "data_bytes");
    check(c.control_bytes > 0, "control_bytes");
    check(c.cbr_fraction >= 0.0 && c.cbr_fraction <= 1.0, "cbr_fraction");
    check(finite_pos(c.cbr_rate_pps), "cbr_rate_pps");
    check(finite_pos(c.speed_mps), "speed_mps");
    check(finite_nonneg(c.speed_spread_mps) && c.speed_spread_mps < c.speed_mps,
          "speed_spread_mps");
    check(finite_nonneg(c.pause_min_s), "pause_min_s");
    check(finite_nonneg(c.pause_max_s) && c.pause_max_s >= c.pause_min_s, "pause_max_s");
    check(c.n_areas >= 1, "n_areas");
    check(finite_nonneg(c.per_hop_latency_s), "per_hop_latency_s");
    check(c.loss_probability >= 0.0 && c.loss_probability <= 1.0, "loss_probability");
    check(finite_pos(c.beacon_period_s), "beacon_period_s");
    check(finite_nonneg(c.staleness_s), "staleness_s");
    check(finite_nonneg(c.unreachable_timeout_s), "unreachable_timeout_s");
    check(finite_pos(c.bs_refresh_timeout_s), "bs_refresh_timeout_s");
    check(finite_pos(c.eelar_query_timeout_s), "eelar_query_timeout_s");
    check(finite_pos(c.aodv_discovery_timeout_s), "aodv_discovery_timeout_s");
    check(c.aodv_retries >= 0, "aodv_retries");
    check(finite_pos(c.aodv_active_route_timeout_s), "aodv_active_route_timeout_s");
    check(finite_pos(c.hello_interval_s), "hello_interval_s");
    check(finite_nonneg(c.lar_delta_m), "lar_delta_m");
    check(finite_nonneg(c.lar_vmax_mps), "lar_vmax_mps");
    check(finite_nonneg(c.energy_tx), "energy_tx");
    check(finite_nonneg(c.energy_rx), "energy_rx");
    return bad;
}

void
validate(const ScenarioConfig& cfg)
{
    auto bad = validation_errors(cfg);
    if (!bad.empty())
    {
        throw ConfigError(std::move(bad));
    }
}

MobilityParams
mobility_params(const ScenarioConfig& c)
{
    MobilityParams m;
    m.width = c.area_w_m;
    m.height = c.area_h_m;
    m.speed_min = c.speed_mps - c.speed_spread_mps;
    m.speed_max = c.speed_mps + c.speed_spread_mps;
    m.pause_min = c.pause_min_s;
    m.pause_max = c.pause_max_s;
    return m;
}

EelarParams
eelar_params(const ScenarioConfig& c)
{
    EelarParams p;
    p.n_areas = c.n_areas;
    p.beacon_period = c.beacon_period_s;
    p.staleness = c.staleness_s;
    p.unreachable_timeout = c.unreachable_timeout_s;
    p.refresh_timeout = c.bs_refresh_timeout_s;
    p.query_timeout = c.eelar_query_timeout_s;
    p.query_retries = c.aodv_retries;
    p.forward_rule = c.forward_rule;
    p.bs_relay = c.bs_relay;
    p.control_bytes = c.control_bytes;
    return p;
}

LarParams
lar_params(const ScenarioConfig& c, LarScheme scheme)
{
    LarParams p;
    p.discovery = DiscoveryParams{c.aodv_discovery_timeout_s, c.aodv_retries, c.control_bytes};
    p.scheme = scheme;
    p.delta = c.lar_delta_m;
    p.v_max = c.lar_vmax_mps;
    p.area = Rect{0.0, c.area_w_m, 0.0, c.area_h_m};
    return p;
}

ScenarioConfig
desk_preset()
{
    ScenarioConfig c;
    c.area_w_m = 500.0;
    c.area_h_m = 500.0;
    c.n_nodes = 25;
    c.duration_s = 100.0;
    return c;
}

ScenarioConfig
full_preset()
{
    return ScenarioConfig{};
}

void
add_config_options(CLI::App& app, ScenarioConfig& c)
{
    app.add_option("--duration_s", c.duration_s, "Simulated seconds");
    app.add_option("--area_w_m", c.area_w_m, "Area width (m)");
    app.add_option("--area_h_m", c.area_h_m, "Area height (m)");
    app.add_option("--n_nodes", c.n_nodes, "Mobile nodes");
    app.add_option("--tx_range_m", c.tx_range_m, "Radio range (m)");
    app.add_option("--data_bytes", c.data_bytes, "DATA packet size");
    app.add_option("--control_bytes", c.control_bytes, "Control packet size");
    app.add_option("--cbr_fraction", c.cbr_fraction, "Fraction of nodes that are CBR sources");
    app.add_option("--cbr_rate_pps", c.cbr_rate_pps, "CBR packets per second");
    app.add_option("--speed_mps", c.speed_mps, "Node speed (m/s)");
    app.add_option("--speed_spread_mps", c.speed_spread_mps, "Half-width of the speed interval");
    app.add_option("--pause_min_s", c.pause_min_s, "Minimum pause (s)");
    app.add_option("--pause_max_s", c.pause_max_s, "Maximum pause (s)");
    add_enum_option(app, "--protocol", c.protocol, kProtocols, "EELAR, LAR1, LAR2, AODV or DSR");
    app.add_option("--n_areas", c.n_areas, "EELAR sector count");
    app.add_option("--seed", c.seed, "Scenario seed");
    app.add_option("--per_hop_latency_s", c.per_hop_latency_s, "Per-hop latency (s)");
    app.add_option("--loss_probability", c.loss_probability, "Independent per-link loss");
    app.add_option("--beacon_period_s", c.beacon_period_s, "EELAR BEACON period (s)");
    app.add_option("--staleness_s", c.staleness_s, "EELAR position staleness (s)");
    app.add_option("--unreachable_timeout_s", c.unreachable_timeout_s,
                   "EELAR silence before a node is unreachable (s)");
    app.add_option("--bs_refresh_timeout_s", c.bs_refresh_timeout_s,
                   "EELAR wait for an on-demand position (s)");
    app.add_option("--eelar_query_timeout_s", c.eelar_query_timeout_s,
                   "EELAR wait for DstIDRp (s)");
    add_enum_option(app, "--forward_rule", c.forward_rule, kForwardRules,
                    "source-distance or prev-hop-distance");
    add_enum_option(app, "--bs_relay", c.bs_relay, kRelays, "direct or flood-dest-area");
    app.add_option("--aodv_discovery_timeout_s", c.aodv_discovery_timeout_s,
                   "Route discovery timeout (s)");
    app.add_option("--aodv_retries", c.aodv_retries, "Route discovery retries");
    app.add_option("--aodv_active_route_timeout_s", c.aodv_active_route_timeout_s,
                   "AODV route lifetime (s)");
    app.add_option("--hello_enabled", c.hello_enabled, "AODV HELLO messages");
    app.add_option("--hello_interval_s", c.hello_interval_s, "AODV HELLO period (s)");
    app.add_option("--lar_delta_m", c.lar_delta_m, "LAR scheme 2 slack (m)");
    app.add_option("--lar_vmax_mps", c.lar_vmax_mps, "LAR expected-zone speed (m/s)");
    app.add_option("--energy_tx", c.energy_tx, "Energy per transmission");
    app.add_option("--energy_rx", c.energy_rx, "Energy per reception");
}

std::string
to_config_text(const ScenarioConfig& c)
{
    std::string out;
    auto line = [&out](std::string_view key, const auto& value) {
        out += fmt::format("{} = {}\n", key, value);
    };
    line("duration_s", c.duration_s);
    line("area_w_m", c.area_w_m);
    line("area_h_m", c.area_h_m);
    line("n_nodes", c.n_nodes);
    line("tx_range_m", c.tx_range_m);
    line("data_bytes", c.data_bytes);
    line("control_bytes", c.control_bytes);
    line("cbr_fraction", c.cbr_fraction);
    line("cbr_rate_pps", c.cbr_rate_pps);
    line("speed_mps", c.speed_mps);
    line("speed_spread_mps", c.speed_spread_mps);
    line("pause_min_s", c.pause_min_s);
    line("pause_max_s", c.pause_max_s);
    line("protocol", to_string(c.protocol));
    line("n_areas", c.n_areas);
    line("seed", c.seed);
    line("per_hop_latency_s", c.per_hop_latency_s);
    line("loss_probability", c.loss_probability);
    line("beacon_period_s", c.beacon_period_s);
    line("staleness_s", c.staleness_s);
    line("unreachable_timeout_s", c.unreachable_timeout_s);
    line("bs_refresh_timeout_s", c.bs_refresh_timeout_s);
    line("eelar_query_timeout_s", c.eelar_query_timeout_s);
    line("forward_rule", to_string(c.forward_rule));
    line("bs_relay", to_string(c.bs_relay));
    line("aodv_discovery_timeout_s", c.aodv_discovery_timeout_s);
    line("aodv_retries", c.aodv_retries);
    line("aodv_active_route_timeout_s", c.aodv_active_route_timeout_s);
    line("hello_enabled", c.hello_enabled ? "true" : "false");
    line("hello_interval_s", c.hello_interval_s);
    line("lar_delta_m", c.lar_delta_m);
    line("lar_vmax_mps", c.lar_vmax_mps);
    line("energy_tx", c.energy_tx);
    line("energy_rx", c.energy_rx);
    return out;
}

} // namespace manet
