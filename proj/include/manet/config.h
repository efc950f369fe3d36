#ifndef MANET_CONFIG_H
#define MANET_CONFIG_H

#include "manet/eelar.h"
#include "manet/lar.h"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace CLI {
class App;
}

namespace manet {

enum class ProtocolId
{
    Eelar,
    Lar1,
    Lar2,
    Aodv,
    Dsr,
};

std::string_view to_string(ProtocolId id);
std::optional<ProtocolId> parse_protocol(std::string_view name);
std::string_view to_string(ForwardRule rule);
std::string_view to_string(BsRelay relay);

/// Every knob of one simulation run. Defaults follow the reference NS-2
/// setup (1500 m x 1500 m, 500 s, 250 m radios, 2 pkt/s CBR from 20% of
/// nodes) plus the protocol timers it leaves open.
struct ScenarioConfig
{
    double duration_s{500.0};
    double area_w_m{1500.0};
    double area_h_m{1500.0};
    int n_nodes{100};
    double tx_range_m{250.0};
    int data_bytes{512};
    int control_bytes{64};
    double cbr_fraction{0.20};
    double cbr_rate_pps{2.0};
    double speed_mps{15.0};
    /// Legs draw speeds from [speed - spread, speed + spread]; 0 fixes
    /// every leg at speed_mps.
    double speed_spread_mps{0.0};
    double pause_min_s{0.0};
    double pause_max_s{3.0};
    ProtocolId protocol{ProtocolId::Eelar};
    int n_areas{6};
    std::uint64_t seed{1};

    double per_hop_latency_s{0.002};
    double loss_probability{0.0};

    double beacon_period_s{1.0};
    double staleness_s{2.0};
    double unreachable_timeout_s{3.0};
    double bs_refresh_timeout_s{0.05};
    double eelar_query_timeout_s{1.0};
    ForwardRule forward_rule{ForwardRule::SourceDistance};
    BsRelay bs_relay{BsRelay::Direct};

    double aodv_discovery_timeout_s{2.0};
    int aodv_retries{2};
    double aodv_active_route_timeout_s{3.0};
    bool hello_enabled{false};
    double hello_interval_s{1.0};

    double lar_delta_m{0.0};
    double lar_vmax_mps{30.0};

    double energy_tx{1.0};
    double energy_rx{0.5};
};

class ConfigError : public std::invalid_argument
{
  public:
    ConfigError(std::vector<std::string> fields);
    const std::vector<std::string>& fields() const { return m_fields; }

  private:
    std::vector<std::string> m_fields;
};

/// Names of offending fields; empty when the config is usable.
std::vector<std::string> validation_errors(const ScenarioConfig& cfg);
/// Throws ConfigError listing every offending field.
void validate(const ScenarioConfig& cfg);

MobilityParams mobility_params(const ScenarioConfig& cfg);
EelarParams eelar_params(const ScenarioConfig& cfg);
LarParams lar_params(const ScenarioConfig& cfg, LarScheme scheme);

/// Small fast preset: 500 m x 500 m, 25 nodes, 100 s.
ScenarioConfig desk_preset();
ScenarioConfig full_preset();

/// Registers one --<field> option per ScenarioConfig field on `app`.
void add_config_options(CLI::App& app, ScenarioConfig& cfg);

/// Canonical flat `key = value` rendering with every field.
std::string to_config_text(const ScenarioConfig& cfg);

} // namespace manet

#endif
