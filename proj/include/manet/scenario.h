#ifndef MANET_SCENARIO_H
#define MANET_SCENARIO_H

#include "manet/config.h"
#include "manet/metrics.h"
#include "manet/protocol.h"
#include "manet/simulator.h"

#include <memory>
#include <ostream>
#include <vector>

namespace manet {

std::unique_ptr<RoutingProtocol> make_protocol(const ScenarioConfig& cfg, Simulator& sim);

/// One run: simulator, protocol and CBR sources wired together. The
/// base station sits at the centre of the area.
class Scenario : public EventSink
{
  public:
    /// Random-waypoint nodes and generated flows, both from cfg.seed.
    explicit Scenario(const ScenarioConfig& cfg);
    /// Caller-supplied trajectories and flows (scripted topologies).
    Scenario(const ScenarioConfig& cfg, std::vector<NodeMobility> nodes,
             std::vector<CbrFlow> flows);

    void set_trace(std::ostream* out) { m_sim.set_trace(out); }

    /// Runs [0, duration_s) and returns the report.
    MetricsReport run();

    Simulator& simulator() { return m_sim; }
    RoutingProtocol& protocol() { return *m_protocol; }
    const std::vector<CbrFlow>& flows() const { return m_flows; }
    const ScenarioConfig& config() const { return m_cfg; }

    void on_packet(NodeId at, NodeId from, const Packet& packet) override;
    void on_timer(NodeId at, const TimerTag& tag) override;
    void on_link_failure(NodeId sender, NodeId receiver, const Packet& packet) override;
    void on_traffic_tick(int flow) override;

  private:
    ScenarioConfig m_cfg;
    std::vector<CbrFlow> m_flows;
    std::vector<std::uint64_t> m_flow_ticks;
    Simulator m_sim;
    std::unique_ptr<RoutingProtocol> m_protocol;
};

/// Validates cfg (throws ConfigError) and runs it.
MetricsReport run_scenario(const ScenarioConfig& cfg, std::ostream* trace = nullptr);

} // namespace manet

#endif
