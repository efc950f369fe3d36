#ifndef MANET_SWEEP_H
#define MANET_SWEEP_H

#include "manet/config.h"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manet {

enum class Experiment
{
    OverheadVsSpeed,
    DeliveryVsSpeed,
    OverheadVsN,
    DeliveryVsN,
    OverheadVsAreas,
};

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);
/// Config field the experiment varies.
std::string_view param_name(Experiment e);
bool reports_overhead(Experiment e);

struct SweepSpec
{
    Experiment experiment{Experiment::OverheadVsSpeed};
    ScenarioConfig base;
    std::vector<ProtocolId> protocols;
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
    unsigned threads{0}; ///< 0 = hardware concurrency
};

class SweepError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Named experiment at "desk" or "full" scale with its default grid.
SweepSpec preset_sweep(Experiment e, std::string_view scale);

struct SweepRow
{
    Experiment experiment{};
    ProtocolId protocol{};
    double param_value{0.0};
    std::optional<std::uint64_t> seed; ///< empty for the mean row
    double data_sent{0.0};
    double data_delivered{0.0};
    double control_total{0.0};
    std::optional<double> control_overhead;
    std::optional<double> delivery_ratio;
};

ScenarioConfig apply_param(ScenarioConfig cfg, Experiment e, double value);

/// Per (protocol, value): one row per seed followed by the mean row.
/// Member runs may execute concurrently; row order never depends on it.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::vector<SweepRow> mean_rows(const std::vector<SweepRow>& rows);

std::string csv_header();
std::string to_csv_line(const SweepRow& row);
std::string to_csv(const std::vector<SweepRow>& rows);
/// Shortest round-trip decimal, or NA when undefined.
std::string format_value(std::optional<double> v);

/// Writes <dir>/<experiment>_<protocol>.dat per protocol: "param metric"
/// lines from the mean rows, sorted by param. Returns the files written.
std::vector<std::filesystem::path> emit_plot_data(const std::vector<SweepRow>& rows,
                                                  Experiment e,
                                                  const std::filesystem::path& dir);

} // namespace manet

#endif
