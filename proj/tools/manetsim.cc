// Command-line front end: single runs, packet traces and named sweeps.

#include "manet/config.h"
#include "manet/scenario.h"
#include "manet/sweep.h"
#include "manet/trace_check.h"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace manet;

namespace {

std::string
run_csv(const ScenarioConfig& cfg, const MetricsReport& r)
{
    return fmt::format("{}\nrun,{},-,-,{},{},{},{},{},{}\n", csv_header(), to_string(cfg.protocol),
                       cfg.seed, r.data_sent, r.data_delivered, r.control_total,
                       format_value(r.control_overhead), format_value(r.delivery_ratio));
}

void
print_breakdown(std::ostream& out, const MetricsReport& r)
{
    out << "control packets by kind:\n";
    for (std::size_t k = 0; k < kPacketKindCount; ++k)
    {
        if (r.control_sent[k])
        {
            out << fmt::format("  {:<10} {}\n", to_string(static_cast<PacketKind>(k)),
                               r.control_sent[k]);
        }
    }
}

int
write_or_print(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path);
    if (!out)
    {
        std::cerr << "cannot write " << path << '\n';
        return 1;
    }
    out << text;
    return 0;
}

} // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"Deterministic MANET routing simulator (EELAR, LAR, AODV, DSR)"};
    app.require_subcommand(1);

    ScenarioConfig run_cfg;
    std::string run_csv_path;
    bool run_summary = false;
    auto* run = app.add_subcommand("run", "Run one scenario and print its CSV row");
    run->set_config("--config", "", "Flat key = value scenario file");
    add_config_options(*run, run_cfg);
    run->add_option("--csv", run_csv_path, "Write the CSV here instead of stdout");
    run->add_flag("--summary", run_summary, "Also print control packets by kind to stderr");

    ScenarioConfig trace_cfg;
    std::string trace_path;
    std::string trace_csv_path;
    auto* trace = app.add_subcommand("trace", "Run one scenario and emit its packet trace");
    trace->set_config("--config", "", "Flat key = value scenario file");
    add_config_options(*trace, trace_cfg);
    trace->add_option("--out", trace_path, "Trace file (default stdout)");
    trace->add_option("--csv", trace_csv_path, "Also write the run CSV here");

    std::string experiment_name;
    std::string scale = "desk";
    std::vector<std::string> protocol_names;
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
    std::string sweep_csv_path;
    std::string plot_dir;
    unsigned threads = 0;
    ScenarioConfig sweep_overrides;
    auto* sweep = app.add_subcommand("sweep", "Run a named experiment");
    sweep->add_option("--experiment", experiment_name,
                      "overhead-vs-speed, delivery-vs-speed, overhead-vs-n, delivery-vs-n, "
                      "overhead-vs-areas")
        ->required();
    sweep->add_option("--scale", scale, "desk or full")
        ->check(CLI::IsMember({"desk", "full"}));
    sweep->add_option("--protocols", protocol_names, "Protocols to compare");
    sweep->add_option("--values", values, "Parameter values (default: the experiment grid)");
    sweep->add_option("--seeds", seeds, "Seeds (default: 1..3 desk, 1..5 full)");
    sweep->add_option("--csv", sweep_csv_path, "Write the CSV here instead of stdout");
    sweep->add_option("--plot-dir", plot_dir, "Write per-protocol series files here");
    sweep->add_option("--threads", threads, "Concurrent runs (0 = all cores)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run->parsed())
        {
            const auto bad = validation_errors(run_cfg);
            if (!bad.empty())
            {
                throw ConfigError(bad);
            }
            const MetricsReport r = run_scenario(run_cfg);
            if (run_summary)
            {
                print_breakdown(std::cerr, r);
            }
            return write_or_print(run_csv_path, run_csv(run_cfg, r));
        }
        if (trace->parsed())
        {
            validate(trace_cfg);
            std::ostringstream buffer;
            const MetricsReport r = run_scenario(trace_cfg, &buffer);
            if (!trace_csv_path.empty() && write_or_print(trace_csv_path, run_csv(trace_cfg, r)))
            {
                return 1;
            }
            return write_or_print(trace_path, buffer.str());
        }
        if (sweep->parsed())
        {
            const auto experiment = parse_experiment(experiment_name);
            if (!experiment)
            {
                std::cerr << "unknown experiment '" << experiment_name << "'\n";
                return 2;
            }
            SweepSpec spec = preset_sweep(*experiment, scale);
            if (!protocol_names.empty())
            {
                spec.protocols.clear();
                for (const auto& name : protocol_names)
                {
                    const auto p = parse_protocol(name);
                    if (!p)
                    {
                        std::cerr << "unknown protocol '" << name << "'\n";
                        return 2;
                    }
                    spec.protocols.push_back(*p);
                }
            }
            if (!values.empty())
            {
                spec.values = values;
            }
            if (sweep->count("--seeds"))
            {
                spec.seeds = seeds;
            }
            spec.threads = threads;
            const auto rows = run_sweep(spec);
            if (!plot_dir.empty())
            {
                for (const auto& f : emit_plot_data(rows, spec.experiment, plot_dir))
                {
                    std::cerr << "wrote " << f.string() << '\n';
                }
            }
            return write_or_print(sweep_csv_path, to_csv(rows));
        }
    }
    catch (const ConfigError& e)
    {
        std::cerr << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
