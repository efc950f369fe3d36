#include "manet/sweep.h"

#include "manet/scenario.h"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>

namespace manet {

namespace {

struct ExperimentInfo
{
    Experiment id;
    std::string_view name;
    std::string_view param;
    bool overhead;
};

constexpr ExperimentInfo kExperiments[] = {
    {Experiment::OverheadVsSpeed, "overhead-vs-speed", "speed_mps", true},
    {Experiment::DeliveryVsSpeed, "delivery-vs-speed", "speed_mps", false},
    {Experiment::OverheadVsN, "overhead-vs-n", "n_nodes", true},
    {Experiment::DeliveryVsN, "delivery-vs-n", "n_nodes", false},
    {Experiment::OverheadVsAreas, "overhead-vs-areas", "n_areas", true},
};

const ExperimentInfo&
info(Experiment e)
{
    for (const auto& i : kExperiments)
    {
        if (i.id == e)
        {
            return i;
        }
    }
    throw SweepError("unknown experiment");
}

std::string
format_count(double v)
{
    return fmt::format("{}", v);
}

} // namespace

std::string_view
to_string(Experiment e)
{
    return info(e).name;
}

std::optional<Experiment>
parse_experiment(std::string_view name)
{
    for (const auto& i : kExperiments)
    {
        if (i.name == name)
        {
            return i.id;
        }
    }
    return std::nullopt;
}

std::string_view
param_name(Experiment e)
{
    return info(e).param;
}

bool
reports_overhead(Experiment e)
{
    return info(e).overhead;
}

SweepSpec
preset_sweep(Experiment e, std::string_view scale)
{
    const bool desk = scale == "desk";
    if (!desk && scale != "full")
    {
        throw SweepError(fmt::format("unknown scale '{}'", scale));
    }
    SweepSpec spec;
    spec.experiment = e;
    spec.base = desk ? desk_preset() : full_preset();
    spec.protocols = {ProtocolId::Eelar, ProtocolId::Lar1, ProtocolId::Aodv, ProtocolId::Dsr};
    spec.seeds = desk ? std::vector<std::uint64_t>{1, 2, 3}
                      : std::vector<std::uint64_t>{1, 2, 3, 4, 5};
    switch (e)
    {
    case Experiment::OverheadVsSpeed:
    case Experiment::DeliveryVsSpeed:
        spec.base.n_nodes = desk ? 25 : 100;
        spec.values = {5, 10, 15, 20, 25, 30};
        break;
    case Experiment::OverheadVsN:
    case Experiment::DeliveryVsN:
        spec.base.speed_mps = 15.0;
        spec.values = desk ? std::vector<double>{25, 50, 75, 100, 125}
                           : std::vector<double>{50, 100, 150, 200, 250};
        break;
    case Experiment::OverheadVsAreas:
        spec.protocols = {ProtocolId::Eelar};
        spec.base.speed_mps = 15.0;
        spec.base.n_nodes = desk ? 125 : 250;
        if (desk)
        {
            spec.values = {1, 2, 4, 6, 8, 12, 16, 20};
        }
        else
        {
            for (int k = 1; k <= 20; ++k)
            {
                spec.values.push_back(k);
            }
        }
        break;
    }
    return spec;
}

ScenarioConfig
apply_param(ScenarioConfig cfg, Experiment e, double value)
{
    switch (e)
    {
    case Experiment::OverheadVsSpeed:
    case Experiment::DeliveryVsSpeed:
        cfg.speed_mps = value;
        break;
    case Experiment::OverheadVsN:
    case Experiment::DeliveryVsN:
        cfg.n_nodes = static_cast<int>(std::lround(value));
        break;
    case Experiment::OverheadVsAreas:
        cfg.n_areas = static_cast<int>(std::lround(value));
        break;
    }
    return cfg;
}

std::vector<SweepRow>
run_sweep(const SweepSpec& spec)
{
    if (spec.seeds.empty())
    {
        throw SweepError("sweep needs at least one seed");
    }
    if (spec.protocols.empty() || spec.values.empty())
    {
        throw SweepError("sweep needs at least one protocol and one parameter value");
    }
    if (spec.experiment == Experiment::OverheadVsAreas &&
        std::any_of(spec.protocols.begin(), spec.protocols.end(),
                    [](ProtocolId p) { return p != ProtocolId::Eelar; }))
    {
        throw SweepError("overhead-vs-areas runs EELAR only");
    }

    struct Job
    {
        ScenarioConfig cfg;
        SweepRow row;
    };
    std::vector<Job> jobs;
    for (ProtocolId p : spec.protocols)
    {
        for (double v : spec.values)
        {
            for (std::uint64_t s : spec.seeds)
            {
                Job j;
                j.cfg = apply_param(spec.base, spec.experiment, v);
                j.cfg.protocol = p;
                j.cfg.seed = s;
                validate(j.cfg);
                j.row.experiment = spec.experiment;
                j.row.protocol = p;
                j.row.param_value = v;
                j.row.seed = s;
                jobs.push_back(std::move(j));
            }
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&jobs, &next] {
        for (std::size_t i = next++; i < jobs.size(); i = next++)
        {
            Job& j = jobs[i];
            const MetricsReport r = run_scenario(j.cfg);
            j.row.data_sent = static_cast<double>(r.data_sent);
            j.row.data_delivered = static_cast<double>(r.data_delivered);
            j.row.control_total = static_cast<double>(r.control_total);
            j.row.control_overhead = r.control_overhead;
            j.row.delivery_ratio = r.delivery_ratio;
        }
    };
    unsigned n_threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    n_threads = std::clamp<unsigned>(n_threads, 1, static_cast<unsigned>(jobs.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < n_threads; ++t)
        {
            pool.emplace_back(worker);
        }
        worker();
    }

    std::vector<SweepRow> raw;
    raw.reserve(jobs.size());
    for (auto& j : jobs)
    {
        raw.push_back(j.row);
    }
    const auto means = mean_rows(raw);
    std::vector<SweepRow> rows;
    const std::size_t per_point = spec.seeds.size();
    for (std::size_t point = 0; point < means.size(); ++point)
    {
        for (std::size_t s = 0; s < per_point; ++s)
        {
            rows.push_back(raw[point * per_point + s]);
        }
        rows.push_back(means[point]);
    }
    return rows;
}

std::vector<SweepRow>
mean_rows(const std::vector<SweepRow>& rows)
{
    // group by (protocol, value) in first-appearance order
    std::vector<std::pair<ProtocolId, double>> order;
    std::map<std::pair<ProtocolId, double>, std::vector<const SweepRow*>> groups;
    for (const auto& r : rows)
    {
        if (!r.seed)
        {
            continue;
        }
        const auto key = std::make_pair(r.protocol, r.param_value);
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh)
        {
            order.push_back(key);
        }
        it->second.push_back(&r);
    }
    std::vector<SweepRow> means;
    for (const auto& key : order)
    {
        const auto& members = groups.at(key);
        SweepRow m;
        m.experiment = members.front()->experiment;
        m.protocol = key.first;
        m.param_value = key.second;
        const double n = static_cast<double>(members.size());
        double overhead_sum = 0.0;
        int overhead_n = 0;
        double ratio_sum = 0.0;
        int ratio_n = 0;
        for (const SweepRow* r : members)
        {
            m.data_sent += r->data_sent / n;
            m.data_delivered += r->data_delivered / n;
            m.control_total += r->control_total / n;
            if (r->control_overhead)
            {
                overhead_sum += *r->control_overhead;
                ++overhead_n;
            }
            if (r->delivery_ratio)
            {
                ratio_sum += *r->delivery_ratio;
                ++ratio_n;
            }
        }
        if (overhead_n > 0)
        {
            m.control_overhead = overhead_sum / overhead_n;
        }
        if (ratio_n > 0)
        {
            m.delivery_ratio = ratio_sum / ratio_n;
        }
        means.push_back(m);
    }
    return means;
}

std::string
format_value(std::optional<double> v)
{
    return v ? fmt::format("{}", *v) : std::string("NA");
}

std::string
csv_header()
{
    return "experiment,protocol,param_name,param_value,seed,data_sent,data_delivered,"
           "control_total,control_overhead,delivery_ratio";
}

std::string
to_csv_line(const SweepRow& r)
{
    return fmt::format("{},{},{},{},{},{},{},{},{},{}", to_string(r.experiment),
                       to_string(r.protocol), param_name(r.experiment),
                       format_count(r.param_value),
                       r.seed ? std::to_string(*r.seed) : std::string("mean"),
                       format_count(r.data_sent), format_count(r.data_delivered),
                       format_count(r.control_total), format_value(r.control_overhead),
                       format_value(r.delivery_ratio));
}

std::string
to_csv(const std::vector<SweepRow>& rows)
{
    std::string out = csv_header() + "\n";
    for (const auto& r : rows)
    {
        out += to_csv_line(r);
        out += "\n";
    }
    return out;
}

std::vector<std::filesystem::path>
emit_plot_data(const std::vector<SweepRow>& rows, Experiment e, const std::filesystem::path& dir)
{
    std::vector<ProtocolId> protocols;
    std::map<ProtocolId, std::vector<const SweepRow*>> series;
    for (const auto& r : rows)
    {
        if (r.seed || r.experiment != e)
        {
            continue;
        }
        if (!series.contains(r.protocol))
        {
            protocols.push_back(r.protocol);
        }
        series[r.protocol].push_back(&r);
    }
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> files;
    const bool overhead = reports_overhead(e);
    for (ProtocolId p : protocols)
    {
        auto points = series.at(p);
        std::stable_sort(points.begin(), points.end(), [](const SweepRow* a, const SweepRow* b) {
            return a->param_value < b->param_value;
        });
        const auto path = dir / fmt::format("{}_{}.dat", to_string(e), to_string(p));
        std::ofstream out(path);
        out << "# " << param_name(e) << ' ' << (overhead ? "control_overhead" : "delivery_ratio")
            << '\n';
        for (const SweepRow* r : points)
        {
            out << format_count(r->param_value) << ' '
                << format_value(overhead ? r->control_overhead : r->delivery_ratio) << '\n';
        }
        files.push_back(path);
    }
    return files;
}

} // namespace manet
