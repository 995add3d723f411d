#include "larsim/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <span>
#include <sstream>
#include <thread>

#include "larsim/simulation.hpp"

namespace larsim {

SweepResult run_sweep(const ScenarioConfig& config, int jobs,
                      const std::function<void(const RunReport&)>& progress) {
    validate_config(config);

    struct Cell {
        int node_count;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (const int n : config.node_counts) {
        for (const std::uint64_t seed : config.seeds) {
            cells.push_back({n, seed});
        }
    }

    SweepResult result;
    result.runs.resize(cells.size());

    if (jobs <= 1 || cells.size() <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            Simulation sim(make_run_config(config, cells[i].node_count, cells[i].seed));
            result.runs[i] = sim.run();
            if (progress) {
                progress(result.runs[i]);
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex progress_mutex;
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) {
                    return;
                }
                Simulation sim(make_run_config(config, cells[i].node_count, cells[i].seed));
                result.runs[i] = sim.run();
                if (progress) {
                    std::lock_guard<std::mutex> lock(progress_mutex);
                    progress(result.runs[i]);
                }
            }
        };
        std::vector<std::thread> pool;
        const int n_threads = std::min<int>(jobs, static_cast<int>(cells.size()));
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    const std::size_t seeds_per_cell = config.seeds.size();
    for (std::size_t group = 0; group < config.node_counts.size(); ++group) {
        const std::span<const RunReport> slice(result.runs.data() + group * seeds_per_cell,
                                               seeds_per_cell);
        result.aggregates.push_back(aggregate(slice));
    }
    return result;
}

const char* const kCsvHeader =
    "scenario,nodes,seed,pdr,avg_delay_s,sent,received,collisions,discoveries";

void write_csv_header(std::ostream& out) { out << kCsvHeader << "\n"; }

namespace {

void write_run_row(std::ostream& out, const RunReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%d,%llu,%.9f,%.9f,%llu,%llu,%llu,%llu\n", r.scenario,
                  r.node_count, static_cast<unsigned long long>(r.seed), r.pdr, r.avg_delay,
                  static_cast<unsigned long long>(r.sent),
                  static_cast<unsigned long long>(r.received),
                  static_cast<unsigned long long>(r.collisions),
                  static_cast<unsigned long long>(r.discoveries));
    out << buf;
}

void write_agg_row(std::ostream& out, const ScenarioSummary& s) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%d,AGG,%.9f,%.9f,%.3f,%.3f,%.3f,%.3f\n", s.scenario,
                  s.node_count, s.pdr_mean, s.delay_mean, s.sent_mean, s.received_mean,
                  s.collisions_mean, s.discoveries_mean);
    out << buf;
}

}  // namespace

void write_csv_rows(std::ostream& out, const SweepResult& result) {
    std::size_t seeds_per_cell = 0;
    if (!result.aggregates.empty()) {
        seeds_per_cell = result.runs.size() / result.aggregates.size();
    }
    for (std::size_t group = 0; group < result.aggregates.size(); ++group) {
        for (std::size_t k = 0; k < seeds_per_cell; ++k) {
            write_run_row(out, result.runs[group * seeds_per_cell + k]);
        }
        write_agg_row(out, result.aggregates[group]);
    }
}

void write_csv(std::ostream& out, const SweepResult& result) {
    write_csv_header(out);
    write_csv_rows(out, result);
}

std::string csv_text(const SweepResult& result) {
    std::ostringstream out;
    write_csv(out, result);
    return out.str();
}

void append_summary_text(std::ostream& out, const SweepResult& result) {
    char buf[256];
    for (const ScenarioSummary& s : result.aggregates) {
        std::snprintf(buf, sizeof(buf),
                      "scenario %d nodes %3d: pdr %.4f [%.4f..%.4f] sd %.4f | "
                      "delay %.6f s [%.6f..%.6f] sd %.6f | runs %d\n",
                      s.scenario, s.node_count, s.pdr_mean, s.pdr_min, s.pdr_max, s.pdr_stddev,
                      s.delay_mean, s.delay_min, s.delay_max, s.delay_stddev, s.runs);
        out << buf;
    }
}

}  // namespace larsim
