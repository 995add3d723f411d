#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "larsim/config.hpp"
#include "larsim/metrics.hpp"

namespace larsim {

struct SweepResult {
    std::vector<RunReport> runs;            // node-count major, then seed order
    std::vector<ScenarioSummary> aggregates;  // one per node count
};

// Executes node_counts x seeds runs. `jobs` > 1 distributes runs over
// threads; results land in deterministic (node_count, seed) order either way.
SweepResult run_sweep(const ScenarioConfig& config, int jobs = 1,
                      const std::function<void(const RunReport&)>& progress = nullptr);

// CSV schema shared by sweep output and the plotter:
//   scenario,nodes,seed,pdr,avg_delay_s,sent,received,collisions,discoveries
// Per-run rows carry the seed; each (scenario, nodes) group is followed by an
// aggregate row with seed column "AGG" holding the across-seed means.
extern const char* const kCsvHeader;

void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, const SweepResult& result);  // no header
void write_csv(std::ostream& out, const SweepResult& result);
std::string csv_text(const SweepResult& result);

void append_summary_text(std::ostream& out, const SweepResult& result);

}  // namespace larsim
