#pragma once

#include <iosfwd>
#include <string>

#include "larsim/mobility.hpp"

namespace larsim {

// Mobility trace text format, one sample per line:
//   <node-id> <time> <x> <y>
// with time and coordinates printed to 6 decimal places. Lines are grouped by
// node in time order. The round trip through this format is lossless because
// trace samples are quantized to micrometers.
void export_trace(const MobilityTrace& trace, std::ostream& out);
std::string export_trace(const MobilityTrace& trace);

// Parses a trace, validating the uniform time grid. Malformed input raises
// std::runtime_error naming the offending line.
MobilityTrace import_trace(std::istream& in);
MobilityTrace import_trace_text(const std::string& text);

void write_trace_file(const MobilityTrace& trace, const std::string& path);
MobilityTrace read_trace_file(const std::string& path);

}  // namespace larsim
