#ifndef WARMFLOW_FORMATS_H_
#define WARMFLOW_FORMATS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "warmflow/network.h"

namespace warmflow {

// DIMACS max-flow text, node ids 1-based on disk:
//   c <comment>
//   p max <nodes> <arcs>
//   n <id> s
//   n <id> t
//   a <tail> <head> <capacity>
// Arcs keep file order. Malformed input throws ParseError carrying the
// offending 1-based line number; structural problems found only at the end
// (missing terminal, arc count) are reported on the `p` line.
FlowNetwork parse_network(const std::string& text);

// Canonical form: `p` line, source line, sink line, arcs in edge order.
std::string serialize_network(const FlowNetwork& network);

struct FlowFile {
  std::string instance_name;
  FlowAssignment flow;
};

// Flow text bound to an instance by name and arc count:
//   c <comment>
//   f <instance-name> <arcs>
//   e <edge-index> <value>        (0-based, every index exactly once)
// Values may exceed capacities. Throws ParseError for malformed text and
// BindingError when the arc count differs from `network`.
FlowFile parse_flow(const std::string& text, const FlowNetwork& network);
std::string serialize_flow(const FlowAssignment& f, const FlowNetwork& network,
                           const std::string& instance_name);

struct CapacitySample {
  int64_t index = 0;
  std::vector<int64_t> capacities;
};

// "k <index>" followed by one nonnegative capacity per line, in edge order.
CapacitySample parse_capacity_sample(const std::string& text,
                                     int32_t edge_count);
std::string serialize_capacity_sample(const CapacitySample& sample);

// A directory holding `instance.max` and `sample_<index>.cap` files.
struct SampleCollection {
  FlowNetwork network;
  std::vector<std::vector<int64_t>> samples;  // ordered by sample index
};

SampleCollection read_sample_collection(const std::filesystem::path& dir);
void write_sample_collection(const std::filesystem::path& dir,
                             const SampleCollection& collection);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

}  // namespace warmflow

#endif  // WARMFLOW_FORMATS_H_
