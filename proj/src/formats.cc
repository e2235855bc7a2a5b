#include "warmflow/formats.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "text_util.h"
#include "warmflow/errors.h"

namespace warmflow {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kUnknownLine:
      return "unknown-line";
    case ParseErrorKind::kMalformedLine:
      return "malformed-line";
    case ParseErrorKind::kBadNumber:
      return "bad-number";
    case ParseErrorKind::kMissingHeader:
      return "missing-header";
    case ParseErrorKind::kDuplicateHeader:
      return "duplicate-header";
    case ParseErrorKind::kDuplicateTerminal:
      return "duplicate-terminal";
    case ParseErrorKind::kMissingTerminal:
      return "missing-terminal";
    case ParseErrorKind::kNodeOutOfRange:
      return "node-out-of-range";
    case ParseErrorKind::kSelfLoop:
      return "self-loop";
    case ParseErrorKind::kSameTerminal:
      return "same-terminal";
    case ParseErrorKind::kCountMismatch:
      return "count-mismatch";
    case ParseErrorKind::kBadIndex:
      return "bad-index";
  }
  return "?";
}

FlowNetwork parse_network(const std::string& text) {
  const auto lines = text::tokenize(text);
  std::size_t problem_line = 0;
  int64_t nodes = 0;
  int64_t arcs = 0;
  std::optional<NodeId> source;
  std::optional<NodeId> sink;
  std::vector<Edge> edges;
  std::vector<int64_t> capacities;

  auto node = [&](std::string_view token, std::size_t line) -> NodeId {
    const int64_t id = text::parse_int(token, line, "node id");
    if (id < 1 || id > nodes) {
      throw ParseError(ParseErrorKind::kNodeOutOfRange, line,
                       "node id " + std::to_string(id) + " outside [1, " +
                           std::to_string(nodes) + "]");
    }
    return static_cast<NodeId>(id - 1);
  };

  for (const text::Line& line : lines) {
    const std::string_view tag = line.tokens[0];
    if (tag == "c") continue;
    if (tag == "p") {
      if (problem_line != 0) {
        throw ParseError(ParseErrorKind::kDuplicateHeader, line.number,
                         "second problem line");
      }
      text::expect_tokens(line, 4, "problem");
      if (line.tokens[1] != "max") {
        throw ParseError(ParseErrorKind::kMalformedLine, line.number,
                         "problem type must be 'max'");
      }
      nodes = text::parse_nonnegative(line.tokens[2], line.number, "node count");
      arcs = text::parse_nonnegative(line.tokens[3], line.number, "arc count");
      if (nodes < 2 || nodes > INT32_MAX || arcs > INT32_MAX) {
        throw ParseError(ParseErrorKind::kBadNumber, line.number,
                         "node count must be in [2, 2^31) and arcs < 2^31");
      }
      problem_line = line.number;
      continue;
    }
    if (tag != "n" && tag != "a") {
      throw ParseError(ParseErrorKind::kUnknownLine, line.number,
                       "unknown line type '" + std::string(tag) + "'");
    }
    if (problem_line == 0) {
      throw ParseError(ParseErrorKind::kMissingHeader, line.number,
                       "line before the problem line");
    }
    if (tag == "n") {
      text::expect_tokens(line, 3, "node descriptor");
      const NodeId v = node(line.tokens[1], line.number);
      auto& slot = line.tokens[2] == "s"   ? source
                   : line.tokens[2] == "t" ? sink
                                           : throw ParseError(
                                                 ParseErrorKind::kMalformedLine,
                                                 line.number,
                                                 "node designator must be s or t");
      if (slot.has_value()) {
        throw ParseError(ParseErrorKind::kDuplicateTerminal, line.number,
                         "terminal declared twice");
      }
      slot = v;
      if (source.has_value() && sink.has_value() && *source == *sink) {
        throw ParseError(ParseErrorKind::kSameTerminal, line.number,
                         "source and sink are the same node");
      }
      continue;
    }
    text::expect_tokens(line, 4, "arc");
    const NodeId tail = node(line.tokens[1], line.number);
    const NodeId head = node(line.tokens[2], line.number);
    const int64_t cap =
        text::parse_nonnegative(line.tokens[3], line.number, "capacity");
    if (tail == head) {
      throw ParseError(ParseErrorKind::kSelfLoop, line.number,
                       "arc is a self-loop");
    }
    if (static_cast<int64_t>(edges.size()) == arcs) {
      throw ParseError(ParseErrorKind::kCountMismatch, line.number,
                       "more arcs than the problem line declares");
    }
    edges.push_back({tail, head});
    capacities.push_back(cap);
  }
  if (problem_line == 0) {
    throw ParseError(ParseErrorKind::kMissingHeader,
                     std::max<std::size_t>(1, text::line_count(text)),
                     "no problem line");
  }
  if (!source.has_value() || !sink.has_value()) {
    throw ParseError(ParseErrorKind::kMissingTerminal, problem_line,
                     !source.has_value() ? "no source declared"
                                         : "no sink declared");
  }
  if (static_cast<int64_t>(edges.size()) != arcs) {
    throw ParseError(ParseErrorKind::kCountMismatch, problem_line,
                     "problem line declares " + std::to_string(arcs) +
                         " arcs, found " + std::to_string(edges.size()));
  }
  return FlowNetwork(static_cast<int32_t>(nodes), std::move(edges), *source,
                     *sink, std::move(capacities));
}

std::string serialize_network(const FlowNetwork& network) {
  std::ostringstream out;
  out << "p max " << network.node_count() << ' ' << network.edge_count()
      << '\n';
  out << "n " << network.source() + 1 << " s\n";
  out << "n " << network.sink() + 1 << " t\n";
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    const Edge& edge = network.edge(e);
    out << "a " << edge.tail + 1 << ' ' << edge.head + 1 << ' '
        << network.capacity(e) << '\n';
  }
  return out.str();
}

FlowFile parse_flow(const std::string& text, const FlowNetwork& network) {
  const auto lines = text::tokenize(text);
  std::size_t header_line = 0;
  std::string name;
  int64_t arcs = 0;
  std::vector<int64_t> values;
  std::vector<bool> seen;
  std::size_t records = 0;
  for (const text::Line& line : lines) {
    const std::string_view tag = line.tokens[0];
    if (tag == "c") continue;
    if (tag == "f") {
      if (header_line != 0) {
        throw ParseError(ParseErrorKind::kDuplicateHeader, line.number,
                         "second flow header");
      }
      text::expect_tokens(line, 3, "flow header");
      name = std::string(line.tokens[1]);
      arcs = text::parse_nonnegative(line.tokens[2], line.number, "arc count");
      if (arcs != network.edge_count()) {
        throw BindingError("flow file for '" + name + "' has " +
                           std::to_string(arcs) + " arcs; network has " +
                           std::to_string(network.edge_count()));
      }
      values.assign(arcs, 0);
      seen.assign(arcs, false);
      header_line = line.number;
      continue;
    }
    if (tag != "e") {
      throw ParseError(ParseErrorKind::kUnknownLine, line.number,
                       "unknown line type '" + std::string(tag) + "'");
    }
    if (header_line == 0) {
      throw ParseError(ParseErrorKind::kMissingHeader, line.number,
                       "edge record before the flow header");
    }
    text::expect_tokens(line, 3, "edge record");
    const int64_t index =
        text::parse_nonnegative(line.tokens[1], line.number, "edge index");
    if (index >= arcs || seen[index]) {
      throw ParseError(ParseErrorKind::kBadIndex, line.number,
                       "edge index " + std::to_string(index) +
                           (index >= arcs ? " out of range" : " repeated"));
    }
    values[index] =
        text::parse_nonnegative(line.tokens[2], line.number, "flow value");
    seen[index] = true;
    ++records;
  }
  if (header_line == 0) {
    throw ParseError(ParseErrorKind::kMissingHeader,
                     std::max<std::size_t>(1, text::line_count(text)),
                     "no flow header");
  }
  if (records != static_cast<std::size_t>(arcs)) {
    throw ParseError(ParseErrorKind::kCountMismatch, header_line,
                     "flow header declares " + std::to_string(arcs) +
                         " records, found " + std::to_string(records));
  }
  return {std::move(name), FlowAssignment(std::move(values))};
}

std::string serialize_flow(const FlowAssignment& f, const FlowNetwork& network,
                           const std::string& instance_name) {
  if (f.size() != network.edge_count()) {
    throw BindingError("flow length differs from the network edge count");
  }
  if (instance_name.empty() ||
      instance_name.find_first_of(" \t\r\n") != std::string::npos) {
    throw InputError("instance name must be a single nonempty token");
  }
  std::ostringstream out;
  out << "f " << instance_name << ' ' << f.size() << '\n';
  for (EdgeIndex e = 0; e < f.size(); ++e) {
    out << "e " << e << ' ' << f[e] << '\n';
  }
  return out.str();
}

CapacitySample parse_capacity_sample(const std::string& text,
                                     int32_t edge_count) {
  const auto lines = text::tokenize(text);
  if (lines.empty() || lines.front().tokens[0] != "k") {
    throw ParseError(ParseErrorKind::kMissingHeader,
                     lines.empty() ? 1 : lines.front().number,
                     "capacity sample must start with 'k <index>'");
  }
  text::expect_tokens(lines.front(), 2, "sample header");
  CapacitySample sample;
  sample.index = text::parse_nonnegative(lines.front().tokens[1],
                                         lines.front().number, "sample index");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    text::expect_tokens(lines[i], 1, "capacity");
    sample.capacities.push_back(text::parse_nonnegative(
        lines[i].tokens[0], lines[i].number, "capacity"));
  }
  if (sample.capacities.size() != static_cast<std::size_t>(edge_count)) {
    throw ParseError(ParseErrorKind::kCountMismatch, lines.front().number,
                     "sample lists " +
                         std::to_string(sample.capacities.size()) +
                         " capacities for " + std::to_string(edge_count) +
                         " edges");
  }
  return sample;
}

std::string serialize_capacity_sample(const CapacitySample& sample) {
  std::ostringstream out;
  out << "k " << sample.index << '\n';
  for (int64_t c : sample.capacities) out << c << '\n';
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("write to '" + path.string() + "' failed");
}

SampleCollection read_sample_collection(const std::filesystem::path& dir) {
  FlowNetwork network = parse_network(read_text_file(dir / "instance.max"));
  std::map<int64_t, std::vector<int64_t>> by_index;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".cap") continue;
    CapacitySample sample =
        parse_capacity_sample(read_text_file(entry.path()), network.edge_count());
    if (!by_index.emplace(sample.index, std::move(sample.capacities)).second) {
      throw InputError("duplicate sample index " + std::to_string(sample.index) +
                       " in '" + dir.string() + "'");
    }
  }
  SampleCollection collection{std::move(network), {}};
  for (auto& [index, caps] : by_index) {
    collection.samples.push_back(std::move(caps));
  }
  return collection;
}

void write_sample_collection(const std::filesystem::path& dir,
                             const SampleCollection& collection) {
  std::filesystem::create_directories(dir);
  write_text_file(dir / "instance.max", serialize_network(collection.network));
  for (std::size_t i = 0; i < collection.samples.size(); ++i) {
    write_text_file(
        dir / ("sample_" + std::to_string(i) + ".cap"),
        serialize_capacity_sample({static_cast<int64_t>(i),
                                   collection.samples[i]}));
  }
}

}  // namespace warmflow
