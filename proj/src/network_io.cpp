#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "ecoroute/error.hpp"
#include "ecoroute/network.hpp"

namespace ecoroute {
namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(path + "." + key + ": missing required field");
  }
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path + ": expected a number");
  return v.get<double>();
}

std::uint32_t index_value(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0 ||
      v.get<long long>() > static_cast<long long>(UINT32_MAX)) {
    throw ParseError(path + ": expected a non-negative integer");
  }
  return static_cast<std::uint32_t>(v.get<long long>());
}

void flush_warnings(const NetworkBuilder& b, std::vector<std::string>* out) {
  for (const auto& w : b.warnings()) {
    if (out != nullptr) {
      out->push_back(w);
    } else {
      std::cerr << "warning: " << w << '\n';
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Network parse_network(std::string_view text, std::size_t slot,
                      std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": " +
                     e.what());
  }

  const auto slot_count = index_value(require(doc, "slot_count", "$"),
                                      "$.slot_count");
  if (slot_count == 0) throw ParseError("$.slot_count: must be at least 1");
  if (slot >= slot_count) {
    throw RangeError("slot " + std::to_string(slot) + " out of range (" +
                     std::to_string(slot_count) + " slots)");
  }

  const auto& nodes = require(doc, "nodes", "$");
  const auto& links = require(doc, "links", "$");
  if (!nodes.is_array()) throw ParseError("$.nodes: expected an array");
  if (!links.is_array()) throw ParseError("$.links: expected an array");
  if (nodes.empty()) throw EmptyNetworkError("network has no nodes");
  if (links.empty()) throw EmptyNetworkError("network has no links");

  NetworkBuilder builder(slot_count);
  // File node ids may be sparse; they are renumbered in order of appearance.
  std::unordered_map<std::uint32_t, std::uint32_t> dense;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto path = "$.nodes[" + std::to_string(i) + "]";
    const auto id = index_value(require(nodes[i], "id", path), path + ".id");
    std::optional<double> lat;
    std::optional<double> lon;
    if (auto it = nodes[i].find("lat"); it != nodes[i].end()) {
      lat = number(*it, path + ".lat");
    }
    if (auto it = nodes[i].find("lon"); it != nodes[i].end()) {
      lon = number(*it, path + ".lon");
    }
    if (!dense.emplace(id, static_cast<std::uint32_t>(i)).second) {
      throw ParseError(path + ".id: duplicate node id " + std::to_string(id));
    }
    builder.add_node(id, lat, lon);
  }

  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto path = "$.links[" + std::to_string(i) + "]";
    const auto& l = links[i];
    LinkSpec spec;
    if (auto it = l.find("id"); l.is_object() && it != l.end()) {
      spec.id = index_value(*it, path + ".id");
    }
    const auto from = index_value(require(l, "from", path), path + ".from");
    const auto to = index_value(require(l, "to", path), path + ".to");
    auto f = dense.find(from);
    auto t = dense.find(to);
    if (f == dense.end()) throw ParseError(path + ".from: unknown node");
    if (t == dense.end()) throw ParseError(path + ".to: unknown node");
    spec.from = f->second;
    spec.to = t->second;
    spec.length_mi = number(require(l, "length_mi", path), path + ".length_mi");
    spec.free_flow_mph =
        number(require(l, "free_flow_mph", path), path + ".free_flow_mph");
    const auto& avg = require(l, "avg_mph", path);
    if (!avg.is_array()) throw ParseError(path + ".avg_mph: expected an array");
    for (std::size_t s = 0; s < avg.size(); ++s) {
      spec.avg_mph.push_back(
          number(avg[s], path + ".avg_mph[" + std::to_string(s) + "]"));
    }
    try {
      builder.add_link(std::move(spec));
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }

  flush_warnings(builder, warnings);
  return std::move(builder).build(slot);
}

Network load_network(const std::string& path, std::size_t slot,
                     std::vector<std::string>* warnings) {
  const auto text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    if (slot != 0) {
      throw RangeError("slot " + std::to_string(slot) +
                       " out of range (CSV networks have 1 slot)");
    }
    return parse_network_csv(text, warnings);
  }
  return parse_network(text, slot, warnings);
}

Network parse_network_csv(std::string_view text,
                          std::vector<std::string>* warnings) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<LinkSpec> specs;
  std::uint32_t max_node = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("from", 0) == 0) continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 5 columns, got " +
                       std::to_string(cells.size()));
    }
    static constexpr const char* kColumns[] = {"from", "to", "length_mi",
                                               "free_flow_mph", "avg_mph"};
    std::array<double, 5> v{};
    for (std::size_t c = 0; c < 5; ++c) {
      try {
        std::size_t used = 0;
        v[c] = std::stod(cells[c], &used);
        if (used != cells[c].size()) throw std::invalid_argument(cells[c]);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ", field " +
                         kColumns[c] + ": not a number");
      }
    }
    for (std::size_t c = 0; c < 2; ++c) {
      if (v[c] < 0 || v[c] != static_cast<double>(static_cast<std::uint32_t>(v[c]))) {
        throw ParseError("line " + std::to_string(line_no) + ", field " +
                         kColumns[c] + ": expected a non-negative integer");
      }
    }
    LinkSpec spec;
    spec.from = static_cast<std::uint32_t>(v[0]);
    spec.to = static_cast<std::uint32_t>(v[1]);
    spec.length_mi = v[2];
    spec.free_flow_mph = v[3];
    spec.avg_mph = {v[4]};
    max_node = std::max({max_node, spec.from, spec.to});
    specs.push_back(std::move(spec));
  }
  if (specs.empty()) throw EmptyNetworkError("network has no links");

  NetworkBuilder builder(1);
  builder.add_nodes(static_cast<std::size_t>(max_node) + 1);
  for (auto& s : specs) builder.add_link(std::move(s));
  flush_warnings(builder, warnings);
  return std::move(builder).build(0);
}

std::string serialize_network(const Network& net) {
  nlohmann::ordered_json doc;
  doc["slot_count"] = net.slot_count();
  auto& nodes = doc["nodes"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    nlohmann::ordered_json n;
    const auto& node = net.nodes()[i];
    n["id"] = node.id;
    if (node.lat) n["lat"] = *node.lat;
    if (node.lon) n["lon"] = *node.lon;
    nodes.push_back(std::move(n));
  }
  auto& links = doc["links"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < net.link_count(); ++i) {
    const auto& link = net.links()[i];
    nlohmann::ordered_json l;
    if (link.id != i) l["id"] = link.id;
    l["from"] = net.node(link.from).id;
    l["to"] = net.node(link.to).id;
    l["length_mi"] = link.length_mi;
    l["free_flow_mph"] = link.free_flow_mph;
    l["avg_mph"] = link.avg_mph;
    links.push_back(std::move(l));
  }
  return doc.dump(1) + "\n";
}

void save_network(const Network& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << serialize_network(net);
  if (!out) throw Error(path + ": write failed");
}

}  // namespace ecoroute
