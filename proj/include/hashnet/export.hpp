#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hashnet/csv.hpp"
#include "hashnet/error.hpp"
#include "hashnet/graph.hpp"

namespace hashnet {

struct NodeAnnotation {
  std::optional<std::string> community_id;
  std::optional<std::string> status;
  std::optional<Weight> support;
  std::optional<double> enrichment;
  std::optional<double> log_enrichment;
};

struct GraphAnnotations {
  std::string epoch;
  std::string layer;
  std::map<Node, NodeAnnotation> nodes;
};

enum class GraphFormat { kGraphml, kDot, kJson, kCsv };

inline GraphFormat parse_graph_format(std::string_view s) {
  if (s == "graphml") return GraphFormat::kGraphml;
  if (s == "dot") return GraphFormat::kDot;
  if (s == "json") return GraphFormat::kJson;
  if (s == "csv") return GraphFormat::kCsv;
  throw ConfigError("unknown graph format '" + std::string(s) + "' (expected graphml, dot, json or csv)");
}

inline std::string_view extension(GraphFormat f) {
  switch (f) {
    case GraphFormat::kGraphml: return "graphml";
    case GraphFormat::kDot: return "dot";
    case GraphFormat::kJson: return "json";
    case GraphFormat::kCsv: return "csv";
  }
  return "";
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_graphml(std::ostream& out, const WeightedGraph& g, const GraphAnnotations& ann) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"epoch\" for=\"graph\" attr.name=\"epoch\" attr.type=\"string\"/>\n"
      << "  <key id=\"layer\" for=\"graph\" attr.name=\"layer\" attr.type=\"string\"/>\n"
      << "  <key id=\"community_id\" for=\"node\" attr.name=\"community_id\" attr.type=\"string\"/>\n"
      << "  <key id=\"status\" for=\"node\" attr.name=\"status\" attr.type=\"string\"/>\n"
      << "  <key id=\"support\" for=\"node\" attr.name=\"support\" attr.type=\"long\"/>\n"
      << "  <key id=\"enrichment\" for=\"node\" attr.name=\"enrichment\" attr.type=\"double\"/>\n"
      << "  <key id=\"log_enrichment\" for=\"node\" attr.name=\"log_enrichment\" attr.type=\"double\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n"
      << "    <data key=\"epoch\">" << xml_escape(ann.epoch) << "</data>\n"
      << "    <data key=\"layer\">" << xml_escape(ann.layer) << "</data>\n";
  for (const auto& n : g.nodes()) {
    out << "    <node id=\"" << xml_escape(n) << "\"";
    auto it = ann.nodes.find(n);
    if (it == ann.nodes.end()) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    const auto& a = it->second;
    auto data = [&](const char* key, const std::string& v) {
      out << "      <data key=\"" << key << "\">" << xml_escape(v) << "</data>\n";
    };
    if (a.community_id) data("community_id", *a.community_id);
    if (a.status) data("status", *a.status);
    if (a.support) data("support", std::to_string(*a.support));
    if (a.enrichment) data("enrichment", csv::real(*a.enrichment));
    if (a.log_enrichment) data("log_enrichment", csv::real(*a.log_enrichment));
    out << "    </node>\n";
  }
  std::size_t id = 0;
  for (const auto& e : g.edges()) {
    out << "    <edge id=\"e" << id++ << "\" source=\"" << xml_escape(e.source) << "\" target=\""
        << xml_escape(e.target) << "\">\n"
        << "      <data key=\"weight\">" << e.weight << "</data>\n"
        << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

inline void write_dot(std::ostream& out, const WeightedGraph& g, const GraphAnnotations& ann) {
  out << "graph G {\n";
  if (!ann.epoch.empty()) out << "  epoch=" << dot_quote(ann.epoch) << ";\n";
  if (!ann.layer.empty()) out << "  layer=" << dot_quote(ann.layer) << ";\n";
  for (const auto& n : g.nodes()) {
    out << "  " << dot_quote(n);
    if (auto it = ann.nodes.find(n); it != ann.nodes.end()) {
      const auto& a = it->second;
      std::string attrs;
      auto add = [&](const char* key, const std::string& v) {
        if (!attrs.empty()) attrs += ", ";
        attrs += std::string(key) + "=" + dot_quote(v);
      };
      if (a.community_id) add("community_id", *a.community_id);
      if (a.status) add("status", *a.status);
      if (a.support) add("support", std::to_string(*a.support));
      if (a.enrichment) add("enrichment", csv::real(*a.enrichment));
      if (a.log_enrichment) add("log_enrichment", csv::real(*a.log_enrichment));
      if (!attrs.empty()) out << " [" << attrs << "]";
    }
    out << ";\n";
  }
  for (const auto& e : g.edges())
    out << "  " << dot_quote(e.source) << " -- " << dot_quote(e.target) << " [weight=" << e.weight << "];\n";
  out << "}\n";
}

inline void write_json(std::ostream& out, const WeightedGraph& g, const GraphAnnotations& ann) {
  nlohmann::ordered_json doc;
  doc["epoch"] = ann.epoch;
  doc["layer"] = ann.layer;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : g.nodes()) {
    nlohmann::ordered_json node;
    node["id"] = n;
    if (auto it = ann.nodes.find(n); it != ann.nodes.end()) {
      const auto& a = it->second;
      if (a.community_id) node["community_id"] = *a.community_id;
      if (a.status) node["status"] = *a.status;
      if (a.support) node["support"] = *a.support;
      if (a.enrichment) node["enrichment"] = *a.enrichment;
      if (a.log_enrichment) node["log_enrichment"] = *a.log_enrichment;
    }
    doc["nodes"].push_back(std::move(node));
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges())
    doc["edges"].push_back({{"source", e.source}, {"target", e.target}, {"weight", e.weight}});
  out << doc.dump(2) << '\n';
}

}  // namespace detail

// Nodes in lexicographic order, edges by (source, target). The csv format is
// the plain edge list; annotations apply to graphml, dot and json.
inline void export_graph(std::ostream& out, const WeightedGraph& g, const GraphAnnotations& ann,
                         GraphFormat format) {
  for (const auto& [n, _] : ann.nodes)
    if (!g.has_node(n)) throw std::invalid_argument("annotation for unknown node '" + n + "'");
  switch (format) {
    case GraphFormat::kGraphml: detail::write_graphml(out, g, ann); return;
    case GraphFormat::kDot: detail::write_dot(out, g, ann); return;
    case GraphFormat::kJson: detail::write_json(out, g, ann); return;
    case GraphFormat::kCsv: write_edge_list(out, g); return;
  }
}

}  // namespace hashnet
