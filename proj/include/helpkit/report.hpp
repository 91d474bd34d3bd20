// SPDX-License-Identifier: Apache-2.0
//
// Run reports: JSON (the source of truth) and a text rendering of the same
// content.

#ifndef HELPKIT_REPORT_HPP
#define HELPKIT_REPORT_HPP

#include "helpkit/engine.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace helpkit::report {

inline constexpr const char* kToolVersion = "helpkit 1.0.0";

struct OrderRow {
  std::int64_t k = 0;
  std::string status;
  std::size_t profiles = 0;
  std::vector<std::string> classes;
  std::vector<std::vector<std::int64_t>> solutions;
  std::int64_t excluded_by_divisor = 0;
  std::string note;
  std::optional<double> millis;

  friend bool operator==(const OrderRow&, const OrderRow&) = default;
};

struct CriticalRow {
  std::int64_t k = 0;
  std::string status;
  std::string note;
  friend bool operator==(const CriticalRow&, const CriticalRow&) = default;
};

struct KimmerleSummary {
  std::vector<std::int64_t> vertices;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::vector<CriticalRow> critical;
  bool holds = true;
  friend bool operator==(const KimmerleSummary&, const KimmerleSummary&) = default;
};

struct RunReport {
  std::string tool = kToolVersion;
  std::string group;
  std::string mode;
  std::vector<OrderRow> orders;
  std::optional<KimmerleSummary> kimmerle;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline OrderRow summarize(const engine::OrderVerdict& v) {
  OrderRow r;
  r.k = v.order;
  r.status = engine::to_string(v.status);
  r.profiles = v.profiles.size();
  r.classes = v.space.names;
  r.solutions = v.solutions;
  r.excluded_by_divisor = v.excluded_by_divisor;
  return r;
}

inline KimmerleSummary summarize(const engine::KimmerleReport& k) {
  KimmerleSummary s;
  s.vertices.assign(k.graph.vertices.begin(), k.graph.vertices.end());
  s.edges.assign(k.graph.edges.begin(), k.graph.edges.end());
  for (const auto& [order, status] : k.critical) {
    auto it = k.notes.find(order);
    s.critical.push_back({order, engine::to_string(status), it == k.notes.end() ? "" : it->second});
  }
  s.holds = k.holds;
  return s;
}

using Json = nlohmann::ordered_json;

inline Json to_json(const RunReport& r) {
  Json j;
  j["tool"] = r.tool;
  j["group"] = r.group;
  j["mode"] = r.mode;
  j["orders"] = Json::array();
  for (const auto& o : r.orders) {
    Json row;
    row["k"] = o.k;
    row["status"] = o.status;
    row["profiles"] = o.profiles;
    row["classes"] = o.classes;
    row["solutions"] = o.solutions;
    if (o.excluded_by_divisor != 0) {
      row["excludedByDivisor"] = o.excluded_by_divisor;
    }
    if (!o.note.empty()) {
      row["note"] = o.note;
    }
    if (o.millis) {
      row["ms"] = *o.millis;
    }
    j["orders"].push_back(std::move(row));
  }
  if (r.kimmerle) {
    Json k;
    k["holds"] = r.kimmerle->holds;
    k["critical"] = Json::array();
    for (const auto& c : r.kimmerle->critical) {
      Json row;
      row["k"] = c.k;
      row["status"] = c.status;
      if (!c.note.empty()) {
        row["note"] = c.note;
      }
      k["critical"].push_back(std::move(row));
    }
    k["vertices"] = r.kimmerle->vertices;
    k["edges"] = Json::array();
    for (const auto& [p, q] : r.kimmerle->edges) {
      k["edges"].push_back({p, q});
    }
    j["kimmerle"] = std::move(k);
  }
  return j;
}

inline RunReport from_json(const Json& j) {
  RunReport r;
  r.tool = j.at("tool").get<std::string>();
  r.group = j.at("group").get<std::string>();
  r.mode = j.at("mode").get<std::string>();
  for (const auto& row : j.at("orders")) {
    OrderRow o;
    o.k = row.at("k").get<std::int64_t>();
    o.status = row.at("status").get<std::string>();
    o.profiles = row.at("profiles").get<std::size_t>();
    o.solutions = row.at("solutions").get<std::vector<std::vector<std::int64_t>>>();
    if (row.contains("classes")) {
      o.classes = row["classes"].get<std::vector<std::string>>();
    }
    if (row.contains("excludedByDivisor")) {
      o.excluded_by_divisor = row["excludedByDivisor"].get<std::int64_t>();
    }
    if (row.contains("note")) {
      o.note = row["note"].get<std::string>();
    }
    if (row.contains("ms")) {
      o.millis = row["ms"].get<double>();
    }
    r.orders.push_back(std::move(o));
  }
  if (j.contains("kimmerle")) {
    KimmerleSummary k;
    const auto& kj = j["kimmerle"];
    k.holds = kj.at("holds").get<bool>();
    for (const auto& row : kj.at("critical")) {
      CriticalRow c;
      c.k = row.at("k").get<std::int64_t>();
      c.status = row.at("status").get<std::string>();
      if (row.contains("note")) {
        c.note = row["note"].get<std::string>();
      }
      k.critical.push_back(std::move(c));
    }
    if (kj.contains("vertices")) {
      k.vertices = kj["vertices"].get<std::vector<std::int64_t>>();
    }
    if (kj.contains("edges")) {
      for (const auto& e : kj["edges"]) {
        k.edges.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>());
      }
    }
    r.kimmerle = std::move(k);
  }
  return r;
}

inline std::string dump(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

inline std::string tuple_text(const std::vector<std::int64_t>& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << (i ? ", " : "") << t[i];
  }
  os << ')';
  return os.str();
}

/// Human-readable rendering of the JSON content.
inline std::string render_text(const RunReport& r) {
  std::ostringstream os;
  os << r.tool << "  group " << r.group << "  mode " << r.mode << '\n';
  for (const auto& o : r.orders) {
    os << "\norder " << o.k << ": " << o.status << "  (" << o.profiles << " profiles, "
       << o.solutions.size() << " solutions)";
    if (o.excluded_by_divisor != 0) {
      os << "  [order " << o.excluded_by_divisor << " excluded]";
    }
    if (o.millis) {
      os << "  " << *o.millis << " ms";
    }
    os << '\n';
    if (!o.note.empty()) {
      os << "  note: " << o.note << '\n';
    }
    if (!o.solutions.empty()) {
      os << "  (";
      for (std::size_t i = 0; i < o.classes.size(); ++i) {
        os << (i ? ", " : "") << "v[" << o.classes[i] << "]";
      }
      os << ")\n";
      for (const auto& t : o.solutions) {
        os << "  " << tuple_text(t) << '\n';
      }
    }
  }
  if (r.kimmerle) {
    const auto& k = *r.kimmerle;
    os << "\nprime graph: vertices {";
    for (std::size_t i = 0; i < k.vertices.size(); ++i) {
      os << (i ? ", " : "") << k.vertices[i];
    }
    os << "}, edges {";
    for (std::size_t i = 0; i < k.edges.size(); ++i) {
      os << (i ? ", " : "") << k.edges[i].first << '-' << k.edges[i].second;
    }
    os << "}\ncritical orders:\n";
    for (const auto& c : k.critical) {
      os << "  " << c.k << ": " << c.status;
      if (!c.note.empty()) {
        os << "  (" << c.note << ')';
      }
      os << '\n';
    }
    os << (k.holds ? "HOLDS" : "OPEN") << '\n';
  }
  return os.str();
}

}  // namespace helpkit::report

#endif  // HELPKIT_REPORT_HPP
