#include "netadv/network_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace netadv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("network file: " + where + ": " + what);
}

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) fail(where, "unknown key \"" + key + "\"");
  }
}

double get_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  if (!obj[key].is_number()) fail(where, std::string("\"") + key + "\" must be a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  if (!obj[key].is_number_integer()) fail(where, std::string("\"") + key + "\" must be an integer");
  return obj[key].get<int>();
}

Signal parse_signal(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind")) fail(where, "signal needs a \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "constant") {
    expect_keys(j, where, {"kind", "c"});
    return Signal::constant(get_number(j, where, "c"));
  }
  if (kind == "sine") {
    expect_keys(j, where, {"kind", "amplitude", "angular_frequency"});
    return Signal::sine(get_number(j, where, "amplitude"),
                        get_number(j, where, "angular_frequency"));
  }
  if (kind == "gaussian") {
    expect_keys(j, where, {"kind", "center", "width"});
    return Signal::gaussian(get_number(j, where, "center"), get_number(j, where, "width"));
  }
  if (kind == "impulse") {
    expect_keys(j, where, {"kind", "c", "x0"});
    return Signal::impulse(get_number(j, where, "c"), get_number(j, where, "x0"));
  }
  if (kind == "table") {
    expect_keys(j, where, {"kind", "points"});
    if (!j.contains("points") || !j["points"].is_array()) fail(where, "table needs \"points\"");
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : j["points"]) {
      if (!row.is_array() || row.size() != 2) fail(where, "each table point is a [t, value] pair");
      pts.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return Signal::from_table(std::move(pts));
  }
  fail(where, "unknown signal kind \"" + kind + "\"");
}

json signal_to_json(const Signal& s) {
  json j;
  switch (s.kind) {
    case Signal::Kind::Constant:
      j["kind"] = "constant";
      j["c"] = s.c;
      break;
    case Signal::Kind::Sine:
      j["kind"] = "sine";
      j["amplitude"] = s.amplitude;
      j["angular_frequency"] = s.angular_frequency;
      break;
    case Signal::Kind::Gaussian:
      j["kind"] = "gaussian";
      j["center"] = s.center;
      j["width"] = s.width;
      break;
    case Signal::Kind::Impulse:
      j["kind"] = "impulse";
      j["c"] = s.c;
      j["x0"] = s.x0;
      break;
    case Signal::Kind::Table: {
      j["kind"] = "table";
      json pts = json::array();
      for (const auto& [t, v] : s.table) pts.push_back(json::array({t, v}));
      j["points"] = std::move(pts);
      break;
    }
  }
  return j;
}

}  // namespace

NetworkModel parse_network(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("network file: not valid JSON: ") + e.what());
  }
  expect_keys(doc, "document",
              {"time", "vertices", "edges", "couplings", "boundaries", "retardation"});

  NetworkModel m;

  if (!doc.contains("time")) fail("document", "missing \"time\"");
  expect_keys(doc["time"], "time", {"T", "N"});
  m.time = TimeGrid(get_number(doc["time"], "time", "T"), get_int(doc["time"], "time", "N"));

  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    fail("document", "missing \"vertices\" array");
  for (const auto& jv : doc["vertices"]) {
    const std::string where = "vertices";
    expect_keys(jv, where, {"id", "kind"});
    NetworkVertex v;
    v.id = get_int(jv, where, "id");
    const std::string kind = jv.value("kind", "");
    if (kind == "inflow")
      v.kind = VertexKind::Inflow;
    else if (kind == "internal")
      v.kind = VertexKind::Internal;
    else if (kind == "outflow")
      v.kind = VertexKind::Outflow;
    else
      fail(where, "vertex " + std::to_string(v.id) + " has unknown kind \"" + kind + "\"");
    m.vertices.push_back(v);
  }

  if (!doc.contains("edges") || !doc["edges"].is_array()) fail("document", "missing \"edges\" array");
  for (const auto& je : doc["edges"]) {
    const std::string where = "edges";
    expect_keys(je, where,
                {"id", "from", "to", "length", "kappa", "diameter", "cells", "velocity", "initial"});
    NetworkEdge e;
    e.id = get_int(je, where, "id");
    const std::string here = "edge " + std::to_string(e.id);
    e.from = get_int(je, here, "from");
    e.to = get_int(je, here, "to");
    e.length = get_number(je, here, "length");
    if (je.contains("kappa") && je.contains("diameter"))
      fail(here, "give either \"kappa\" or \"diameter\", not both");
    if (je.contains("diameter")) {
      // Circular pipe: capacity per unit length is the cross-section area.
      const double d = get_number(je, here, "diameter");
      if (!(d > 0.0)) fail(here, "\"diameter\" must be positive");
      e.kappa = 0.25 * 3.14159265358979323846 * d * d;
    } else if (je.contains("kappa")) {
      e.kappa = get_number(je, here, "kappa");
    }
    if (!(e.kappa > 0.0)) fail(here, "capacity must be positive");
    e.cells = get_int(je, here, "cells");
    if (!je.contains("velocity")) fail(here, "missing \"velocity\"");
    if (je["velocity"].is_number()) {
      e.velocity = {je["velocity"].get<double>()};
    } else if (je["velocity"].is_array()) {
      for (const auto& s : je["velocity"]) e.velocity.push_back(s.get<double>());
    } else {
      fail(here, "\"velocity\" must be a number or an array of samples");
    }
    if (je.contains("initial")) e.initial = parse_signal(je["initial"], here + " initial");
    m.edges.push_back(e);
  }

  if (doc.contains("couplings")) {
    if (!doc["couplings"].is_array()) fail("couplings", "must be an array");
    for (const auto& jc : doc["couplings"]) {
      expect_keys(jc, "couplings", {"vertex", "alpha"});
      const int vid = get_int(jc, "couplings", "vertex");
      if (!jc.contains("alpha") || !jc["alpha"].is_object())
        fail("couplings", "vertex " + std::to_string(vid) + " needs an \"alpha\" object");
      std::map<int, double> row;
      for (const auto& [key, w] : jc["alpha"].items()) {
        int eid = 0;
        try {
          std::size_t used = 0;
          eid = std::stoi(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (...) {
          fail("couplings", "alpha key \"" + key + "\" is not an edge id");
        }
        if (!w.is_number()) fail("couplings", "alpha weight for edge " + key + " must be a number");
        row[eid] = w.get<double>();
      }
      if (!m.alpha.emplace(vid, std::move(row)).second)
        fail("couplings", "duplicate row for vertex " + std::to_string(vid));
    }
  }

  if (doc.contains("boundaries")) {
    if (!doc["boundaries"].is_array()) fail("boundaries", "must be an array");
    for (const auto& jb : doc["boundaries"]) {
      expect_keys(jb, "boundaries", {"vertex", "signal"});
      const int vid = get_int(jb, "boundaries", "vertex");
      if (!jb.contains("signal")) fail("boundaries", "vertex " + std::to_string(vid) + " needs a \"signal\"");
      if (!m.boundaries.emplace(vid, parse_signal(jb["signal"], "boundaries")).second)
        fail("boundaries", "duplicate signal for vertex " + std::to_string(vid));
    }
  }

  if (doc.contains("retardation")) {
    const json& jr = doc["retardation"];
    if (!jr.is_object() || !jr.contains("type")) fail("retardation", "needs a \"type\"");
    const std::string type = jr["type"].get<std::string>();
    if (type == "linear") {
      expect_keys(jr, "retardation", {"type", "kappa"});
      m.retardation = RetardationModel::linear(get_number(jr, "retardation", "kappa"));
    } else if (type == "quadratic") {
      expect_keys(jr, "retardation", {"type", "a", "b"});
      m.retardation = RetardationModel::quadratic(get_number(jr, "retardation", "a"),
                                                  get_number(jr, "retardation", "b"));
    } else {
      fail("retardation", "unknown type \"" + type + "\"");
    }
  }

  return m;
}

NetworkModel load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("network file: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string serialize_network(const NetworkModel& m) {
  json doc;
  doc["time"] = {{"T", m.time.horizon}, {"N", m.time.steps}};

  json jvs = json::array();
  for (const auto& v : m.vertices) {
    const char* kind = v.kind == VertexKind::Inflow     ? "inflow"
                       : v.kind == VertexKind::Internal ? "internal"
                                                        : "outflow";
    jvs.push_back({{"id", v.id}, {"kind", kind}});
  }
  doc["vertices"] = std::move(jvs);

  json jes = json::array();
  for (const auto& e : m.edges) {
    json je = {{"id", e.id},       {"from", e.from},   {"to", e.to},
               {"length", e.length}, {"kappa", e.kappa}, {"cells", e.cells}};
    if (e.velocity.size() == 1)
      je["velocity"] = e.velocity[0];
    else
      je["velocity"] = e.velocity;
    if (e.initial) je["initial"] = signal_to_json(*e.initial);
    jes.push_back(std::move(je));
  }
  doc["edges"] = std::move(jes);

  if (!m.alpha.empty()) {
    json jcs = json::array();
    for (const auto& [vid, row] : m.alpha) {
      json jrow;
      for (const auto& [eid, w] : row) jrow[std::to_string(eid)] = w;
      jcs.push_back({{"vertex", vid}, {"alpha", std::move(jrow)}});
    }
    doc["couplings"] = std::move(jcs);
  }

  if (!m.boundaries.empty()) {
    json jbs = json::array();
    for (const auto& [vid, sig] : m.boundaries)
      jbs.push_back({{"vertex", vid}, {"signal", signal_to_json(sig)}});
    doc["boundaries"] = std::move(jbs);
  }

  if (m.retardation) {
    if (auto* lin = dynamic_cast<const LinearRetardation*>(m.retardation.get())) {
      doc["retardation"] = {{"type", "linear"}, {"kappa", lin->kappa()}};
    } else if (auto* qu = dynamic_cast<const QuadraticRetardation*>(m.retardation.get())) {
      doc["retardation"] = {{"type", "quadratic"}, {"a", qu->a()}, {"b", qu->b()}};
    } else {
      throw std::invalid_argument("network file: cannot serialize a custom retardation model");
    }
  }

  return doc.dump(2) + "\n";
}

void save_network(const NetworkModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("network file: cannot write " + path);
  out << serialize_network(m);
}

}  // namespace netadv
