#include "netrecon/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace netrecon::cli {
namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw CliError(kParseError, what); }

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing field '" + key + "'");
  return j.at(key);
}

int json_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) parse_fail(where + ": expected an integer");
  return v.get<int>();
}

std::vector<int> json_int_list(const Json& v, const std::string& where) {
  if (!v.is_array()) parse_fail(where + ": expected a list of integers");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(json_int(x, where));
  return out;
}

Json pair_json(int a, int b) { return Json::array({a, b}); }

Json edges_json(const graphcore::Topology& t) {
  Json edges = Json::array();
  for (const auto& [a, b] : t.edges()) edges.push_back(pair_json(a, b));
  return edges;
}

Json atom_json(const constraints::KalmansonAtom& a) {
  Json lhs = Json::array();
  Json rhs = Json::array();
  for (const auto& [x, y] : a.lhs()) lhs.push_back(pair_json(x, y));
  for (const auto& [x, y] : a.rhs()) rhs.push_back(pair_json(x, y));
  return {{"label", a.label()},
          {"quad", a.quad.nodes},
          {"family", a.family == constraints::Family::kljm ? "kljm" : "jkml"},
          {"sign", a.sign == constraints::Sign::positive ? ">0" : "<0"},
          {"lhs", lhs},
          {"rhs", rhs}};
}

Json composite_json(const constraints::CompositeInequality& c) {
  Json atoms = Json::array();
  for (const auto& a : c.atoms) atoms.push_back(atom_json(a));
  return {{"label", c.label()}, {"atoms", atoms}};
}

Json networks_json(const std::vector<circuit::CandidateNetwork>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(to_json(c));
  return out;
}

}  // namespace

Rational json_rational(const Json& v, long max_denominator) {
  try {
    if (v.is_string()) return rationalize(v.get<std::string>(), max_denominator);
    if (v.is_number_integer()) return Rational(v.dump());
    if (v.is_number_float()) return rationalize(v.dump(), max_denominator);
  } catch (const std::invalid_argument& e) {
    parse_fail(e.what());
  }
  parse_fail("expected a rational string or number, got " + v.dump());
}

std::uint64_t parse_edge_mask(int n, const std::string& text) {
  if (text == "maximal-planar") return solver::maximal_planar_mask(n);
  if (static_cast<int>(text.size()) != graphcore::edge_count(n)) {
    parse_fail("edge mask must have " + std::to_string(graphcore::edge_count(n)) + " digits or be 'maximal-planar'");
  }
  std::vector<int> w;
  for (char c : text) {
    if (c != '0' && c != '1') parse_fail("edge mask digits must be 0 or 1");
    w.push_back(c - '0');
  }
  return graphcore::mask_from_vector(n, w);
}

MeasurementFile parse_measurement_file(const Json& j, long max_denominator) {
  if (!j.is_object()) parse_fail("measurement file: expected a JSON object");
  if (j.contains("format_version") && j.at("format_version") != kFormatVersion) {
    parse_fail("measurement file: unsupported format_version " + j.at("format_version").dump());
  }
  MeasurementFile f;
  f.ms.n = json_int(require(j, "n", "measurement file"), "n");
  f.ms.available = json_int_list(require(j, "available", "measurement file"), "available");
  try {
    if (j.contains("class") && !j.at("class").is_null()) {
      if (!j.at("class").is_string()) parse_fail("class: expected a string");
      f.cls = circuit::parse_class(j.at("class").get<std::string>());
    }
  } catch (const std::invalid_argument& e) {
    parse_fail(e.what());
  }
  if (j.contains("beta_known") && !j.at("beta_known").is_null()) {
    f.beta_known = json_rational(j.at("beta_known"), max_denominator);
  }
  const Json& items = require(j, "measurements", "measurement file");
  if (!items.is_array()) parse_fail("measurements: expected a list");
  std::size_t number = 0;
  for (const auto& m : items) {
    const std::string where = "measurement #" + std::to_string(++number);
    circuit::Measurement x;
    x.a = json_int(require(m, "a", where), where + " a");
    x.b = json_int(require(m, "b", where), where + " b");
    x.z.re = json_rational(require(m, "re", where), max_denominator);
    x.z.im = m.contains("im") ? json_rational(m.at("im"), max_denominator) : Rational(0);
    f.ms.items.push_back(x);
  }
  try {
    f.ms.validate();
  } catch (const std::logic_error& e) {
    parse_fail(std::string("measurement file: ") + e.what());
  }
  if (j.contains("options")) {
    const Json& o = j.at("options");
    if (!o.is_object()) parse_fail("options: expected an object");
    if (o.contains("planar_filter")) {
      if (!o.at("planar_filter").is_boolean()) parse_fail("options.planar_filter: expected a boolean");
      f.options.planar_filter = o.at("planar_filter").get<bool>();
    }
    if (o.contains("edge_mask")) {
      if (!o.at("edge_mask").is_string()) parse_fail("options.edge_mask: expected a string");
      f.options.edge_mask = o.at("edge_mask").get<std::string>();
    }
    if (o.contains("enumeration_cap")) f.options.enumeration_cap = json_int(o.at("enumeration_cap"), "enumeration_cap");
    if (o.contains("groebner")) {
      const Json& g = o.at("groebner");
      if (g.contains("order")) {
        try {
          f.options.order = polysys::parse_order(g.at("order").get<std::string>());
        } catch (const std::exception& e) {
          parse_fail(std::string("options.groebner.order: ") + e.what());
        }
      }
      if (g.contains("limits")) {
        const Json& l = g.at("limits");
        if (l.contains("max_basis")) f.options.max_basis = json_int(l.at("max_basis"), "max_basis");
        if (l.contains("max_degree")) f.options.max_degree = json_int(l.at("max_degree"), "max_degree");
        if (l.contains("max_reductions")) f.options.max_reductions = json_int(l.at("max_reductions"), "max_reductions");
      }
    }
  }
  try {
    f.ms.validate();
  } catch (const std::invalid_argument& e) {
    throw CliError(kSolverError, e.what());
  }
  return f;
}

Json to_json(const MeasurementFile& f) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["n"] = f.ms.n;
  j["available"] = f.ms.available;
  if (f.cls) j["class"] = std::string(circuit::class_name(*f.cls));
  if (f.beta_known) j["beta_known"] = to_string(*f.beta_known);
  Json items = Json::array();
  for (const auto& m : f.ms.items) {
    items.push_back({{"a", m.a}, {"b", m.b}, {"re", to_string(m.z.re)}, {"im", to_string(m.z.im)}});
  }
  j["measurements"] = items;
  Json o = Json::object();
  if (f.options.planar_filter) o["planar_filter"] = *f.options.planar_filter;
  if (f.options.edge_mask) o["edge_mask"] = *f.options.edge_mask;
  if (f.options.enumeration_cap) o["enumeration_cap"] = *f.options.enumeration_cap;
  Json g = Json::object();
  if (f.options.order) g["order"] = std::string(polysys::order_name(*f.options.order));
  Json l = Json::object();
  if (f.options.max_basis) l["max_basis"] = *f.options.max_basis;
  if (f.options.max_degree) l["max_degree"] = *f.options.max_degree;
  if (f.options.max_reductions) l["max_reductions"] = *f.options.max_reductions;
  if (!l.empty()) g["limits"] = l;
  if (!g.empty()) o["groebner"] = g;
  if (!o.empty()) j["options"] = o;
  return j;
}

NetworkFile parse_network_file(const Json& j, long max_denominator) {
  if (!j.is_object()) parse_fail("network file: expected a JSON object");
  const int n = json_int(require(j, "n", "network file"), "n");
  if (n < 3 || n > graphcore::kMaxNodes) parse_fail("network file: n must be in [3, 11]");
  const Json& edges = require(j, "edges", "network file");
  if (!edges.is_array()) parse_fail("edges: expected a list of pairs");
  std::vector<std::pair<int, int>> list;
  for (const auto& e : edges) {
    const auto p = json_int_list(e, "edge");
    if (p.size() != 2) parse_fail("edge: expected a pair, got " + e.dump());
    if (p[0] == p[1] || p[0] < 1 || p[1] < 1 || p[0] > n || p[1] > n) parse_fail("edge: invalid pair " + e.dump());
    list.push_back({p[0], p[1]});
  }
  NetworkFile f;
  f.topology = graphcore::Topology::from_edges(n, list);
  try {
    if (j.contains("class") && !j.at("class").is_null()) f.cls = circuit::parse_class(j.at("class").get<std::string>());
  } catch (const std::exception& e) {
    parse_fail(e.what());
  }
  if (j.contains("beta") && !j.at("beta").is_null()) f.beta = json_rational(j.at("beta"), max_denominator);
  return f;
}

Json to_json(const circuit::CandidateNetwork& c) {
  return {{"n", c.topology().node_count()},
          {"edges", edges_json(c.topology())},
          {"bits", c.topology().bit_string()},
          {"beta", to_string(c.beta())},
          {"class", std::string(circuit::class_name(c.network_class()))}};
}

Json report_json(const solver::ReconstructionReport& r, const MeasurementFile& input) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["class"] = std::string(circuit::class_name(r.cls));
  j["input"] = to_json(input);

  Json cfg;
  cfg["planar_filter"] = r.config.planar_filter;
  cfg["edge_mask"] = r.config.edge_mask ? Json(graphcore::Topology(input.ms.n, *r.config.edge_mask).bit_string())
                                        : Json(nullptr);
  cfg["enumeration_cap"] = r.config.cap;
  cfg["beta_known"] = r.config.beta_known ? Json(to_string(*r.config.beta_known)) : Json(nullptr);
  j["config"] = cfg;

  Json triples = Json::array();
  for (const auto& t : r.index.triples) triples.push_back(t);
  Json quads = Json::array();
  for (const auto& q : r.index.quads) quads.push_back({{"nodes", q.nodes}, {"roles", q.roles}});
  j["index_sets"] = {{"triples", triples}, {"quads", quads}};

  Json tri = Json::array();
  for (const auto& t : r.triangles) {
    tri.push_back({{"triple", t.triple},
                   {"form", t.form == constraints::TriangleForm::pure_determinant ? "determinant" : "anchored"},
                   {"constraint", t.describe()}});
  }
  j["triangles"] = tri;
  j["candidates"] = networks_json(r.feasible_candidates);

  Json k_hat = Json::array();
  for (std::size_t i = 0; i < r.k_hat.size(); ++i) {
    Json survivors = Json::array();
    for (const auto& c : r.k_hat[i]) survivors.push_back(composite_json(c));
    k_hat.push_back({{"quad", r.index.quads[i].nodes}, {"roles", r.index.quads[i].roles}, {"survivors", survivors}});
  }
  j["k_hat"] = k_hat;
  j["c_aux_size"] = r.c_aux_size ? Json(*r.c_aux_size) : Json(nullptr);

  Json c_hat = Json::array();
  for (const auto& s : r.solutions) {
    Json entry = composite_json(r.c_hat[s.composite_id]);
    entry["id"] = s.composite_id;
    entry["networks"] = networks_json(s.networks);
    c_hat.push_back(entry);
  }
  j["c_hat"] = c_hat;

  const auto& raw = r.raw;
  j["raw_variety"] = {
      {"count", raw.count()},
      {"count_any_beta", raw.count_any_beta()},
      {"patterns", raw.patterns},
      {"convention",
       "count: binary patterns w, connected or not, for which F(w, beta) = 0 has a solution beta > 0 "
       "(every equation vacuous counts); count_any_beta also admits a forced beta <= 0"},
      {"breakdown",
       {{"vacuous_connected", raw.vacuous_connected},
        {"vacuous_disconnected", raw.vacuous_disconnected},
        {"positive_connected", raw.positive_connected},
        {"positive_disconnected", raw.positive_disconnected},
        {"nonpositive_connected", raw.nonpositive_connected},
        {"nonpositive_disconnected", raw.nonpositive_disconnected}}}};
  j["counters"] = {{"patterns_enumerated", r.patterns_enumerated},
                   {"candidates", r.feasible_candidates.size()},
                   {"c_hat_size", r.c_hat.size()}};
  return j;
}

std::string report_dot(const solver::ReconstructionReport& r) {
  std::ostringstream s;
  for (const auto& sol : r.solutions) {
    for (std::size_t i = 0; i < sol.networks.size(); ++i) {
      const auto& net = sol.networks[i];
      s << "graph N" << sol.composite_id << "_" << i << " {\n";
      s << "  label=\"" << r.c_hat[sol.composite_id].label() << "  beta=" << to_string(net.beta()) << " "
        << circuit::class_name(net.network_class()) << "\";\n";
      s << "  layout=circo;\n";
      for (int v = 1; v <= net.topology().node_count(); ++v) s << "  " << v << ";\n";
      for (const auto& [a, b] : net.topology().edges()) s << "  " << a << " -- " << b << ";\n";
      s << "}\n";
    }
  }
  return s.str();
}

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kIoError, "cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw CliError(kParseError, "'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError(kIoError, "cannot write '" + path + "'");
    out << text;
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw CliError(kIoError, "cannot write '" + path + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw CliError(kIoError, "cannot write '" + path + "'");
  }
}

MeasurementFile simulate(const circuit::CandidateNetwork& net, const std::vector<int>& unavailable) {
  const int n = net.topology().node_count();
  if (!graphcore::is_connected(net.topology())) throw CliError(kSolverError, "simulate: graph is disconnected");
  MeasurementFile f;
  f.ms.n = n;
  for (int v = 1; v <= n; ++v) {
    if (std::find(unavailable.begin(), unavailable.end(), v) == unavailable.end()) f.ms.available.push_back(v);
  }
  for (int u : unavailable) {
    if (u < 1 || u > n) throw CliError(kSolverError, "simulate: unavailable node " + std::to_string(u) + " out of range");
  }
  for (std::size_t x = 0; x < f.ms.available.size(); ++x) {
    for (std::size_t y = x + 1; y < f.ms.available.size(); ++y) {
      const int a = f.ms.available[x], b = f.ms.available[y];
      f.ms.items.push_back({a, b, circuit::thevenin(net, a, b)});
    }
  }
  f.cls = net.network_class();
  return f;
}

}  // namespace netrecon::cli
