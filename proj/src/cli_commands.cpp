#include "netrecon/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace netrecon::cli {
namespace {

constexpr std::size_t kStandardMonomialCap = std::size_t{1} << 20;

void emit(const CommandOptions& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
  } else {
    write_text_file(o.output, text);
  }
}

MeasurementFile load_measurements(const CommandOptions& o) {
  if (o.input.empty()) throw CliError(kUsage, "--input is required");
  return parse_measurement_file(read_json_file(o.input), o.max_denominator);
}

// File options first, then command-line flags on top.
solver::SolverConfig make_config(const MeasurementFile& f, const CommandOptions& o, bool apply_flags = true) {
  solver::SolverConfig c;
  c.jobs = o.jobs;
  c.beta_known = f.beta_known;
  c.cls = f.cls;
  c.planar_filter = f.options.planar_filter.value_or(false);
  if (f.options.enumeration_cap) c.cap = *f.options.enumeration_cap;
  if (f.options.edge_mask) c.edge_mask = parse_edge_mask(f.ms.n, *f.options.edge_mask);
  if (f.options.order) c.groebner.order = *f.options.order;
  if (f.options.max_basis) c.groebner.limits.max_basis = *f.options.max_basis;
  if (f.options.max_degree) c.groebner.limits.max_degree = *f.options.max_degree;
  c.groebner.limits.max_reductions = f.options.max_reductions.value_or(kDefaultMaxReductions);
  if (!apply_flags) return c;
  if (o.planar_filter) c.planar_filter = true;
  if (o.cap) c.cap = *o.cap;
  if (o.max_composites) c.max_composites = *o.max_composites;
  if (o.edge_mask) c.edge_mask = parse_edge_mask(f.ms.n, *o.edge_mask);
  if (o.order) {
    try {
      c.groebner.order = polysys::parse_order(*o.order);
    } catch (const std::invalid_argument& e) {
      throw CliError(kUsage, e.what());
    }
  }
  if (o.gb_max_basis) c.groebner.limits.max_basis = *o.gb_max_basis;
  if (o.gb_max_degree) c.groebner.limits.max_degree = *o.gb_max_degree;
  if (o.gb_max_reductions) c.groebner.limits.max_reductions = *o.gb_max_reductions;
  return c;
}

Rational flag_rational(const std::string& text, long cap, const char* name) {
  try {
    return rationalize(text, cap);
  } catch (const std::invalid_argument& e) {
    throw CliError(kUsage, std::string(name) + ": " + e.what());
  }
}

circuit::NetworkClass flag_class(const std::string& text) {
  try {
    return circuit::parse_class(text);
  } catch (const std::invalid_argument& e) {
    throw CliError(kUsage, std::string("--class: ") + e.what());
  }
}

}  // namespace

int cmd_reconstruct(const CommandOptions& o, std::ostream& out) {
  const MeasurementFile f = load_measurements(o);
  const solver::SolverConfig config = make_config(f, o);
  const solver::ReconstructionReport r = solver::reconstruct(f.ms, config);
  const std::string text = canonical(report_json(r, f));
  if (!o.dot.empty()) write_text_file(o.dot, report_dot(r));
  emit(o, text, out);
  return kOk;
}

int cmd_simulate(const CommandOptions& o, std::ostream& out) {
  graphcore::Topology topology(3, 0);
  std::optional<circuit::NetworkClass> cls;
  std::optional<Rational> beta;
  if (!o.graph.empty()) {
    const NetworkFile g = parse_network_file(read_json_file(o.graph), o.max_denominator);
    topology = g.topology;
    cls = g.cls;
    beta = g.beta;
  } else if (o.n) {
    if (*o.n < 3 || *o.n > graphcore::kMaxNodes) throw CliError(kUsage, "--n must be in [3, 11]");
    topology = oracle::random_circular_planar(*o.n, o.seed);
  } else {
    throw CliError(kUsage, "simulate needs --graph or --n");
  }
  if (o.cls) cls = flag_class(*o.cls);
  if (o.beta) beta = flag_rational(*o.beta, o.max_denominator, "--beta");
  if (!beta) beta = Rational(1);
  if (*beta <= 0) throw CliError(kUsage, "--beta must be positive");
  const circuit::CandidateNetwork net(topology, cls.value_or(circuit::NetworkClass::R), *beta);
  emit(o, canonical(to_json(simulate(net, o.unavailable))), out);
  return kOk;
}

int cmd_check(const CommandOptions& o, std::ostream& out) {
  if (o.network.empty()) throw CliError(kUsage, "--network is required");
  const NetworkFile g = parse_network_file(read_json_file(o.network), o.max_denominator);
  const MeasurementFile f = load_measurements(o);
  if (g.topology.node_count() != f.ms.n) throw CliError(kMismatch, "network and measurements disagree on n");

  std::optional<std::string> first_failure;
  auto verdict = [&](bool ok, const std::string& what) {
    out << (ok ? "ok   " : "FAIL ") << what << "\n";
    if (!ok && !first_failure) first_failure = what;
  };

  circuit::NetworkClass cls = g.cls.value_or(f.cls.value_or(circuit::NetworkClass::R));
  if (!f.ms.items.empty()) {
    const auto inferred = circuit::infer_class(f.ms);
    if (g.cls) verdict(*g.cls == inferred, "class " + std::string(circuit::class_name(*g.cls)));
    cls = inferred;
  }
  const Rational beta = g.beta.value_or(f.beta_known.value_or(Rational(1)));
  const circuit::CandidateNetwork net(g.topology, cls, beta);

  if (!graphcore::is_connected(g.topology)) {
    verdict(false, "connected");
  } else {
    verdict(true, "connected");
    std::size_t number = 0;
    for (const auto& m : f.ms.items) {
      const ComplexRational z = circuit::thevenin(net, m.a, m.b);
      verdict(z == m.z, "measurement #" + std::to_string(++number) + " z(" + std::to_string(m.a) + "," +
                            std::to_string(m.b) + ") = " + to_string(m.z) + ", network gives " + to_string(z));
    }
    const auto ix = constraints::index_sets(f.ms.n, f.ms.available);
    const auto minors = graphcore::MinorTable::compute(g.topology);
    for (const auto& t : constraints::triangle_set(ix, f.ms)) {
      verdict(constraints::eval_triangle(t, minors), "triangle " + t.describe());
    }
    for (const auto& q : ix.quads) {
      out << "info sign-true composite " << constraints::sign_true_composite(g.topology, q).label() << "\n";
    }
  }
  if (first_failure) throw CliError(kMismatch, "check failed: " + *first_failure);
  return kOk;
}

int cmd_groebner(const CommandOptions& o, std::ostream& out) {
  if (o.input.empty()) throw CliError(kUsage, "--input is required");
  const Json j = read_json_file(o.input);
  polysys::OrderKind order = polysys::OrderKind::grevlex;
  polysys::GroebnerLimits limits;
  limits.max_reductions = kDefaultMaxReductions;
  std::vector<polysys::Polynomial> system;
  polysys::RingPtr ring;

  auto apply_flags = [&] {
    try {
      if (o.order) order = polysys::parse_order(*o.order);
    } catch (const std::invalid_argument& e) {
      throw CliError(kUsage, e.what());
    }
    if (o.gb_max_basis) limits.max_basis = *o.gb_max_basis;
    if (o.gb_max_degree) limits.max_degree = *o.gb_max_degree;
    if (o.gb_max_reductions) limits.max_reductions = *o.gb_max_reductions;
  };

  if (j.is_object() && j.contains("polynomials")) {
    try {
      if (j.contains("order")) order = polysys::parse_order(j.at("order").get<std::string>());
      apply_flags();
      const auto names = j.at("variables").get<std::vector<std::string>>();
      if (names.empty()) throw CliError(kParseError, "variables: list is empty");
      ring = polysys::make_ring(names, polysys::MonomialOrder::natural(order, static_cast<int>(names.size())));
      for (const auto& p : j.at("polynomials")) system.push_back(polysys::parse_polynomial(ring, p.get<std::string>()));
    } catch (const Json::exception& e) {
      throw CliError(kParseError, std::string("system file: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw CliError(kParseError, std::string("system file: ") + e.what());
    }
  } else {
    const MeasurementFile f = parse_measurement_file(j, o.max_denominator);
    const solver::SolverConfig c = make_config(f, o);
    order = c.groebner.order;
    limits = c.groebner.limits;
    ring = polysys::edge_ring(f.ms.n, order);
    system = polysys::extend(polysys::build_system(f.ms, ring), ring);
  }
  if (system.empty()) throw CliError(kSolverError, "groebner: empty system");

  const polysys::GroebnerBasis g = polysys::buchberger(system, limits);
  const polysys::StandardMonomials sm = polysys::standard_monomials(g, kStandardMonomialCap);

  Json basis = Json::array();
  for (const auto& p : g.generators) basis.push_back(p.to_string());
  const Json count = sm.finite ? Json(sm.monomials.size()) : Json("infinite");

  std::ostringstream text;
  text << "order: " << polysys::order_name(order) << "\n";
  text << "basis:\n" << g.dump();
  text << "inconsistent: " << (g.is_inconsistent() ? "true" : "false") << "\n";
  text << "standard_monomials: " << (sm.finite ? std::to_string(sm.monomials.size()) : "infinite") << "\n";
  if (o.output.empty()) {
    out << text.str();
  } else {
    Json r = {{"format_version", kFormatVersion},
              {"order", std::string(polysys::order_name(order))},
              {"variables", ring->names},
              {"basis", basis},
              {"inconsistent", g.is_inconsistent()},
              {"standard_monomials", count}};
    write_text_file(o.output, canonical(r));
  }
  return kOk;
}

int cmd_oracle(const CommandOptions& o, std::ostream& out) {
  const MeasurementFile f = load_measurements(o);
  const solver::SolverConfig solver_config = make_config(f, o);
  solver::SolverConfig oracle_config = solver_config;
  oracle_config.planar_filter = f.options.planar_filter.value_or(false);

  const solver::ReconstructionReport r = solver::reconstruct(f.ms, solver_config);
  const oracle::BruteForceResult b = oracle::brute_force(f.ms, oracle_config);
  const oracle::DiffReport d = oracle::cross_check(r, b);
  out << "solver candidates: " << r.feasible_candidates.size() << "\n";
  out << "oracle candidates: " << b.candidates.size() << "\n";
  out << "composites: " << r.c_hat.size() << "\n";
  if (d.empty()) {
    out << "diff: empty\n";
    return kOk;
  }
  out << "diff: " << d.size() << " mismatching scope(s)\n" << d.describe();
  throw CliError(kMismatch, "oracle and solver disagree");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact reconstruction of R/RL/RC networks from Thevenin measurements", "netrecon"};
  app.require_subcommand(1);
  CommandOptions o;

  auto common = [&](CLI::App* s) {
    s->add_option("--input", o.input, "Measurement file (JSON)");
    s->add_option("--output", o.output, "Output file; stdout when omitted");
    s->add_option("--max-denominator", o.max_denominator, "Denominator cap for decimal inputs")
        ->check(CLI::PositiveNumber);
    s->add_option("--jobs", o.jobs, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
  };
  auto search = [&](CLI::App* s) {
    s->add_flag("--planar-filter", o.planar_filter, "Keep circular planar candidates only");
    s->add_option("--edge-mask", o.edge_mask, "0/1 string in w_l order, or maximal-planar");
    s->add_option("--cap", o.cap, "Largest number of free edges to enumerate");
    s->add_option("--max-composites", o.max_composites, "Largest feasible composite set")->check(CLI::PositiveNumber);
  };
  auto groebner = [&](CLI::App* s) {
    s->add_option("--order", o.order, "grevlex or lex");
    s->add_option("--gb-max-basis", o.gb_max_basis, "Basis size limit");
    s->add_option("--gb-max-degree", o.gb_max_degree, "Degree limit");
    s->add_option("--gb-max-reductions", o.gb_max_reductions, "Reduction step limit, 0 for none");
  };

  auto* rec = app.add_subcommand("reconstruct", "Run the reconstruction pipeline");
  common(rec);
  search(rec);
  groebner(rec);
  rec->add_option("--dot", o.dot, "Also write solution graphs as DOT");

  auto* sim = app.add_subcommand("simulate", "Exact measurements of a network");
  common(sim);
  sim->add_option("--graph", o.graph, "Network file with n and edges");
  sim->add_option("--n", o.n, "Random circular planar network on n nodes");
  sim->add_option("--seed", o.seed, "Seed for --n");
  sim->add_option("--class", o.cls, "R, RL or RC");
  sim->add_option("--beta", o.beta, "Edge impedance scale");
  sim->add_option("--unavailable", o.unavailable, "Comma separated unavailable nodes")->delimiter(',');

  auto* chk = app.add_subcommand("check", "Verify a network against measurements");
  common(chk);
  chk->add_option("--network", o.network, "Network file")->required();

  auto* gb = app.add_subcommand("groebner", "Groebner basis of a system or a measurement file");
  common(gb);
  groebner(gb);

  auto* orc = app.add_subcommand("oracle", "Cross-check the solver against brute force");
  common(orc);
  search(orc);
  groebner(orc);
  orc->add_option("--seed", o.seed, "Unused; accepted for symmetry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (rec->parsed()) return cmd_reconstruct(o, out);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (chk->parsed()) return cmd_check(o, out);
    if (gb->parsed()) return cmd_groebner(o, out);
    if (orc->parsed()) return cmd_oracle(o, out);
  } catch (const CliError& e) {
    err << "netrecon: " << e.what() << "\n";
    return e.code();
  } catch (const polysys::GroebnerLimitExceeded& e) {
    err << "netrecon: groebner limit '" << e.limit() << "' exceeded: " << e.what() << "\n";
    return kGroebnerLimit;
  } catch (const std::exception& e) {
    err << "netrecon: " << e.what() << "\n";
    return kSolverError;
  }
  return kUsage;
}

}  // namespace netrecon::cli
