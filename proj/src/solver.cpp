#include "netrecon/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

namespace netrecon::solver {
namespace {

constexpr std::uint64_t kChunk = 4096;

int worker_count(int jobs, std::uint64_t chunks) {
  unsigned j = jobs > 0 ? static_cast<unsigned>(jobs) : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<int>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(j, chunks)));
}

// Runs body(chunk_index, first, last) over the range in chunks; results are
// produced per chunk so callers merge them in order.
template <typename Body>
void for_chunks(std::uint64_t size, int jobs, Body body) {
  const std::uint64_t chunks = (size + kChunk - 1) / kChunk;
  const int workers = worker_count(jobs, chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto run = [&] {
    while (!failed) {
      const std::uint64_t c = next++;
      if (c >= chunks) return;
      try {
        body(c, c * kChunk, std::min(size, (c + 1) * kChunk));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::uint64_t> chunk_patterns(const graphcore::TopologyRange& range, std::uint64_t first,
                                          std::uint64_t last) {
  std::vector<std::uint64_t> bits;
  bits.reserve(last - first);
  for (std::uint64_t i = first; i < last; ++i) bits.push_back(range.pattern(i));
  return bits;
}

NetworkClass resolve_class(const MeasurementSet& ms, const SolverConfig& config) {
  if (ms.items.empty()) return config.cls.value_or(NetworkClass::R);
  const NetworkClass inferred = circuit::infer_class(ms);
  if (config.cls && *config.cls != inferred) {
    throw std::invalid_argument("declared class " + std::string(circuit::class_name(*config.cls)) +
                                " disagrees with measurements (" + std::string(circuit::class_name(inferred)) + ")");
  }
  return inferred;
}

}  // namespace

BetaSolution beta_solutions(const MinorTable& minors, const MeasurementSet& ms) {
  BetaSolution out{BetaKind::any, Rational(0)};
  const Rational trees(static_cast<long>(minors.tree_count()));
  for (const auto& m : ms.items) {
    const Rational lhs = m.z.re * trees;
    const Rational det(static_cast<long>(minors.pair_minor(m.a, m.b)));
    if (det == 0) {
      if (lhs != 0) return {BetaKind::inconsistent, Rational(0)};
      continue;
    }
    const Rational beta = lhs / det;
    if (out.kind == BetaKind::any) {
      out = {BetaKind::unique, beta};
    } else if (out.value != beta) {
      return {BetaKind::inconsistent, Rational(0)};
    }
  }
  return out;
}

std::optional<Rational> solve_beta(const MinorTable& minors, const MeasurementSet& ms,
                                   const std::optional<Rational>& beta_known) {
  if (minors.tree_count() <= 0) return std::nullopt;
  const BetaSolution s = beta_solutions(minors, ms);
  switch (s.kind) {
    case BetaKind::inconsistent:
      return std::nullopt;
    case BetaKind::unique:
      if (s.value <= 0) return std::nullopt;
      if (beta_known && *beta_known != s.value) return std::nullopt;
      return s.value;
    case BetaKind::any:
      if (beta_known && *beta_known > 0) return *beta_known;
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Rational> solve_beta(const Topology& t, const MeasurementSet& ms,
                                   const std::optional<Rational>& beta_known) {
  return solve_beta(MinorTable::compute(t), ms, beta_known);
}

std::vector<Candidate> candidate_pool(const ProblemSpec& spec) {
  const MeasurementSet& ms = spec.measurements;
  const int n = ms.n;
  const graphcore::TopologyRange range = graphcore::enumerate_topologies(n, spec.config.edge_mask, spec.config.cap);
  const std::uint64_t chunks = (range.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<Candidate>> parts(chunks);

  for_chunks(range.size(), spec.config.jobs, [&](std::uint64_t c, std::uint64_t first, std::uint64_t last) {
    const std::vector<std::uint64_t> bits = chunk_patterns(range, first, last);
    const std::vector<MinorTable> tables = graphcore::compute_minor_tables(n, bits);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      const MinorTable& m = tables[i];
      if (m.tree_count() <= 0) continue;
      const auto beta = solve_beta(m, ms, spec.config.beta_known);
      if (!beta) continue;
      const bool triangles_ok = std::all_of(spec.triangle.begin(), spec.triangle.end(),
                                            [&](const TriangleConstraint& t) { return constraints::eval_triangle(t, m); });
      if (!triangles_ok) continue;
      Topology t(n, bits[i]);
      if (spec.config.planar_filter && !is_circular_planar(t)) continue;
      parts[c].push_back({CandidateNetwork(t, spec.cls, *beta), m});
    }
  });

  std::vector<Candidate> out;
  for (auto& p : parts) {
    for (auto& cand : p) out.push_back(std::move(cand));
  }
  return out;
}

bool feasible(const std::vector<Candidate>& pool, const CompositeInequality& comp) {
  return std::any_of(pool.begin(), pool.end(),
                     [&](const Candidate& c) { return constraints::eval_composite(comp, c.minors); });
}

std::vector<CandidateNetwork> enumerate_P(const ProblemSpec& spec) {
  std::vector<CandidateNetwork> out;
  for (const auto& c : candidate_pool(spec)) {
    if (!spec.composite || constraints::eval_composite(*spec.composite, c.minors)) out.push_back(c.network);
  }
  return out;
}

bool feasible(const ProblemSpec& spec) {
  if (!spec.composite) throw std::invalid_argument("feasible: problem has no composite inequality");
  return feasible(candidate_pool(spec), *spec.composite);
}

std::vector<std::vector<CompositeInequality>> stage1(const std::vector<std::vector<CompositeInequality>>& k,
                                                     const std::vector<Candidate>& pool) {
  std::vector<std::vector<CompositeInequality>> out;
  for (const auto& per_quad : k) {
    std::vector<CompositeInequality> kept;
    for (const auto& comp : per_quad) {
      if (feasible(pool, comp)) kept.push_back(comp);
    }
    out.push_back(std::move(kept));
  }
  return out;
}

std::vector<CompositeInequality> stage2(const std::vector<CompositeInequality>& c_aux,
                                        const std::vector<Candidate>& pool) {
  std::vector<CompositeInequality> out;
  for (const auto& comp : c_aux) {
    if (feasible(pool, comp)) out.push_back(comp);
  }
  return out;
}

std::optional<std::uint64_t> product_size(const std::vector<std::vector<CompositeInequality>>& sets) {
  std::uint64_t total = 1;
  for (const auto& s : sets) {
    if (s.empty()) return 0;
  }
  for (const auto& s : sets) {
    if (total > std::numeric_limits<std::uint64_t>::max() / s.size()) return std::nullopt;
    total *= s.size();
  }
  return total;
}

std::vector<CompositeInequality> stage2(const std::vector<std::vector<CompositeInequality>>& k_hat,
                                        const std::vector<Candidate>& pool, std::size_t max_composites) {
  const auto c_aux = product_size(k_hat);
  if (c_aux && *c_aux == 0) return {};
  const std::size_t q = k_hat.size();
  auto too_many = [&] {
    return std::length_error("stage 2: more than " + std::to_string(max_composites) +
                             " feasible composites; raise the composite limit or narrow the search");
  };
  // Index tuples compare lexicographically, which is the combine() order.
  std::set<std::vector<std::uint8_t>> hits;
  std::vector<std::vector<std::uint8_t>> sat(q);
  for (const auto& cand : pool) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < q; ++i) {
      sat[i].clear();
      for (std::size_t j = 0; j < k_hat[i].size(); ++j) {
        if (constraints::eval_composite(k_hat[i][j], cand.minors)) sat[i].push_back(static_cast<std::uint8_t>(j));
      }
      count = sat[i].empty() ? 0 : std::min<std::uint64_t>(count * sat[i].size(), max_composites + std::uint64_t{1});
    }
    if (count == 0) continue;
    if (count > max_composites) throw too_many();
    std::vector<std::size_t> digit(q, 0);
    std::vector<std::uint8_t> tuple(q);
    for (std::uint64_t c = 0; c < count; ++c) {
      for (std::size_t i = 0; i < q; ++i) tuple[i] = sat[i][digit[i]];
      hits.insert(tuple);
      for (std::size_t i = q; i-- > 0;) {
        if (++digit[i] < sat[i].size()) break;
        digit[i] = 0;
      }
    }
    if (hits.size() > max_composites) throw too_many();
  }
  std::vector<CompositeInequality> out;
  out.reserve(hits.size());
  for (const auto& tuple : hits) {
    CompositeInequality comp;
    for (std::size_t i = 0; i < q; ++i) {
      const auto& atoms = k_hat[i][tuple[i]].atoms;
      comp.atoms.insert(comp.atoms.end(), atoms.begin(), atoms.end());
    }
    out.push_back(std::move(comp));
  }
  return out;
}

RawVariety raw_variety(const MeasurementSet& ms, const SolverConfig& config) {
  const int n = ms.n;
  const graphcore::TopologyRange range = graphcore::enumerate_topologies(n, config.edge_mask, config.cap);
  const std::uint64_t chunks = (range.size() + kChunk - 1) / kChunk;
  std::vector<RawVariety> parts(chunks);

  for_chunks(range.size(), config.jobs, [&](std::uint64_t c, std::uint64_t first, std::uint64_t last) {
    const std::vector<std::uint64_t> bits = chunk_patterns(range, first, last);
    const std::vector<MinorTable> tables = graphcore::compute_minor_tables(n, bits);
    RawVariety& r = parts[c];
    for (const auto& m : tables) {
      ++r.patterns;
      const bool connected = m.tree_count() > 0;
      const BetaSolution s = beta_solutions(m, ms);
      if (s.kind == BetaKind::any) {
        ++(connected ? r.vacuous_connected : r.vacuous_disconnected);
      } else if (s.kind == BetaKind::unique) {
        if (s.value > 0) {
          ++(connected ? r.positive_connected : r.positive_disconnected);
        } else {
          ++(connected ? r.nonpositive_connected : r.nonpositive_disconnected);
        }
      }
    }
  });

  RawVariety total;
  for (const auto& p : parts) {
    total.patterns += p.patterns;
    total.vacuous_connected += p.vacuous_connected;
    total.vacuous_disconnected += p.vacuous_disconnected;
    total.positive_connected += p.positive_connected;
    total.positive_disconnected += p.positive_disconnected;
    total.nonpositive_connected += p.nonpositive_connected;
    total.nonpositive_disconnected += p.nonpositive_disconnected;
  }
  return total;
}

ReconstructionReport reconstruct(const MeasurementSet& ms, const SolverConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ms.validate();
  ReconstructionReport report;
  report.config = config;
  report.cls = resolve_class(ms, config);
  report.index = constraints::index_sets(ms.n, ms.available);
  report.triangles = constraints::triangle_set(report.index, ms);

  ProblemSpec spec{ms, report.cls, report.triangles, std::nullopt, config};
  const std::vector<Candidate> pool = candidate_pool(spec);
  for (const auto& c : pool) report.feasible_candidates.push_back(c.network);

  std::vector<std::vector<CompositeInequality>> k;
  for (const auto& q : report.index.quads) k.push_back(constraints::composites(q));
  report.k_hat = stage1(k, pool);

  report.c_aux_size = product_size(report.k_hat);
  report.c_hat = stage2(report.k_hat, pool, config.max_composites);

  for (std::size_t i = 0; i < report.c_hat.size(); ++i) {
    SolutionSet s{i, {}};
    for (const auto& c : pool) {
      if (constraints::eval_composite(report.c_hat[i], c.minors)) s.networks.push_back(c.network);
    }
    report.solutions.push_back(std::move(s));
  }

  report.raw = raw_variety(ms, config);
  report.patterns_enumerated = report.raw.patterns;
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::uint64_t maximal_planar_mask(int n) {
  if (n < 3 || n > graphcore::kMaxNodes) throw std::invalid_argument("maximal_planar_mask: n out of range");
  std::uint64_t mask = 0;
  auto add = [&](int a, int b) { mask |= std::uint64_t{1} << (graphcore::edge_index(n, a, b)); };
  for (int j = 2; j <= n; ++j) add(1, j);
  for (int i = 2; i < n; ++i) add(i, i + 1);
  for (int j = 4; j <= n; ++j) add(2, j);
  return mask;
}

bool is_circular_planar(const Topology& t) {
  const auto edges = t.edges();
  for (std::size_t x = 0; x < edges.size(); ++x) {
    const auto [a, b] = edges[x];
    for (std::size_t y = x + 1; y < edges.size(); ++y) {
      const auto [c, d] = edges[y];
      const bool cross = (a < c && c < b && b < d) || (c < a && a < d && d < b);
      if (cross) return false;
    }
  }
  return true;
}

}  // namespace netrecon::solver
