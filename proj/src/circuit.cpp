#include "netrecon/circuit.hpp"

#include "netrecon/minor_kernels.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace netrecon {

ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  const Rational d = b.norm2();
  if (d == 0) throw std::domain_error("complex division by zero");
  const ComplexRational num = a * b.conj();
  return {num.re / d, num.im / d};
}

std::string to_string(const ComplexRational& z) {
  if (z.im == 0) return to_string(z.re);
  std::string s = to_string(z.re);
  if (z.im < 0) {
    s += " - j" + to_string(Rational(-z.im));
  } else {
    s += " + j" + to_string(z.im);
  }
  return s;
}

}  // namespace netrecon

namespace netrecon::circuit {
namespace {

template <typename T>
using Dense = std::vector<std::vector<T>>;

// Gauss-Jordan elimination with nonzero pivoting; nullopt when singular.
template <typename T>
std::optional<std::vector<T>> gauss_solve(Dense<T> a, std::vector<T> b) {
  const std::size_t s = b.size();
  for (std::size_t col = 0; col < s; ++col) {
    std::size_t piv = col;
    while (piv < s && a[piv][col] == T(0)) ++piv;
    if (piv == s) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const T inv = T(1) / a[col][col];
    for (std::size_t c = col; c < s; ++c) a[col][c] = a[col][c] * inv;
    b[col] = b[col] * inv;
    for (std::size_t r = 0; r < s; ++r) {
      if (r == col || a[r][col] == T(0)) continue;
      const T f = a[r][col];
      for (std::size_t c = col; c < s; ++c) a[r][c] = a[r][c] - f * a[col][c];
      b[r] = b[r] - f * b[col];
    }
  }
  return b;
}

void check_pair(int n, int j, int k) {
  if (j < 1 || j > n || k < 1 || k > n) throw std::out_of_range("node out of range");
  if (j == k) throw std::invalid_argument("thevenin impedance needs two distinct nodes");
}

Rational resistance_of(const Rational& offdiag, const char* label) {
  if (offdiag == 0) {
    throw std::domain_error(std::string("kron_f1_formula: off-diagonal ") + label + " is zero");
  }
  return Rational(-1) / offdiag;
}

std::vector<int> checked_keep(int size, std::span<const int> keep) {
  if (keep.empty()) throw std::invalid_argument("kron_reduce: keep set is empty");
  std::vector<bool> seen(size, false);
  for (int v : keep) {
    if (v < 1 || v > size) throw std::out_of_range("kron_reduce: node " + std::to_string(v) + " out of range");
    if (seen[v - 1]) throw std::invalid_argument("kron_reduce: duplicate node " + std::to_string(v));
    seen[v - 1] = true;
  }
  std::vector<int> eliminated;
  for (int v = 1; v <= size; ++v) {
    if (!seen[v - 1]) eliminated.push_back(v);
  }
  return eliminated;
}

}  // namespace

std::string_view class_name(NetworkClass c) {
  switch (c) {
    case NetworkClass::R: return "R";
    case NetworkClass::RL: return "RL";
    case NetworkClass::RC: return "RC";
  }
  return "?";
}

NetworkClass parse_class(std::string_view name) {
  if (name == "R") return NetworkClass::R;
  if (name == "RL") return NetworkClass::RL;
  if (name == "RC") return NetworkClass::RC;
  throw std::invalid_argument("unknown network class '" + std::string(name) + "' (expected R, RL or RC)");
}

ComplexRational unit_impedance(NetworkClass c) {
  switch (c) {
    case NetworkClass::R: return {1, 0};
    case NetworkClass::RL: return {1, 1};
    case NetworkClass::RC: return {1, -1};
  }
  return {1, 0};
}

CandidateNetwork::CandidateNetwork(Topology topology, NetworkClass cls, Rational beta)
    : topology_(topology), class_(cls), beta_(std::move(beta)) {
  if (beta_ <= 0) throw std::invalid_argument("beta must be positive, got " + to_string(beta_));
}

bool operator<(const CandidateNetwork& a, const CandidateNetwork& b) {
  if (a.topology_ != b.topology_) return a.topology_ < b.topology_;
  if (a.class_ != b.class_) return a.class_ < b.class_;
  return a.beta_ < b.beta_;
}

ComplexRational thevenin(const CandidateNetwork& c, int j, int k) {
  const Topology& t = c.topology();
  check_pair(t.node_count(), j, k);
  const std::int64_t trees = kernels::principal_minor_scalar(t.node_count(), t.bits(), k);
  if (trees == 0) throw std::domain_error("thevenin: topology is disconnected");
  const std::int64_t pair = kernels::pair_minor_scalar(t.node_count(), t.bits(), j, k);
  Rational ratio(static_cast<long>(pair), static_cast<long>(trees));
  ratio.canonicalize();
  return ratio * c.edge_impedance();
}

ComplexRational thevenin_direct(const CandidateNetwork& c, int j, int k) {
  const Topology& t = c.topology();
  const int n = t.node_count();
  check_pair(n, j, k);
  const ComplexRational gamma = ComplexRational(1) / c.edge_impedance();

  std::vector<int> interior;
  std::vector<int> slot(n + 1, -1);
  for (int v = 1; v <= n; ++v) {
    if (v != j && v != k) {
      slot[v] = static_cast<int>(interior.size());
      interior.push_back(v);
    }
  }
  const std::size_t s = interior.size();
  Dense<ComplexRational> a(s, std::vector<ComplexRational>(s, ComplexRational(0)));
  std::vector<ComplexRational> b(s, ComplexRational(0));
  for (std::size_t r = 0; r < s; ++r) {
    const int p = interior[r];
    for (int q = 1; q <= n; ++q) {
      if (q == p || !t.has_edge(p, q)) continue;
      // KCL at p: sum over neighbours gamma (v_p - v_q) = 0
      a[r][r] = a[r][r] + gamma;
      if (q == j) {
        b[r] = b[r] + gamma;
      } else if (q != k) {
        a[r][slot[q]] = a[r][slot[q]] - gamma;
      }
    }
  }
  auto v = gauss_solve(std::move(a), std::move(b));
  if (!v) throw std::domain_error("thevenin_direct: grounded system is singular (disconnected topology)");

  ComplexRational current(0);
  for (int q = 1; q <= n; ++q) {
    if (q == j || !t.has_edge(j, q)) continue;
    const ComplexRational vq = (q == k) ? ComplexRational(0) : (*v)[slot[q]];
    current = current + gamma * (ComplexRational(1) - vq);
  }
  if (current.is_zero()) throw std::domain_error("thevenin_direct: no current flows (disconnected topology)");
  return ComplexRational(1) / current;
}

Rational boundary_potential(const ExactMatrix& l, int a, int b, int s, int g) {
  const int n = l.rows();
  if (l.cols() != n) throw std::invalid_argument("boundary_potential: matrix not square");
  for (int v : {a, b, s, g}) {
    if (v < 1 || v > n) throw std::out_of_range("boundary_potential: node out of range");
  }
  if (s == g) throw std::invalid_argument("boundary_potential: source equals ground");
  if (a == b) return Rational(0);
  std::vector<int> slot(n + 1, -1);
  int size = 0;
  for (int v = 1; v <= n; ++v) {
    if (v != g) slot[v] = size++;
  }
  Dense<Rational> m(size, std::vector<Rational>(size));
  std::vector<Rational> rhs(size, Rational(0));
  for (int r = 1; r <= n; ++r) {
    if (r == g) continue;
    for (int c = 1; c <= n; ++c) {
      if (c != g) m[slot[r]][slot[c]] = l.at(r - 1, c - 1);
    }
  }
  rhs[slot[s]] = 1;
  auto v = gauss_solve(std::move(m), std::move(rhs));
  if (!v) throw std::domain_error("boundary_potential: grounded Laplacian is singular (disconnected)");
  auto potential = [&](int node) { return node == g ? Rational(0) : (*v)[slot[node]]; };
  return potential(a) - potential(b);
}

Rational boundary_potential(const Topology& t, int a, int b, int s, int g) {
  if (!graphcore::is_connected(t)) throw std::domain_error("boundary_potential: topology is disconnected");
  return boundary_potential(graphcore::laplacian(t), a, b, s, g);
}

ExactMatrix kron_reduce(const ExactMatrix& l, std::span<const int> keep) {
  const int n = l.rows();
  if (l.cols() != n) throw std::invalid_argument("kron_reduce: matrix not square");
  const std::vector<int> elim = checked_keep(n, keep);
  const int kk = static_cast<int>(keep.size());
  const std::size_t ie = elim.size();

  ExactMatrix out(kk, kk);
  for (int r = 0; r < kk; ++r) {
    for (int c = 0; c < kk; ++c) out.at(r, c) = l.at(keep[r] - 1, keep[c] - 1);
  }
  if (ie == 0) return out;

  Dense<Rational> lii(ie, std::vector<Rational>(ie));
  for (std::size_t r = 0; r < ie; ++r) {
    for (std::size_t c = 0; c < ie; ++c) lii[r][c] = l.at(elim[r] - 1, elim[c] - 1);
  }
  // X = L_II^{-1} L_IK, column by column
  for (int c = 0; c < kk; ++c) {
    std::vector<Rational> col(ie);
    for (std::size_t r = 0; r < ie; ++r) col[r] = l.at(elim[r] - 1, keep[c] - 1);
    auto x = gauss_solve(lii, std::move(col));
    if (!x) throw std::domain_error("kron_reduce: eliminated block is singular");
    for (int r = 0; r < kk; ++r) {
      Rational acc = 0;
      for (std::size_t i = 0; i < ie; ++i) acc += l.at(keep[r] - 1, elim[i] - 1) * (*x)[i];
      out.at(r, c) -= acc;
    }
  }
  return out;
}

ExactMatrix kron_reduce(const Topology& t, std::span<const int> keep) {
  return kron_reduce(graphcore::laplacian(t), keep);
}

Rational kron_f1_formula(const ExactMatrix& lam) {
  if (lam.rows() != 4 || lam.cols() != 4) throw std::invalid_argument("kron_f1_formula: expects a 4x4 matrix");
  const Rational a = resistance_of(lam.at(0, 1), "(1,2)");
  const Rational b = resistance_of(lam.at(0, 2), "(1,3)");
  const Rational c = resistance_of(lam.at(0, 3), "(1,4)");
  const Rational d = resistance_of(lam.at(1, 2), "(2,3)");
  const Rational e = resistance_of(lam.at(1, 3), "(2,4)");
  const Rational f = resistance_of(lam.at(2, 3), "(3,4)");
  const Rational sigma = a * b * d + a * b * e + a * c * d + a * b * f + a * c * e + b * c * d + a * c * f +
                         b * c * e + a * d * f + b * c * f + b * d * e + a * e * f + c * d * e + b * e * f +
                         c * d * f + d * e * f;
  return c * d * (b * e - a * f) / sigma;
}

bool in_quadrant(const Rational& x, const Rational& y, int r) {
  switch (r) {
    case 1: return x >= 0 && y >= 0;
    case 2: return x <= 0 && y >= 0;
    case 3: return x <= 0 && y <= 0;
    case 4: return x >= 0 && y <= 0;
  }
  throw std::invalid_argument("quadrant index must be 1..4");
}

bool in_quadrant(const ComplexRational& z, int r) { return in_quadrant(z.re, z.im, r); }

std::vector<int> quadrants_of(const ComplexRational& z) {
  std::vector<int> out;
  for (int r = 1; r <= 4; ++r) {
    if (in_quadrant(z, r)) out.push_back(r);
  }
  return out;
}

bool cone_leq(const ComplexRational& p, const ComplexRational& q, int r) { return in_quadrant(q - p, r); }

BranchVerdict triangle_branch(const ComplexRational& z_jk, const ComplexRational& z_kl, const ComplexRational& z_jl,
                              const ComplexRational& t, int r) {
  const ComplexRational sum = z_jk + z_kl;
  BranchVerdict v{quadrants_of(t), true};
  for (int q : v.quadrants) {
    bool ok = false;
    switch (q) {
      case 1: ok = cone_leq(sum, z_jl, r); break;
      case 3: ok = cone_leq(z_jl, sum, r); break;
      case 2: ok = cone_leq({z_jl.re, sum.im}, {sum.re, z_jl.im}, r); break;
      case 4: ok = cone_leq({sum.re, z_jl.im}, {z_jl.re, sum.im}, r); break;
    }
    v.holds = v.holds && ok;
  }
  return v;
}

BranchVerdict kalmanson_f1_branch(const QuadImpedances& z, const ComplexRational& f1, int r) {
  const ComplexRational diag = z.jl + z.km;
  const ComplexRational side = z.jk + z.lm;
  BranchVerdict v{quadrants_of(f1), true};
  for (int q : v.quadrants) {
    bool ok = false;
    switch (q) {
      case 1: ok = cone_leq(diag, side, r); break;
      case 3: ok = cone_leq(side, diag, r); break;
      case 4: ok = cone_leq({diag.re, side.im}, {side.re, diag.im}, r); break;
      case 2: ok = cone_leq({side.re, diag.im}, {diag.re, side.im}, r); break;
    }
    v.holds = v.holds && ok;
  }
  return v;
}

BranchVerdict kalmanson_f2_branch(const QuadImpedances& z, const ComplexRational& f2, int r) {
  const ComplexRational diag = z.jl + z.km;
  const ComplexRational side = z.kl + z.jm;
  BranchVerdict v{quadrants_of(f2), true};
  for (int q : v.quadrants) {
    bool ok = false;
    switch (q) {
      case 1: ok = cone_leq(diag, side, r); break;
      case 3: ok = cone_leq(side, diag, r); break;
      case 4: ok = cone_leq({diag.re, side.im}, {side.re, diag.im}, r); break;
      case 2: ok = cone_leq({side.re, diag.im}, {diag.re, side.im}, r); break;
    }
    v.holds = v.holds && ok;
  }
  return v;
}

NetworkClass infer_class(const MeasurementSet& ms) {
  if (ms.items.empty()) throw std::invalid_argument("infer_class: no measurements");
  std::optional<NetworkClass> seen;
  std::size_t first = 0;
  for (std::size_t i = 0; i < ms.items.size(); ++i) {
    const auto& m = ms.items[i];
    const std::string where = "measurement #" + std::to_string(i + 1) + " (" + std::to_string(m.a) + "," +
                              std::to_string(m.b) + ") = " + to_string(m.z);
    NetworkClass here;
    if (m.z.im == 0) {
      here = NetworkClass::R;
    } else if (m.z.im == m.z.re) {
      here = NetworkClass::RL;
    } else if (m.z.im == -m.z.re) {
      here = NetworkClass::RC;
    } else {
      throw std::invalid_argument("infer_class: " + where + " matches no class (need im = 0, im = re or im = -re)");
    }
    if (!seen) {
      seen = here;
      first = i;
    } else if (*seen != here) {
      throw std::invalid_argument("infer_class: " + where + " is class " + std::string(class_name(here)) +
                                  " but measurement #" + std::to_string(first + 1) + " is class " +
                                  std::string(class_name(*seen)));
    }
  }
  return *seen;
}

}  // namespace netrecon::circuit
