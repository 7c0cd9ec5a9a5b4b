#pragma once

#include "netrecon/graphcore.hpp"
#include "netrecon/rational.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace netrecon {

struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(int r) : re(r), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  ComplexRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) { return a.re == b.re && a.im == b.im; }
  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRational operator*(const Rational& s, const ComplexRational& a) { return {s * a.re, s * a.im}; }
  // Throws std::domain_error on division by zero.
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b);
};

std::string to_string(const ComplexRational& z);

}  // namespace netrecon

namespace netrecon::circuit {

using graphcore::ExactMatrix;
using graphcore::Topology;

enum class NetworkClass { R, RL, RC };

std::string_view class_name(NetworkClass c);
NetworkClass parse_class(std::string_view name);
// 1, 1+j or 1-j: the per-unit edge impedance.
ComplexRational unit_impedance(NetworkClass c);

class CandidateNetwork {
 public:
  CandidateNetwork(Topology topology, NetworkClass cls, Rational beta);

  const Topology& topology() const { return topology_; }
  NetworkClass network_class() const { return class_; }
  const Rational& beta() const { return beta_; }
  // z(sigma) = beta * unit impedance
  ComplexRational edge_impedance() const { return beta_ * unit_impedance(class_); }

  friend bool operator==(const CandidateNetwork& a, const CandidateNetwork& b) {
    return a.topology_ == b.topology_ && a.class_ == b.class_ && a.beta_ == b.beta_;
  }
  friend bool operator<(const CandidateNetwork& a, const CandidateNetwork& b);

 private:
  Topology topology_;
  NetworkClass class_;
  Rational beta_;
};

// z * det L[j,k] / det L[k,k]. Throws std::domain_error when disconnected.
ComplexRational thevenin(const CandidateNetwork& c, int j, int k);

// Grounded KCL solve with v_j = 1, v_k = 0; returns 1 / i_j.
ComplexRational thevenin_direct(const CandidateNetwork& c, int j, int k);

// v_a - v_b for unit current injected at s with g grounded.
Rational boundary_potential(const Topology& t, int a, int b, int s, int g);
// Same on an arbitrary weighted Laplacian; nodes are 1-based matrix positions.
Rational boundary_potential(const ExactMatrix& laplacian, int a, int b, int s, int g);

// Schur complement onto keep (result rows follow keep's order).
ExactMatrix kron_reduce(const Topology& t, std::span<const int> keep);
ExactMatrix kron_reduce(const ExactMatrix& laplacian, std::span<const int> keep);

// f1 = cd(be - af) / Sigma for a complete 4-node weighted Laplacian with
// roles (j,k,l,m) at positions (1,2,3,4); a..f are the resistances of
// 12, 13, 14, 23, 24, 34.
Rational kron_f1_formula(const ExactMatrix& lambda4);

// Closed quadrants Q1..Q4.
bool in_quadrant(const Rational& x, const Rational& y, int r);
bool in_quadrant(const ComplexRational& z, int r);
// Quadrants containing z; more than one on an axis.
std::vector<int> quadrants_of(const ComplexRational& z);
// p <=^r q iff q - p lies in Q_r.
bool cone_leq(const ComplexRational& p, const ComplexRational& q, int r);

struct Measurement {
  int a;
  int b;
  ComplexRational z;
};

struct MeasurementSet {
  int n = 0;
  std::vector<int> available;
  std::vector<Measurement> items;

  std::vector<int> unavailable() const;
  bool is_available(int node) const;
  // Throws std::invalid_argument on endpoints outside 'available', a == b or duplicate pairs.
  void validate() const;
};

// Throws std::invalid_argument naming the offending measurement.
NetworkClass infer_class(const MeasurementSet& ms);

// Quadrant-dispatched generalized triangle branch for ordered triple (j,k,l)
// with t = v_j - v_k (unit current into k, l grounded). Returns false if the
// branch for any quadrant containing t fails under cone_leq with cone r.
struct BranchVerdict {
  std::vector<int> quadrants;
  bool holds;
};
BranchVerdict triangle_branch(const ComplexRational& z_jk, const ComplexRational& z_kl, const ComplexRational& z_jl,
                              const ComplexRational& t, int r);

// Kalmanson branches on quad (j,k,l,m). f1 = e_kl^T L^+ e_jm, f2 = e_jk^T L^+ e_ml.
struct QuadImpedances {
  ComplexRational jk, kl, lm, jm, jl, km;
};
BranchVerdict kalmanson_f1_branch(const QuadImpedances& z, const ComplexRational& f1, int r);
BranchVerdict kalmanson_f2_branch(const QuadImpedances& z, const ComplexRational& f2, int r);

}  // namespace netrecon::circuit
