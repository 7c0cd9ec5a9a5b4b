#include "netrecon/circuit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace netrecon::circuit {

bool MeasurementSet::is_available(int node) const {
  return std::find(available.begin(), available.end(), node) != available.end();
}

std::vector<int> MeasurementSet::unavailable() const {
  std::vector<int> out;
  for (int v = 1; v <= n; ++v) {
    if (!is_available(v)) out.push_back(v);
  }
  return out;
}

void MeasurementSet::validate() const {
  if (n < 3 || n > graphcore::kMaxNodes) throw std::invalid_argument("node count must be in [3, 11]");
  std::set<int> nodes;
  for (int v : available) {
    if (v < 1 || v > n) throw std::invalid_argument("available node " + std::to_string(v) + " outside 1.." + std::to_string(n));
    if (!nodes.insert(v).second) throw std::invalid_argument("available node " + std::to_string(v) + " listed twice");
  }
  std::set<std::pair<int, int>> pairs;
  for (const auto& m : items) {
    const std::string label = "(" + std::to_string(m.a) + "," + std::to_string(m.b) + ")";
    if (m.a == m.b) throw std::invalid_argument("measurement " + label + " has identical endpoints");
    if (!is_available(m.a) || !is_available(m.b)) {
      throw std::invalid_argument("measurement " + label + " has an endpoint outside the available set");
    }
    if (!pairs.insert(std::minmax(m.a, m.b)).second) throw std::invalid_argument("duplicate measurement " + label);
  }
}

}  // namespace netrecon::circuit
