#pragma once

#include "netrecon/circuit.hpp"
#include "netrecon/oracle.hpp"
#include "netrecon/polysys.hpp"
#include "netrecon/solver.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace netrecon::cli {

using Json = nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIoError = 2,
  kParseError = 3,
  kSolverError = 4,
  kMismatch = 5,
  kGroebnerLimit = 6,
};

class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

inline constexpr int kFormatVersion = 1;
inline constexpr long kDefaultMaxDenominator = 10000;
inline constexpr std::size_t kDefaultMaxReductions = 50000;

struct FileOptions {
  std::optional<bool> planar_filter;
  std::optional<std::string> edge_mask;
  std::optional<int> enumeration_cap;
  std::optional<polysys::OrderKind> order;
  std::optional<std::size_t> max_basis;
  std::optional<unsigned> max_degree;
  std::optional<std::size_t> max_reductions;
};

struct MeasurementFile {
  circuit::MeasurementSet ms;
  std::optional<circuit::NetworkClass> cls;
  std::optional<Rational> beta_known;
  FileOptions options;
};

struct NetworkFile {
  graphcore::Topology topology{3, 0};
  std::optional<circuit::NetworkClass> cls;
  std::optional<Rational> beta;
};

// Values given as "p/q", plain decimals (rationalized) or JSON numbers.
Rational json_rational(const Json& v, long max_denominator);

MeasurementFile parse_measurement_file(const Json& j, long max_denominator = kDefaultMaxDenominator);
Json to_json(const MeasurementFile& f);
NetworkFile parse_network_file(const Json& j, long max_denominator = kDefaultMaxDenominator);
Json to_json(const circuit::CandidateNetwork& c);

// "maximal-planar" or a 0/1 string in w_l order.
std::uint64_t parse_edge_mask(int n, const std::string& text);

Json report_json(const solver::ReconstructionReport& r, const MeasurementFile& input);
std::string report_dot(const solver::ReconstructionReport& r);

// Sorted keys, two-space indent, trailing newline.
std::string canonical(const Json& j);

Json read_json_file(const std::string& path);
// Writes the whole text or nothing.
void write_text_file(const std::string& path, const std::string& text);

// Exact measurements for every available pair of a network.
MeasurementFile simulate(const circuit::CandidateNetwork& net, const std::vector<int>& unavailable);

struct CommandOptions {
  std::string input;
  std::string output;
  std::string dot;
  std::string network;
  std::string graph;
  std::optional<std::string> cls;
  std::optional<std::string> beta;
  std::vector<int> unavailable;
  std::optional<int> n;
  std::uint64_t seed = 1;
  bool planar_filter = false;
  std::optional<std::string> edge_mask;
  long max_denominator = kDefaultMaxDenominator;
  std::optional<std::string> order;
  std::optional<std::size_t> gb_max_basis;
  std::optional<unsigned> gb_max_degree;
  std::optional<std::size_t> gb_max_reductions;
  std::optional<int> cap;
  std::optional<std::size_t> max_composites;
  int jobs = 0;
};

int cmd_reconstruct(const CommandOptions& o, std::ostream& out);
int cmd_simulate(const CommandOptions& o, std::ostream& out);
int cmd_check(const CommandOptions& o, std::ostream& out);
int cmd_groebner(const CommandOptions& o, std::ostream& out);
int cmd_oracle(const CommandOptions& o, std::ostream& out);

// Full command line; errors go to err with the matching exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace netrecon::cli
