#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

// Batch Laplacian minor tables over many topologies of the same node count.
// Every variant is exact: the scalar reference uses 64-bit integers with
// 128-bit products, the SIMD variants use doubles and are only dispatched
// where every intermediate integer stays below 2^53.

namespace netrecon::kernels {

enum class Isa { scalar, avx2, neon };

// det L[a,a] when a == b (one node removed), det L[a,b] otherwise (two removed).
struct MinorSpec {
  int a;
  int b;
};

inline constexpr int kMaxSimdNodes = 9;

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);
bool isa_available(Isa isa);
// Best available ISA, unless NETRECON_ISA or set_isa_override says otherwise.
Isa active_isa();
void set_isa_override(std::optional<Isa> isa);

// out[t * specs.size() + s] = minor s of topology t.
void laplacian_minors_scalar(int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
                             std::span<std::int64_t> out);
void laplacian_minors_avx2(int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
                           std::span<std::int64_t> out);
void laplacian_minors_neon(int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
                           std::span<std::int64_t> out);
void laplacian_minors(int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
                      std::span<std::int64_t> out);
void laplacian_minors(Isa isa, int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
                      std::span<std::int64_t> out);

std::int64_t principal_minor_scalar(int n, std::uint64_t bits, int k);
std::int64_t pair_minor_scalar(int n, std::uint64_t bits, int j, int k);

namespace detail {
void validate(int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
              std::span<std::int64_t> out);
// Nodes (0-based) kept after removing spec's nodes; returns the count.
int kept_nodes(int n, MinorSpec spec, int* kept);
}  // namespace detail

}  // namespace netrecon::kernels
