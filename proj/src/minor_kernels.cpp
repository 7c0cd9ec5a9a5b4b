#include "netrecon/minor_kernels.hpp"

#include "netrecon/graphcore.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace netrecon::kernels {
namespace {

// -1 = automatic, otherwise static_cast<int>(Isa)
std::atomic<int> g_override{-1};

Isa detect_best() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#elif defined(__aarch64__)
  return Isa::neon;
#endif
  return Isa::scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  return std::nullopt;
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  if (const char* env = std::getenv("NETRECON_ISA")) {
    if (auto isa = parse_isa(env); isa && isa_available(*isa)) return *isa;
  }
  return detect_best();
}

void set_isa_override(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa)) {
    throw std::invalid_argument("ISA " + std::string(isa_name(*isa)) + " not available on this machine");
  }
  g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void laplacian_minors(Isa isa, int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
                      std::span<std::int64_t> out) {
  if (n > kMaxSimdNodes) isa = Isa::scalar;
  switch (isa) {
    case Isa::avx2: laplacian_minors_avx2(n, bits, specs, out); return;
    case Isa::neon: laplacian_minors_neon(n, bits, specs, out); return;
    case Isa::scalar: break;
  }
  laplacian_minors_scalar(n, bits, specs, out);
}

void laplacian_minors(int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
                      std::span<std::int64_t> out) {
  laplacian_minors(active_isa(), n, bits, specs, out);
}

namespace detail {

void validate(int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
              std::span<std::int64_t> out) {
  if (n < 3 || n > graphcore::kMaxNodes) throw std::invalid_argument("minor kernel: node count out of range");
  if (out.size() != bits.size() * specs.size()) throw std::invalid_argument("minor kernel: output size mismatch");
  for (const auto& s : specs) {
    if (s.a < 1 || s.a > n || s.b < 1 || s.b > n) throw std::out_of_range("minor kernel: node out of range");
  }
}

int kept_nodes(int n, MinorSpec spec, int* kept) {
  int count = 0;
  for (int v = 1; v <= n; ++v) {
    if (v != spec.a && v != spec.b) kept[count++] = v - 1;
  }
  return count;
}

}  // namespace detail

std::int64_t principal_minor_scalar(int n, std::uint64_t bits, int k) {
  const MinorSpec spec{k, k};
  std::int64_t out = 0;
  laplacian_minors_scalar(n, std::span(&bits, 1), std::span(&spec, 1), std::span(&out, 1));
  return out;
}

std::int64_t pair_minor_scalar(int n, std::uint64_t bits, int j, int k) {
  const MinorSpec spec{j, k};
  std::int64_t out = 0;
  laplacian_minors_scalar(n, std::span(&bits, 1), std::span(&spec, 1), std::span(&out, 1));
  return out;
}

}  // namespace netrecon::kernels
