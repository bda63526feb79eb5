#pragma once

#include <cstdint>
#include <vector>

namespace qrnn {

/// SplitMix64 stream; bit-exact across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Top 53 bits mapped to [-1, 1).
  double next_symmetric();

 private:
  std::uint64_t state_;
};

struct HamiltonianCoefficients {
  std::vector<double> a;  // transverse fields, length n
  std::vector<double> j;  // couplings, packed j-major, length n(n-1)/2
};

/// Deterministic draw for one (master_seed, seed_index) pair: fields first,
/// then couplings J_{jk} for j = 1..n-1, k = 0..j-1.
HamiltonianCoefficients sample_hamiltonian_coefficients(
    std::uint64_t master_seed, std::uint64_t seed_index, int n);

}  // namespace qrnn
