#include "qrnn/sampling.hpp"

#include <stdexcept>

namespace qrnn {

std::uint64_t SplitMix64::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::next_symmetric() {
  // 53-bit mantissa scaled onto [-1, 1).
  return double(next_u64() >> 11) * 0x1p-52 - 1.0;
}

HamiltonianCoefficients sample_hamiltonian_coefficients(
    std::uint64_t master_seed, std::uint64_t seed_index, int n) {
  if (n < 1)
    throw std::invalid_argument("sample_hamiltonian_coefficients: n < 1");
  SplitMix64 rng(master_seed ^ (seed_index * 0x9E3779B97F4A7C15ull));
  HamiltonianCoefficients out;
  out.a.reserve(n);
  for (int i = 0; i < n; ++i) out.a.push_back(rng.next_symmetric());
  out.j.reserve(n * (n - 1) / 2);
  for (int j = 1; j < n; ++j)
    for (int k = 0; k < j; ++k) out.j.push_back(rng.next_symmetric());
  return out;
}

}  // namespace qrnn
