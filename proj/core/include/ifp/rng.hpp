#pragma once

#include <cstdint>
#include <random>

#include "ifp/gaussian.hpp"

namespace ifp {

// Monte Carlo streams are organized in fixed-size path batches. Batch b of a
// run with master seed s draws from mt19937_64 seeded with
// splitmix64(s, b), so results are bit-identical for a given (seed, batch
// layout) regardless of how batches are scheduled across threads.
inline constexpr std::size_t kBatchSize = 8192;

inline std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class BatchRng {
  public:
    BatchRng(std::uint64_t seed, std::uint64_t batch) : gen_(splitmix64(seed, batch)) {}

    /// Uniform on (0, 1), never returning the endpoints.
    double uniform01() {
        const std::uint64_t bits = gen_() >> 11;  // 53 bits
        return (double(bits) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via quantile inversion; deterministic given the
    /// stream, no rejection.
    double normal() { return normal_quantile(uniform01()); }

  private:
    std::mt19937_64 gen_;
};

}  // namespace ifp
