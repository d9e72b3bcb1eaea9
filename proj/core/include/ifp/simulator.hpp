#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifp/boundary.hpp"
#include "ifp/survival.hpp"

namespace ifp {

/// First-passage samples; +infinity marks survival past the horizon.
struct SimResult {
    std::size_t n_paths = 0;
    std::vector<double> passage_times;
    std::uint64_t seed = 0;
    enum class Method { exact_mesh, euler_bridge } method = Method::exact_mesh;
};

/// Exact sampler for mesh boundaries (b == +infinity off the mesh): Gaussian
/// increments at the mesh gaps, tau = first mesh time with W >= b. A
/// -infinity value absorbs every surviving path at that time. `threads`
/// only distributes batches; output is identical for any thread count.
SimResult sample_discrete_passage(const Boundary& b, std::size_t n_paths, std::uint64_t seed,
                                  unsigned threads = 1);

/// Euler walk with step dt for an interpolated continuous boundary. With
/// `bridge` set, each non-crossing step adds a Brownian-bridge crossing
/// event with probability exp(-2 (b - x_i)(b - x_{i+1}) / dt) against the
/// midpoint-frozen boundary value, cutting the discretization bias from
/// O(sqrt(dt)) to roughly O(dt).
SimResult sample_continuous_passage(const Boundary& b, double horizon, double dt,
                                    std::size_t n_paths, std::uint64_t seed, bool bridge,
                                    unsigned threads = 1);

struct KsReport {
    double statistic = 0.0;   // sup_t |ghat(t) - g(t)|
    double dkw_bound = 0.0;   // 1.63 / sqrt(N), the 99% DKW band
    bool pass = false;
    double bias_allowance = 0.0;
};

/// Kolmogorov-Smirnov style comparison of the empirical survival of `sim`
/// against g, evaluated at every sample jump and breakpoint (both sides).
/// Passes iff statistic <= dkw_bound + bias_allowance (allowance for biased
/// Euler samplers; 0 for the exact one).
KsReport ks_against(const SurvivalFn& g, const SimResult& sim, double horizon,
                    double bias_allowance = 0.0);

/// One path of the reflected problem: gamma = inf{s >= 0 : x + W_s >=
/// b(t - s)} sampled exactly at the reversed mesh times, capped at s = t.
struct GammaSample {
    double gamma = 0.0;
    bool terminal_nonneg = false;  // x + W_t >= 0, only meaningful when gamma == t
};

std::vector<GammaSample> simulate_gamma(double t, double x, const Boundary& b,
                                        std::size_t n_paths, std::uint64_t seed);

}  // namespace ifp
