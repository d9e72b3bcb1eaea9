#pragma once

#include <cstdint>
#include <vector>

#include "ifp/boundary.hpp"
#include "ifp/forward_solver.hpp"
#include "ifp/grid_fn.hpp"
#include "ifp/survival.hpp"

namespace ifp {

/// Value-function slice v(t_k, .) of the optimal stopping problem with
/// horizon payoff 1{x + W_t >= 0} and early payoff g(t - gamma).
struct ValueSlice {
    double t = 0.0;
    double g_at_t = 1.0;
    GridFn v;
};

/// Backward-induction value slices for piecewise-constant g: v(0,.) is the
/// unit step, each later slice is the heat evolution of the previous one
/// capped at g(t_{k+1}). Computationally this is the same recursion as the
/// forward solver; the independent check of the identity u = v is the Monte
/// Carlo path below, not this shared kernel.
std::vector<ValueSlice> value_backward(const SurvivalFn& g_pc, const SolveConfig& config = {});

struct McValue {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
};

/// Unbiased Monte Carlo estimate of
///   E[ g(t - gamma) 1{gamma < t} + 1{gamma = t, x + W_t >= 0} ]
/// with gamma the hitting time of the reflected boundary, sampled exactly at
/// the reversed mesh times. Requires n_paths >= 100.
McValue mc_value(double t, double x, const Boundary& b, const SurvivalFn& g,
                 std::size_t n_paths, std::uint64_t seed);

struct UvPoint {
    double t = 0.0, x = 0.0;
    double grid_v = 0.0;
    double mc = 0.0, se = 0.0;
    bool within_3se = false;
};

struct UvReport {
    double max_grid_diff = 0.0;          // node-wise max |u - v| over shared slices
    std::vector<UvPoint> mc_points;
    std::size_t mc_within = 0;
    bool pass = false;                   // grid diff <= 1e-12 and every point within 3 se
};

/// The u = v check: node-wise identity of the forward and backward slices
/// plus Monte Carlo agreement at the sample points (t, x); off-mesh t is
/// evaluated through the strip formula E v(t_k, x + W_{t - t_k}).
UvReport check_u_equals_v(const SurvivalFn& g_pc, const SolveConfig& config,
                          const std::vector<std::pair<double, double>>& samples,
                          std::size_t mc_paths, std::uint64_t seed);

/// v(t, x) from computed slices, using the strip formula between mesh times.
double value_at(const std::vector<ValueSlice>& slices, double t, double x);

}  // namespace ifp
