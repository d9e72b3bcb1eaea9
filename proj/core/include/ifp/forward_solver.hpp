#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ifp/boundary.hpp"
#include "ifp/grid_fn.hpp"
#include "ifp/survival.hpp"

namespace ifp {

struct SolveConfig {
    double half_width_sigmas = 8.0;  // spatial domain extends this many sqrt(t_N)
    std::size_t grid_nodes = 4097;   // M
    double tol_root = 1e-10;         // bisection tolerance for boundary roots
    double tol_rec = 1e-9;           // recovery tolerance (see recover_from_u)
};

void validate_config(const SolveConfig& config);

/// Spatial domain [-K sqrt(t_N), a_max + K sqrt(t_N)] with K =
/// half_width_sigmas and a_max estimated from the first mesh inversion
/// normal_quantile(g(t_1)) sqrt(t_1); shifted so that x = 0 is a node.
GridSpec make_solver_grid(const SolveConfig& config, double t_last, double a_max_hint);

/// Initial condition u(0, x) = 1{x >= 0} represented exactly: the grid
/// starts at 0 with all node values 1 and left tail 0, so the edge jump is
/// the indicator's step.
GridFn init_u(const GridSpec& grid);

/// One strip of the inductive scheme: u(t, .) = E u(t_k, . + W_{t - t_k}).
GridFn step(const GridFn& u_k, double delta_t);

struct UpdateResult {
    GridFn u;
    double boundary_value;  // +-infinity sentinels possible
};

/// Mass-capping update u_{k+1} = min(w, g_next) together with the boundary
/// value, the leftmost root of w(x) = g_next:
///   - +infinity iff g_next == g_k exactly (no mass removed this step);
///   - -infinity if already w(x_min) >= g_next (everything absorbed);
///   - otherwise bisection to tol_root on `eval` when provided, else on the
///     piecewise-linear interpolant of w.
/// Throws if g_next exceeds w's right tail (g must be non-increasing), and
/// reports a too-narrow grid when the root escapes x_max.
UpdateResult update(const GridFn& w, double g_next, double tol_root = 1e-10,
                    const std::function<double(double)>& eval = {});

struct DiscreteSolution {
    Boundary boundary;          // standard, on {0} + mesh times, mesh_only
    std::vector<double> times;  // t_0 = 0, t_1, ..., t_N
    std::vector<GridFn> slices; // u(t_k, .) for each of those times
    GridSpec grid;
};

/// The recursive construction for a piecewise-constant survival function:
/// b(t_1) inverts P(W_{t_1} <= b) = g(t_1) on the exact first strip
/// Phi(x / sqrt(t_1)), later values come from convolve + cap. Once some
/// b(t_k) = -infinity the construction terminates with -infinity thereafter.
DiscreteSolution solve_discrete(const SurvivalFn& g_pc, const SolveConfig& config = {});

struct GeneralDiagnostics {
    int level = 0;
    std::size_t mesh_points = 0;
    double sup_gn_minus_g = 0.0;    // sampled sup of g^n - g (sandwich check)
    double min_sigma_over_h = 0.0;  // temporal vs spatial resolution margin
    GridSpec grid;
};

struct GeneralSolution {
    Boundary boundary;  // linear-interp reporting convention
    DiscreteSolution discrete;
    SurvivalFn g_n;
    GeneralDiagnostics diagnostics;
};

/// Full pipeline for arbitrary g: discretize to level n on (0, horizon],
/// solve the discrete problem, return its boundary (piecewise-linear
/// reporting convention for continuous targets).
GeneralSolution solve_general(const SurvivalFn& g, int level, double horizon,
                              const SolveConfig& config = {});

}  // namespace ifp
