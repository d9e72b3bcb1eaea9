#pragma once

#include <cstddef>
#include <vector>

namespace ifp {

/// Uniform spatial grid: M nodes from x_min to x_max inclusive.
struct GridSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t nodes = 2;

    double spacing() const { return (x_max - x_min) / double(nodes - 1); }
    double node(std::size_t i) const { return x_min + double(i) * spacing(); }
};

/// Monotone non-decreasing function of x sampled on a uniform grid.
///
/// The function model is: left_tail strictly below x_min, piecewise-linear
/// interpolation of the node values on [x_min, x_max], right_tail strictly
/// above x_max. Jumps at the two grid edges (left_tail -> values.front(),
/// values.back() -> right_tail) are part of the model, so an indicator
/// 1{x >= a} is represented exactly by a grid starting at a with all node
/// values 1 and left_tail 0.
struct GridFn {
    double x_min = 0.0;
    double x_max = 1.0;
    std::vector<double> values;
    double left_tail = 0.0;
    double right_tail = 1.0;

    std::size_t size() const { return values.size(); }
    double spacing() const { return (x_max - x_min) / double(values.size() - 1); }
    double node(std::size_t i) const { return x_min + double(i) * spacing(); }
    GridSpec spec() const { return {x_min, x_max, values.size()}; }

    /// Evaluate the piecewise-linear model at x (tails outside the grid).
    double operator()(double x) const;
};

/// Throws std::invalid_argument unless f has >= 2 nodes, a positive span,
/// non-decreasing values and left_tail <= values <= right_tail (up to a
/// tiny rounding slack).
void validate_grid_fn(const GridFn& f);

/// Heat evolution g(x) = E f(x + Z * sqrt(delta_t)), Z standard normal,
/// evaluated on f's own grid. Each linear segment and both tails are
/// integrated against the Gaussian kernel in closed form with Phi/phi
/// evaluations, so there is no quadrature error beyond the piecewise-linear
/// model itself. Output tails are (left_tail, right_tail) and the output is
/// clamped monotone non-decreasing.
GridFn convolve_heat(const GridFn& f, double delta_t);

/// Same operator, but evaluated on `out`, which must live on the same
/// lattice as f (equal spacing, node-aligned offset). Used to evolve an
/// exact-step initial condition onto a wider solver grid.
GridFn convolve_heat_onto(const GridFn& f, double delta_t, const GridSpec& out);

/// Single-point evaluation of the same operator: E f(x + Z sqrt(delta_t)).
/// x may be arbitrary (no lattice alignment required).
double convolve_heat_eval(const GridFn& f, double delta_t, double x);

/// Second x-derivative of the heat evolution at x, i.e. (f'' * kernel)(x)
/// for the piecewise-linear model whose f'' is a sum of slope-jump atoms
/// at the nodes. Used for the Richardson-corrected root evaluator in the
/// forward solver.
double convolve_heat_eval_dxx(const GridFn& f, double delta_t, double x);

}  // namespace ifp
