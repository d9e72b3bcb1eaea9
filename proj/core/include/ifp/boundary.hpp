#pragma once

#include <cstddef>
#include <vector>

#include "ifp/grid_fn.hpp"
#include "ifp/survival.hpp"

namespace ifp {

/// Extended-real boundary b on a time grid. IEEE +-infinity are the
/// off-scale sentinels. Between grid times the function model depends on the
/// producing problem:
///   - mesh_only (discrete problems): b == +infinity off the mesh until the
///     first -infinity time, -infinity afterwards;
///   - linear (continuous problems, reporting-level): piecewise-linear
///     between finite values, constant beyond the finite range. When the
///     boundary is standard, the artificial b(0) = 0 anchor is excluded from
///     the interpolation.
struct Boundary {
    enum class Interp { mesh_only, linear };

    std::vector<double> times;   // ascending, times.front() >= 0
    std::vector<double> values;  // same length; -inf absorbing when standard
    bool standard = false;
    Interp interp = Interp::mesh_only;

    std::size_t size() const { return times.size(); }

    /// Evaluate at arbitrary t under the declared interpolation convention.
    double operator()(double t) const;

    /// First time with value -infinity, or +infinity if none.
    double first_minus_inf_time() const;
};

void validate_boundary(const Boundary& b);

/// Standardization per the barrier normalization: set b(0) = 0 (inserting
/// the time-0 node if missing), keep finite values on (0, T_B), force
/// -infinity from T_B on. Rejects boundaries whose earliest positive-time
/// value is negative (at grid resolution that contradicts tau_B > 0).
Boundary standardize(const Boundary& b);

/// Time reversal around t: btilde(s) = b(t - s) for 0 <= s < t and
/// -infinity for s >= t. Grid times are {t - t_k : t_k in grid, t_k <= t}
/// together with s = t itself.
Boundary reflect(const Boundary& b, double t);

/// Recover the boundary from the sub-distribution slices u(t_k, .): the
/// smallest grid x with g(t_k) - u(t_k, x) <= tol_rec * max(1, g(t_k));
/// +infinity if no grid point qualifies, -infinity if the leftmost one does.
Boundary recover_from_u(const std::vector<double>& times, const std::vector<GridFn>& slices,
                        const SurvivalFn& g, double tol_rec = 1e-9);

}  // namespace ifp
