#pragma once

#include <vector>

#include "ifp/boundary.hpp"
#include "ifp/survival.hpp"

namespace ifp {

/// Time nodes 0 = s_0 < s_1 < ... < s_n = t_end discretizing the Stieltjes
/// measure (1-g)(ds). Trapezoid-in-the-measure weights; the diagonal kernel
/// panel uses the limit value Psi(0) = 1/2.
struct QuadratureGrid {
    std::vector<double> times;

    /// Geometric prefix toward 0 (resolving the sqrt(t) boundary growth)
    /// followed by uniform spacing. `n` counts interior nodes, so
    /// times.size() == n + 1.
    static QuadratureGrid make(double t_end, std::size_t n, double geo_start_fraction = 1e-3);

    /// Insert midpoints of every panel (halves the step, keeps nesting).
    QuadratureGrid refined() const;
};

void validate_quadrature(const QuadratureGrid& quad);

/// Residual of the boundary integral equation at time t:
///   Psi(b(t)/sqrt(t)) - int_0^t Psi((b(t)-b(s))/sqrt(t-s)) (1-g)(ds),
/// quadrature over the grid nodes <= t plus a final partial panel. Rejects
/// boundaries with non-finite values inside (0, t] and g without a density.
double residual(const Boundary& b, const SurvivalFn& g, double t, const QuadratureGrid& quad);

struct IntegralEqReport {
    Boundary boundary;               // linear interpolation, node s_0 = 0 excluded
    std::vector<double> residuals;   // per solved node, post-solve re-evaluation
    double min_density = 0.0;        // sampled inf of -g' on the window
    bool density_warning = false;    // min_density <= 0 somewhere
};

/// Sequential solve of the discretized equation: at each node find beta with
///   Psi(beta/sqrt(s_i)) = sum_{j<i} w_j Psi((beta-b_j)/sqrt(s_i-s_j)) + w_i/2,
/// trapezoidal weights w of dF = -g(ds). The root is located by a
/// bracket scan around the previous value (geometrically expanded) followed
/// by bisection to 1e-10; non-bracketing is a solver failure. The first node
/// uses beta = sqrt(s_1) * Psi^{-1}(F(s_1)/2).
IntegralEqReport solve_integral_equation(const SurvivalFn& g, const QuadratureGrid& quad,
                                         double init_guess = 0.0);

/// Fitted constant C in b(t) - b(s) <= C sqrt((t-s) ln(1/(t-s))) over the
/// solved nodes; diagnostic only.
double holder_modulus_constant(const Boundary& b);

}  // namespace ifp
