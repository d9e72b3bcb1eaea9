#include "ifp/integral_eq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ifp/gaussian.hpp"

namespace ifp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this cumulative passage mass the equation carries no numerical
// information (both sides vanish), so nodes are reported unconstrained.
constexpr double kMassFloor = 1e-12;
}  // namespace

QuadratureGrid QuadratureGrid::make(double t_end, std::size_t n, double geo_start_fraction) {
    if (!(t_end > 0.0) || n < 4)
        throw std::invalid_argument("QuadratureGrid: need t_end > 0 and n >= 4");
    QuadratureGrid q;
    q.times.push_back(0.0);
    // Doubling prefix from geo_start_fraction * t_end up to ~5% of the span,
    // then uniform with the remaining budget.
    std::vector<double> geo;
    for (double s = t_end * geo_start_fraction; s < 0.05 * t_end; s *= 2.0) geo.push_back(s);
    const std::size_t n_uniform = n > geo.size() ? n - geo.size() : 1;
    const double start = geo.empty() ? 0.0 : 0.05 * t_end;
    for (double s : geo) q.times.push_back(s);
    for (std::size_t j = 1; j <= n_uniform; ++j)
        q.times.push_back(start + (t_end - start) * double(j) / double(n_uniform));
    return q;
}

QuadratureGrid QuadratureGrid::refined() const {
    QuadratureGrid q;
    q.times.reserve(times.size() * 2);
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        q.times.push_back(times[i]);
        q.times.push_back(0.5 * (times[i] + times[i + 1]));
    }
    q.times.push_back(times.back());
    return q;
}

void validate_quadrature(const QuadratureGrid& quad) {
    if (quad.times.size() < 2 || quad.times.front() != 0.0)
        throw std::invalid_argument("QuadratureGrid: must start at 0 with >= 2 nodes");
    for (std::size_t i = 1; i < quad.times.size(); ++i)
        if (!(quad.times[i] > quad.times[i - 1]))
            throw std::invalid_argument("QuadratureGrid: times must be strictly increasing");
}

double residual(const Boundary& b, const SurvivalFn& g, double t, const QuadratureGrid& quad) {
    validate_quadrature(quad);
    if (!(t > 0.0)) throw std::invalid_argument("residual: t must be > 0");
    if (!g.has_density())
        throw std::invalid_argument("residual: g must carry a density (continuous case only)");

    const double bt = b(t);
    if (!std::isfinite(bt)) throw std::invalid_argument("residual: b(t) not finite");

    auto F = [&g](double s) { return 1.0 - g(s); };
    auto kernel = [&](double s) {
        if (s >= t) return 0.5;  // diagonal limit for continuous b
        const double bs = b(s);
        if (!std::isfinite(bs))
            throw std::invalid_argument("residual: b has non-finite values inside (0, t]");
        return normal_sf((bt - bs) / std::sqrt(t - s));
    };

    double rhs = 0.0;
    double s_prev = 0.0;
    // b(0+) is irrelevant when F vanishes near 0; use the kernel at the
    // first node for the opening panel to avoid evaluating b(0).
    double k_prev = kernel(std::min(quad.times.size() > 1 ? quad.times[1] : t, t));
    for (std::size_t i = 1; i < quad.times.size() && quad.times[i] < t; ++i) {
        const double s = quad.times[i];
        const double k = kernel(s);
        rhs += (F(s) - F(s_prev)) * 0.5 * (k_prev + k);
        s_prev = s;
        k_prev = k;
    }
    rhs += (F(t) - F(s_prev)) * 0.5 * (k_prev + 0.5);

    return normal_sf(bt / std::sqrt(t)) - rhs;
}

namespace {

struct NodeSolver {
    const std::vector<double>& s;
    const std::vector<double>& F;
    const std::vector<double>& beta;  // solved values; +inf where unconstrained

    // Discretized right-hand side at node i for candidate boundary value b.
    double rhs(std::size_t i, double b) const {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            const double w = 0.5 * ((j + 1 <= i ? F[j + 1] : F[i]) - (j > 0 ? F[j - 1] : F[0]));
            if (w == 0.0) continue;
            double k;
            if (j == 0) {
                // s_0 = 0 with the standard anchor b(0) = 0.
                k = normal_sf(b / std::sqrt(s[i]));
            } else if (!std::isfinite(beta[j])) {
                continue;  // unconstrained node: weight is below the mass floor
            } else {
                k = normal_sf((b - beta[j]) / std::sqrt(s[i] - s[j]));
            }
            acc += w * k;
        }
        acc += 0.5 * (F[i] - F[i - 1]) * 0.5;  // diagonal panel, kernel 1/2
        return acc;
    }

    double equation(std::size_t i, double b) const {
        return normal_sf(b / std::sqrt(s[i])) - rhs(i, b);
    }
};

}  // namespace

IntegralEqReport solve_integral_equation(const SurvivalFn& g, const QuadratureGrid& quad,
                                         double init_guess) {
    validate_quadrature(quad);
    if (!g.has_density())
        throw std::invalid_argument("solve_integral_equation: g must carry a density");

    const auto& s = quad.times;
    const std::size_t n = s.size();
    std::vector<double> F(n);
    for (std::size_t i = 0; i < n; ++i) F[i] = 1.0 - g(s[i]);

    IntegralEqReport rep;
    rep.min_density = kInf;
    for (std::size_t i = 1; i < n; ++i)
        rep.min_density = std::min(rep.min_density, g.density(s[i]));
    rep.density_warning = !(rep.min_density > 0.0);

    std::vector<double> beta(n, kInf);
    NodeSolver solver{s, F, beta};

    double b_prev = init_guess;
    bool have_prev = false;
    for (std::size_t i = 1; i < n; ++i) {
        if (F[i] < kMassFloor) continue;  // unconstrained this early

        if (!have_prev) {
            // Small-time start: the whole first resolvable panel against the
            // diagonal kernel, Psi(beta/sqrt(s)) = F(s)/2.
            beta[i] = std::sqrt(s[i]) * -normal_quantile(0.5 * F[i]);
            b_prev = beta[i];
            have_prev = true;
            continue;
        }

        // Bracket scan around the previous value, geometrically expanded.
        double delta = 0.5;
        double lo = 0.0, hi = 0.0;
        bool bracketed = false;
        for (int expand = 0; expand < 9 && !bracketed; ++expand, delta *= 2.0) {
            const double a = b_prev - delta, c = b_prev + delta;
            constexpr int kScan = 32;
            double x_prev = a, r_prev = solver.equation(i, a);
            double best_width = kInf;
            for (int m = 1; m <= kScan; ++m) {
                const double x = a + (c - a) * double(m) / double(kScan);
                const double r = solver.equation(i, x);
                if ((r_prev <= 0.0 && r >= 0.0) || (r_prev >= 0.0 && r <= 0.0)) {
                    // Keep the sign change nearest the previous node.
                    const double dist = std::fabs(0.5 * (x_prev + x) - b_prev);
                    if (dist < best_width) {
                        best_width = dist;
                        lo = x_prev;
                        hi = x;
                        bracketed = true;
                    }
                }
                x_prev = x;
                r_prev = r;
            }
        }
        if (!bracketed)
            throw std::runtime_error(
                "solve_integral_equation: no sign change near s = " + std::to_string(s[i]) +
                " (previous boundary " + std::to_string(b_prev) + ")");

        double r_lo = solver.equation(i, lo);
        for (int it = 0; it < 100 && hi - lo > 1e-10; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double r_mid = solver.equation(i, mid);
            if ((r_lo <= 0.0) == (r_mid <= 0.0)) {
                lo = mid;
                r_lo = r_mid;
            } else {
                hi = mid;
            }
        }
        beta[i] = 0.5 * (lo + hi);
        b_prev = beta[i];
    }

    for (std::size_t i = 1; i < n; ++i) {
        if (!std::isfinite(beta[i])) continue;
        rep.boundary.times.push_back(s[i]);
        rep.boundary.values.push_back(beta[i]);
    }
    rep.boundary.interp = Boundary::Interp::linear;
    if (rep.boundary.times.empty())
        throw std::runtime_error("solve_integral_equation: no node carries passage mass");

    rep.residuals.reserve(rep.boundary.times.size());
    for (double t : rep.boundary.times) rep.residuals.push_back(residual(rep.boundary, g, t, quad));
    return rep;
}

double holder_modulus_constant(const Boundary& b) {
    double c_hat = 0.0;
    for (std::size_t i = 0; i < b.times.size(); ++i) {
        if (!std::isfinite(b.values[i])) continue;
        for (std::size_t j = i + 1; j < b.times.size(); ++j) {
            if (!std::isfinite(b.values[j])) continue;
            const double d = b.times[j] - b.times[i];
            if (d <= 0.0 || d >= 0.5) continue;
            const double rise = b.values[j] - b.values[i];
            if (rise <= 0.0) continue;
            c_hat = std::max(c_hat, rise / std::sqrt(d * std::log(1.0 / d)));
        }
    }
    return c_hat;
}

}  // namespace ifp
