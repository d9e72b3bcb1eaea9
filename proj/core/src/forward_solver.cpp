#include "ifp/forward_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ifp/gaussian.hpp"

namespace ifp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void validate_config(const SolveConfig& config) {
    if (config.half_width_sigmas < 4.0)
        throw std::invalid_argument("SolveConfig: half_width_sigmas must be >= 4");
    if (config.grid_nodes < 257)
        throw std::invalid_argument("SolveConfig: grid_nodes must be >= 257");
    if (!(config.tol_root > 0.0) || !(config.tol_rec > 0.0))
        throw std::invalid_argument("SolveConfig: tolerances must be positive");
}

GridSpec make_solver_grid(const SolveConfig& config, double t_last, double a_max_hint) {
    validate_config(config);
    const double half = config.half_width_sigmas * std::sqrt(t_last);
    double lo = -half;
    double hi = std::max(0.0, a_max_hint) + half;
    // Snap so that x = 0 lies exactly on a node; the initial indicator and
    // the median-root examples then resolve without interpolation error.
    const double h = (hi - lo) / double(config.grid_nodes - 1);
    lo = -std::ceil(-lo / h) * h;
    hi = lo + h * double(config.grid_nodes - 1);
    return {lo, hi, config.grid_nodes};
}

GridFn init_u(const GridSpec& grid) {
    if (!(grid.x_max > 0.0))
        throw std::invalid_argument("init_u: grid must extend above 0");
    const double h = grid.spacing();
    // Sub-lattice of the solver grid from the node at 0 upward.
    const auto n_pos = std::size_t(std::llround((grid.x_max - 0.0) / h)) + 1;
    GridFn f;
    f.x_min = 0.0;
    f.x_max = grid.x_max;
    f.values.assign(std::max<std::size_t>(n_pos, 2), 1.0);
    f.x_max = f.x_min + h * double(f.values.size() - 1);
    f.left_tail = 0.0;
    f.right_tail = 1.0;
    return f;
}

GridFn step(const GridFn& u_k, double delta_t) { return convolve_heat(u_k, delta_t); }

UpdateResult update(const GridFn& w, double g_next, double tol_root,
                    const std::function<double(double)>& eval) {
    validate_grid_fn(w);
    const double g_k = w.right_tail;
    if (g_next > g_k)
        throw std::invalid_argument("update: g_next exceeds current survival level");

    auto capped = [&]() {
        GridFn u = w;
        for (auto& v : u.values) v = std::min(v, g_next);
        u.right_tail = g_next;
        return u;
    };

    // No mass removed this step: the constraint never binds.
    if (g_next == g_k) return {w, kInf};

    if (w.values.front() >= g_next) return {capped(), -kInf};

    if (w.values.back() < g_next - tol_root) {
        throw std::runtime_error(
            "update: grid too narrow, boundary exceeds x_max = " + std::to_string(w.x_max) +
            "; widen half_width_sigmas");
    }

    auto f = eval ? eval : std::function<double(double)>([&w](double x) { return w(x); });

    // w is monotone non-decreasing; keep f(lo) < g_next <= f(hi) so the
    // bisection limit is the leftmost point of any plateau (the infimum that
    // defines the boundary).
    double lo = w.x_min, hi = w.x_max;
    if (f(hi) < g_next) {
        return {capped(), hi};  // root pinned at the edge within tol_root
    }
    while (hi - lo > tol_root) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= g_next)
            hi = mid;
        else
            lo = mid;
    }
    return {capped(), 0.5 * (lo + hi)};
}

namespace {

// Leading model error of representing the previous slice piecewise-linearly,
// seen through the heat kernel at x. Two sources:
//   - smooth in-cell curvature: + h^2/12 * (f'' * kernel)(x), estimated from
//     node slope jumps away from the capping kink (a genuine kink at a node
//     is represented exactly and produces no interpolation error);
//   - a kink strictly inside a cell: the chord of that cell undercuts the
//     concave min(w, g) profile by a triangle of area w'(b)(b-y_l)(y_r-b)/2.
// Jumps at the grid edges are exact atoms of the model and contribute
// nothing.
double pl_model_bias(const GridFn& f, double kink_x, double dt, double x) {
    const double sigma = std::sqrt(dt);
    const double h = f.spacing();
    const long n = long(f.values.size());

    long kink_cell = n + 2;  // index of the node left of the kink
    if (std::isfinite(kink_x)) kink_cell = long(std::floor((kink_x - f.x_min) / h));

    long j_lo = std::clamp(long(std::floor((x - 10.0 * sigma - f.x_min) / h)), 1L, n - 2);
    long j_hi = std::clamp(long(std::ceil((x + 10.0 * sigma - f.x_min) / h)), 1L, n - 2);

    double acc = 0.0;
    const double inv_h = 1.0 / h;
    for (long j = j_lo; j <= j_hi; ++j) {
        if (j == kink_cell || j == kink_cell + 1) continue;
        const double jump =
            (f.values[j + 1] - 2.0 * f.values[j] + f.values[j - 1]) * inv_h;
        if (jump != 0.0) acc += jump * normal_pdf((f.node(std::size_t(j)) - x) / sigma);
    }
    double bias = h * h / 12.0 * acc / sigma;

    if (kink_cell >= 1 && kink_cell < n - 1) {
        const double y_l = f.node(std::size_t(kink_cell));
        const double y_r = y_l + h;
        const double slope_below =
            (f.values[kink_cell] - f.values[kink_cell - 1]) * inv_h;
        const double area = slope_below * (kink_x - y_l) * (y_r - kink_x) * 0.5;
        bias -= area * normal_pdf((kink_x - x) / sigma) / sigma;
    }
    return bias;
}

// Root evaluator used by the solver: exact convolution of the previous
// slice at the query point, minus the estimated representation bias. On the
// exact initial step the slice has no interior slope jumps, so the
// correction vanishes identically and the first inversion is exact.
std::function<double(double)> make_root_evaluator(const GridFn& prev, double prev_kink,
                                                  double dt) {
    return [&prev, prev_kink, dt](double x) {
        return convolve_heat_eval(prev, dt, x) - pl_model_bias(prev, prev_kink, dt, x);
    };
}

}  // namespace

DiscreteSolution solve_discrete(const SurvivalFn& g_pc, const SolveConfig& config) {
    validate_config(config);
    if (g_pc.kind() == SurvivalFn::Kind::analytic)
        throw std::invalid_argument("solve_discrete: needs a piecewise-constant survival function");
    const auto report = validate(g_pc);
    if (!report.ok)
        throw std::invalid_argument("solve_discrete: invalid g: " + report.violation);

    const auto& mesh = g_pc.breakpoints();
    const auto& g_vals = g_pc.values();
    const double t_last = mesh.back();

    const double g1 = g_vals.front();
    const double a_hint = g1 >= 1.0 ? 0.0 : normal_quantile(g1) * std::sqrt(mesh.front());
    const GridSpec grid = make_solver_grid(config, t_last, a_hint);

    DiscreteSolution sol;
    sol.grid = grid;
    sol.times.push_back(0.0);
    sol.slices.push_back(init_u(grid));
    sol.boundary.times.push_back(0.0);
    sol.boundary.values.push_back(0.0);
    sol.boundary.standard = true;
    sol.boundary.interp = Boundary::Interp::mesh_only;

    bool dead = false;
    double t_prev = 0.0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const double t_k = mesh[k];
        const double g_k = g_vals[k];
        sol.times.push_back(t_k);
        sol.boundary.times.push_back(t_k);

        if (dead) {
            GridFn zero = sol.slices.back();
            sol.slices.push_back(zero);
            sol.boundary.values.push_back(-kInf);
            t_prev = t_k;
            continue;
        }

        const GridFn& prev = sol.slices.back();
        const double dt = t_k - t_prev;
        GridFn w = convolve_heat_onto(prev, dt, grid);
        auto res = update(w, g_k, config.tol_root, make_root_evaluator(prev, dt));
        sol.slices.push_back(std::move(res.u));
        sol.boundary.values.push_back(res.boundary_value);
        if (res.boundary_value == -kInf) dead = true;
        t_prev = t_k;
    }
    return sol;
}

GeneralSolution solve_general(const SurvivalFn& g, int level, double horizon,
                              const SolveConfig& config) {
    auto [mesh, gn] = discretize(g, level, horizon);

    GeneralSolution out;
    out.discrete = solve_discrete(gn, config);
    out.g_n = std::move(gn);
    out.boundary = out.discrete.boundary;
    if (g.kind() == SurvivalFn::Kind::analytic)
        out.boundary.interp = Boundary::Interp::linear;

    out.diagnostics.level = level;
    out.diagnostics.mesh_points = mesh.times.size();
    out.diagnostics.grid = out.discrete.grid;

    // Sampled sandwich check sup_t (g^n - g) and the worst temporal vs
    // spatial resolution ratio.
    double sup_gap = 0.0;
    const double t_end = mesh.times.back();
    for (int i = 0; i <= 512; ++i) {
        const double t = t_end * double(i) / 512.0;
        sup_gap = std::max(sup_gap, out.g_n(t) - g(t));
    }
    out.diagnostics.sup_gn_minus_g = sup_gap;

    const double h = out.discrete.grid.spacing();
    double min_ratio = kInf;
    double t_prev = 0.0;
    for (double t : mesh.times) {
        min_ratio = std::min(min_ratio, std::sqrt(t - t_prev) / h);
        t_prev = t;
    }
    out.diagnostics.min_sigma_over_h = min_ratio;
    return out;
}

}  // namespace ifp
