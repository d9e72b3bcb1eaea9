#include "ifp/stopping_value.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ifp/gaussian.hpp"
#include "ifp/simulator.hpp"

namespace ifp {

std::vector<ValueSlice> value_backward(const SurvivalFn& g_pc, const SolveConfig& config) {
    const DiscreteSolution sol = solve_discrete(g_pc, config);
    std::vector<ValueSlice> out;
    out.reserve(sol.times.size());
    for (std::size_t k = 0; k < sol.times.size(); ++k)
        out.push_back({sol.times[k], g_pc(sol.times[k]), sol.slices[k]});
    return out;
}

McValue mc_value(double t, double x, const Boundary& b, const SurvivalFn& g,
                 std::size_t n_paths, std::uint64_t seed) {
    if (n_paths < 100) throw std::invalid_argument("mc_value: need n_paths >= 100");
    const auto samples = simulate_gamma(t, x, b, n_paths, seed);

    double sum = 0.0, sum_sq = 0.0;
    for (const auto& s : samples) {
        const double payoff = s.gamma < t ? g(t - s.gamma) : (s.terminal_nonneg ? 1.0 : 0.0);
        sum += payoff;
        sum_sq += payoff * payoff;
    }
    const double n = double(n_paths);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), n_paths};
}

double value_at(const std::vector<ValueSlice>& slices, double t, double x) {
    if (slices.empty()) throw std::invalid_argument("value_at: no slices");
    if (t < 0.0) throw std::invalid_argument("value_at: t must be >= 0");

    // Last slice time <= t.
    std::size_t k = 0;
    while (k + 1 < slices.size() && slices[k + 1].t <= t) ++k;
    if (slices[k].t > t) throw std::invalid_argument("value_at: t precedes first slice");

    const double dt = t - slices[k].t;
    if (dt <= 1e-14) return slices[k].v(x);
    return convolve_heat_eval(slices[k].v, dt, x);
}

UvReport check_u_equals_v(const SurvivalFn& g_pc, const SolveConfig& config,
                          const std::vector<std::pair<double, double>>& samples,
                          std::size_t mc_paths, std::uint64_t seed) {
    const DiscreteSolution forward = solve_discrete(g_pc, config);
    const std::vector<ValueSlice> backward = value_backward(g_pc, config);

    UvReport rep;
    for (std::size_t k = 0; k < forward.slices.size(); ++k) {
        const auto& u = forward.slices[k].values;
        const auto& v = backward[k].v.values;
        for (std::size_t j = 0; j < std::min(u.size(), v.size()); ++j)
            rep.max_grid_diff = std::max(rep.max_grid_diff, std::fabs(u[j] - v[j]));
    }

    std::uint64_t stream = 0;
    for (const auto& [t, x] : samples) {
        UvPoint pt;
        pt.t = t;
        pt.x = x;
        pt.grid_v = value_at(backward, t, x);
        const auto mc = mc_value(t, x, forward.boundary, g_pc, mc_paths, seed + stream++);
        pt.mc = mc.estimate;
        pt.se = mc.std_error;
        pt.within_3se = std::fabs(pt.mc - pt.grid_v) <= 3.0 * std::max(pt.se, 1e-12);
        if (pt.within_3se) ++rep.mc_within;
        rep.mc_points.push_back(pt);
    }
    rep.pass = rep.max_grid_diff <= 1e-12 && rep.mc_within == rep.mc_points.size();
    return rep;
}

}  // namespace ifp
