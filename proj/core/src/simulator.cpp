#include "ifp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ifp/rng.hpp"

namespace ifp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Run `body(batch_index, first_path, n_in_batch)` over all batches,
// optionally across threads. Batches own disjoint output ranges, so the
// result is independent of the schedule.
template <typename Body>
void for_each_batch(std::size_t n_paths, unsigned threads, const Body& body) {
    const std::size_t n_batches = (n_paths + kBatchSize - 1) / kBatchSize;
    auto run_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t b = lo; b < hi; ++b) {
            const std::size_t first = b * kBatchSize;
            const std::size_t count = std::min(kBatchSize, n_paths - first);
            body(b, first, count);
        }
    };
    if (threads <= 1 || n_batches <= 1) {
        run_range(0, n_batches);
        return;
    }
    const unsigned n_workers = std::min<unsigned>(threads, unsigned(n_batches));
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        const std::size_t lo = n_batches * w / n_workers;
        const std::size_t hi = n_batches * (w + 1) / n_workers;
        pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

SimResult sample_discrete_passage(const Boundary& b, std::size_t n_paths, std::uint64_t seed,
                                  unsigned threads) {
    validate_boundary(b);
    if (n_paths == 0) throw std::invalid_argument("sample_discrete_passage: need n_paths > 0");

    // Positive mesh times with their boundary values; -infinity absorbs.
    std::vector<double> times, levels;
    for (std::size_t i = 0; i < b.times.size(); ++i) {
        if (b.times[i] <= 0.0) continue;
        times.push_back(b.times[i]);
        levels.push_back(b.values[i]);
    }

    SimResult out;
    out.n_paths = n_paths;
    out.seed = seed;
    out.method = SimResult::Method::exact_mesh;
    out.passage_times.assign(n_paths, kInf);

    for_each_batch(n_paths, threads, [&](std::size_t batch, std::size_t first, std::size_t count) {
        BatchRng rng(seed, batch);
        for (std::size_t p = 0; p < count; ++p) {
            double w = 0.0, t_prev = 0.0, tau = kInf;
            for (std::size_t k = 0; k < times.size(); ++k) {
                if (levels[k] == -kInf) {
                    tau = times[k];
                    break;
                }
                const double dt = times[k] - t_prev;
                w += std::sqrt(dt) * rng.normal();
                t_prev = times[k];
                if (levels[k] != kInf && w >= levels[k]) {
                    tau = times[k];
                    break;
                }
            }
            out.passage_times[first + p] = tau;
        }
    });
    return out;
}

SimResult sample_continuous_passage(const Boundary& b, double horizon, double dt,
                                    std::size_t n_paths, std::uint64_t seed, bool bridge,
                                    unsigned threads) {
    validate_boundary(b);
    if (n_paths == 0) throw std::invalid_argument("sample_continuous_passage: need n_paths > 0");
    if (!(dt > 0.0) || dt >= horizon)
        throw std::invalid_argument("sample_continuous_passage: need 0 < dt < horizon");

    const auto n_steps = std::size_t(std::ceil(horizon / dt - 1e-9));

    // Freeze the boundary per step once; Boundary::operator() does a binary
    // search we do not want in the hot loop.
    std::vector<double> b_at(n_steps + 1), b_mid(n_steps);
    for (std::size_t i = 0; i <= n_steps; ++i) b_at[i] = b(std::min(double(i) * dt, horizon));
    for (std::size_t i = 0; i < n_steps; ++i) b_mid[i] = b((double(i) + 0.5) * dt);

    SimResult out;
    out.n_paths = n_paths;
    out.seed = seed;
    out.method = SimResult::Method::euler_bridge;
    out.passage_times.assign(n_paths, kInf);

    const double sqrt_dt = std::sqrt(dt);
    for_each_batch(n_paths, threads, [&](std::size_t batch, std::size_t first, std::size_t count) {
        BatchRng rng(seed, batch);
        for (std::size_t p = 0; p < count; ++p) {
            double x = 0.0, tau = kInf;
            for (std::size_t i = 0; i < n_steps; ++i) {
                const double t_next = std::min(double(i + 1) * dt, horizon);
                const double x_next = x + sqrt_dt * rng.normal();
                if (x_next >= b_at[i + 1]) {
                    tau = t_next;
                    break;
                }
                if (bridge) {
                    // Crossing of the midpoint-frozen level within the step.
                    const double lvl = b_mid[i];
                    const double d0 = lvl - x, d1 = lvl - x_next;
                    if (d0 > 0.0 && d1 > 0.0) {
                        const double pr = std::exp(-2.0 * d0 * d1 / dt);
                        if (rng.uniform01() < pr) {
                            tau = double(i) * dt + 0.5 * dt;
                            break;
                        }
                    }
                }
                x = x_next;
            }
            out.passage_times[first + p] = tau;
        }
    });
    return out;
}

KsReport ks_against(const SurvivalFn& g, const SimResult& sim, double horizon,
                    double bias_allowance) {
    const SurvivalFn ghat = empirical_survival(sim.passage_times, horizon);

    std::vector<double> pts;
    pts.reserve(ghat.breakpoints().size() + g.breakpoints().size() + 2);
    for (double t : ghat.breakpoints()) pts.push_back(t);
    for (double t : g.breakpoints())
        if (t <= horizon) pts.push_back(t);
    pts.push_back(0.0);
    pts.push_back(horizon);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    double stat = 0.0;
    for (double t : pts) {
        stat = std::max(stat, std::fabs(ghat(t) - g(t)));
        stat = std::max(stat, std::fabs(ghat.left_limit(t) - g.left_limit(t)));
    }

    KsReport rep;
    rep.statistic = stat;
    rep.dkw_bound = 1.63 / std::sqrt(double(sim.n_paths));
    rep.bias_allowance = bias_allowance;
    rep.pass = stat <= rep.dkw_bound + bias_allowance;
    return rep;
}

std::vector<GammaSample> simulate_gamma(double t, double x, const Boundary& b,
                                        std::size_t n_paths, std::uint64_t seed) {
    validate_boundary(b);
    if (!(t > 0.0)) throw std::invalid_argument("simulate_gamma: t must be > 0");
    if (n_paths == 0) throw std::invalid_argument("simulate_gamma: need n_paths > 0");

    // Reversed mesh times s = t - t_k in ascending order with the boundary
    // level b(t_k) active at s; s == t handled as the terminal payoff time.
    std::vector<double> s_times, levels;
    for (auto it = b.times.rbegin(); it != b.times.rend(); ++it) {
        const std::size_t idx = std::size_t(b.times.rend() - it) - 1;
        if (b.times[idx] <= 0.0) continue;  // t_0 = 0 is the terminal time s = t
        const double s = t - b.times[idx];
        if (s < -1e-12 * std::max(1.0, t)) continue;
        if (s >= t) continue;
        s_times.push_back(std::max(s, 0.0));
        levels.push_back(b.values[idx]);
    }

    std::vector<GammaSample> out(n_paths);
    for_each_batch(n_paths, 1, [&](std::size_t batch, std::size_t first, std::size_t count) {
        BatchRng rng(seed, batch);
        for (std::size_t p = 0; p < count; ++p) {
            double w = x, s_prev = 0.0;
            GammaSample sample{t, false};
            bool stopped = false;
            for (std::size_t k = 0; k < s_times.size(); ++k) {
                const double ds = s_times[k] - s_prev;
                if (ds > 0.0) w += std::sqrt(ds) * rng.normal();
                s_prev = s_times[k];
                if (levels[k] == -kInf || (levels[k] != kInf && w >= levels[k])) {
                    sample.gamma = s_times[k];
                    stopped = true;
                    break;
                }
            }
            if (!stopped) {
                const double ds = t - s_prev;
                if (ds > 0.0) w += std::sqrt(ds) * rng.normal();
                sample.gamma = t;
                sample.terminal_nonneg = w >= 0.0;
            }
            out[first + p] = sample;
        }
    });
    return out;
}

}  // namespace ifp
