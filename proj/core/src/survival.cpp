#include "ifp/survival.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "ifp/gaussian.hpp"

namespace ifp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Value of a right-continuous step table at t; table starts implicitly at
// (0, 1).
double table_value(const std::vector<double>& bp, const std::vector<double>& v, double t) {
    auto it = std::upper_bound(bp.begin(), bp.end(), t);
    if (it == bp.begin()) return 1.0;
    return v[std::size_t(it - bp.begin()) - 1];
}

double table_left_limit(const std::vector<double>& bp, const std::vector<double>& v, double t) {
    auto it = std::lower_bound(bp.begin(), bp.end(), t);
    if (it == bp.begin()) return 1.0;
    return v[std::size_t(it - bp.begin()) - 1];
}

}  // namespace

SurvivalFn SurvivalFn::piecewise_constant(std::vector<double> breakpoints,
                                          std::vector<double> values) {
    if (breakpoints.size() != values.size())
        throw std::invalid_argument("SurvivalFn: breakpoints/values size mismatch");
    if (breakpoints.empty())
        throw std::invalid_argument("SurvivalFn: need at least one breakpoint");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > 0.0) || !std::isfinite(breakpoints[i]))
            throw std::invalid_argument("SurvivalFn: breakpoints must be finite and > 0");
        if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
            throw std::invalid_argument("SurvivalFn: breakpoints must be strictly increasing");
    }
    SurvivalFn g;
    g.kind_ = Kind::piecewise_constant;
    g.breakpoints_ = std::move(breakpoints);
    g.values_ = std::move(values);
    return g;
}

SurvivalFn SurvivalFn::analytic_custom(std::function<double(double)> g,
                                       std::function<double(double)> density) {
    if (!g) throw std::invalid_argument("SurvivalFn: missing callable");
    SurvivalFn s;
    s.kind_ = Kind::analytic;
    s.family_ = Family::custom;
    s.callable_ = std::move(g);
    s.density_ = std::move(density);
    return s;
}

double SurvivalFn::operator()(double t) const {
    if (t < 0.0) throw std::invalid_argument("SurvivalFn: t must be >= 0");
    if (kind_ == Kind::analytic) return callable_(t);
    return table_value(breakpoints_, values_, t);
}

double SurvivalFn::left_limit(double t) const {
    if (t <= 0.0) return 1.0;
    // Analytic families here are continuous.
    if (kind_ == Kind::analytic) return callable_(t);
    return table_left_limit(breakpoints_, values_, t);
}

double SurvivalFn::density(double t) const {
    if (!density_) throw std::invalid_argument("SurvivalFn: no density available");
    return density_(t);
}

ValidationReport validate(const SurvivalFn& g, double sample_horizon,
                          std::size_t sample_points) {
    auto fail = [](std::string why) { return ValidationReport{false, std::move(why)}; };

    if (g.kind() == SurvivalFn::Kind::analytic) {
        if (std::fabs(g(0.0) - 1.0) > 1e-12) return fail("g(0) != 1");
        double prev = 1.0;
        for (std::size_t i = 1; i <= sample_points; ++i) {
            const double t = sample_horizon * double(i) / double(sample_points);
            const double v = g(t);
            if (!(v >= -1e-15) || !(v <= 1.0 + 1e-15))
                return fail("value outside [0,1] at t=" + std::to_string(t));
            if (v > prev + 1e-12)
                return fail("not non-increasing at t=" + std::to_string(t));
            prev = v;
        }
        return {};
    }

    const auto& bp = g.breakpoints();
    const auto& v = g.values();
    if (!bp.empty() && bp.front() <= 0.0 && std::fabs(v.front() - 1.0) > 0.0)
        return fail("g(0) != 1");
    double prev = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] >= 0.0) || !(v[i] <= 1.0))
            return fail("value outside [0,1] at index " + std::to_string(i));
        if (v[i] > prev)
            return fail("not non-increasing at index " + std::to_string(i));
        prev = v[i];
    }
    return {};
}

namespace {

// Leftmost t in (0, horizon] with g(t) <= level, or nullopt. g is
// non-increasing, so plain bisection maintaining g(lo) > level >= g(hi)
// converges to the infimum.
std::optional<double> crossing_time(const SurvivalFn& g, double level, double horizon) {
    if (g(horizon) > level) return std::nullopt;
    double lo = 0.0, hi = horizon;
    for (int it = 0; it < 80 && (hi - lo) > 1e-15 * horizon; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) <= level)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

std::pair<DiscretizationMesh, SurvivalFn> discretize(const SurvivalFn& g, int level,
                                                     double horizon) {
    if (level < 1) throw std::invalid_argument("discretize: level must be >= 1");
    const auto report = validate(g);
    if (!report.ok) throw std::invalid_argument("discretize: invalid g: " + report.violation);

    if (g.kind() != SurvivalFn::Kind::analytic) {
        // Fixed point: piecewise-constant tables are their own discretization
        // (g is constant on [t_k, t_{k+1}), so the mesh condition is 0 <= 1/n).
        if (g.breakpoints().size() > 1000000)
            throw std::invalid_argument("discretize: breakpoint cap exceeded");
        DiscretizationMesh mesh{level, g.breakpoints()};
        return {std::move(mesh), g};
    }

    if (!(horizon > 0.0))
        throw std::invalid_argument("discretize: analytic g needs a positive horizon");

    const double n = double(level);
    std::set<double> times;

    // Value-quantile rule: crossing times of the levels 1 - k/(2n). The level
    // grids are nested under n -> 2n, which makes the meshes nested too.
    const double g_end = g(horizon);
    const auto k_max = std::size_t(std::ceil((1.0 - g_end) * 2.0 * n)) + 1;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double lev = 1.0 - double(k) / (2.0 * n);
        if (lev < 0.0) break;
        if (auto t = crossing_time(g, lev, horizon)) times.insert(*t);
    }

    // Temporal refinement: fraction-of-horizon times j/(2n) plus a dyadic
    // prefix toward 0. Mass-based times alone leave the early boundary badly
    // resolved whenever g moves slowly there. Both families are nested under
    // n -> 2n.
    const auto n_uniform = std::size_t(2 * level);
    for (std::size_t j = 1; j <= n_uniform; ++j)
        times.insert(horizon * double(j) / double(n_uniform));
    const int dyadic_depth = int(std::ceil(std::log2(double(level)))) + 2;
    for (int j = 1; j <= dyadic_depth; ++j) times.insert(horizon * std::ldexp(1.0, -j));

    // Atoms larger than 1/n must be mesh times (our analytic families are
    // continuous; custom callables are documented continuous, so this is a
    // no-op kept for the contract).
    for (const auto& [t, jump] : atoms(g, 1.0 / n))
        if (t <= horizon) times.insert(t);

    times.insert(horizon);

    DiscretizationMesh mesh{level, std::vector<double>(times.begin(), times.end())};
    std::vector<double> values;
    values.reserve(mesh.times.size());
    for (double t : mesh.times) values.push_back(g(t));
    auto gn = SurvivalFn::piecewise_constant(mesh.times, std::move(values));
    return {std::move(mesh), std::move(gn)};
}

std::vector<std::pair<double, double>> atoms(const SurvivalFn& g, double threshold) {
    std::vector<std::pair<double, double>> out;
    if (g.kind() == SurvivalFn::Kind::analytic) return out;  // continuous families
    for (std::size_t i = 0; i < g.breakpoints().size(); ++i) {
        const double t = g.breakpoints()[i];
        const double jump = g.left_limit(t) - g.values()[i];
        if (jump > threshold) out.emplace_back(t, jump);
    }
    return out;
}

SurvivalFn constant_barrier_survival(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("constant_barrier_survival: a must be > 0");
    SurvivalFn g;
    g.kind_ = SurvivalFn::Kind::analytic;
    g.family_ = SurvivalFn::Family::constant_barrier;
    g.params_ = {a};
    g.callable_ = [a](double t) {
        if (t <= 0.0) return 1.0;
        return 2.0 * normal_cdf(a / std::sqrt(t)) - 1.0;
    };
    g.density_ = [a](double t) {
        if (t <= 0.0) return 0.0;
        return a / std::sqrt(2.0 * M_PI * t * t * t) * std::exp(-a * a / (2.0 * t));
    };
    return g;
}

SurvivalFn linear_barrier_survival(double a, double c) {
    if (!(a > 0.0)) throw std::invalid_argument("linear_barrier_survival: a must be > 0");
    SurvivalFn g;
    g.kind_ = SurvivalFn::Kind::analytic;
    g.family_ = SurvivalFn::Family::linear_barrier;
    g.params_ = {a, c};
    g.callable_ = [a, c](double t) {
        if (t <= 0.0) return 1.0;
        const double rt = std::sqrt(t);
        return normal_cdf((a + c * t) / rt) - std::exp(-2.0 * a * c) * normal_cdf((-a + c * t) / rt);
    };
    // Inverse-Gaussian first-passage density for the line a + c t.
    g.density_ = [a, c](double t) {
        if (t <= 0.0) return 0.0;
        return a / std::sqrt(2.0 * M_PI * t * t * t) * std::exp(-(a + c * t) * (a + c * t) / (2.0 * t));
    };
    return g;
}

SurvivalFn empirical_survival(const std::vector<double>& samples, double horizon) {
    if (samples.empty()) throw std::invalid_argument("empirical_survival: need samples");
    if (!(horizon > 0.0)) throw std::invalid_argument("empirical_survival: horizon must be > 0");
    std::vector<double> finite;
    finite.reserve(samples.size());
    for (double s : samples) {
        if (std::isnan(s) || s < 0.0)
            throw std::invalid_argument("empirical_survival: negative passage time");
        if (s <= horizon) finite.push_back(s);  // +inf and beyond-horizon: censored survivors
    }
    std::sort(finite.begin(), finite.end());

    const double n = double(samples.size());
    std::vector<double> bp, vals;
    std::size_t i = 0;
    while (i < finite.size()) {
        std::size_t j = i;
        while (j < finite.size() && finite[j] == finite[i]) ++j;
        if (finite[i] > 0.0) {
            bp.push_back(finite[i]);
            vals.push_back(double(samples.size() - j) / n);
        } else if (j > i) {
            // Samples exactly at 0: ghat(0) < 1, recorded as a breakpoint at
            // the smallest representable positive abscissa of the table.
            bp.push_back(std::numeric_limits<double>::min());
            vals.push_back(double(samples.size() - j) / n);
        }
        i = j;
    }
    if (bp.empty()) {
        bp.push_back(horizon);
        vals.push_back(1.0);
    }
    SurvivalFn g = SurvivalFn::piecewise_constant(std::move(bp), std::move(vals));
    g.kind_ = SurvivalFn::Kind::empirical;
    return g;
}

}  // namespace ifp
