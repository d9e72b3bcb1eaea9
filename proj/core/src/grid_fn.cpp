#include "ifp/grid_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ifp/gaussian.hpp"

namespace ifp {

namespace {

// Kernel window half-width in standard deviations. Phi(-10) ~ 7.6e-24, so
// mass ignored outside the window is far below every tolerance in play.
constexpr double kWindowSigmas = 10.0;

}  // namespace

double GridFn::operator()(double x) const {
    if (x < x_min) return left_tail;
    if (x > x_max) return right_tail;
    const double h = spacing();
    double u = (x - x_min) / h;
    auto j = static_cast<std::size_t>(u);
    if (j >= values.size() - 1) return values.back();
    const double w = u - double(j);
    return values[j] + w * (values[j + 1] - values[j]);
}

void validate_grid_fn(const GridFn& f) {
    if (f.values.size() < 2)
        throw std::invalid_argument("GridFn: need at least 2 nodes");
    if (!(f.x_max > f.x_min))
        throw std::invalid_argument("GridFn: x_max must exceed x_min");
    const double scale = std::max({1.0, std::fabs(f.left_tail), std::fabs(f.right_tail)});
    const double slack = 1e-12 * scale;
    for (std::size_t j = 0; j + 1 < f.values.size(); ++j) {
        if (f.values[j + 1] < f.values[j] - slack)
            throw std::invalid_argument("GridFn: values not non-decreasing at index " +
                                        std::to_string(j + 1));
    }
    if (f.values.front() < f.left_tail - slack || f.values.back() > f.right_tail + slack)
        throw std::invalid_argument("GridFn: values escape the [left_tail, right_tail] range");
}

namespace {

void require_positive_dt(double delta_t) {
    if (!(delta_t > 0.0) || !std::isfinite(delta_t))
        throw std::invalid_argument("convolve_heat: delta_t must be positive and finite");
}

// Core sweep. Output node y_i relates to input node x_j through the lattice
// index k = j - i + m where m = (f.x_min - out.x_min)/h; the Gaussian factors
// Phi(k h / sigma), phi(k h / sigma) depend on k only and are precomputed.
GridFn convolve_lattice(const GridFn& f, double sigma, const GridSpec& out) {
    const double h = f.spacing();
    const std::size_t n_in = f.values.size();
    const std::size_t n_out = out.nodes;

    const double m_real = (f.x_min - out.x_min) / h;
    const auto m = static_cast<long>(std::llround(m_real));
    if (std::fabs(out.spacing() - h) > 1e-9 * h || std::fabs(m_real - double(m)) > 1e-6)
        throw std::invalid_argument("convolve_heat_onto: output grid must be node-aligned with input");

    const long window = sigma >= kWindowSigmas * h * double(n_in)
                            ? long(n_in)
                            : long(std::ceil(kWindowSigmas * sigma / h)) + 1;

    // k ranges over [m - (n_out-1) - 1, m + (n_in-1)] in exact arithmetic;
    // clip to the window actually touched.
    const long k_lo = std::max(m - long(n_out - 1), -window - 1);
    const long k_hi = std::min(m + long(n_in - 1), window + 1);
    const long n_tab = k_hi - k_lo + 1;
    std::vector<double> cdf_tab(n_tab), pdf_tab(n_tab);
    for (long k = k_lo; k <= k_hi; ++k) {
        const double z = double(k) * h / sigma;
        cdf_tab[k - k_lo] = normal_cdf(z);
        pdf_tab[k - k_lo] = normal_pdf(z);
    }
    auto cdf_at = [&](long k) {
        if (k < k_lo) return 0.0;
        if (k > k_hi) return 1.0;
        return cdf_tab[k - k_lo];
    };
    auto pdf_at = [&](long k) {
        if (k < k_lo || k > k_hi) return 0.0;
        return pdf_tab[k - k_lo];
    };

    GridFn g;
    g.x_min = out.x_min;
    g.x_max = out.x_max;
    g.left_tail = f.left_tail;
    g.right_tail = f.right_tail;
    g.values.resize(n_out);

    const double inv_h = 1.0 / h;
    for (std::size_t i = 0; i < n_out; ++i) {
        const long base = m - long(i);  // k index of input node 0 seen from y_i
        long j_lo = 0, j_hi = long(n_in - 1);
        if (base + j_hi > window) j_hi = window - base;
        if (base + j_lo < -window) j_lo = -window - base;
        if (j_lo < 0) j_lo = 0;
        if (j_hi > long(n_in - 1)) j_hi = long(n_in - 1);

        double acc;
        if (j_hi < j_lo) {
            // Input grid entirely outside the kernel window: y_i sits far
            // below the grid (all k > window) or far above it.
            acc = (base > 0) ? f.left_tail : f.right_tail;
            g.values[i] = acc;
            continue;
        }

        // Mass below the first visited node.
        const double below = (j_lo == 0) ? f.left_tail : f.values[j_lo];
        acc = below * cdf_at(base + j_lo);

        for (long j = j_lo; j < j_hi; ++j) {
            const long k = base + j;
            const double s = (f.values[j + 1] - f.values[j]) * inv_h;
            // On the segment, f(y_i + sigma z) = (v_j - s k h) + s sigma z.
            const double c = f.values[j] - s * double(k) * h;
            acc += c * (cdf_at(k + 1) - cdf_at(k)) + s * sigma * (pdf_at(k) - pdf_at(k + 1));
        }

        // Mass above the last visited node.
        const double above = (j_hi == long(n_in - 1)) ? f.right_tail : f.values[j_hi];
        acc += above * (1.0 - cdf_at(base + j_hi));

        g.values[i] = acc;
    }

    // Rounding can leave sub-1e-16 dips; restore the monotone contract.
    double lo = g.left_tail, hi = g.right_tail;
    double run = lo;
    for (auto& v : g.values) {
        v = std::clamp(v, lo, hi);
        run = std::max(run, v);
        v = run;
    }
    return g;
}

}  // namespace

GridFn convolve_heat(const GridFn& f, double delta_t) {
    validate_grid_fn(f);
    require_positive_dt(delta_t);
    return convolve_lattice(f, std::sqrt(delta_t), f.spec());
}

GridFn convolve_heat_onto(const GridFn& f, double delta_t, const GridSpec& out) {
    validate_grid_fn(f);
    require_positive_dt(delta_t);
    return convolve_lattice(f, std::sqrt(delta_t), out);
}

double convolve_heat_eval(const GridFn& f, double delta_t, double x) {
    require_positive_dt(delta_t);
    const double sigma = std::sqrt(delta_t);
    const double h = f.spacing();
    const long n = long(f.values.size());

    // Visit only nodes within the kernel window around x.
    long j_lo = long(std::floor((x - kWindowSigmas * sigma - f.x_min) / h));
    long j_hi = long(std::ceil((x + kWindowSigmas * sigma - f.x_min) / h));
    j_lo = std::clamp(j_lo, 0L, n - 1);
    j_hi = std::clamp(j_hi, 0L, n - 1);
    if (j_hi < j_lo) std::swap(j_lo, j_hi);

    auto z_of = [&](long j) { return (f.node(std::size_t(j)) - x) / sigma; };

    const double below = (j_lo == 0) ? f.left_tail : f.values[j_lo];
    double acc = below * normal_cdf(z_of(j_lo));
    double cdf_prev = normal_cdf(z_of(j_lo));
    double pdf_prev = normal_pdf(z_of(j_lo));
    for (long j = j_lo; j < j_hi; ++j) {
        const double z_next = z_of(j + 1);
        const double cdf_next = normal_cdf(z_next);
        const double pdf_next = normal_pdf(z_next);
        const double s = (f.values[j + 1] - f.values[j]) / h;
        const double c = f.values[j] + s * (x - f.node(std::size_t(j)));
        acc += c * (cdf_next - cdf_prev) + s * sigma * (pdf_prev - pdf_next);
        cdf_prev = cdf_next;
        pdf_prev = pdf_next;
    }
    const double above = (j_hi == n - 1) ? f.right_tail : f.values[j_hi];
    acc += above * (1.0 - cdf_prev);
    return acc;
}

double convolve_heat_eval_dxx(const GridFn& f, double delta_t, double x) {
    require_positive_dt(delta_t);
    const double sigma = std::sqrt(delta_t);
    const double h = f.spacing();
    const long n = long(f.values.size());

    long j_lo = long(std::floor((x - kWindowSigmas * sigma - f.x_min) / h));
    long j_hi = long(std::ceil((x + kWindowSigmas * sigma - f.x_min) / h));
    j_lo = std::clamp(j_lo, 0L, n - 1);
    j_hi = std::clamp(j_hi, 0L, n - 1);

    // f'' of the model is a sum of atoms: slope jumps at interior nodes plus
    // the tail jumps at the grid edges. Each atom J at p contributes
    // J * phi((p-x)/sigma)/sigma to (f' * kernel)'(x) = w''(x) ... with the
    // kernel derivative acting once more; concretely
    //   w''(x) = sum_p jump_p(f') * phi((p-x)/sigma) / sigma
    //          + sum_edges jump(f) * (p-x)/sigma^2 * phi((p-x)/sigma) / sigma.
    double acc = 0.0;
    auto slope = [&](long j) {  // slope of segment [j, j+1], 0 outside
        if (j < 0 || j >= n - 1) return 0.0;
        return (f.values[j + 1] - f.values[j]) / h;
    };
    for (long j = j_lo; j <= j_hi; ++j) {
        const double p = f.node(std::size_t(j));
        const double jump = slope(j) - slope(j - 1);
        if (jump != 0.0) acc += jump * normal_pdf((p - x) / sigma) / sigma;
    }
    // Edge value jumps (left_tail -> v0, vN -> right_tail) are atoms of f
    // itself; they differentiate to scaled phi' terms.
    auto edge_term = [&](double p, double jump) {
        const double z = (p - x) / sigma;
        return jump * z * normal_pdf(z) / (sigma * sigma);
    };
    const double j_left = f.values.front() - f.left_tail;
    if (j_left != 0.0) acc += edge_term(f.x_min, j_left);
    const double j_right = f.right_tail - f.values.back();
    if (j_right != 0.0) acc += edge_term(f.x_max, j_right);
    return acc;
}

}  // namespace ifp
