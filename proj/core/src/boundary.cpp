#include "ifp/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ifp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool times_match(double a, double b) {
    return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}
}  // namespace

void validate_boundary(const Boundary& b) {
    if (b.times.size() != b.values.size())
        throw std::invalid_argument("Boundary: times/values size mismatch");
    if (b.times.empty()) throw std::invalid_argument("Boundary: empty");
    for (std::size_t i = 0; i < b.times.size(); ++i) {
        if (!(b.times[i] >= 0.0) || !std::isfinite(b.times[i]))
            throw std::invalid_argument("Boundary: times must be finite and >= 0");
        if (i > 0 && !(b.times[i] > b.times[i - 1]))
            throw std::invalid_argument("Boundary: times must be strictly increasing");
        if (std::isnan(b.values[i])) throw std::invalid_argument("Boundary: NaN value");
    }
    if (b.standard) {
        if (b.times.front() != 0.0 || b.values.front() != 0.0)
            throw std::invalid_argument("Boundary: standard flag requires b(0) = 0");
        bool dead = false;
        for (double v : b.values)
            if (dead && v != -kInf)
                throw std::invalid_argument("Boundary: -infinity must be absorbing");
            else if (v == -kInf)
                dead = true;
    }
}

double Boundary::first_minus_inf_time() const {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == -kInf && times[i] > 0.0) return times[i];
    return kInf;
}

double Boundary::operator()(double t) const {
    if (interp == Interp::mesh_only) {
        auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12);
        if (it != times.end() && times_match(*it, t)) return values[std::size_t(it - times.begin())];
        return t >= first_minus_inf_time() ? -kInf : kInf;
    }

    // linear: interpolate between finite values; the standardization anchor
    // b(0)=0 is reporting noise, skip it.
    std::size_t lo = (standard && times.front() == 0.0 && times.size() > 1) ? 1 : 0;
    const double t_dead = first_minus_inf_time();
    if (t >= t_dead) return -kInf;
    std::size_t hi = times.size();
    while (hi > lo && values[hi - 1] == -kInf) --hi;
    if (hi == lo) return -kInf;
    if (t <= times[lo]) return values[lo];
    if (t >= times[hi - 1]) return values[hi - 1];
    auto it = std::upper_bound(times.begin() + long(lo), times.begin() + long(hi), t);
    const std::size_t j = std::size_t(it - times.begin()) - 1;
    const double w = (t - times[j]) / (times[j + 1] - times[j]);
    const double a = values[j], c = values[j + 1];
    if (std::isinf(a) || std::isinf(c)) return w < 0.5 ? a : c;
    return a + w * (c - a);
}

Boundary standardize(const Boundary& b) {
    validate_boundary(b);

    // tau_B > 0 plausibility at grid resolution: the earliest strictly
    // positive grid time is the only liminf evidence the grid carries, so a
    // negative value there at a time negligibly close to 0 is rejected.
    for (std::size_t i = 0; i < b.times.size(); ++i) {
        if (b.times[i] <= 0.0) continue;
        const double small = 1e-6 * std::max(1.0, b.times.back());
        if (b.values[i] < 0.0 && b.times[i] <= small)
            throw std::invalid_argument("standardize: b < 0 arbitrarily close to 0 (tau_B = 0)");
        break;
    }

    Boundary out = b;
    if (out.times.front() != 0.0) {
        out.times.insert(out.times.begin(), 0.0);
        out.values.insert(out.values.begin(), 0.0);
    } else {
        out.values.front() = 0.0;
    }
    const double t_dead = out.first_minus_inf_time();
    for (std::size_t i = 0; i < out.times.size(); ++i)
        if (out.times[i] >= t_dead) out.values[i] = -kInf;
    out.standard = true;
    return out;
}

Boundary reflect(const Boundary& b, double t) {
    validate_boundary(b);
    if (!(t > 0.0)) throw std::invalid_argument("reflect: t must be > 0");

    Boundary out;
    out.interp = b.interp;
    out.standard = false;
    for (auto it = b.times.rbegin(); it != b.times.rend(); ++it) {
        const double tk = *it;
        if (tk > t && !times_match(tk, t)) continue;
        const double s = std::max(0.0, t - tk);
        const std::size_t idx = std::size_t(b.times.rend() - it) - 1;
        if (times_match(s, t)) continue;  // s == t handled below
        out.times.push_back(s);
        out.values.push_back(b.values[idx]);
    }
    out.times.push_back(t);
    out.values.push_back(-kInf);
    return out;
}

Boundary recover_from_u(const std::vector<double>& times, const std::vector<GridFn>& slices,
                        const SurvivalFn& g, double tol_rec) {
    if (times.size() != slices.size())
        throw std::invalid_argument("recover_from_u: times/slices size mismatch");

    Boundary out;
    out.times = times;
    out.values.reserve(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double gk = g(times[k]);
        const double tol = tol_rec * std::max(1.0, gk);
        const GridFn& u = slices[k];
        double bk = kInf;
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (gk - u.values[j] <= tol) {
                bk = (j == 0) ? -kInf : u.node(j);
                break;
            }
        }
        out.values.push_back(bk);
    }
    return out;
}

}  // namespace ifp
