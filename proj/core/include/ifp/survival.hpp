#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ifp {

/// Survival distribution function g: non-increasing, right-continuous,
/// g(0) = 1, values in [0,1]. Three representations:
///   - piecewise_constant: g == value[i] on [breakpoint[i], breakpoint[i+1])
///     and 1 on [0, breakpoint[0]); breakpoints strictly increasing and > 0.
///   - analytic: closed-form callable with optional density -g'.
///   - empirical: step function from passage-time samples (structurally a
///     piecewise-constant table).
class SurvivalFn {
  public:
    enum class Kind { piecewise_constant, analytic, empirical };
    enum class Family { none, constant_barrier, linear_barrier, custom };

    SurvivalFn() = default;

    static SurvivalFn piecewise_constant(std::vector<double> breakpoints,
                                         std::vector<double> values);
    static SurvivalFn analytic_custom(std::function<double(double)> g,
                                      std::function<double(double)> density = {});

    Kind kind() const { return kind_; }
    Family family() const { return family_; }

    /// g(t); t < 0 throws.
    double operator()(double t) const;
    /// Left limit g(t-).
    double left_limit(double t) const;

    bool has_density() const { return static_cast<bool>(density_); }
    /// -g'(t) for analytic kinds with a density; throws otherwise.
    double density(double t) const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    /// Family parameters in declaration order (constant_barrier: {a};
    /// linear_barrier: {a, c}).
    const std::vector<double>& params() const { return params_; }

  private:
    friend SurvivalFn constant_barrier_survival(double a);
    friend SurvivalFn linear_barrier_survival(double a, double c);
    friend SurvivalFn empirical_survival(const std::vector<double>& samples, double horizon);

    Kind kind_ = Kind::piecewise_constant;
    Family family_ = Family::none;
    std::vector<double> breakpoints_;
    std::vector<double> values_;
    std::vector<double> params_;
    std::function<double(double)> callable_;
    std::function<double(double)> density_;
};

/// Time mesh of a piecewise-constant approximation level. The mesh
/// condition g(t_k) - g(t_{k+1}-) <= 1/level holds for consecutive times,
/// and meshes are nested along the doubling ladder level -> 2*level.
struct DiscretizationMesh {
    int level = 1;
    std::vector<double> times;  // strictly increasing, all > 0
};

struct ValidationReport {
    bool ok = true;
    std::string violation;  // first violated property, with location
};

/// Checks g(0)=1, monotonicity, range. Analytic kinds are sampled on a
/// dense grid (default 10^4 points over [0, sample_horizon]).
ValidationReport validate(const SurvivalFn& g, double sample_horizon = 10.0,
                          std::size_t sample_points = 10000);

/// Piecewise-constant approximation g^n of level n on (0, horizon]:
/// g^n(t) - 1/n <= g(t) <= g^n(t). Mesh times are the crossing times of the
/// levels 1 - k/(2n), a dyadic+uniform time refinement with ~2n points
/// (needed so the discrete boundary tracks the continuous one in time, not
/// just in mass), and every atom of size > 1/n. For piecewise-constant or
/// empirical input the mesh is exactly its breakpoints and g^n == g.
std::pair<DiscretizationMesh, SurvivalFn> discretize(const SurvivalFn& g, int level,
                                                     double horizon = 0.0);

/// All t with g(t-) - g(t) strictly greater than `threshold`, ascending.
std::vector<std::pair<double, double>> atoms(const SurvivalFn& g, double threshold = 1e-12);

/// Reflection principle oracle: g(t) = 2 Phi(a / sqrt(t)) - 1, the survival
/// of a Brownian motion below the constant barrier b == a > 0.
SurvivalFn constant_barrier_survival(double a);

/// Bachelier-Levy oracle for the linear barrier b(t) = a + c t, a > 0:
/// g(t) = Phi((a+ct)/sqrt(t)) - exp(-2ac) Phi((-a+ct)/sqrt(t)).
SurvivalFn linear_barrier_survival(double a, double c);

/// ghat(t) = #{samples > t} / N, right-continuous, censored at `horizon`
/// (+infinity samples count as survivors throughout).
SurvivalFn empirical_survival(const std::vector<double>& samples, double horizon);

}  // namespace ifp
