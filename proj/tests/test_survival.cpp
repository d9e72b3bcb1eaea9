#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "ifp/gaussian.hpp"
#include "ifp/io.hpp"
#include "ifp/survival.hpp"

using namespace ifp;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool mesh_condition_holds(const SurvivalFn& g, const DiscretizationMesh& mesh) {
    for (std::size_t k = 0; k + 1 < mesh.times.size(); ++k) {
        const double drop = g(mesh.times[k]) - g.left_limit(mesh.times[k + 1]);
        if (drop > 1.0 / double(mesh.level) + 1e-12) return false;
    }
    return true;
}
}  // namespace

TEST_CASE("validate") {
    auto ok = SurvivalFn::piecewise_constant({1.0}, {0.5});
    CHECK(validate(ok).ok);

    auto bad_mono = SurvivalFn::piecewise_constant({1.0, 2.0, 3.0}, {1.0, 0.6, 0.7});
    const auto rep = validate(bad_mono);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violation == "not non-increasing at index 2");

    auto bad_norm = SurvivalFn::analytic_custom([](double) { return 0.9; });
    const auto rep2 = validate(bad_norm);
    CHECK_FALSE(rep2.ok);
    CHECK(rep2.violation == "g(0) != 1");

    auto increasing = SurvivalFn::analytic_custom([](double t) { return std::min(1.0, 0.5 + t); });
    CHECK_FALSE(validate(increasing).ok);
}

TEST_CASE("piecewise-constant evaluation is right-continuous") {
    auto g = SurvivalFn::piecewise_constant({1.0, 2.0}, {0.5, 0.25});
    CHECK(g(0.0) == 1.0);
    CHECK(g(0.999) == 1.0);
    CHECK(g(1.0) == 0.5);  // value belongs to the right interval
    CHECK(g.left_limit(1.0) == 1.0);
    CHECK(g(1.5) == 0.5);
    CHECK(g(2.0) == 0.25);
    CHECK(g(100.0) == 0.25);
    CHECK_THROWS_AS((void)g(-0.5), std::invalid_argument);
}

TEST_CASE("discretize: piecewise-constant input is a fixed point") {
    auto g = SurvivalFn::piecewise_constant({0.5, 1.0, 2.5}, {0.9, 0.55, 0.3});
    auto [mesh, gn] = discretize(g, 10);
    CHECK(mesh.times == g.breakpoints());
    CHECK(gn.values() == g.values());
    CHECK(mesh_condition_holds(g, mesh));

    // An atom bigger than 1/n is a mesh time by construction here.
    auto atom = SurvivalFn::piecewise_constant({1.0}, {0.5});
    auto [mesh2, gn2] = discretize(atom, 10);
    CHECK(std::find(mesh2.times.begin(), mesh2.times.end(), 1.0) != mesh2.times.end());
}

TEST_CASE("discretize: analytic sandwich and nesting") {
    const auto g = constant_barrier_survival(1.0);
    const int n = 10;
    auto [mesh, gn] = discretize(g, n, 2.0);
    CHECK(mesh_condition_holds(g, mesh));

    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = u(gen);
        const double gap = gn(t) - g(t);
        CHECK(gap >= -1e-12);
        CHECK(gap <= 1.0 / n + 1e-12);
    }

    auto [mesh2, gn2] = discretize(g, 2 * n, 2.0);
    CHECK(mesh_condition_holds(g, mesh2));
    for (double t : mesh.times) {
        bool found = false;
        for (double s : mesh2.times)
            if (std::fabs(s - t) < 1e-9) found = true;
        CHECK(found);
    }
}

TEST_CASE("atoms") {
    CHECK(atoms(constant_barrier_survival(1.0)).empty());

    auto g = SurvivalFn::piecewise_constant({1.0, 2.0}, {0.5, 0.25});
    const auto a = atoms(g);
    REQUIRE(a.size() == 2);
    CHECK(a[0].first == 1.0);
    CHECK(a[0].second == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a[1].first == 2.0);
    CHECK(a[1].second == doctest::Approx(0.25).epsilon(1e-12));

    // Jump exactly at the threshold is excluded (strict inequality).
    auto tiny = SurvivalFn::piecewise_constant({1.0}, {1.0 - 0.125});
    CHECK(atoms(tiny, 0.125).empty());
}

TEST_CASE("constant_barrier_survival oracle") {
    const auto g = constant_barrier_survival(1.0);
    CHECK(std::fabs(g(1.0) - 0.6826894921370858971705) < 1e-12);
    CHECK(g(0.0) == 1.0);
    CHECK(g(1e-12) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(g.density(1.0) - 0.2419707245191433497978) < 1e-12);
    CHECK_THROWS_AS((void)constant_barrier_survival(0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)constant_barrier_survival(-1.0), std::invalid_argument);

    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double t = u(gen);
        const double eps = 1e-5 * t;
        const double fd = -(g(t + eps) - g(t - eps)) / (2.0 * eps);
        CHECK(std::fabs(fd - g.density(t)) < 1e-6);
        CHECK(g.density(t) >= 0.0);
        CHECK(g(t + eps) <= g(t) + 1e-15);
    }
}

TEST_CASE("linear_barrier_survival oracle") {
    const auto g0 = linear_barrier_survival(1.0, 0.0);
    const auto gc = constant_barrier_survival(1.0);
    for (double t = 0.05; t <= 10.0; t += 0.21)
        CHECK(std::fabs(g0(t) - gc(t)) < 1e-14);

    const auto g = linear_barrier_survival(1.0, 0.5);
    CHECK(std::fabs(g(1.0) - 0.8196881814042136304499) < 1e-12);
    CHECK_THROWS_AS((void)linear_barrier_survival(0.0, 1.0), std::invalid_argument);

    // Receding boundary: g increases in c at fixed t.
    double prev = 0.0;
    for (double c = 0.0; c <= 4.0; c += 0.25) {
        const double v = linear_barrier_survival(1.0, c)(1.0);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(prev > 0.995);

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double t = u(gen);
        const double eps = 1e-5 * t;
        const double fd = -(g(t + eps) - g(t - eps)) / (2.0 * eps);
        CHECK(std::fabs(fd - g.density(t)) < 1e-6);
    }
}

TEST_CASE("empirical_survival") {
    const auto g = empirical_survival({1.0, 2.0, 3.0}, 10.0);
    CHECK(g(1.5) == doctest::Approx(2.0 / 3.0));
    CHECK(g(0.0) == 1.0);
    CHECK(g(3.0) == 0.0);

    const auto all_inf = empirical_survival({kInf, kInf, kInf}, 5.0);
    for (double t = 0.0; t <= 5.0; t += 0.5) CHECK(all_inf(t) == 1.0);

    CHECK_THROWS_AS((void)empirical_survival({1.0, -0.5}, 1.0), std::invalid_argument);

    // DKW: inverse-sampled draws from the constant-barrier oracle stay inside
    // the 99% band (fixed seeds; the bound fails ~1% of the time by design).
    const auto oracle = constant_barrier_survival(1.0);
    const std::size_t n = 100000;
    int passes = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> samples;
        samples.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double p = u(gen);  // target survival level
            if (p <= oracle(10.0)) {
                samples.push_back(kInf);  // survives past the window
                continue;
            }
            // Invert g(t) = p by bisection on [0, 10].
            double lo = 0.0, hi = 10.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (oracle(mid) > p ? lo : hi) = mid;
            }
            samples.push_back(0.5 * (lo + hi));
        }
        const auto ghat = empirical_survival(samples, 10.0);
        double sup = 0.0;
        for (double t = 0.0; t <= 10.0; t += 0.01)
            sup = std::max(sup, std::fabs(ghat(t) - oracle(t)));
        if (sup <= 1.63 / std::sqrt(double(n))) ++passes;
    }
    CHECK(passes >= 9);
}

TEST_CASE("survival JSON round-trip and parse errors") {
    const auto pc = SurvivalFn::piecewise_constant({1.0, 2.0}, {0.5, 0.25});
    const auto back = survival_from_json(survival_to_json(pc));
    CHECK(back.kind() == SurvivalFn::Kind::piecewise_constant);
    CHECK(back.breakpoints() == pc.breakpoints());
    CHECK(back.values() == pc.values());

    const auto an = linear_barrier_survival(1.0, 0.5);
    const auto an_back = survival_from_json(survival_to_json(an));
    for (double t = 0.1; t <= 3.0; t += 0.3) CHECK(an_back(t) == an(t));

    CHECK_THROWS_AS((void)survival_from_json("{"), ParseError);
    try {
        (void)survival_from_json(R"({"kind":"piecewise_constant","breakpoints":[1.0]})");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.field == "values");
    }
    try {
        (void)survival_from_json(R"({"kind":"analytic","family":"constant_barrier","params":{}})");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.field == "params.a");
    }
    CHECK_THROWS_AS(
        (void)survival_from_json(R"({"kind":"piecewise_constant","breakpoints":[1,2],"values":[1.0,0.9,0.8]})"),
        ParseError);
    // Monotonicity violations surface as parse errors too.
    CHECK_THROWS_AS(
        (void)survival_from_json(R"({"kind":"piecewise_constant","breakpoints":[1,2],"values":[0.5,0.7]})"),
        ParseError);
}
