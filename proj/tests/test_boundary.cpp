#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ifp/boundary.hpp"
#include "ifp/io.hpp"

using namespace ifp;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Boundary random_boundary(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Boundary b;
    double t = 0.0;
    const int n = 3 + int(u(gen) * 8);
    for (int i = 0; i < n; ++i) {
        t += 0.1 + u(gen);
        b.times.push_back(t);
        const double r = u(gen);
        if (r < 0.1)
            b.values.push_back(kInf);
        else
            b.values.push_back(3.0 * u(gen));
    }
    if (u(gen) < 0.3) {
        // -infinity tail somewhere in the back half
        const std::size_t k = b.times.size() / 2 + std::size_t(u(gen) * double(b.times.size() / 2));
        for (std::size_t i = k; i < b.values.size(); ++i) b.values[i] = -kInf;
    }
    return b;
}
}  // namespace

TEST_CASE("standardize") {
    SUBCASE("anchors b(0) = 0 and keeps the rest") {
        Boundary b{{0.0, 0.5, 1.0, 2.0}, {5.0, 1.0, 1.0, 1.0}};
        const Boundary s = standardize(b);
        CHECK(s.standard);
        CHECK(s.times.front() == 0.0);
        CHECK(s.values.front() == 0.0);
        for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] == 1.0);
    }
    SUBCASE("-infinity absorbs") {
        Boundary b{{0.5, 1.0, 1.5}, {2.0, -kInf, 3.0}};
        const Boundary s = standardize(b);
        CHECK(s.values.back() == -kInf);
        CHECK(s(1.5) == -kInf);
    }
    SUBCASE("idempotent") {
        std::mt19937_64 gen(101);
        for (int rep = 0; rep < 100; ++rep) {
            const Boundary b = random_boundary(gen);
            const Boundary s1 = standardize(b);
            const Boundary s2 = standardize(s1);
            CHECK(s1.times == s2.times);
            CHECK(s1.values == s2.values);
            // Finite values on (0, T_B) are untouched.
            const double t_dead = s1.first_minus_inf_time();
            for (std::size_t i = 0; i < b.times.size(); ++i)
                if (b.times[i] > 0.0 && b.times[i] < t_dead)
                    CHECK(s1(b.times[i]) == b.values[i]);
        }
    }
    SUBCASE("rejects negative values arbitrarily close to 0") {
        Boundary b{{1e-9, 1.0}, {-1.0, 1.0}};
        CHECK_THROWS_AS((void)standardize(b), std::invalid_argument);
    }
}

TEST_CASE("reflect") {
    SUBCASE("constant boundary is reflection-invariant") {
        Boundary b{{0.0, 0.5, 1.0, 1.5, 2.0}, {2.0, 2.0, 2.0, 2.0, 2.0}};
        const Boundary r = reflect(b, 2.0);
        for (std::size_t i = 0; i < r.times.size(); ++i) {
            if (r.times[i] < 2.0)
                CHECK(r.values[i] == 2.0);
            else
                CHECK(r.values[i] == -kInf);
        }
    }
    SUBCASE("index reversal") {
        Boundary b{{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}};  // b(s) = s
        const Boundary r = reflect(b, 2.0);
        CHECK(r(0.0) == 2.0);
        CHECK(r(1.0) == 1.0);
        CHECK(r(2.0) == -kInf);
    }
    SUBCASE("involution on (0, t)") {
        std::mt19937_64 gen(7);
        for (int rep = 0; rep < 100; ++rep) {
            Boundary b = random_boundary(gen);
            const double t = b.times.back();
            const Boundary rr = reflect(reflect(b, t), t);
            for (std::size_t i = 0; i < b.times.size(); ++i) {
                if (b.times[i] <= 0.0 || b.times[i] >= t) continue;
                CHECK(rr(b.times[i]) == b.values[i]);
            }
        }
    }
    CHECK_THROWS_AS((void)reflect(Boundary{{1.0}, {1.0}}, 0.0), std::invalid_argument);
}

TEST_CASE("recover_from_u") {
    SUBCASE("degenerate plateau: step from 0 to g(t) at x*") {
        GridFn u;
        u.x_min = -2.0;
        u.x_max = 2.0;
        u.values.assign(41, 0.0);
        u.left_tail = 0.0;
        u.right_tail = 0.5;
        for (std::size_t j = 0; j < u.values.size(); ++j)
            if (u.node(j) >= 1.0) u.values[j] = 0.5;
        auto g = SurvivalFn::piecewise_constant({1.0}, {0.5});
        const Boundary b = recover_from_u({1.0}, {u}, g);
        CHECK(b.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("g = 0 recovers -infinity") {
        GridFn u;
        u.x_min = -2.0;
        u.x_max = 2.0;
        u.values.assign(41, 0.0);
        u.left_tail = 0.0;
        u.right_tail = 0.0;
        auto g = SurvivalFn::piecewise_constant({1.0}, {0.0});
        const Boundary b = recover_from_u({1.0}, {u}, g);
        CHECK(b.values[0] == -kInf);
    }
    SUBCASE("never attained recovers +infinity") {
        GridFn u;
        u.x_min = -2.0;
        u.x_max = 2.0;
        u.values.assign(41, 0.1);
        u.left_tail = 0.0;
        u.right_tail = 0.5;
        auto g = SurvivalFn::piecewise_constant({1.0}, {0.5});
        const Boundary b = recover_from_u({1.0}, {u}, g);
        CHECK(b.values[0] == kInf);
    }
    SUBCASE("mismatched lists rejected") {
        auto g = SurvivalFn::piecewise_constant({1.0}, {0.5});
        CHECK_THROWS_AS((void)recover_from_u({1.0, 2.0}, {}, g), std::invalid_argument);
    }
}

TEST_CASE("boundary CSV and JSON round-trip with sentinels") {
    std::mt19937_64 gen(13);
    for (int rep = 0; rep < 100; ++rep) {
        Boundary b = random_boundary(gen);
        b.interp = rep % 2 ? Boundary::Interp::linear : Boundary::Interp::mesh_only;

        std::stringstream ss;
        boundary_to_csv(b, ss);
        const Boundary csv_back = boundary_from_csv(ss, b.interp);
        REQUIRE(csv_back.times.size() == b.times.size());
        for (std::size_t i = 0; i < b.times.size(); ++i) {
            CHECK(csv_back.times[i] == b.times[i]);
            CHECK(csv_back.values[i] == b.values[i]);
        }

        const Boundary json_back = boundary_from_json(boundary_to_json(b));
        CHECK(json_back.times == b.times);
        CHECK(json_back.values == b.values);
        CHECK(json_back.interp == b.interp);
    }
}

TEST_CASE("mesh_only evaluation convention") {
    Boundary b{{0.0, 1.0, 2.0, 3.0}, {0.0, 1.5, -kInf, -kInf}};
    b.standard = true;
    CHECK(b(1.0) == 1.5);
    CHECK(b(0.5) == kInf);   // off-mesh before T_B
    CHECK(b(2.0) == -kInf);
    CHECK(b(2.5) == -kInf);  // past T_B
}

TEST_CASE("linear evaluation convention skips the standardization anchor") {
    Boundary b{{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}};
    b.standard = true;
    b.interp = Boundary::Interp::linear;
    CHECK(b(1.5) == doctest::Approx(1.5));
    CHECK(b(0.25) == doctest::Approx(1.0));  // constant before the first real node
    CHECK(b(5.0) == doctest::Approx(2.0));   // constant after the last
}
