#include <doctest.h>

#include <cmath>
#include <random>

#include "repi/family.hpp"
#include "repi/grid.hpp"

using namespace repi;

TEST_SUITE_BEGIN("density");

TEST_CASE("family validation rejects bad parameters") {
    CHECK_THROWS(FamilyDensity::exponential(0.0));
    CHECK_THROWS(FamilyDensity::exponential(-1.0));
    CHECK_THROWS(FamilyDensity::gaussian(0.0, 0.0));
    CHECK_THROWS(FamilyDensity::uniform(1.0, 1.0));
    CHECK_THROWS(FamilyDensity::uniform(2.0, 1.0));
    // non-convex knot sequence
    CHECK_THROWS(FamilyDensity::convex_potential({{0.0, 0.0}, {1.0, 2.0}, {2.0, 1.0}, {3.0, 5.0}}));
    CHECK_THROWS(FamilyDensity::convex_potential({{0.0, 0.0}}));
}

TEST_CASE("exponential density is e^{-x} on (0, inf)") {
    const auto f = FamilyDensity::exponential(1.0);
    CHECK(f.pdf(0.0) == doctest::Approx(1.0));
    CHECK(f.pdf(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(f.pdf(-0.5) == 0.0);
    CHECK(f.mean() == doctest::Approx(1.0));
    CHECK(f.variance() == doctest::Approx(1.0));
}

TEST_CASE("laplace with variance 1 is e^{-sqrt(2)|x|}/sqrt(2)") {
    const auto f = FamilyDensity::laplace_variance(1.0);
    const double s2 = std::sqrt(2.0);
    CHECK(f.pdf(0.0) == doctest::Approx(1.0 / s2));
    CHECK(f.pdf(1.5) == doctest::Approx(std::exp(-s2 * 1.5) / s2));
    CHECK(f.pdf(-1.5) == doctest::Approx(f.pdf(1.5)));
    CHECK(f.variance() == doctest::Approx(1.0));
}

TEST_CASE("uniform(0,1) has unit density and exact mass") {
    const auto f = FamilyDensity::uniform(0.0, 1.0);
    const auto g = discretize(f, 0.0, 1.0, 1001, 1e-9);
    for (double v : g.values) CHECK(v == 1.0);
    CHECK(grid_mass(g) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gaussian window discretization matches the analytic cdf") {
    const auto f = FamilyDensity::gaussian(0.0, 1.0);
    const auto g = discretize(f, -10.0, 10.0, 4001, 1e-6);
    const double window_mass = f.cdf(10.0) - f.cdf(-10.0);
    CHECK(std::abs(grid_mass(g) - 1.0) < 1e-8);
    CHECK(std::abs(grid_mass(g) - window_mass) < 1e-10);
}

TEST_CASE("exponential window [0,40] leaves only the analytic e^{-40} tail") {
    const auto f = FamilyDensity::exponential(1.0);
    const double tail = 1.0 - (f.cdf(40.0) - f.cdf(0.0));
    CHECK(tail == doctest::Approx(std::exp(-40.0)).epsilon(1e-10));
    CHECK(tail < 1e-10);
    const auto g = discretize(f, 0.0, 40.0, 8001, 1e-4);
    CHECK(std::abs(grid_mass(g) - 1.0) < 1e-4);
}

TEST_CASE("discretize rejects narrow windows and tiny grids") {
    const auto f = FamilyDensity::gaussian(0.0, 1.0);
    CHECK_THROWS(discretize(f, -1.0, 1.0, 101, 1e-6)); // tail mass way above tolerance
    CHECK_THROWS(discretize(f, -10.0, 10.0, 2, 1e-6));
}

TEST_CASE("log concavity of the built-in families") {
    const double slack = 1e-9;
    for (const char* spec : {"gaussian mean=0 sd=1", "exponential rate=1", "laplace var=1",
                             "uniform lo=0 hi=1", "gamma2 rate=1", "potential knots=0:1,1:0,2:1"}) {
        CAPTURE(spec);
        const auto g = discretize_default(FamilyDensity::parse(spec), 0.002, 0.3, 1e-4);
        CHECK(is_log_concave(g, slack));
    }
}

TEST_CASE("a separated two-component mixture is not log-concave") {
    // grid built by hand; the valley between the modes breaks midpoint concavity
    const double lo = -8.0, hi = 8.0;
    const std::size_t n = 1601;
    std::vector<double> v(n);
    const double h = (hi - lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + h * double(i);
        v[i] = 0.5 * (std::exp(-0.5 * (x - 3.0) * (x - 3.0)) + std::exp(-0.5 * (x + 3.0) * (x + 3.0))) /
               std::sqrt(2.0 * 3.141592653589793);
    }
    const auto g = GridDensity::make(lo, hi, v, 1e-3);
    CHECK_FALSE(is_log_concave(g, 1e-9));
}

TEST_CASE("interior zeros break the support-interval requirement") {
    std::vector<double> v(101, 1.0 / 0.99);
    v[50] = 0.0;
    auto g = GridDensity::make(0.0, 0.99, v, 2e-2);
    CHECK_FALSE(is_log_concave(g, 1e-9));
}

TEST_CASE("variance of the standard discretizations") {
    const auto gauss = discretize_default(FamilyDensity::gaussian(0.0, 1.0), 0.002, 0.5);
    CHECK(std::abs(variance(gauss) - 1.0) < 1e-6);
    const auto lap = discretize_default(FamilyDensity::laplace_variance(1.0), 0.002, 0.5);
    CHECK(std::abs(variance(lap) - 1.0) < 1e-6);
    const auto unif = discretize(FamilyDensity::uniform(0.0, 1.0), 0.0, 1.0, 8001, 1e-9);
    CHECK(std::abs(variance(unif) - 1.0 / 12.0) < 1e-8);
}

TEST_CASE("refinement halves the spacing and quarters mass/variance error") {
    const auto f = FamilyDensity::exponential(1.0);
    double mass_err[2], var_err[2];
    const std::size_t ns[2] = {3001, 6001};
    for (int i = 0; i < 2; ++i) {
        const auto g = discretize(f, 0.0, 60.0, ns[i], 1e-3);
        mass_err[i] = std::abs(grid_mass(g) - 1.0);
        var_err[i] = std::abs(variance(g) - 1.0);
    }
    CHECK(mass_err[0] / mass_err[1] == doctest::Approx(4.0).epsilon(0.1));
    CHECK(var_err[0] / var_err[1] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("family specs parse and round-trip") {
    for (const char* spec : {"gaussian mean=0 sd=1", "exponential rate=2", "uniform lo=-1 hi=3",
                             "gamma2 rate=0.5"}) {
        const auto f = FamilyDensity::parse(spec);
        const auto f2 = FamilyDensity::parse(f.describe());
        CHECK(f2.describe() == f.describe());
    }
    CHECK(FamilyDensity::parse("laplace var=1").variance() == doctest::Approx(1.0));
    CHECK_THROWS(FamilyDensity::parse("cauchy scale=1"));
    CHECK_THROWS(FamilyDensity::parse("gaussian mean=0"));
    CHECK_THROWS(FamilyDensity::parse("gaussian mean=0 sd=1 tail=3")); // unknown key
    CHECK_THROWS(FamilyDensity::parse("exponential rate=1 rogue"));
}

TEST_CASE("custom potential normalizes to unit mass") {
    const auto f = FamilyDensity::parse("potential knots=-2:2,0:0,2:2");
    const auto g = discretize_default(f, 0.001, 1.0, 1e-5);
    CHECK(std::abs(grid_mass(g) - 1.0) < 1e-5);
    CHECK(f.pdf(-3.0) == 0.0);
    CHECK(f.pdf(3.0) == 0.0);
}

TEST_CASE("zero padding moves boundary mass into interior cells") {
    const auto g = discretize_default(FamilyDensity::exponential(1.0), 0.01, 0.5, 1e-4);
    CHECK(g.values.front() == doctest::Approx(1.0));
    const auto p = zero_pad_edges(g);
    CHECK(p.n() == g.n() + 1);
    CHECK(p.values.front() == 0.0);
    CHECK(p.lo == doctest::Approx(g.lo - g.h()));
    // already-padded grids pass through unchanged
    const auto p2 = zero_pad_edges(p);
    CHECK(p2.n() == p.n());
}

TEST_SUITE_END();
